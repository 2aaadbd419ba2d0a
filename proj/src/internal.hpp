#pragma once

#include "qmod/rep.hpp"

namespace qmod {

void build_dlssv_generators(double q, const Basis& basis, int jmax2, SpMat& a, SpMat& b,
                            double& lost);

/// v_i = sum_j A_ij B_ji, i.e. the diagonal of A*B without forming it.
VecC diag_of_product(const SpMat& A, const SpMat& B);

/// Block matrix from a d x d grid of equally sized blocks.
SpMat block_matrix(const std::vector<SpMat>& blocks, int d);

}  // namespace qmod

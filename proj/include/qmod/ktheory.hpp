#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qmod/modular.hpp"

namespace qmod {

/// d x d matrix over the algebra, stored as (1 / denominator) * entries.
struct MatrixAlgebraElement {
  int dim = 0;
  std::vector<NCPolynomial> entries;  // row-major
  Coeff denominator = 1;

  const PresentationPtr& presentation() const { return entries.at(0).presentation(); }
  const NCPolynomial& at(int i, int j) const { return entries.at(i * dim + j); }
  int degree() const;

  MatrixAlgebraElement adjoint() const;
  MatrixAlgebraElement operator*(const MatrixAlgebraElement& o) const;

  static MatrixAlgebraElement identity(const PresentationPtr& p, int dim);
};

/// Delta_X = diag(delta_1, ..., delta_d) with entries in q, s.
struct CharacterWeight {
  std::vector<Coeff> delta;

  VecD eval(const Params& p) const;
};

bool is_projection(const MatrixAlgebraElement& p);
bool is_unitary(const MatrixAlgebraElement& v);
/// sigma(x_ij) delta_j / delta_i == x_ij for every entry.
bool is_invariant(const MatrixAlgebraElement& x, const CharacterWeight& w);

/// P = (1 - q^2 A, B; B*, A + s^2) / (1 + s^2), Delta = diag(q^-1, q).
/// Throws PresentationError if a symbolic check fails.
std::pair<MatrixAlgebraElement, CharacterWeight> podles_projection_P();
/// V = (-q b*, a*; a, b), Delta = diag(q^-1, q).
std::pair<MatrixAlgebraElement, CharacterWeight> suq2_unitary_V();

/// Block operator on H tensor C^d, component-major.
TruncatedOperator realize_matrix(const ModularModule& m, const MatrixAlgebraElement& x);
/// Entrywise [F, x_ij] evaluated stably.
TruncatedOperator commutator_matrix(const ModularModule& m, const MatrixAlgebraElement& x);
/// K tensor Delta.
VecD amplified_weight(const ModularModule& m, const VecD& delta);

/// (-1)^n Tr((K x Delta)(gamma x 1) p [F, p]^(2n)) with 2n = summability.
Estimate index_even(const ModularModule& m, const MatrixAlgebraElement& p, const CharacterWeight& w);
/// Same formula for an operator already on H tensor C^d.
Estimate index_even(const ModularModule& m, const TruncatedOperator& p, const VecD& delta,
                    int exact_depth = 0);

/// ((-1)^n / 2^(2n)) Tr((K x Delta) F ([F,v][F,v*])^n) with n = 2.
Estimate index_odd(const ModularModule& m, const MatrixAlgebraElement& v, const CharacterWeight& w);
/// The display without the F inserted; reported for comparison only.
Estimate index_odd_plain(const ModularModule& m, const MatrixAlgebraElement& v,
                         const CharacterWeight& w);

/// tau((E - E v* E v E)^2) - tau((E - E v E v* E)^2) with E = (1 + F) / 2 and
/// tau the amplified weight: the modular index of E v E read off from the
/// two defect projections.
Estimate index_odd_trace(const ModularModule& m, const MatrixAlgebraElement& v,
                         const CharacterWeight& w);

struct KernelReport {
  int kernel_dim = 0;
  int cokernel_dim = 0;
  double kernel_weight = 0.0;
  double cokernel_weight = 0.0;
  double index = 0.0;
  /// Largest singular value under the threshold over the smallest above it.
  double gap_ratio = 0.0;
  double largest_below = 0.0;
  double smallest_above = 0.0;
  std::optional<double> overlap;  // with xi_0, DLSSV only
};

/// Kernel and cokernel of E v E. Domain: E-range vectors at depth >= 2
/// (DLSSV) or >= 1 (basic); codomain: the whole E-range. Throws NoSpectralGap.
KernelReport modular_index_kernel(const ModularModule& m, const MatrixAlgebraElement& v,
                                  const CharacterWeight& w, double kernel_tol = 1e-6);

/// |e_{k,sign}><e_{k,sign}| on the doubled Podleś space.
TruncatedOperator spectral_projection(int k, int sign, const Window& w);

/// f_t on l2(N) tensor C^2 (component-major) built from the shift S e_k = e_{k+1}.
TruncatedOperator homotopy_f(double t, int branch, int N);
/// Circle action generator on l2(N) tensor C^2: 2k+1 on component 0, 2k-1 on component 1.
VecD u1_generator(int N);
/// l2(N) tensor C^2 basis used by homotopy_f.
BasisPtr homotopy_basis(int N);

/// sum_{k<=K} (a_{k+1} - a_k) and sum_{k<=K} (b_k - b_{k+1}) with
/// a_k = sqrt(s^2 + q^2k) sqrt(1 + s^2 q^2k) q^2k, b_k = sqrt(s^2 + q^2k) sqrt(1 + s^2 q^2k).
std::pair<double, double> telescoping_sums(double q, double s, int K);

}  // namespace qmod

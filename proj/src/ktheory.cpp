#include "qmod/ktheory.hpp"

#include <cmath>
#include <numeric>

#include "internal.hpp"

namespace qmod {

using Triplet = Eigen::Triplet<cd>;

// ---------------------------------------------------------------------------
// Symbolic layer.

int MatrixAlgebraElement::degree() const {
  int d = 0;
  for (const auto& e : entries) d = std::max(d, e.degree());
  return d;
}

MatrixAlgebraElement MatrixAlgebraElement::adjoint() const {
  MatrixAlgebraElement out{dim, {}, denominator.conj()};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.entries.push_back(involution(at(j, i)));
  return out;
}

MatrixAlgebraElement MatrixAlgebraElement::operator*(const MatrixAlgebraElement& o) const {
  if (dim != o.dim) throw std::invalid_argument("matrix dimensions differ");
  if (presentation() != o.presentation()) throw AlgebraMismatch();
  MatrixAlgebraElement out{dim, {}, denominator * o.denominator};
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      NCPolynomial acc(presentation());
      for (int k = 0; k < dim; ++k) acc = acc + at(i, k) * o.at(k, j);
      out.entries.push_back(acc);
    }
  }
  return out;
}

MatrixAlgebraElement MatrixAlgebraElement::identity(const PresentationPtr& p, int dim) {
  MatrixAlgebraElement out{dim, {}, 1};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.entries.push_back(NCPolynomial::constant(p, i == j ? 1 : 0));
  return out;
}

VecD CharacterWeight::eval(const Params& p) const {
  VecD out(delta.size());
  for (size_t i = 0; i < delta.size(); ++i) out[i] = delta[i].eval(p.q, p.s).real();
  return out;
}

bool is_projection(const MatrixAlgebraElement& p) {
  const MatrixAlgebraElement pp = p * p;
  const MatrixAlgebraElement ps = p.adjoint();
  if (!(ps.denominator == p.denominator)) return false;
  for (size_t i = 0; i < p.entries.size(); ++i) {
    if (!(ps.entries[i] == p.entries[i])) return false;
    // (x / d)^2 = x / d  <=>  x^2 = d x
    if (!(pp.entries[i] == p.entries[i].scaled(p.denominator))) return false;
  }
  return true;
}

bool is_unitary(const MatrixAlgebraElement& v) {
  const MatrixAlgebraElement one = MatrixAlgebraElement::identity(v.presentation(), v.dim);
  const Coeff d2 = v.denominator * v.denominator.conj();
  const MatrixAlgebraElement a = v.adjoint() * v, b = v * v.adjoint();
  for (size_t i = 0; i < one.entries.size(); ++i) {
    const NCPolynomial target = one.entries[i].scaled(d2);
    if (!(a.entries[i] == target) || !(b.entries[i] == target)) return false;
  }
  return true;
}

bool is_invariant(const MatrixAlgebraElement& x, const CharacterWeight& w) {
  if (static_cast<int>(w.delta.size()) != x.dim) return false;
  for (int i = 0; i < x.dim; ++i) {
    for (int j = 0; j < x.dim; ++j) {
      // delta_j / delta_i for monomial weights
      const auto& di = w.delta[i].terms();
      const auto& dj = w.delta[j].terms();
      if (di.size() != 1 || dj.size() != 1) return false;
      const auto& [ei, ci] = *di.begin();
      const auto& [ej, cj] = *dj.begin();
      const Coeff ratio = Coeff::monomial({1, 0}, ej.q - ei.q, ej.s - ei.s);
      if (!(cj == ci)) return false;
      if (!(apply_sigma(x.at(i, j)).scaled(ratio) == x.at(i, j))) return false;
    }
  }
  return true;
}

namespace {

CharacterWeight standard_delta() { return {{Coeff::q_pow(-1), Coeff::q_pow(1)}}; }

}  // namespace

std::pair<MatrixAlgebraElement, CharacterWeight> podles_projection_P() {
  const PresentationPtr P = Presentation::podles();
  const auto A = NCPolynomial::generator(P, "A");
  const auto one = NCPolynomial::constant(P, 1);
  MatrixAlgebraElement p{2,
                         {one - A.scaled(Coeff::q_pow(2)), NCPolynomial::generator(P, "B"),
                          NCPolynomial::generator(P, "B*"), A + one.scaled(Coeff::s_pow(2))},
                         Coeff(1) + Coeff::s_pow(2)};
  const CharacterWeight w = standard_delta();
  if (!is_projection(p)) throw PresentationError("P is not a projection");
  if (!is_invariant(p, w)) throw PresentationError("P is not invariant");
  return {p, w};
}

std::pair<MatrixAlgebraElement, CharacterWeight> suq2_unitary_V() {
  const PresentationPtr P = Presentation::suq2();
  const auto g = [&](const char* n) { return NCPolynomial::generator(P, n); };
  MatrixAlgebraElement v{2, {-g("b*").scaled(Coeff::q_pow(1)), g("a*"), g("a"), g("b")}, 1};
  const CharacterWeight w = standard_delta();
  if (!is_unitary(v)) throw PresentationError("V is not unitary");
  if (!is_invariant(v, w)) throw PresentationError("V is not invariant");
  return {v, w};
}

// ---------------------------------------------------------------------------
// Operators on H tensor C^d.

namespace {

TruncatedOperator blocks_to_operator(const ModularModule& m, std::vector<SpMat> blocks, int d,
                                     cd scale) {
  const BasisPtr b = amplify(m.basis(), d);
  return {b, b, SpMat(block_matrix(blocks, d) * scale)};
}

VecD amplified_diag(const VecD& v, int d) {
  VecD out(v.size() * d);
  for (int c = 0; c < d; ++c) out.segment(c * v.size(), v.size()) = v;
  return out;
}

SpMat diag_mat(const VecD& v) {
  std::vector<Triplet> t;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) t.emplace_back(i, i, v[i]);
  SpMat M(v.size(), v.size());
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

SpMat amplified_F(const ModularModule& m, int d) {
  std::vector<SpMat> blocks(d * d, SpMat(m.basis()->size(), m.basis()->size()));
  for (int c = 0; c < d; ++c) blocks[c * d + c] = m.F().mat;
  return block_matrix(blocks, d);
}

void check_presentation(const ModularModule& m, const MatrixAlgebraElement& x) {
  if (x.presentation() != m.presentation()) throw AlgebraMismatch();
}

cd inverse_denominator(const ModularModule& m, const MatrixAlgebraElement& x) {
  return 1.0 / x.denominator.eval(m.params().q, m.params().s);
}

Estimate weighted_trace(const Basis& b, const VecD& weight, const SpMat& A, const SpMat& B,
                        const std::vector<char>& mask) {
  VecC c = diag_of_product(A, B);
  for (int i = 0; i < c.size(); ++i) c[i] *= weight[i];
  return level_trace(b, c, mask);
}

}  // namespace

TruncatedOperator realize_matrix(const ModularModule& m, const MatrixAlgebraElement& x) {
  check_presentation(m, x);
  std::vector<SpMat> blocks;
  for (const auto& e : x.entries) blocks.push_back(m.represent(e).mat);
  return blocks_to_operator(m, std::move(blocks), x.dim, inverse_denominator(m, x));
}

TruncatedOperator commutator_matrix(const ModularModule& m, const MatrixAlgebraElement& x) {
  check_presentation(m, x);
  std::vector<SpMat> blocks;
  for (const auto& e : x.entries) blocks.push_back(m.commutator(e));
  return blocks_to_operator(m, std::move(blocks), x.dim, inverse_denominator(m, x));
}

VecD amplified_weight(const ModularModule& m, const VecD& delta) {
  const int n = m.basis()->size();
  VecD out(n * delta.size());
  for (int c = 0; c < delta.size(); ++c) out.segment(c * n, n) = m.K() * delta[c];
  return out;
}

Estimate index_even(const ModularModule& m, const MatrixAlgebraElement& p, const CharacterWeight& w) {
  if (m.parity() != Parity::even) throw std::invalid_argument("index_even: module is odd");
  if (!is_invariant(p, w)) throw PresentationError("index_even: p is not invariant");
  const TruncatedOperator P = realize_matrix(m, p);
  const SpMat C = commutator_matrix(m, p).mat;
  const int d = p.dim;
  const int n = m.summability() / 2;
  const SpMat G = diag_mat(amplified_diag(m.gamma()->mat.diagonal().real(), d));
  SpMat M = G * P.mat;
  for (int i = 0; i + 1 < 2 * n; ++i) M = SpMat(M * C);
  const std::vector<char> mask = depth_mask(*P.domain, (2 * n + 1) * p.degree(), true);
  const Estimate e = weighted_trace(*P.domain, amplified_weight(m, w.eval(m.params())), M, C, mask);
  return e.scaled(n % 2 == 0 ? 1.0 : -1.0);
}

Estimate index_even(const ModularModule& m, const TruncatedOperator& p, const VecD& delta,
                    int exact_depth) {
  if (m.parity() != Parity::even) throw std::invalid_argument("index_even: module is odd");
  const int d = static_cast<int>(delta.size());
  if (p.mat.rows() != d * m.basis()->size())
    throw std::invalid_argument("index_even: operator does not match the amplified window");
  const BasisPtr b = amplify(m.basis(), d);
  const SpMat F = amplified_F(m, d);
  const SpMat C = F * p.mat - p.mat * F;
  const int n = m.summability() / 2;
  const SpMat G = diag_mat(amplified_diag(m.gamma()->mat.diagonal().real(), d));
  SpMat M = G * p.mat;
  for (int i = 0; i + 1 < 2 * n; ++i) M = SpMat(M * C);
  const Estimate e = weighted_trace(*b, amplified_weight(m, delta), M, C,
                                    depth_mask(*b, exact_depth, false));
  return e.scaled(n % 2 == 0 ? 1.0 : -1.0);
}

namespace {

Estimate odd_pairing(const ModularModule& m, const MatrixAlgebraElement& v, const CharacterWeight& w,
                     bool insert_F) {
  if (m.parity() != Parity::odd) throw std::invalid_argument("index_odd: module is even");
  if (!is_invariant(v, w)) throw PresentationError("index_odd: v is not invariant");
  const int n = 2;
  const MatrixAlgebraElement vs = v.adjoint();
  const SpMat X = SpMat(commutator_matrix(m, v).mat * commutator_matrix(m, vs).mat);
  const BasisPtr b = amplify(m.basis(), v.dim);
  SpMat M = insert_F ? SpMat(amplified_F(m, v.dim) * X) : X;
  for (int i = 0; i + 2 < n; ++i) M = SpMat(M * X);
  const std::vector<char> mask = depth_mask(*b, 2 * n * v.degree(), true);
  const Estimate e = weighted_trace(*b, amplified_weight(m, w.eval(m.params())), M, X, mask);
  return e.scaled((n % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0, 2 * n));
}

}  // namespace

Estimate index_odd(const ModularModule& m, const MatrixAlgebraElement& v, const CharacterWeight& w) {
  return odd_pairing(m, v, w, true);
}

Estimate index_odd_plain(const ModularModule& m, const MatrixAlgebraElement& v,
                         const CharacterWeight& w) {
  return odd_pairing(m, v, w, false);
}

Estimate index_odd_trace(const ModularModule& m, const MatrixAlgebraElement& v,
                         const CharacterWeight& w) {
  if (m.parity() != Parity::odd) throw std::invalid_argument("index_odd_trace: module is even");
  const SpMat V = realize_matrix(m, v).mat;
  const SpMat Vs = V.adjoint();
  const BasisPtr b = amplify(m.basis(), v.dim);
  const VecD f = amplified_diag(m.F_diag(), v.dim);
  const SpMat E = diag_mat((f.array() + 1.0) / 2.0);
  const SpMat X = E - SpMat(E * Vs * E * V * E);
  const SpMat Y = E - SpMat(E * V * E * Vs * E);
  const std::vector<char> mask = depth_mask(*b, 4 * v.degree(), false);
  const VecD K = amplified_weight(m, w.eval(m.params()));
  return weighted_trace(*b, K, X, X, mask) - weighted_trace(*b, K, Y, Y, mask);
}

// ---------------------------------------------------------------------------
// Kernel index.

namespace {

struct KernelPart {
  int dim = 0;
  double weight = 0.0;
  double largest_below = 0.0;
  double smallest_above = std::numeric_limits<double>::infinity();
  std::vector<VecC> vectors;  // on the full amplified space
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Kernel of W restricted to columns `dom` and rows `cod`, block by block.
KernelPart restricted_kernel(const SpMat& W, const std::vector<int>& dom, const std::vector<int>& cod,
                             const VecD& weight, double tol) {
  const int n = static_cast<int>(W.rows());
  std::vector<int> row_pos(n, -1);
  for (size_t r = 0; r < cod.size(); ++r) row_pos[cod[r]] = static_cast<int>(r);
  // Union columns that share a row.
  std::vector<int> parent(dom.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> row_owner(cod.size(), -1);
  for (size_t c = 0; c < dom.size(); ++c) {
    for (SpMat::InnerIterator it(W, dom[c]); it; ++it) {
      const int r = row_pos[it.row()];
      if (r < 0 || it.value() == 0.0) continue;
      if (row_owner[r] < 0) {
        row_owner[r] = static_cast<int>(c);
      } else {
        parent[find_root(parent, static_cast<int>(c))] = find_root(parent, row_owner[r]);
      }
    }
  }
  std::map<int, std::vector<int>> cols_of, rows_of;
  for (size_t c = 0; c < dom.size(); ++c) cols_of[find_root(parent, static_cast<int>(c))].push_back(c);
  for (size_t r = 0; r < cod.size(); ++r)
    if (row_owner[r] >= 0) rows_of[find_root(parent, row_owner[r])].push_back(r);

  KernelPart out;
  for (const auto& [root, cols] : cols_of) {
    const std::vector<int>& rows = rows_of[root];
    std::vector<int> local_row(cod.size(), -1);
    for (size_t r = 0; r < rows.size(); ++r) local_row[rows[r]] = static_cast<int>(r);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
      for (SpMat::InnerIterator it(W, dom[cols[c]]); it; ++it) {
        const int r = row_pos[it.row()];
        if (r >= 0 && local_row[r] >= 0) M(local_row[r], c) = it.value();
      }
    }
    const int nc = static_cast<int>(cols.size());
    Eigen::VectorXd sv = Eigen::VectorXd::Zero(nc);
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(nc, nc);
    if (M.rows() > 0) {
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
      V = svd.matrixV();
      const auto& s = svd.singularValues();
      for (int i = 0; i < s.size(); ++i) sv[i] = s[i];
    }
    for (int i = 0; i < nc; ++i) {
      if (sv[i] < tol) {
        out.largest_below = std::max(out.largest_below, sv[i]);
        VecC full = VecC::Zero(n);
        for (int c = 0; c < nc; ++c) full[dom[cols[c]]] = V(c, i);
        double wgt = 0.0;
        for (int c = 0; c < nc; ++c) wgt += weight[dom[cols[c]]] * std::norm(V(c, i));
        out.weight += wgt;
        out.vectors.push_back(std::move(full));
        ++out.dim;
      } else {
        out.smallest_above = std::min(out.smallest_above, sv[i]);
      }
    }
  }
  return out;
}

}  // namespace

KernelReport modular_index_kernel(const ModularModule& m, const MatrixAlgebraElement& v,
                                  const CharacterWeight& w, double kernel_tol) {
  if (m.parity() != Parity::odd) throw std::invalid_argument("modular_index_kernel: module is even");
  const SpMat V = realize_matrix(m, v).mat;
  const SpMat Vs = V.adjoint();
  const BasisPtr b = amplify(m.basis(), v.dim);
  const VecD f = amplified_diag(m.F_diag(), v.dim);
  const int min_depth = m.kind() == ModuleKind::suq2_dlssv ? 2 : 1;
  std::vector<int> dom, cod;
  for (int i = 0; i < b->size(); ++i) {
    if (f[i] <= 0) continue;
    cod.push_back(i);
    if (b->depth(i) >= min_depth) dom.push_back(i);
  }
  const VecD K = amplified_weight(m, w.eval(m.params()));
  const KernelPart ker = restricted_kernel(V, dom, cod, K, kernel_tol);
  const KernelPart coker = restricted_kernel(Vs, dom, cod, K, kernel_tol);

  KernelReport r;
  r.kernel_dim = ker.dim;
  r.cokernel_dim = coker.dim;
  r.kernel_weight = ker.weight;
  r.cokernel_weight = coker.weight;
  r.index = ker.weight - coker.weight;
  r.largest_below = std::max(ker.largest_below, coker.largest_below);
  r.smallest_above = std::min(ker.smallest_above, coker.smallest_above);
  r.gap_ratio = r.largest_below / r.smallest_above;
  if (!(r.gap_ratio < 0.1)) {
    throw NoSpectralGap("no spectral gap: ratio " + std::to_string(r.gap_ratio) +
                        " between the kernel threshold neighbours");
  }
  if (m.kind() == ModuleKind::suq2_dlssv && v.dim == 2) {
    const int n = m.basis()->size();
    VecC xi = VecC::Zero(b->size());
    xi[m.basis()->find(DlssvIndex{0, 0, -1, true})] = 1.0;
    xi[n + m.basis()->find(DlssvIndex{0, 0, 1, true})] = -1.0 / m.params().q;
    xi.normalize();
    double ov = 0.0;
    for (const VecC& k : ker.vectors) ov += std::norm(k.dot(xi));
    r.overlap = std::sqrt(ov);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Spectral projections and the homotopy.

TruncatedOperator spectral_projection(int k, int sign, const Window& w) {
  if (k < 0 || k >= w.N) throw WindowUnderflow("spectral projection index outside the window");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const BasisPtr b = podles_basis(w.N);
  VecD d = VecD::Zero(b->size());
  d[b->find(PodlesIndex{k, sign})] = 1.0;
  return diagonal(b, d);
}

BasisPtr homotopy_basis(int N) { return amplify(podles_basis(N, +1), 2); }

TruncatedOperator homotopy_f(double t, int branch, int N) {
  if (t < 0 || t > 1) throw std::invalid_argument("homotopy parameter outside [0, 1]");
  const BasisPtr b = homotopy_basis(N);
  const double c = std::sqrt(1 - t * t);
  std::vector<Triplet> e;
  for (int k = 0; k < N; ++k) {
    e.emplace_back(k, k, 0.5 * (1 + c));
    double lower = k == 0 ? 0.0 : 0.5 * (1 - c);
    if (k == 0 && branch > 0) lower = 1.0;
    if (lower != 0.0) e.emplace_back(N + k, N + k, lower);
    if (k + 1 < N && t != 0.0) {
      e.emplace_back(N + k + 1, k, 0.5 * t);  // t S / 2
      e.emplace_back(k, N + k + 1, 0.5 * t);  // t S* / 2
    }
  }
  SpMat M(2 * N, 2 * N);
  M.setFromTriplets(e.begin(), e.end());
  return {b, b, M};
}

VecD u1_generator(int N) {
  VecD g(2 * N);
  for (int k = 0; k < N; ++k) {
    g[k] = 2 * k + 1;
    g[N + k] = 2 * k - 1;
  }
  return g;
}

std::pair<double, double> telescoping_sums(double q, double s, int K) {
  const auto base = [&](int k) {
    const double x = std::pow(q, 2 * k);
    return std::sqrt(s * s + x) * std::sqrt(1 + s * s * x);
  };
  double sa = 0.0, sb = 0.0;
  for (int k = 0; k <= K; ++k) {
    sa += base(k + 1) * std::pow(q, 2 * (k + 1)) - base(k) * std::pow(q, 2 * k);
    sb += base(k) - base(k + 1);
  }
  return {sa, sb};
}

}  // namespace qmod

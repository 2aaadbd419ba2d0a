#include <cmath>
#include <iomanip>
#include <sstream>

#include "internal.hpp"

namespace qmod {

using Triplet = Eigen::Triplet<cd>;

// ---------------------------------------------------------------------------
// Sparse helpers.

VecC diag_of_product(const SpMat& A, const SpMat& B) {
  // Row-major A and row-major B^T give matching inner loops.
  const Eigen::SparseMatrix<cd, Eigen::RowMajor> Ar = A;
  const Eigen::SparseMatrix<cd, Eigen::RowMajor> Bt = B.transpose();
  VecC out = VecC::Zero(A.rows());
  for (int i = 0; i < Ar.outerSize(); ++i) {
    Eigen::SparseMatrix<cd, Eigen::RowMajor>::InnerIterator x(Ar, i), y(Bt, i);
    cd acc = 0.0;
    while (x && y) {
      if (x.index() < y.index()) {
        ++x;
      } else if (y.index() < x.index()) {
        ++y;
      } else {
        acc += x.value() * y.value();
        ++x;
        ++y;
      }
    }
    out[i] = acc;
  }
  return out;
}

SpMat block_matrix(const std::vector<SpMat>& blocks, int d) {
  const int n = static_cast<int>(blocks.at(0).rows());
  std::vector<Triplet> t;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const SpMat& B = blocks[r * d + c];
      for (int k = 0; k < B.outerSize(); ++k)
        for (SpMat::InnerIterator it(B, k); it; ++it)
          t.emplace_back(r * n + it.row(), c * n + it.col(), it.value());
    }
  }
  SpMat out(d * n, d * n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// ---------------------------------------------------------------------------
// TruncatedOperator.

TruncatedOperator TruncatedOperator::adjoint() const {
  return {codomain, domain, SpMat(mat.adjoint())};
}

TruncatedOperator TruncatedOperator::operator*(const TruncatedOperator& o) const {
  return {o.domain, codomain, SpMat(mat * o.mat)};
}

TruncatedOperator TruncatedOperator::operator+(const TruncatedOperator& o) const {
  return {domain, codomain, SpMat(mat + o.mat)};
}

TruncatedOperator TruncatedOperator::operator-(const TruncatedOperator& o) const {
  return {domain, codomain, SpMat(mat - o.mat)};
}

TruncatedOperator TruncatedOperator::scaled(cd c) const { return {domain, codomain, SpMat(mat * c)}; }

TruncatedOperator identity(const BasisPtr& b) {
  SpMat I(b->size(), b->size());
  I.setIdentity();
  return {b, b, I};
}

TruncatedOperator diagonal(const BasisPtr& b, const VecD& d) {
  std::vector<Triplet> t;
  for (int i = 0; i < d.size(); ++i) t.emplace_back(i, i, d[i]);
  SpMat M(b->size(), b->size());
  M.setFromTriplets(t.begin(), t.end());
  return {b, b, M};
}

// ---------------------------------------------------------------------------
// Representation.

namespace {

SpMat from_triplets(int n, const std::vector<Triplet>& t) {
  SpMat M(n, n);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

int max_depth(const Basis& b) {
  int d = 0;
  for (int i = 0; i < b.size(); ++i) d = std::max(d, b.depth(i));
  return d;
}

}  // namespace

Representation::Representation(ModuleKind kind, Params p, Window w, int podles_which)
    : kind_(kind), params_(p), window_(w) {
  const double q = p.q, s = p.s;
  if (kind == ModuleKind::podles) {
    pres_ = Presentation::podles();
    basis_ = podles_basis(w.N, podles_which);
    const int n = basis_->size();
    std::vector<Triplet> A, B;
    for (int i = 0; i < n; ++i) {
      const auto& e = std::get<PodlesIndex>((*basis_)[i]);
      const double x = std::pow(q, 2 * e.k);
      A.emplace_back(i, i, e.sign > 0 ? x : -s * s * x);
      if (e.k == 0) continue;
      const double c = e.sign > 0 ? std::sqrt(1 - x) * std::sqrt(s * s + x)
                                  : s * std::sqrt(1 - x) * std::sqrt(1 + s * s * x);
      B.emplace_back(basis_->find(PodlesIndex{e.k - 1, e.sign}), i, c);
    }
    gens_ = {from_triplets(n, A), from_triplets(n, B)};
    gens_.push_back(gens_[1].adjoint());
  } else if (kind == ModuleKind::suq2_basic) {
    pres_ = Presentation::suq2();
    basis_ = basic_basis(w.N, w.L);
    const int n = basis_->size();
    std::vector<Triplet> a, b;
    for (int i = 0; i < n; ++i) {
      const auto& e = std::get<BasicIndex>((*basis_)[i]);
      const int ta = basis_->find(BasicIndex{e.k + 1, e.l});
      if (ta >= 0) a.emplace_back(ta, i, std::sqrt(1 - std::pow(q, 2 * e.k + 2)));
      const int tb = basis_->find(BasicIndex{e.k, e.l + 1});
      if (tb >= 0) b.emplace_back(tb, i, std::pow(q, e.k));
    }
    const SpMat am = from_triplets(n, a), bm = from_triplets(n, b);
    gens_ = {am, SpMat(am.adjoint()), bm, SpMat(bm.adjoint())};
  } else {
    pres_ = Presentation::suq2();
    basis_ = dlssv_basis(w.jmax2);
    SpMat am, bm;
    build_dlssv_generators(q, *basis_, w.jmax2, am, bm, lost_);
    gens_ = {am, SpMat(am.adjoint()), bm, SpMat(bm.adjoint())};
  }
}

SpMat Representation::word(const Word& w) const {
  const int n = basis_->size();
  if (w.empty()) {
    SpMat I(n, n);
    I.setIdentity();
    return I;
  }
  SpMat M = gens_.at(w[0]);
  for (size_t i = 1; i < w.size(); ++i) M = M * gens_.at(w[i]);
  return M;
}

SpMat Representation::matrix(const NCPolynomial::Terms& terms) const {
  const int n = basis_->size();
  SpMat out(n, n);
  for (const auto& [w, c] : terms) out += word(w) * c.eval(params_.q, params_.s);
  return out;
}

TruncatedOperator Representation::represent(const NCPolynomial& p) const {
  if (p.presentation() != pres_) throw AlgebraMismatch();
  if (p.degree() > max_depth(*basis_))
    throw WindowUnderflow("window underflow: degree " + std::to_string(p.degree()) +
                          " exceeds window depth " + std::to_string(max_depth(*basis_)));
  return {basis_, basis_, matrix(p.terms())};
}

// ---------------------------------------------------------------------------
// ModularModule.

ModularModule::ModularModule(ModuleKind kind, Params p, Window w)
    : kind_(kind), params_(p), window_(w), rep_(kind, p, w) {
  const BasisPtr& b = rep_.basis();
  const int n = b->size();
  const double q = p.q, s = p.s;
  K_.resize(n);
  if (kind == ModuleKind::podles) {
    summability_ = 2;
    parity_ = Parity::even;
    std::vector<Triplet> f;
    VecD g(n);
    for (int i = 0; i < n; ++i) {
      const auto& e = std::get<PodlesIndex>((*b)[i]);
      K_[i] = std::pow(q, -2.0 * e.k);
      g[i] = e.sign;
      f.emplace_back(b->find(PodlesIndex{e.k, -e.sign}), i, 1.0);
    }
    F_ = {b, b, from_triplets(n, f)};
    gamma_ = diagonal(b, g);

    plus_ = std::make_unique<Representation>(kind, p, w, +1);
    minus_ = std::make_unique<Representation>(kind, p, w, -1);
    const int N = w.N;
    std::vector<Triplet> dA, dB;
    for (int k = 0; k < N; ++k) {
      const double x = std::pow(q, 2 * k);
      dA.emplace_back(k, k, x * (1 + s * s));
      if (k == 0) continue;
      // sqrt(s^2+x) - s sqrt(1+s^2 x) rationalized
      const double diff =
          x * (1 - s * s * s * s) / (std::sqrt(s * s + x) + s * std::sqrt(1 + s * s * x));
      dB.emplace_back(k - 1, k, std::sqrt(1 - x) * diff);
    }
    diff_ = {from_triplets(N, dA), from_triplets(N, dB)};
    diff_.push_back(diff_[1].adjoint());
  } else {
    summability_ = 3;
    parity_ = Parity::odd;
    F_diag_.resize(n);
    for (int i = 0; i < n; ++i) {
      if (kind == ModuleKind::suq2_basic) {
        const auto& e = std::get<BasicIndex>((*b)[i]);
        K_[i] = std::pow(q, -2.0 * e.k);
        F_diag_[i] = e.l >= 0 ? 1.0 : -1.0;
      } else {
        const auto& e = std::get<DlssvIndex>((*b)[i]);
        K_[i] = std::pow(q, -static_cast<double>(e.m2 + e.n2));
        F_diag_[i] = e.up ? 1.0 : -1.0;
      }
    }
    F_ = diagonal(b, F_diag_);
  }
}

SpMat ModularModule::podles_difference(const Word& w) const {
  const int N = window_.N;
  SpMat out(N, N);
  if (w.empty()) return out;
  // pi_+(w) - pi_-(w) = sum_i pi_-(w_<i) D(w_i) pi_+(w_>i)
  std::vector<SpMat> suffix(w.size() + 1);
  suffix[w.size()] = plus_->word({});
  for (size_t i = w.size(); i-- > 0;) suffix[i] = plus_->generator(w[i]) * suffix[i + 1];
  SpMat prefix = minus_->word({});
  for (size_t i = 0; i < w.size(); ++i) {
    out += prefix * diff_[w[i]] * suffix[i + 1];
    prefix = prefix * minus_->generator(w[i]);
  }
  return out;
}

SpMat ModularModule::commutator_word(const Word& w) const {
  if (kind_ == ModuleKind::podles) {
    const SpMat D = podles_difference(w);
    const SpMat Z(D.rows(), D.cols());
    return block_matrix({Z, SpMat(-D), D, Z}, 2);
  }
  SpMat M = rep_.word(w);
  for (int k = 0; k < M.outerSize(); ++k)
    for (SpMat::InnerIterator it(M, k); it; ++it)
      it.valueRef() *= F_diag_[it.row()] - F_diag_[it.col()];
  M.prune(cd(0.0));
  return M;
}

SpMat ModularModule::commutator(const NCPolynomial& p) const {
  const int n = basis()->size();
  SpMat out(n, n);
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) continue;
    out += commutator_word(w) * c.eval(params_.q, params_.s);
  }
  return out;
}

std::vector<char> ModularModule::exact_mask(int degree, bool commutators_only) const {
  const Basis& b = *basis();
  std::vector<char> mask(b.size());
  for (int i = 0; i < b.size(); ++i)
    mask[i] = (commutators_only ? b.level_depth(i) : b.depth(i)) >= degree;
  return mask;
}

ModulePtr build_module(ModuleKind kind, Params p, Window w) {
  return std::make_shared<const ModularModule>(kind, p, w);
}

// ---------------------------------------------------------------------------
// Free functions.

TruncatedOperator represent_podles(const NCPolynomial& p, Params params, const Window& w,
                                   int which) {
  return Representation(ModuleKind::podles, params, w, which).represent(p);
}

TruncatedOperator represent_suq2_basic(const NCPolynomial& p, double q, const Window& w) {
  return Representation(ModuleKind::suq2_basic, {q, 1.0}, w).represent(p);
}

TruncatedOperator represent_dlssv(const NCPolynomial& p, double q, const Window& w) {
  return Representation(ModuleKind::suq2_dlssv, {q, 1.0}, w).represent(p);
}

TruncatedOperator commutator_F(const ModularModule& m, const TruncatedOperator& x) {
  return m.F() * x - x * m.F();
}

double interior_difference(const SpMat& A, const SpMat& B, const Basis& basis, int margin) {
  const SpMat D = A - B;
  double worst = 0.0;
  for (int k = 0; k < D.outerSize(); ++k) {
    if (basis.depth(k) < margin) continue;
    double col = 0.0;
    for (SpMat::InnerIterator it(D, k); it; ++it) col += std::norm(it.value());
    worst = std::max(worst, std::sqrt(col));
  }
  return worst;
}

std::vector<RelationResidual> relations_residual(ModuleKind kind, Params p, const Window& w) {
  const Representation rep(kind, p, w);
  const PresentationPtr& pres = rep.presentation();
  const int n = rep.basis()->size();
  const SpMat Z(n, n);
  std::vector<RelationResidual> out;
  for (const auto& [name, terms] : defining_relations(pres)) {
    out.push_back({name, interior_difference(rep.matrix(terms), Z, *rep.basis(), w.margin)});
  }
  // pi(x*) against pi(x)^dagger, where x* is rewritten to normal form.
  for (const Word& wd : basis_words(pres, 2)) {
    if (wd.empty()) continue;
    const NCPolynomial x = NCPolynomial::word(pres, wd);
    const SpMat lhs = rep.matrix(involution(x).terms());
    const SpMat rhs = rep.matrix(x.terms()).adjoint();
    out.push_back({"star(" + pres->word_text(wd) + ")",
                   interior_difference(lhs, rhs, *rep.basis(), w.margin)});
  }
  if (kind == ModuleKind::suq2_dlssv) out.push_back({"dropped coefficients", rep.lost_weight()});
  return out;
}

TruncatedOperator realize_free_product(const FreeProductElement& x, const ModularModule& m) {
  const BasisPtr& b = m.basis();
  const int n = b->size();
  const double q = m.params().q, s = m.params().s;
  const SpMat& F = m.F().mat;
  SpMat out(n, n);
  const SpanningForm sf = to_spanning_form(x, 64);
  for (const auto& [t, c] : sf.terms()) {
    SpMat term = m.word(t.a0) * c.eval(q, s);
    for (const Word& w : t.qs) term = SpMat(term * F) * m.commutator_word(w);
    out += term;
  }
  return {b, b, out};
}

std::string dump_operator_json(const TruncatedOperator& op) {
  const Eigen::MatrixXcd D = Eigen::MatrixXcd(op.mat);
  std::ostringstream os;
  os << std::setprecision(17) << "[";
  for (int r = 0; r < D.rows(); ++r) {
    os << (r ? ",\n [" : "[");
    for (int c = 0; c < D.cols(); ++c) {
      os << (c ? "," : "") << "[" << D(r, c).real() << "," << D(r, c).imag() << "]";
    }
    os << "]";
  }
  os << "]\n";
  return os.str();
}

}  // namespace qmod

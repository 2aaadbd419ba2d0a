#include "qmod/modular.hpp"

#include <cmath>
#include <sstream>

#include "internal.hpp"

namespace qmod {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

int total_degree(const std::vector<Word>& ws) {
  int d = 0;
  for (const Word& w : ws) d += static_cast<int>(w.size());
  return d;
}

int suggested_window(const ModularModule& m) {
  if (m.kind() == ModuleKind::suq2_dlssv) return m.window().jmax2;  // twice J_max
  return 2 * m.window().N;
}

}  // namespace

std::vector<char> depth_mask(const Basis& b, int degree, bool level_only) {
  std::vector<char> mask(b.size());
  for (int i = 0; i < b.size(); ++i) mask[i] = (level_only ? b.level_depth(i) : b.depth(i)) >= degree;
  return mask;
}

LevelSeries& LevelSeries::add(const LevelSeries& o, cd c) {
  if (o.per_level.size() > per_level.size()) per_level.resize(o.per_level.size(), 0.0);
  for (size_t l = 0; l < o.per_level.size(); ++l) per_level[l] += c * o.per_level[l];
  abs_sum += std::abs(c) * o.abs_sum;
  return *this;
}

Estimate LevelSeries::estimate() const {
  if (per_level.empty()) return {};
  const int top = static_cast<int>(per_level.size()) - 1;
  cd total = 0.0;
  for (const cd& x : per_level) total += x;
  const double floor = 64 * eps * abs_sum;
  double s1 = 0.0, s2 = 0.0;
  for (int l = top / 4; l < top / 2; ++l) s1 += std::abs(per_level[l]);
  for (int l = top / 2; l <= top; ++l) s2 += std::abs(per_level[l]);
  double tail;
  if (s2 <= floor) {
    tail = floor;
  } else if (s1 == 0.0) {
    tail = std::numeric_limits<double>::infinity();
  } else {
    // Per-level ratio from the block ratio, then the geometric remainder
    // past the top level, doubled for safety.
    const int shift = top / 2 - top / 4, len = top - top / 2 + 1;
    const double rho = std::pow(s2 / s1, 1.0 / shift);
    const double rn = std::pow(rho, len);
    tail = rho < 1 ? std::max(2 * s2 * rn / (1 - rn), floor) : std::numeric_limits<double>::infinity();
  }
  return {total, tail};
}

LevelSeries level_series(const Basis& b, const VecC& c, const std::vector<char>& mask) {
  int top = -1;
  for (int i = 0; i < b.size(); ++i)
    if (mask[i]) top = std::max(top, b.level(i));
  LevelSeries out;
  if (top < 0) return out;
  out.per_level.assign(top + 1, 0.0);
  for (int i = 0; i < b.size(); ++i) {
    if (!mask[i]) continue;
    out.per_level[b.level(i)] += c[i];
    out.abs_sum += std::abs(c[i]);
  }
  return out;
}

Estimate level_trace(const Basis& b, const VecC& c, const std::vector<char>& mask) {
  return level_series(b, c, mask).estimate();
}

Estimate weight_eval(const ModularModule& m, const TruncatedOperator& T, int exact_depth,
                     double tolerance) {
  const Basis& b = *m.basis();
  if (T.mat.rows() != b.size() || T.mat.cols() != b.size())
    throw std::invalid_argument("weight_eval: operator is not square on the window");
  VecC c = T.mat.diagonal();
  for (int i = 0; i < b.size(); ++i) c[i] *= m.K()[i];
  const Estimate e = level_trace(b, c, depth_mask(b, exact_depth, false));
  if (!(e.tail <= tolerance)) {
    std::ostringstream os;
    os << "window too small: tail " << e.tail << " exceeds " << tolerance << "; try "
       << (m.kind() == ModuleKind::suq2_dlssv ? "--jmax " : "--N ") << suggested_window(m);
    throw WindowTooSmall(os.str(), suggested_window(m));
  }
  return e;
}

cd lambda_constant(int n) {
  if (n < 0) throw std::invalid_argument("lambda_constant: n < 0");
  const double sign = (static_cast<long>(n) * (n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  const double g = std::tgamma(n / 2.0 + 1.0);
  if (n % 2 == 0) return sign * g;
  return cd(1.0, 1.0) * (sign * g);
}

// ---------------------------------------------------------------------------

TwistedFunctional::TwistedFunctional(ModulePtr m) : m_(std::move(m)) {
  gammaF_ = m_->gamma() ? SpMat(m_->gamma()->mat * m_->F().mat) : m_->F().mat;
}

const SpMat& TwistedFunctional::comm(const Word& w) const {
  {
    std::lock_guard lock(mu_);
    auto it = comm_cache_.find(w);
    if (it != comm_cache_.end()) return it->second;
  }
  SpMat c = m_->commutator_word(w);
  std::lock_guard lock(mu_);
  return comm_cache_.emplace(w, std::move(c)).first->second;
}

LevelSeries TwistedFunctional::word_series(const std::vector<Word>& words) const {
  if (static_cast<int>(words.size()) != arity())
    throw std::invalid_argument("twisted functional: expected " + std::to_string(arity()) +
                                " arguments");
  for (const Word& w : words)
    if (w.empty()) return {};
  const Presentation& pres = *m_->presentation();
  std::array<int, 2> g{0, 0};
  int maxdeg = 0;
  for (const Word& w : words) {
    const auto gw = pres.grade(w);
    g[0] += gw[0];
    g[1] += gw[1];
    maxdeg = std::max(maxdeg, static_cast<int>(w.size()));
  }
  if (g[0] != 0 || g[1] != 0) return {};
  if (m_->kind() == ModuleKind::suq2_basic && 2 * maxdeg > m_->window().L)
    throw WindowUnderflow("window underflow: L = " + std::to_string(m_->window().L) +
                          " is below twice the argument degree " + std::to_string(maxdeg));
  {
    std::lock_guard lock(mu_);
    auto it = value_cache_.find(words);
    if (it != value_cache_.end()) return it->second;
  }
  SpMat M = gammaF_;
  for (size_t i = 0; i + 1 < words.size(); ++i) M = SpMat(M * comm(words[i]));
  VecC c = diag_of_product(M, comm(words.back()));
  for (int i = 0; i < c.size(); ++i) c[i] *= m_->K()[i];
  LevelSeries e = level_series(*m_->basis(), c, m_->exact_mask(total_degree(words), true));
  std::lock_guard lock(mu_);
  return value_cache_.emplace(words, std::move(e)).first->second;
}

LevelSeries TwistedFunctional::series(const std::vector<NCPolynomial>& args) const {
  if (static_cast<int>(args.size()) != arity())
    throw std::invalid_argument("twisted functional: expected " + std::to_string(arity()) +
                                " arguments");
  for (const auto& a : args)
    if (a.presentation() != m_->presentation()) throw AlgebraMismatch();
  const double q = m_->params().q, s = m_->params().s;
  LevelSeries out;
  std::vector<Word> words(args.size());
  // Odometer over the term lists of all slots.
  std::vector<std::vector<std::pair<Word, cd>>> slots;
  for (const auto& a : args) {
    std::vector<std::pair<Word, cd>> t;
    for (const auto& [w, c] : a.terms())
      if (!w.empty()) t.emplace_back(w, c.eval(q, s));
    if (t.empty()) return {};
    slots.push_back(std::move(t));
  }
  std::vector<size_t> idx(slots.size(), 0);
  while (true) {
    cd coeff = 1.0;
    for (size_t k = 0; k < slots.size(); ++k) {
      words[k] = slots[k][idx[k]].first;
      coeff *= slots[k][idx[k]].second;
    }
    out.add(word_series(words), coeff);
    size_t k = 0;
    while (k < slots.size() && ++idx[k] == slots[k].size()) idx[k++] = 0;
    if (k == slots.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

Estimate chern(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args,
               Normalization norm) {
  const int n = phi.arity() - 1;
  const Estimate raw = phi(args);
  switch (norm) {
    case Normalization::raw:
      return raw;
    case Normalization::lambda:
      return raw.scaled(lambda_constant(n) / 2.0);
    case Normalization::index: {
      if (n % 2 == 0) return raw.scaled((n / 2) % 2 == 0 ? 0.5 : -0.5);
      const int m = (n + 1) / 2;
      return raw.scaled((m % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0, 2 * m));
    }
  }
  return raw;
}

Estimate chern(const ModulePtr& m, const std::vector<NCPolynomial>& args, Normalization norm) {
  return chern(TwistedFunctional(m), args, norm);
}

namespace {

std::vector<NCPolynomial> sigma_all(const std::vector<NCPolynomial>& args) {
  std::vector<NCPolynomial> out;
  for (const auto& a : args) out.push_back(apply_sigma(a));
  return out;
}

Residual residual_of(const Estimate& e) { return {std::abs(e.value), e.tail}; }

Residual residual_of(const LevelSeries& s) { return residual_of(s.estimate()); }

}  // namespace

Residual check_sigma_invariance(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args) {
  return residual_of(phi.series(args).add(phi.series(sigma_all(args)), -1.0));
}

Residual check_sigma_cyclicity(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args) {
  const int n = phi.arity() - 1;
  std::vector<NCPolynomial> rot{apply_sigma(args.at(n))};
  for (int i = 0; i < n; ++i) rot.push_back(args[i]);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return residual_of(phi.series(args).add(phi.series(rot), -sign));
}

Residual check_hochschild(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args) {
  const int n = phi.arity() - 1;
  if (static_cast<int>(args.size()) != n + 2)
    throw std::invalid_argument("check_hochschild: expected " + std::to_string(n + 2) +
                                " arguments");
  LevelSeries sum;
  for (int j = 0; j <= n; ++j) {
    std::vector<NCPolynomial> t;
    for (int i = 0; i < j; ++i) t.push_back(args[i]);
    t.push_back(args[j] * args[j + 1]);
    for (int i = j + 2; i < n + 2; ++i) t.push_back(args[i]);
    sum.add(phi.series(t), j % 2 == 0 ? 1.0 : -1.0);
  }
  std::vector<NCPolynomial> wrap{apply_sigma(args[n + 1]) * args[0]};
  for (int i = 1; i <= n; ++i) wrap.push_back(args[i]);
  sum.add(phi.series(wrap), (n + 1) % 2 == 0 ? 1.0 : -1.0);
  return residual_of(sum);
}

Residual twisted_trace_residual(const ModularModule& m, const FreeProductElement& x,
                                const FreeProductElement& y) {
  if (x.is_zero() || y.is_zero()) return {};
  const TruncatedOperator X = realize_free_product(x, m);
  const TruncatedOperator Y = realize_free_product(y, m);
  const TruncatedOperator SY = realize_free_product(apply_sigma_free(y), m);
  const Basis& b = *m.basis();
  const std::vector<char> mask = depth_mask(b, 0, false);
  VecC l = diag_of_product(X.mat, Y.mat), r = diag_of_product(SY.mat, X.mat);
  for (int i = 0; i < b.size(); ++i) {
    l[i] *= m.K()[i];
    r[i] *= m.K()[i];
  }
  return residual_of(level_trace(b, l, mask) - level_trace(b, r, mask));
}

Estimate chern_via_free_product(const ModularModule& m, const std::vector<NCPolynomial>& args) {
  if (m.kind() != ModuleKind::podles)
    throw std::invalid_argument("chern_via_free_product: Podleś module only");
  if (args.empty() || args.size() % 2 == 0)
    throw std::invalid_argument("chern_via_free_product: odd number of arguments required");
  FreeProductElement x = q_map(args[0]);
  int deg = args[0].degree();
  for (size_t i = 1; i < args.size(); ++i) {
    x = free_multiply(x, q_map(args[i]));
    deg += args[i].degree();
  }
  const TruncatedOperator X = realize_free_product(x, m);
  const Basis& b = *m.basis();
  std::vector<char> mask = depth_mask(b, deg, true);
  VecC c = X.mat.diagonal();
  for (int i = 0; i < b.size(); ++i) {
    if (std::get<PodlesIndex>(b[i]).sign < 0) mask[i] = 0;
    c[i] *= m.K()[i];
  }
  const int p = static_cast<int>(args.size() - 1) / 2;
  return level_trace(b, c, mask).scaled(lambda_constant(2 * p) * (p % 2 == 0 ? 1.0 : -1.0));
}

// ---------------------------------------------------------------------------

TwistedChain hadfield_omega2() {
  const PresentationPtr P = Presentation::podles();
  const auto A = NCPolynomial::generator(P, "A");
  const auto B = NCPolynomial::generator(P, "B");
  const auto Bs = NCPolynomial::generator(P, "B*");
  const auto one = NCPolynomial::constant(P, 1);
  const Coeff q2 = Coeff::q_pow(2), qm2 = Coeff::q_pow(-2), s2 = Coeff::s_pow(2);
  const Coeff one_c = 1;
  TwistedChain c;
  c.terms.push_back({2, {A, B, Bs}});
  c.terms.push_back({-2, {A, Bs, B}});
  c.terms.push_back({4, {B, Bs, A}});
  c.terms.push_back({Coeff(-4) * qm2, {B, A, Bs}});
  c.terms.push_back({Coeff(2) * (Coeff::q_pow(4) - one_c), {A, A, A}});
  c.terms.push_back({(one_c - qm2) * s2 * (one_c - s2), {one, one, one}});
  c.terms.push_back({one_c - s2, {one, Bs, B}});
  c.terms.push_back({-(qm2 * (one_c - s2)), {one, B, Bs}});
  c.terms.push_back({(one_c - q2) * (one_c - s2), {one, A, A}});
  return c;
}

Estimate pair_with_chain(const TwistedFunctional& phi, const TwistedChain& c) {
  Estimate out;
  const double q = phi.module().params().q, s = phi.module().params().s;
  for (const auto& t : c.terms) {
    if (static_cast<int>(t.factors.size()) != phi.arity())
      throw std::invalid_argument("pair_with_chain: chain degree does not match the functional");
    out = out + phi(t.factors).scaled(t.coeff.eval(q, s));
  }
  return out;
}

Extrapolation truncation_extrapolate(const std::function<cd(int)>& evaluate,
                                     const std::vector<int>& schedule) {
  if (schedule.size() < 3) throw std::invalid_argument("truncation_extrapolate: need 3 windows");
  for (size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("truncation_extrapolate: schedule must increase");
  std::vector<cd> v;
  for (int w : schedule) v.push_back(evaluate(w));
  std::vector<double> d;
  for (size_t i = 1; i < v.size(); ++i) d.push_back(std::abs(v[i] - v[i - 1]));
  const double noise = 64 * eps * std::max(1.0, std::abs(v.back()));
  for (size_t i = 1; i < d.size(); ++i) {
    if (d[i] > noise && d[i] > d[i - 1] / 2) {
      std::ostringstream os;
      os << "non-convergent: difference " << d[i] << " at window " << schedule[i + 1]
         << " after " << d[i - 1];
      throw NonConvergent(os.str());
    }
  }
  return {v.back(), std::max(d[d.size() - 1], d[d.size() - 2])};
}

}  // namespace qmod

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qmod/modular.hpp"

using namespace qmod;

namespace {

const double pi = std::acos(-1.0);

NCPolynomial gen(const PresentationPtr& p, const char* name) { return NCPolynomial::generator(p, name); }
NCPolynomial one(const PresentationPtr& p) { return NCPolynomial::constant(p, 1); }

ModulePtr podles(double q, double s, int N) { return build_module(ModuleKind::podles, {q, s}, Window::podles(N)); }
ModulePtr basic(double q, int N = 60, int L = 8) {
  return build_module(ModuleKind::suq2_basic, {q, 1.0}, Window::basic(N, L));
}

// d_k with D = pi_+(B) - pi_-(B), D e_k = d_k e_{k-1}
double podles_d(int k, double q, double s) {
  double x = std::pow(q, 2 * k);
  return std::sqrt(1 - x) * (std::sqrt(s * s + x) - s * std::sqrt(1 + s * s * x));
}

}  // namespace

TEST_CASE("weight evaluation") {
  auto m = podles(0.5, 1.0, 60);
  auto b = m->basis();
  TruncatedOperator zero{b, b, SpMat(b->size(), b->size())};
  CHECK(std::abs(weight_eval(*m, zero).value) == 0.0);

  SpMat e0(b->size(), b->size());
  e0.insert(b->find(PodlesIndex{0, 1}), b->find(PodlesIndex{0, 1})) = 1.0;
  CHECK(std::abs(weight_eval(*m, {b, b, e0}).value - 1.0) < 1e-15);

  for (double s : {1.0, 0.7}) {
    const double q = 0.5;
    auto ms = podles(q, s, 60);
    auto P = ms->presentation();
    SpMat cB = ms->commutator(gen(P, "B")), cBs = ms->commutator(gen(P, "B*"));
    auto T = TruncatedOperator{ms->basis(), ms->basis(), SpMat(cB * cBs)};
    auto e = weight_eval(*ms, T, 1);
    double direct = 0;
    for (int k = 1; k < 60; ++k) direct -= 2 * std::pow(q, -2 * (k - 1)) * std::pow(podles_d(k, q, s), 2);
    INFO("s = " << s);
    CHECK(std::abs(e.value - direct) < 1e-10);
    CHECK(e.tail < 1e-10);
  }
}

TEST_CASE("weight tail is sound under window doubling") {
  for (double q : {0.5, 0.7, 0.8}) {
    const double s = 0.7;
    auto P = Presentation::podles();
    std::vector<NCPolynomial> args{gen(P, "A"), gen(P, "B"), gen(P, "B*")};
    for (int N : {10, 16, 24}) {
      TwistedFunctional small(podles(q, s, N)), big(podles(q, s, 2 * N));
      auto a = small(args), b = big(args);
      INFO("q = " << q << " N = " << N);
      CHECK(std::abs(a.value - b.value) <= a.tail);
    }
  }
  auto S = Presentation::suq2();
  std::vector<NCPolynomial> args{gen(S, "b"), gen(S, "b*"), gen(S, "b"), gen(S, "b*")};
  for (int N : {12, 20}) {
    TwistedFunctional small(basic(0.5, N, 8)), big(basic(0.5, 2 * N, 8));
    auto a = small(args), b = big(args);
    CHECK(std::abs(a.value - b.value) <= a.tail);
  }
}

TEST_CASE("window too small") {
  auto m = podles(0.9, 0.5, 8);
  auto P = m->presentation();
  SpMat cA = m->commutator(gen(P, "A"));
  TruncatedOperator T{m->basis(), m->basis(), SpMat(cA * cA)};
  try {
    weight_eval(*m, T, 1, 1e-12);
    FAIL("expected WindowTooSmall");
  } catch (const WindowTooSmall& e) {
    CHECK(e.suggested_size == 16);
  }
}

TEST_CASE("lambda constants") {
  CHECK(std::abs(lambda_constant(0) - cd(1)) < 1e-15);
  CHECK(std::abs(lambda_constant(2) - cd(-1)) < 1e-15);
  cd l3 = -cd(1, 1) * (3 * std::sqrt(pi) / 4);
  CHECK(std::abs(lambda_constant(3) - l3) < 1e-14);
  CHECK(std::abs(lambda_constant(4) - cd(2)) < 1e-14);
}

TEST_CASE("chern on trivial arguments") {
  auto pm = podles(0.5, 1.0, 40);
  auto P = pm->presentation();
  CHECK(std::abs(chern(pm, {one(P), one(P), one(P)}, Normalization::raw).value) == 0.0);
  auto bm = basic(0.5, 30, 6);
  auto S = bm->presentation();
  auto a = gen(S, "a");
  CHECK(std::abs(chern(bm, {a, a, a, a}, Normalization::raw).value) == 0.0);
  TwistedFunctional phi(pm);
  CHECK(phi.arity() == 3);
  CHECK_THROWS(phi({one(P), one(P)}));
}

TEST_CASE("chern is multilinear") {
  auto m = podles(0.5, 0.7, 60);
  TwistedFunctional phi(m);
  auto P = m->presentation();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*");
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    int x = static_cast<int>(u(rng) * 3), y = static_cast<int>(u(rng) * 3);
    auto mix = A.scaled(x) + (B * A).scaled(y);
    auto lhs = phi({mix, B, Bs}).value;
    auto rhs = double(x) * phi({A, B, Bs}).value + double(y) * phi({B * A, B, Bs}).value;
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("normalizations") {
  auto m = podles(0.5, 0.7, 60);
  auto P = m->presentation();
  std::vector<NCPolynomial> args{gen(P, "A"), gen(P, "B"), gen(P, "B*")};
  cd raw = chern(m, args, Normalization::raw).value;
  CHECK(std::abs(chern(m, args, Normalization::lambda).value - raw * (-0.5)) < 1e-12);
  CHECK(std::abs(chern(m, args, Normalization::index).value - raw * (-0.5)) < 1e-12);
}

TEST_CASE("podles cocycle checks") {
  auto m = podles(0.5, 1.0, 60);
  TwistedFunctional phi(m);
  auto P = m->presentation();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*"), I = one(P);
  CHECK(check_sigma_invariance(phi, {A, A, A}).total() < 1e-10);
  CHECK(check_sigma_invariance(phi, {A, B, Bs}).total() < 1e-10);
  CHECK(check_sigma_invariance(phi, {I, I, I}).value == 0.0);
  CHECK(check_sigma_cyclicity(phi, {A, B, Bs}).total() < 1e-8);
  CHECK(check_sigma_cyclicity(phi, {I, I, I}).value == 0.0);
  CHECK(check_hochschild(phi, {A, B, Bs, A}).total() < 1e-8);
  CHECK(check_hochschild(phi, {I, I, I, I}).value == 0.0);

  auto m7 = podles(0.7, 0.5, 80);
  TwistedFunctional phi7(m7);
  CHECK(check_sigma_cyclicity(phi7, {B * B, Bs, Bs}).total() < 1e-8);
  CHECK(check_hochschild(phi7, {B, A * Bs, A, Bs * A}).total() < 1e-8);
}

TEST_CASE("basic suq2 cocycle checks") {
  auto m = basic(0.5);
  TwistedFunctional phi(m);
  auto S = m->presentation();
  auto a = gen(S, "a"), as = gen(S, "a*"), b = gen(S, "b"), bs = gen(S, "b*"), I = one(S);
  CHECK(check_sigma_cyclicity(phi, {a, as, b, bs}).total() < 1e-8);
  CHECK(check_sigma_cyclicity(phi, {I, I, I, I}).value == 0.0);
  CHECK(check_hochschild(phi, {a, b, as, bs, I}).total() < 1e-8);
  CHECK(check_sigma_invariance(phi, {b, bs, b, bs}).total() < 1e-8);
  CHECK(check_sigma_cyclicity(phi, {b, bs, a * b, as * bs}).total() < 1e-8);
}

TEST_CASE("twisted trace") {
  auto P = Presentation::podles();
  auto m = podles(0.5, 0.7, 60);
  auto x = free_multiply(q_map(gen(P, "A")), q_map(gen(P, "B")));
  auto y = q_map(gen(P, "B*"));
  CHECK(twisted_trace_residual(*m, x, y).total() < 1e-8);
  CHECK(twisted_trace_residual(*m, FreeProductElement(P), y).value == 0.0);

  auto S = Presentation::suq2();
  auto bm = basic(0.5);
  auto xs = free_multiply(q_map(gen(S, "a")), q_map(gen(S, "b")));
  auto ys = free_multiply(q_map(gen(S, "b*")), q_map(gen(S, "a*")));
  CHECK(twisted_trace_residual(*bm, xs, ys).total() < 1e-8);
}

TEST_CASE("finite-dimensional twisted trace identity") {
  auto m = podles(0.6, 0.8, 12);
  auto b = m->basis();
  const int n = b->size();
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n), Sd = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (b->depth(i) >= 2 && b->depth(j) >= 2) {
          T(i, j) = cd(u(rng), u(rng));
          Sd(i, j) = cd(u(rng), u(rng));
        }
    Eigen::VectorXcd K = m->K().cast<cd>();
    Eigen::MatrixXcd sigmaS = K.cwiseInverse().asDiagonal() * Sd * K.asDiagonal();
    SpMat TS = (T * Sd).sparseView(), ST = (sigmaS * T).sparseView();
    cd l = weight_eval(*m, {b, b, TS}).value, r = weight_eval(*m, {b, b, ST}).value;
    CHECK(std::abs(l - r) < 1e-12 * std::max(1.0, std::abs(l)));
  }
}

TEST_CASE("chern matches the free product realization") {
  auto m = podles(0.5, 0.7, 60);
  auto P = m->presentation();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*");
  std::vector<std::vector<NCPolynomial>> triples{{A, B, Bs}, {A, A, A}, {B, Bs, A}, {A * B, Bs, A}};
  for (const auto& t : triples) {
    auto direct = chern(m, t, Normalization::lambda);
    auto via = chern_via_free_product(*m, t);
    CHECK(std::abs(direct.value - via.value) < 1e-8);
  }
}

TEST_CASE("omega2 pairing") {
  const double q = 0.5, s = 0.7;
  auto m = podles(q, s, 80);
  TwistedFunctional phi(m);
  auto P = m->presentation();
  CHECK(std::abs(pair_with_chain(phi, TwistedChain{}).value) == 0.0);
  TwistedChain unit{{ChainTerm{Coeff(1), {one(P), one(P), one(P)}}}};
  CHECK(std::abs(pair_with_chain(phi, unit).value) == 0.0);

  auto c = hadfield_omega2();
  CHECK(c.terms.size() == 9);
  // the raw functional gives four times (1+s^2)^3
  auto e = pair_with_chain(phi, c);
  CHECK(std::abs(e.value - 4 * std::pow(1 + s * s, 3)) < 1e-8);
  CHECK(std::abs(e.value.imag()) < 1e-12);
}

TEST_CASE("truncation extrapolation") {
  auto c = truncation_extrapolate([](int) { return cd(2.5, 0); }, {10, 12, 14});
  CHECK(c.value == cd(2.5, 0));
  CHECK(c.error == 0.0);

  const double q = 0.8, v = 1.25, amp = 3.0;
  auto f = [&](int N) { return cd(v + amp * std::pow(q, 2 * N), 0); };
  auto e = truncation_extrapolate(f, {10, 12, 14, 16});
  const double gap = std::abs(e.value.real() - v);
  CHECK(e.error >= gap);
  CHECK(e.error <= 10 * gap);

  CHECK_THROWS_AS(truncation_extrapolate([](int N) { return cd(N, 0); }, {10, 12, 14, 16}),
                  NonConvergent);
  CHECK_THROWS(truncation_extrapolate(f, {10, 12}));
  CHECK_THROWS(truncation_extrapolate(f, {10, 12, 12}));
}

TEST_CASE("level series") {
  Basis b;
  for (int k = 0; k < 40; ++k) b.add(PodlesIndex{k, 1}, k, 39 - k, 39 - k);
  VecC c(40);
  for (int k = 0; k < 40; ++k) c[k] = std::pow(0.5, k);
  std::vector<char> mask(40, 1);
  auto e = level_trace(b, c, mask);
  CHECK(std::abs(e.value - (2 - std::pow(0.5, 39))) < 1e-14);
  CHECK(e.tail >= std::pow(0.5, 39));
  CHECK(e.tail < 1e-10);

  LevelSeries s = level_series(b, c, mask);
  LevelSeries d = s;
  d.add(s, -1.0);
  CHECK(std::abs(d.estimate().value) == 0.0);
  CHECK(d.estimate().tail < 1e-13);

  VecC flat = VecC::Ones(40);
  CHECK(std::isinf(level_trace(b, flat, mask).tail));
}

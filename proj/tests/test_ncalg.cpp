#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qmod/ncalg.hpp"
#include "qmod/rep.hpp"

using namespace qmod;

namespace {

NCPolynomial gen(const PresentationPtr& p, const char* name) { return NCPolynomial::generator(p, name); }
NCPolynomial one(const PresentationPtr& p) { return NCPolynomial::constant(p, 1); }

NCPolynomial random_poly(const PresentationPtr& p, std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> len(0, max_degree), letter(0, p->size() - 1), c(-3, 3),
      e(-2, 2);
  NCPolynomial::Terms raw;
  for (int t = 0; t < 3; ++t) {
    Word w(len(rng));
    for (int& g : w) g = letter(rng);
    raw[w] += Coeff(c(rng)) * Coeff::q_pow(e(rng));
  }
  return normal_form(p, raw);
}

FreeProductElement iota(const NCPolynomial& x) { return FreeProductElement::embed(Copy::iota, x); }
FreeProductElement iota_bar(const NCPolynomial& x) {
  return FreeProductElement::embed(Copy::iota_bar, x);
}

double max_abs(const SpMat& m) {
  double r = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

}  // namespace

TEST_CASE("coefficients") {
  Coeff q2 = Coeff::q_pow(2);
  CHECK(q2 * Coeff::q_pow(-2) == Coeff(1));
  CHECK((Coeff::i() * Coeff::i()) == Coeff(-1));
  CHECK(Coeff::i().conj() == -Coeff::i());
  CHECK(std::abs(q2.eval(0.5) - 0.25) < 1e-15);
  CHECK(std::abs((Coeff(1) - Coeff::s_pow(2)).eval(0.5, 0.7) - 0.51) < 1e-15);
  CHECK(Coeff::q_pow(1).scale_q(-1) == Coeff(1));
  CHECK((q2 - q2).is_zero());
}

TEST_CASE("podles normal form") {
  auto P = Presentation::podles();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*");

  SUBCASE("BA = q^2 AB") {
    CHECK(B * A == (A * B).scaled(Coeff::q_pow(2)));
    // matrix images under pi_+ at q = 0.5, s = 1, window 16
    Representation rep(ModuleKind::podles, {0.5, 1.0}, Window::podles(16), +1);
    NCPolynomial::Terms raw{{{1, 0}, 1}};
    SpMat lhs = rep.matrix(raw);
    SpMat rhs = rep.matrix((B * A).terms());
    CHECK(max_abs(lhs - rhs) < 1e-14);
  }
  SUBCASE("B*B") {
    auto expect = NCPolynomial::constant(P, Coeff::s_pow(2)) +
                  A.scaled(Coeff(1) - Coeff::s_pow(2)) - A * A;
    CHECK(Bs * B == expect);
    Representation rep(ModuleKind::podles, {0.5, 0.7}, Window::podles(16), +1);
    NCPolynomial::Terms raw{{{2, 1}, 1}};
    CHECK(max_abs(rep.matrix(raw) - rep.matrix(expect.terms())) < 1e-14);
  }
  SUBCASE("already normal") {
    CHECK(normal_form(A) == A);
    CHECK((A * B).terms().size() == 1);
    CHECK((A * B).terms().begin()->first == Word{0, 1});
    CHECK((A + one(P)) * (A - one(P)) == A * A - one(P));
  }
  SUBCASE("text form") {
    CHECK(A.to_string().find('A') != std::string::npos);
    CHECK(NCPolynomial(P).to_string() == "0");
  }
}

TEST_CASE("involution and sigma") {
  auto P = Presentation::podles();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*");
  CHECK(involution(A) == A);
  CHECK(involution(A * B) == (A * Bs).scaled(Coeff::q_pow(-2)));
  CHECK(involution(NCPolynomial::constant(P, Coeff::i())) == NCPolynomial::constant(P, -Coeff::i()));
  CHECK(apply_sigma(A) == A);
  CHECK(apply_sigma(Bs) == Bs.scaled(Coeff::q_pow(2)));
  CHECK(apply_sigma(B) == B.scaled(Coeff::q_pow(-2)));
  CHECK(apply_sigma(one(P)) == one(P));

  auto S = Presentation::suq2();
  CHECK(apply_sigma(gen(S, "a")) == gen(S, "a").scaled(Coeff::q_pow(2)));
  CHECK(apply_sigma(gen(S, "b")) == gen(S, "b"));
}

TEST_CASE("suq2 relations") {
  auto S = Presentation::suq2();
  auto a = gen(S, "a"), as = gen(S, "a*"), b = gen(S, "b"), bs = gen(S, "b*");
  CHECK(b * a == (a * b).scaled(Coeff::q_pow(1)));
  CHECK(a * as + b * bs == one(S));
  CHECK(as * a + (b * bs).scaled(Coeff::q_pow(2)) == one(S));
  CHECK(bs * b == b * bs);
}

TEST_CASE("algebra mismatch") {
  auto P = Presentation::podles();
  auto S = Presentation::suq2();
  CHECK_THROWS_AS(multiply(gen(P, "A"), gen(S, "a")), AlgebraMismatch);
  CHECK_THROWS_AS(gen(P, "a"), PresentationError);
}

TEST_CASE("confluence on words of length <= 4") {
  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    const int n = pres->size();
    std::vector<Word> words{{}};
    for (int len = 1; len <= 4; ++len) {
      std::vector<Word> next;
      for (const auto& w : words)
        if (static_cast<int>(w.size()) == len - 1)
          for (int g = 0; g < n; ++g) {
            Word v = w;
            v.push_back(g);
            next.push_back(v);
          }
      words.insert(words.end(), next.begin(), next.end());
    }
    int checked = 0;
    for (const auto& w : words) {
      NCPolynomial::Terms raw{{w, 1}};
      auto l = normal_form(pres, raw, Strategy::leftmost);
      auto r = normal_form(pres, raw, Strategy::rightmost);
      CHECK(l == r);
      ++checked;
    }
    CHECK(checked == (pres->size() == 3 ? 121 : 341));
  }
}

TEST_CASE("faithfulness at truncation") {
  auto P = Presentation::podles();
  std::mt19937 rng(7);
  Params prm{0.5, 0.7};
  Representation rep(ModuleKind::podles, prm, Window::podles(32), +1);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(P, rng, 3), r = random_poly(P, rng, 3);
    SpMat lhs = rep.matrix((p * r).terms());
    SpMat rhs = rep.matrix(p.terms()) * rep.matrix(r.terms());
    SpMat d = (lhs - rhs).leftCols(16);
    CHECK(max_abs(d) < 1e-12);
  }
}

TEST_CASE("involution properties") {
  std::mt19937 rng(11);
  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto p = random_poly(pres, rng, 3), r = random_poly(pres, rng, 3);
      CHECK(involution(involution(p)) == p);
      CHECK(involution(p * r) == involution(r) * involution(p));
    }
  }
}

TEST_CASE("sigma respects the defining relations") {
  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    for (const auto& [name, terms] : defining_relations(pres)) {
      NCPolynomial::Terms scaled;
      for (const auto& [w, c] : terms) {
        Coeff f = c;
        for (int g : w) f = f * pres->sigma(g);
        scaled[w] += f;
      }
      INFO(name);
      CHECK(normal_form(pres, scaled).is_zero());
      CHECK(normal_form(pres, terms).is_zero());
    }
  }
}

TEST_CASE("q map") {
  auto P = Presentation::podles();
  auto A = gen(P, "A"), B = gen(P, "B");
  CHECK(q_map(one(P)).is_zero());
  CHECK(q_map(A) == iota(A) - iota_bar(A));
  CHECK(q_map(A.scaled(2) + NCPolynomial::constant(P, 3)) == (iota(A) - iota_bar(A)).scaled(2));

  CHECK(free_multiply(iota(A), iota(B)) == iota(A * B));
  auto mixed = free_multiply(iota(A), iota_bar(A));
  REQUIRE(mixed.terms().size() == 1);
  CHECK(mixed.terms().begin()->first.size() == 2);

  auto qq = free_multiply(q_map(A), q_map(A));
  auto expect = iota(A * A) - mixed - free_multiply(iota_bar(A), iota(A)) + iota_bar(A * A);
  CHECK(qq == expect);
}

TEST_CASE("q identity") {
  auto P = Presentation::podles();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*");
  CHECK(verify_q_identity(A, B).is_zero());
  CHECK(verify_q_identity(one(P), B).is_zero());
  CHECK(verify_q_identity(A * B, Bs).is_zero());
  // the bare factors both sit in the left copy
  CHECK_FALSE(q_identity_residual(A, B, Copy::iota, Copy::iota_bar).is_zero());

  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    auto words = basis_words(pres, 2);
    int pairs = 0;
    for (const auto& x : words)
      for (const auto& y : words) {
        auto a = NCPolynomial::word(pres, x), b = NCPolynomial::word(pres, y);
        CHECK(q_identity_residual(a, b).is_zero());
        ++pairs;
      }
    CHECK(pairs == static_cast<int>(words.size() * words.size()));
  }
}

TEST_CASE("sigma tilde") {
  auto P = Presentation::podles();
  auto A = gen(P, "A"), B = gen(P, "B"), Bs = gen(P, "B*");
  CHECK(apply_sigma_tilde(q_map(A)) == q_map(A).scaled(-1));
  auto x = free_multiply(q_map(B), q_map(Bs));
  CHECK(apply_sigma_tilde(x) == x);
  auto y = free_multiply(iota(A), q_map(B));
  auto expect = free_multiply(iota(A) - q_map(A), q_map(B)).scaled(-Coeff::q_pow(-2));
  CHECK(apply_sigma_tilde(y) == expect);
}

TEST_CASE("sigma tilde is multiplicative on spanning words") {
  std::mt19937 rng(3);
  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    auto words = basis_words(pres, 2);
    std::uniform_int_distribution<size_t> pick(1, words.size() - 1);
    std::uniform_int_distribution<int> m(0, 2), lead(0, 1);
    auto spanning = [&]() {
      FreeProductElement x = lead(rng) ? iota(NCPolynomial::word(pres, words[pick(rng)]))
                                       : FreeProductElement::unit(pres);
      int qs = m(rng);
      if (qs == 0 && x == FreeProductElement::unit(pres)) qs = 1;
      for (int i = 0; i < qs; ++i)
        x = free_multiply(x, q_map(NCPolynomial::word(pres, words[pick(rng)])));
      return x;
    };
    for (int trial = 0; trial < 20; ++trial) {
      auto x = spanning(), y = spanning();
      auto lhs = apply_sigma_tilde(free_multiply(x, y));
      auto rhs = free_multiply(apply_sigma_tilde(x), apply_sigma_tilde(y));
      CHECK((lhs - rhs).is_zero());
    }
  }
}

TEST_CASE("spanning form") {
  auto P = Presentation::podles();
  auto A = gen(P, "A"), B = gen(P, "B");
  auto x = free_multiply(free_multiply(iota_bar(A), iota(B)), iota_bar(A * B));
  auto f = to_spanning_form(x);
  CHECK(from_spanning_form(f) == x);
  CHECK(f.q_degree() <= 3);

  auto deep = free_multiply(free_multiply(q_map(A), q_map(B)), q_map(A));
  CHECK_THROWS_AS(to_spanning_form(deep, 2), SpanningFormFailure);
  CHECK(to_spanning_form(deep, 3).q_degree() == 3);
  CHECK(flip(flip(deep)) == deep);
  CHECK(flip(q_map(A)) == q_map(A).scaled(-1));
}

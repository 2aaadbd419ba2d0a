// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qmod/qmod.hpp"

using namespace qmod;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

NCPolynomial gen(const PresentationPtr& p, const char* name) { return NCPolynomial::generator(p, name); }

const std::vector<double> grid_q{0.3, 0.5, 0.7};
const std::vector<double> grid_s{0.25, 0.5, 1.0};

Outcome podles_index() {
  auto t0 = Clock::now();
  auto [P, w] = podles_projection_P();
  double worst = 0, worst_tail = 0, worst_im = 0;
  for (double q : grid_q)
    for (double s : grid_s) {
      auto m = build_module(ModuleKind::podles, {q, s}, Window::podles(80));
      auto e = index_even(*m, P, w);
      worst = std::max(worst, std::abs(e.value.real() - q));
      worst_tail = std::max(worst_tail, e.tail);
      worst_im = std::max(worst_im, std::abs(e.value.imag()));
    }
  double t = seconds_since(t0);
  bool ok = worst < 1e-8 && worst_tail < 1e-8 && worst_im < 1e-10 && t < 10;
  return {ok, "max |index - q| = " + fmt(worst) + ", max tail = " + fmt(worst_tail) +
                  " over 9 points"};
}

Outcome omega2_pairing() {
  auto t0 = Clock::now();
  const std::vector<std::pair<double, double>> pts{{0.5, 1.0}, {0.5, 0.7}, {0.3, 0.5}};
  auto chain = hadfield_omega2();
  bool ok = true;
  std::ostringstream os;
  for (auto [q, s] : pts) {
    TwistedFunctional phi(build_module(ModuleKind::podles, {q, s}, Window::podles(80)));
    auto e = pair_with_chain(phi, chain);
    double ref = std::pow(1 + s * s, 3);
    ok = ok && std::abs(e.value - ref) < 1e-8;
    os << "(" << q << "," << s << "): " << fmt(e.value.real()) << " vs " << fmt(ref)
       << " ratio " << fmt(e.value.real() / ref) << "; ";
  }
  ok = ok && seconds_since(t0) < 10;
  return {ok, os.str()};
}

Outcome spectral_projections() {
  double worst = 0;
  for (double q : {0.3, 0.5}) {
    auto m = build_module(ModuleKind::podles, {q, 1.0}, Window::podles(80));
    for (int k = 0; k <= 3; ++k)
      for (int sign : {1, -1}) {
        double ref = sign * std::pow(q, -2 * k);
        auto e = index_even(*m, spectral_projection(k, sign, m->window()), VecD::Ones(1));
        double scale = k >= 2 ? std::abs(ref) : 1.0;
        worst = std::max(worst, std::abs(e.value - ref) / scale);
      }
  }
  return {worst < 1e-8, "max deviation (relative for k >= 2) = " + fmt(worst) + " over 16 cases"};
}

Outcome basic_odd_pairing() {
  auto t0 = Clock::now();
  auto [V, w] = suq2_unitary_V();
  double worst = 0, worst_im = 0;
  for (double q : grid_q) {
    auto m = build_module(ModuleKind::suq2_basic, {q, 1.0}, Window::basic(60, 8));
    auto e = index_odd(*m, V, w);
    worst = std::max(worst, std::abs(e.value.real() - q) + e.tail);
    worst_im = std::max(worst_im, std::abs(e.value.imag()));
  }
  double t = seconds_since(t0);
  return {worst < 1e-8 && worst_im < 1e-10 && t < 10,
          "max |index - q| + tail = " + fmt(worst) + ", " + fmt(t) + " s"};
}

Outcome dlssv_index() {
  auto t0 = Clock::now();
  auto [V, w] = suq2_unitary_V();
  auto m = build_module(ModuleKind::suq2_dlssv, {0.5, 1.0}, Window::dlssv(12));
  auto r = modular_index_kernel(*m, V, w);
  auto tr = index_odd_trace(*m, V, w);
  double t = seconds_since(t0);
  double overlap = r.overlap.value_or(0.0);
  bool ok = std::abs(r.index - 1.0) < 1e-8 && r.kernel_dim == 1 && r.gap_ratio < 0.1 &&
            overlap > 0.999 && std::abs(tr.value.real() - r.index) < 1e-6 && t < 60;
  std::ostringstream os;
  os << "index " << r.index << ", kernel " << r.kernel_dim << ", cokernel " << r.cokernel_dim
     << ", gap " << fmt(r.gap_ratio) << ", overlap " << overlap << ", trace formula "
     << tr.value.real() << ", " << fmt(t) << " s";
  return {ok, os.str()};
}

Outcome telescoping() {
  double worst = 0;
  for (double q : grid_q)
    for (double s : grid_s) {
      auto [a, b] = telescoping_sums(q, s, 200);
      worst = std::max({worst, std::abs(a + (1 + s * s)), std::abs(b - (1 + s * s - s))});
    }
  return {worst < 1e-10, "max deviation = " + fmt(worst) + " at K = 200"};
}

Outcome cocycle_suite() {
  bool ok = true;
  double worst = 0;
  int n = 0;
  auto scan = [&](ModuleKind kind, double q, double s) {
    RunConfig c;
    c.command = "verify";
    c.kind = kind;
    c.kind_set = true;
    c.q = q;
    c.s = s;
    validate(c);
    for (const auto& r : verify_suite(c)) {
      if (r.check.rfind("sigma-", 0) != 0 && r.check.rfind("hochschild", 0) != 0) continue;
      ok = ok && r.residual + r.tail < 1e-8;
      worst = std::max(worst, r.residual + r.tail);
      ++n;
    }
  };
  scan(ModuleKind::podles, 0.5, 0.7);
  scan(ModuleKind::podles, 0.3, 1.0);
  scan(ModuleKind::suq2_basic, 0.5, 1.0);
  return {ok && n == 9, "max residual + tail = " + fmt(worst) + " over " + std::to_string(n) +
                            " suites"};
}

Outcome symbolic_identity() {
  int pairs = 0, nonzero = 0;
  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    auto words = basis_words(pres, 2);
    for (const auto& x : words)
      for (const auto& y : words) {
        ++pairs;
        if (!q_identity_residual(NCPolynomial::word(pres, x), NCPolynomial::word(pres, y)).is_zero())
          ++nonzero;
      }
  }
  int trials = 0, broken = 0;
  std::mt19937 rng(2024);
  for (auto pres : {Presentation::podles(), Presentation::suq2()}) {
    auto words = basis_words(pres, 2);
    std::uniform_int_distribution<size_t> pick(1, words.size() - 1);
    std::uniform_int_distribution<int> m(1, 2), lead(0, 1);
    auto spanning = [&]() {
      FreeProductElement x = lead(rng)
                                 ? FreeProductElement::embed(Copy::iota,
                                                             NCPolynomial::word(pres, words[pick(rng)]))
                                 : FreeProductElement::unit(pres);
      for (int i = m(rng); i > 0; --i)
        x = free_multiply(x, q_map(NCPolynomial::word(pres, words[pick(rng)])));
      return x;
    };
    for (int t = 0; t < 20; ++t) {
      auto x = spanning(), y = spanning();
      auto lhs = apply_sigma_tilde(free_multiply(x, y));
      auto rhs = free_multiply(apply_sigma_tilde(x), apply_sigma_tilde(y));
      ++trials;
      if (!(lhs - rhs).is_zero()) ++broken;
    }
  }
  return {nonzero == 0 && broken == 0,
          std::to_string(nonzero) + " nonzero residuals in " + std::to_string(pairs) +
              " pairs; sigma-tilde broken on " + std::to_string(broken) + " of " +
              std::to_string(trials) + " products"};
}

Outcome chern_consistency() {
  auto m = build_module(ModuleKind::podles, {0.5, 0.7}, Window::podles(80));
  auto pres = m->presentation();
  auto words = basis_words(pres, 2);
  double worst = 0;
  int n = 0;
  for (const auto& x : words)
    for (const auto& y : words)
      for (const auto& z : words) {
        std::vector<NCPolynomial> args{NCPolynomial::word(pres, x), NCPolynomial::word(pres, y),
                                       NCPolynomial::word(pres, z)};
        auto a = chern(m, args, Normalization::lambda);
        auto b = chern_via_free_product(*m, args);
        worst = std::max(worst, std::abs(a.value - b.value));
        ++n;
      }
  return {worst < 1e-8, "max difference = " + fmt(worst) + " over " + std::to_string(n) + " triples"};
}

Outcome transcription() {
  double podles = 0, basic = 0, dlssv = 0;
  for (const auto& r : relations_residual(ModuleKind::podles, {0.5, 0.7}, Window::podles(80)))
    podles = std::max(podles, r.residual);
  for (const auto& r : relations_residual(ModuleKind::suq2_basic, {0.5, 1.0}, Window::basic(60, 8)))
    basic = std::max(basic, r.residual);
  for (const auto& r : relations_residual(ModuleKind::suq2_dlssv, {0.5, 1.0}, Window::dlssv(12)))
    dlssv = std::max(dlssv, r.residual);
  double f = 0;
  const int N = 80;
  auto b = homotopy_basis(N);
  for (int branch : {1, -1})
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      auto op = homotopy_f(t, branch, N);
      f = std::max(f, interior_difference(SpMat(op.mat * op.mat), op.mat, *b, 2));
    }
  bool ok = podles < 1e-12 && basic < 1e-12 && dlssv < 1e-10 && f < 1e-10;
  return {ok, "podles " + fmt(podles) + ", basic " + fmt(basic) + ", dlssv " + fmt(dlssv) +
                  ", f_t " + fmt(f)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"podles index pairing = q", podles_index},
      {"omega2 pairing = (1+s^2)^3", omega2_pairing},
      {"spectral projection pairings = +-q^-2k", spectral_projections},
      {"basic SU_q(2) odd pairing = q", basic_odd_pairing},
      {"DLSSV modular index = 1", dlssv_index},
      {"telescoping sums", telescoping},
      {"twisted cocycle suite", cocycle_suite},
      {"symbolic q-ideal identity", symbolic_identity},
      {"Chern character via the free product", chern_consistency},
      {"transcription residuals", transcription},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double t = seconds_since(t0);
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-40s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), t);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

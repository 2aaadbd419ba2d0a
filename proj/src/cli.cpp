#include "qmod/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qmod/ktheory.hpp"
#include "qmod/modular.hpp"

namespace qmod {

namespace {

const std::vector<std::string> quantities = {"ch2-P", "omega2", "ch3-V", "p_k", "index-dlssv-V"};

ModuleKind kind_of(const std::string& quantity) {
  if (quantity == "ch3-V") return ModuleKind::suq2_basic;
  if (quantity == "index-dlssv-V") return ModuleKind::suq2_dlssv;
  if (quantity == "ch2-P" || quantity == "omega2" || quantity == "p_k") return ModuleKind::podles;
  throw ConfigError("unknown quantity '" + quantity + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x)) throw ConfigError("expected an integer for " + key + ": '" + v + "'");
  return static_cast<int>(x);
}

}  // namespace

Window RunConfig::window() const {
  switch (kind) {
    case ModuleKind::podles: return Window::podles(N > 0 ? N : 80, margin);
    case ModuleKind::suq2_basic: return Window::basic(N > 0 ? N : 60, L > 0 ? L : 8, margin);
    case ModuleKind::suq2_dlssv: return Window::dlssv(jmax > 0 ? jmax : 12, margin);
  }
  return {};
}

void validate(RunConfig& c) {
  if (!c.quantity.empty()) {
    const ModuleKind k = kind_of(c.quantity);
    if (c.kind_set && k != c.kind)
      throw ConfigError("quantity " + c.quantity + " needs --kind " + to_string(k));
    c.kind = k;
  }
  if (!(c.q > 0 && c.q < 1)) throw ConfigError("q must lie in (0, 1)");
  if (!(c.s > 0 && c.s <= 1)) throw ConfigError("s must lie in (0, 1]");
  for (double q : c.grid_q)
    if (!(q > 0 && q < 1)) throw ConfigError("grid q values must lie in (0, 1)");
  for (double s : c.grid_s)
    if (!(s > 0 && s <= 1)) throw ConfigError("grid s values must lie in (0, 1]");
  if (!(c.tol > 0)) throw ConfigError("tolerance must be positive");
  if (c.margin < 0) throw ConfigError("margin must be non-negative");
  if (c.N < 0 || c.L < 0 || c.jmax < 0) throw ConfigError("window sizes must be positive");
  const Window w = c.window();
  switch (c.kind) {
    case ModuleKind::podles:
      if (w.N < 10) throw ConfigError("window below minimum: N >= 10");
      break;
    case ModuleKind::suq2_basic:
      if (w.N < 10 || w.L < 4) throw ConfigError("window below minimum: N >= 10, L >= 4");
      // Hochschild products reach degree 4 in one slot
      if (c.command == "verify" && w.L < 8)
        throw ConfigError("window below minimum: verify needs L >= 8");
      break;
    case ModuleKind::suq2_dlssv:
      if (w.jmax2 < 6) throw ConfigError("window below minimum: jmax >= 3");
      break;
  }
  if (c.sign != 1 && c.sign != -1) throw ConfigError("sign must be +1 or -1");
  if (c.quantity == "p_k" && (c.k < 0 || c.k >= w.N)) throw ConfigError("k outside the window");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("grid", item));
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "kind") {
      c.kind = parse_module_kind(v);
      c.kind_set = true;
    } else if (key == "q") {
      c.q = to_double(key, v);
    } else if (key == "s") {
      c.s = to_double(key, v);
    } else if (key == "N") {
      c.N = to_int(key, v);
    } else if (key == "L") {
      c.L = to_int(key, v);
    } else if (key == "jmax") {
      c.jmax = to_int(key, v);
    } else if (key == "margin") {
      c.margin = to_int(key, v);
    } else if (key == "tol") {
      c.tol = to_double(key, v);
    } else if (key == "format") {
      c.format = parse_format(v);
    } else if (key == "output") {
      c.output = v;
    } else if (key == "k") {
      c.k = to_int(key, v);
    } else if (key == "sign") {
      c.sign = to_int(key, v);
    } else if (key == "grid-q") {
      c.grid_q = parse_grid(v);
    } else if (key == "grid-s") {
      c.grid_s = parse_grid(v);
    } else if (key == "dump-symbolic") {
      c.dump_symbolic = v == "true" || v == "1" || v == "yes";
    } else if (key == "dump-operator") {
      c.dump_operator = v;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Suites.

namespace {

CheckRecord record(const std::string& name, double residual, double tail, double threshold) {
  return {name, residual, tail, threshold, residual + tail < threshold};
}

Params params_of(const RunConfig& c) { return {c.q, c.s}; }

double covariance_residual(const ModularModule& m, int g) {
  const SpMat& M = m.representation().generator(g);
  const cd scalar = m.presentation()->sigma(g).eval(m.params().q, m.params().s);
  double worst = 0.0;
  for (int k = 0; k < M.outerSize(); ++k)
    for (SpMat::InnerIterator it(M, k); it; ++it) {
      const cd lhs = it.value() * (m.K()[it.col()] / m.K()[it.row()]);
      worst = std::max(worst, std::abs(lhs - scalar * it.value()));
    }
  return worst;
}

struct TupleScan {
  double value = 0.0;
  double tail = 0.0;
  long count = 0;

  void add(const Residual& r) {
    value = std::max(value, r.value);
    tail = std::max(tail, r.tail);
    ++count;
  }
};

std::array<int, 2> grade_sum(const Presentation& p, const std::vector<const Word*>& ws) {
  std::array<int, 2> g{0, 0};
  for (const Word* w : ws) {
    const auto x = p.grade(*w);
    g[0] += x[0];
    g[1] += x[1];
  }
  return g;
}

// Odometer over all tuples of `len` indices into [0, n).
template <class Fn>
void for_tuples(int n, int len, Fn fn) {
  std::vector<int> idx(len, 0);
  while (true) {
    fn(idx);
    int k = 0;
    while (k < len && ++idx[k] == n) idx[k++] = 0;
    if (k == len) return;
  }
}

}  // namespace

std::vector<CheckRecord> relations_suite(const RunConfig& c) {
  const double threshold = c.kind == ModuleKind::suq2_dlssv ? 1e-10 : 1e-12;
  std::vector<CheckRecord> out;
  for (const auto& r : relations_residual(c.kind, params_of(c), c.window()))
    out.push_back(record(r.name, r.residual, 0.0, threshold));
  return out;
}

std::vector<CheckRecord> verify_suite(const RunConfig& c) {
  std::vector<CheckRecord> out = relations_suite(c);
  const ModulePtr m = build_module(c.kind, params_of(c), c.window());
  const PresentationPtr& P = m->presentation();

  for (int g = 0; g < P->size(); ++g)
    out.push_back(record("covariance(" + P->word_text({g}) + ")", covariance_residual(*m, g), 0.0, c.tol));

  // Symbolic q-identity on all pairs of degree <= 2 monomials.
  std::vector<Word> words2;
  for (const Word& w : basis_words(P, 2))
    if (!w.empty()) words2.push_back(w);
  long bad = 0;
  for (const Word& x : words2)
    for (const Word& y : words2)
      if (!q_identity_residual(NCPolynomial::word(P, x), NCPolynomial::word(P, y)).is_zero()) ++bad;
  out.push_back(record("q-identity (" + std::to_string(words2.size() * words2.size()) + " pairs)",
                       static_cast<double>(bad), 0.0, 0.5));

  // Cocycle conditions over monomial tuples (the unit included).
  const int maxdeg = c.kind == ModuleKind::suq2_dlssv ? 1 : 2;
  std::vector<Word> ws = basis_words(P, maxdeg);
  std::vector<NCPolynomial> polys, sig;
  for (const Word& w : ws) {
    polys.push_back(NCPolynomial::word(P, w));
    sig.push_back(apply_sigma(polys.back()));
  }
  const TwistedFunctional phi(m);
  const int arity = phi.arity();
  const int nw = static_cast<int>(ws.size());
  TupleScan inv, cyc, hoch;
  for_tuples(nw, arity, [&](const std::vector<int>& idx) {
    std::vector<const Word*> wp;
    for (int i : idx) wp.push_back(&ws[i]);
    const auto g = grade_sum(*P, wp);
    if (g[0] != 0 || g[1] != 0) return;
    std::vector<NCPolynomial> args;
    for (int i : idx) args.push_back(polys[i]);
    inv.add(check_sigma_invariance(phi, args));
    cyc.add(check_sigma_cyclicity(phi, args));
  });
  for_tuples(nw, arity + 1, [&](const std::vector<int>& idx) {
    std::vector<const Word*> wp;
    for (int i : idx) wp.push_back(&ws[i]);
    const auto g = grade_sum(*P, wp);
    if (g[0] != 0 || g[1] != 0) return;
    std::vector<NCPolynomial> args;
    for (int i : idx) args.push_back(polys[i]);
    hoch.add(check_hochschild(phi, args));
  });
  const std::string deg = " (degree <= " + std::to_string(maxdeg) + ")";
  out.push_back(record("sigma-invariance" + deg, inv.value, inv.tail, c.tol));
  out.push_back(record("sigma-cyclicity" + deg, cyc.value, cyc.tail, c.tol));
  out.push_back(record("hochschild" + deg, hoch.value, hoch.tail, c.tol));

  // Twisted trace property on free product elements.
  const auto qg = [&](const char* n) { return q_map(NCPolynomial::generator(P, n)); };
  Residual tt;
  if (c.kind == ModuleKind::podles) {
    tt = twisted_trace_residual(*m, free_multiply(qg("A"), qg("B")), qg("B*"));
  } else {
    tt = twisted_trace_residual(*m, free_multiply(qg("a"), qg("b")), free_multiply(qg("b*"), qg("a*")));
  }
  out.push_back(record("twisted-trace", tt.value, tt.tail, c.tol));
  return out;
}

// ---------------------------------------------------------------------------
// Pairings.

namespace {

std::string num(double x) { return format_number(x); }

void finish(PairingReport& r, double tol, double scale = 1.0) {
  r.pass = std::abs(r.value - r.reference) < tol * scale && r.tail < tol * scale &&
           std::abs(r.value.imag()) < tol * scale;
}

}  // namespace

PairingReport compute_pair(const RunConfig& c, double q, double s) {
  const Window w = c.window();
  PairingReport r;
  r.quantity = c.quantity;
  r.params = {q, s};
  r.window = w.to_string(c.kind);
  if (c.quantity == "ch2-P") {
    const auto m = build_module(ModuleKind::podles, r.params, w);
    const auto [P, delta] = podles_projection_P();
    const Estimate e = index_even(*m, P, delta);
    r.value = e.value;
    r.tail = e.tail;
    r.reference = q;
    finish(r, c.tol);
  } else if (c.quantity == "omega2") {
    const auto m = build_module(ModuleKind::podles, r.params, w);
    const Estimate e = pair_with_chain(TwistedFunctional(m), hadfield_omega2());
    r.value = e.value;
    r.tail = e.tail;
    r.reference = std::pow(1 + s * s, 3);
    r.details.emplace_back("ratio", num(e.value.real() / r.reference.real()));
    finish(r, c.tol);
  } else if (c.quantity == "ch3-V") {
    const auto m = build_module(ModuleKind::suq2_basic, r.params, w);
    const auto [V, delta] = suq2_unitary_V();
    const Estimate e = index_odd(*m, V, delta);
    r.value = e.value;
    r.tail = e.tail;
    r.reference = q;
    r.details.emplace_back("without_F", num(index_odd_plain(*m, V, delta).value.real()));
    try {
      const KernelReport k = modular_index_kernel(*m, V, delta);
      r.details.emplace_back("kernel_index", num(k.index));
    } catch (const NoSpectralGap& ex) {
      r.details.emplace_back("kernel_index", ex.what());
    }
    finish(r, c.tol);
  } else if (c.quantity == "p_k") {
    const auto m = build_module(ModuleKind::podles, r.params, w);
    const TruncatedOperator p = spectral_projection(c.k, c.sign, w);
    const Estimate e = index_even(*m, p, VecD::Ones(1));
    r.value = e.value;
    r.tail = e.tail;
    r.reference = c.sign * std::pow(q, -2.0 * c.k);
    r.details.emplace_back("k", std::to_string(c.k));
    r.details.emplace_back("sign", c.sign > 0 ? "+" : "-");
    finish(r, c.tol, c.k >= 2 ? std::abs(r.reference.real()) : 1.0);
  } else if (c.quantity == "index-dlssv-V") {
    const auto m = build_module(ModuleKind::suq2_dlssv, r.params, w);
    const auto [V, delta] = suq2_unitary_V();
    const KernelReport k = modular_index_kernel(*m, V, delta);
    const Estimate t = index_odd_trace(*m, V, delta);
    r.value = k.index;
    r.tail = 0.0;
    r.reference = 1.0;
    r.details.emplace_back("kernel_dim", std::to_string(k.kernel_dim));
    r.details.emplace_back("cokernel_dim", std::to_string(k.cokernel_dim));
    r.details.emplace_back("gap_ratio", num(k.gap_ratio));
    r.details.emplace_back("overlap", num(k.overlap.value_or(0.0)));
    r.details.emplace_back("trace_formula", num(t.value.real()));
    r.details.emplace_back("trace_formula_tail", num(t.tail));
    r.details.emplace_back("qind_odd_pairing", num(index_odd(*m, V, delta).value.real()));
    finish(r, c.tol);
    r.pass = r.pass && k.kernel_dim == 1 && k.cokernel_dim == 0 && k.overlap.value_or(0.0) > 0.999 &&
             std::abs(t.value - 1.0) < 1e-6;
  } else {
    throw ConfigError("unknown quantity '" + c.quantity + "'");
  }
  return r;
}

std::vector<PairingReport> run_sweep(const RunConfig& c) {
  const std::vector<double> qs = c.grid_q.empty() ? std::vector<double>{c.q} : c.grid_q;
  const std::vector<double> ss = c.grid_s.empty() ? std::vector<double>{c.s} : c.grid_s;
  std::vector<std::pair<double, double>> points;
  for (double q : qs)
    for (double s : ss) points.emplace_back(q, s);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QMOD_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) threads = static_cast<unsigned>(t);
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));

  std::vector<PairingReport> rows(points.size());
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t i; (i = next++) < points.size();) {
      const auto [q, s] = points[i];
      try {
        rows[i] = compute_pair(c, q, s);
      } catch (const Error& e) {
        PairingReport r;
        r.quantity = c.quantity;
        r.params = {q, s};
        r.window = c.window().to_string(c.kind);
        r.value = std::numeric_limits<double>::quiet_NaN();
        r.tail = std::numeric_limits<double>::infinity();
        r.details.emplace_back("error", e.what());
        rows[i] = r;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

// ---------------------------------------------------------------------------
// Driver.

namespace {

void dump_symbolic(const RunConfig& c, std::ostream& os) {
  if (c.quantity == "ch2-P") {
    const auto [P, d] = podles_projection_P();
    os << "P = (1 / " << P.denominator.to_string() << ") *\n";
    for (int i = 0; i < 2; ++i)
      os << "  [" << P.at(i, 0).to_string() << ", " << P.at(i, 1).to_string() << "]\n";
    os << "Delta = diag(" << d.delta[0].to_string() << ", " << d.delta[1].to_string() << ")\n";
  } else if (c.quantity == "ch3-V" || c.quantity == "index-dlssv-V") {
    const auto [V, d] = suq2_unitary_V();
    os << "V =\n";
    for (int i = 0; i < 2; ++i)
      os << "  [" << V.at(i, 0).to_string() << ", " << V.at(i, 1).to_string() << "]\n";
    os << "Delta = diag(" << d.delta[0].to_string() << ", " << d.delta[1].to_string() << ")\n";
  } else if (c.quantity == "omega2") {
    for (const auto& t : hadfield_omega2().terms) {
      os << "  " << t.coeff.to_string() << " *";
      for (const auto& f : t.factors) os << " (" << f.to_string() << ")";
      os << '\n';
    }
  } else {
    const PresentationPtr P =
        c.kind == ModuleKind::podles ? Presentation::podles() : Presentation::suq2();
    for (const auto& [name, terms] : defining_relations(P)) {
      os << name << ": " << NCPolynomial(P, terms).to_string() << '\n';
    }
  }
}

void dump_operator(const RunConfig& c) {
  const Window w = c.window();
  const Params p = params_of(c);
  TruncatedOperator op;
  if (c.quantity == "ch2-P") {
    op = realize_matrix(*build_module(ModuleKind::podles, p, w), podles_projection_P().first);
  } else if (c.quantity == "ch3-V" || c.quantity == "index-dlssv-V") {
    op = realize_matrix(*build_module(c.kind, p, w), suq2_unitary_V().first);
  } else if (c.quantity == "p_k") {
    op = spectral_projection(c.k, c.sign, w);
  } else {
    op = build_module(c.kind, p, w)->F();
  }
  if (op.mat.rows() > 4096)
    throw ConfigError("operator too large to dump densely (" + std::to_string(op.mat.rows()) + ")");
  std::ofstream f(c.dump_operator);
  if (!f) throw ConfigError("cannot write " + c.dump_operator);
  f << dump_operator_json(op);
}

struct Sink {
  std::ofstream file;
  std::ostream* os;

  Sink(const std::string& path, std::ostream& fallback) : os(&fallback) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw ConfigError("cannot write " + path);
    os = &file;
  }
};

void add_common(CLI::App* sc, RunConfig& c, std::string& kind, std::string& format,
                std::string& config_path) {
  sc->add_option("--kind", kind, "podles | suq2-basic | suq2-dlssv");
  sc->add_option("--q", c.q, "deformation parameter in (0, 1)");
  sc->add_option("--s", c.s, "Podleś parameter in (0, 1]");
  sc->add_option("--N", c.N, "window size along k");
  sc->add_option("--L", c.L, "window size along l (basic module)");
  sc->add_option("--jmax", c.jmax, "largest spin (DLSSV)");
  sc->add_option("--margin", c.margin, "interior margin for residual checks");
  sc->add_option("--tol", c.tol, "absolute tolerance");
  sc->add_option("--format", format, "table | json | csv");
  sc->add_option("--output", c.output, "write the report to a file");
  sc->add_option("--config", config_path, "key=value file overriding flags");
  sc->add_flag("--dump-symbolic", c.dump_symbolic, "print the symbolic objects to stderr");
  sc->add_option("--dump-operator", c.dump_operator, "write the realized operator as JSON");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string kind, format, config_path, grid_q, grid_s;
  CLI::App app{"Modular Fredholm modules over the Podleś spheres and SU_q(2)"};
  app.require_subcommand(1);
  auto* verify = app.add_subcommand("verify", "run the invariant suite for one module");
  auto* pair = app.add_subcommand("pair", "evaluate one index pairing");
  auto* sweep = app.add_subcommand("sweep", "evaluate a pairing over a (q, s) grid");
  auto* relations = app.add_subcommand("relations", "transcription residuals of a representation");
  for (auto* sc : {verify, pair, sweep, relations}) add_common(sc, c, kind, format, config_path);
  for (auto* sc : {pair, sweep}) {
    sc->add_option("quantity", c.quantity, "ch2-P | omega2 | ch3-V | p_k | index-dlssv-V")
        ->required();
    sc->add_option("--k", c.k, "spectral projection index");
    sc->add_option("--sign", c.sign, "spectral projection sign (+1 or -1)");
  }
  sweep->add_option("--grid-q", grid_q, "comma separated q values");
  sweep->add_option("--grid-s", grid_s, "comma separated s values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_config;
  }

  try {
    for (auto* sc : app.get_subcommands()) c.command = sc->get_name();
    if (!kind.empty()) {
      c.kind = parse_module_kind(kind);
      c.kind_set = true;
    }
    if (!format.empty()) c.format = parse_format(format);
    else if (c.command == "sweep") c.format = Format::csv;
    if (sweep->parsed()) {
      if (sweep->count("--grid-q")) c.grid_q = parse_grid(grid_q);
      if (sweep->count("--grid-s")) c.grid_s = parse_grid(grid_s);
    }
    if (!config_path.empty()) apply_config(c, read_config_file(config_path));
    validate(c);
    if (c.dump_symbolic) dump_symbolic(c, err);
    if (!c.dump_operator.empty()) dump_operator(c);

    Sink sink(c.output, out);
    if (c.command == "verify" || c.command == "relations") {
      const auto checks = c.command == "verify" ? verify_suite(c) : relations_suite(c);
      write_checks(*sink.os, checks, c.format);
      const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& r) { return r.pass; });
      return ok ? exit_pass : exit_fail;
    }
    if (c.command == "pair") {
      const PairingReport r = compute_pair(c, c.q, c.s);
      write_reports(*sink.os, {r}, c.format);
      return r.pass ? exit_pass : exit_fail;
    }
    const auto rows = run_sweep(c);
    write_reports(*sink.os, rows, c.format);
    double worst = 0.0;
    int failures = 0;
    for (const auto& r : rows) {
      const double dev = std::abs(r.value - r.reference);
      worst = std::isnan(dev) ? dev : std::max(worst, dev);
      if (!r.pass) ++failures;
    }
    err << "sweep " << c.quantity << ": " << rows.size() << " points, max |value - reference| = "
        << format_number(worst) << ", " << failures << " failing\n";
    return failures == 0 ? exit_pass : exit_fail;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qmod"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qmod

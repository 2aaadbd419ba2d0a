#include "qmod/ncalg.hpp"

#include <algorithm>
#include <tuple>

namespace qmod {

namespace {

const std::vector<std::string>& display_names(AlgebraKind k) {
  static const std::vector<std::string> podles = {"A", "B", "B*"};
  static const std::vector<std::string> suq2 = {"a", "a*", "b", "b*"};
  return k == AlgebraKind::podles ? podles : suq2;
}

Coeff q(int e) { return Coeff::q_pow(e); }
Coeff s(int e) { return Coeff::s_pow(e); }

void accumulate(NCPolynomial::Terms& m, const Word& w, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

int find_redex(const Presentation& p, const Word& w, Strategy strategy) {
  const int n = static_cast<int>(w.size());
  if (strategy == Strategy::leftmost) {
    for (int i = 0; i + 1 < n; ++i)
      if (p.rule_for(w[i], w[i + 1]) >= 0) return i;
  } else {
    for (int i = n - 2; i >= 0; --i)
      if (p.rule_for(w[i], w[i + 1]) >= 0) return i;
  }
  return -1;
}

}  // namespace

PresentationPtr Presentation::podles() {
  static const PresentationPtr p = [] {
    auto* pr = new Presentation();
    pr->kind_ = AlgebraKind::podles;
    pr->names_ = {"A", "B", "Bstar"};
    pr->star_ = {0, 2, 1};
    pr->sigma_ = {1, q(-2), q(2)};
    pr->grade_ = {{0, 0}, {1, 0}, {-1, 0}};
    const int A = 0, B = 1, Bs = 2;
    pr->rules_ = {
        {{B, A}, {{{A, B}, q(2)}}},
        {{Bs, A}, {{{A, Bs}, q(-2)}}},
        // B*B = -(A - 1)(A + s^2)
        {{Bs, B}, {{{}, s(2)}, {{A}, Coeff(1) - s(2)}, {{A, A}, -1}}},
        // BB* = -(q^2 A - 1)(q^2 A + s^2)
        {{B, Bs}, {{{}, s(2)}, {{A}, q(2) - q(2) * s(2)}, {{A, A}, -q(4)}}},
    };
    pr->finish();
    return PresentationPtr(pr);
  }();
  return p;
}

PresentationPtr Presentation::suq2() {
  static const PresentationPtr p = [] {
    auto* pr = new Presentation();
    pr->kind_ = AlgebraKind::suq2;
    pr->names_ = {"a", "astar", "b", "bstar"};
    pr->star_ = {1, 0, 3, 2};
    pr->sigma_ = {q(2), q(-2), 1, 1};
    pr->grade_ = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const int a = 0, as = 1, b = 2, bs = 3;
    pr->rules_ = {
        {{b, a}, {{{a, b}, q(1)}}},
        {{bs, b}, {{{b, bs}, 1}}},
        {{bs, a}, {{{a, bs}, q(1)}}},
        {{bs, as}, {{{as, bs}, q(-1)}}},
        {{b, as}, {{{as, b}, q(-1)}}},
        {{a, as}, {{{}, 1}, {{b, bs}, -1}}},
        {{as, a}, {{{}, 1}, {{b, bs}, -q(2)}}},
    };
    pr->finish();
    return PresentationPtr(pr);
  }();
  return p;
}

void Presentation::finish() {
  const int n = size();
  rule_table_.assign(n * n, -1);
  for (int r = 0; r < static_cast<int>(rules_.size()); ++r) {
    const Word& l = rules_[r].lhs;
    rule_table_[l[0] * n + l[1]] = r;
  }
}

int Presentation::generator(std::string_view name) const {
  const auto& disp = display_names(kind_);
  for (int g = 0; g < size(); ++g)
    if (names_[g] == name || disp[g] == name) return g;
  throw PresentationError("unknown generator '" + std::string(name) + "'");
}

bool Presentation::less(const Word& x, const Word& y) const {
  auto key = [this](const Word& w) {
    int ab = 0;
    if (kind_ == AlgebraKind::suq2)
      for (int g : w) ab += (g == 0 || g == 1) ? 1 : 0;
    return std::make_tuple(static_cast<int>(w.size()), ab, std::cref(w));
  };
  return key(x) < key(y);
}

std::string Presentation::word_text(const Word& w) const {
  if (w.empty()) return "1";
  const auto& disp = display_names(kind_);
  std::string out;
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += disp[w[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::array<int, 2> Presentation::grade(const Word& w) const {
  std::array<int, 2> g{0, 0};
  for (int x : w) {
    g[0] += grade_[x][0];
    g[1] += grade_[x][1];
  }
  return g;
}

NCPolynomial normal_form(PresentationPtr pres, const NCPolynomial::Terms& raw, Strategy s) {
  NCPolynomial::Terms pending;
  for (const auto& [w, c] : raw) accumulate(pending, w, c);
  NCPolynomial::Terms done;
  long steps = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Coeff& c = node.mapped();
    const int pos = find_redex(*pres, w, s);
    if (pos < 0) {
      accumulate(done, w, c);
      continue;
    }
    if (++steps > pres->step_bound)
      throw PresentationError("presentation error: rewriting exceeded the step bound");
    const RewriteRule& rule = pres->rules()[pres->rule_for(w[pos], w[pos + 1])];
    for (const auto& [rw, rc] : rule.rhs) {
      Word nw(w.begin(), w.begin() + pos);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + pos + 2, w.end());
      accumulate(pending, nw, c * rc);
    }
  }
  return NCPolynomial(std::move(pres), done, s);
}

NCPolynomial::NCPolynomial(PresentationPtr p, const Terms& raw, Strategy s) : pres_(std::move(p)) {
  bool reduced = true;
  for (const auto& [w, c] : raw) {
    if (c.is_zero() || find_redex(*pres_, w, s) >= 0) {
      reduced = false;
      break;
    }
  }
  if (reduced) {
    terms_ = raw;
  } else {
    terms_ = normal_form(pres_, raw, s).terms_;
  }
}

NCPolynomial normal_form(const NCPolynomial& p, Strategy s) {
  return normal_form(p.presentation(), p.terms(), s);
}

NCPolynomial NCPolynomial::constant(PresentationPtr p, const Coeff& c) {
  NCPolynomial out(std::move(p));
  if (!c.is_zero()) out.terms_[{}] = c;
  return out;
}

NCPolynomial NCPolynomial::word(PresentationPtr p, const Word& w, const Coeff& c) {
  return NCPolynomial(p, Terms{{w, c}});
}

NCPolynomial NCPolynomial::generator(PresentationPtr p, std::string_view name) {
  const int g = p->generator(name);
  return word(p, {g});
}

int NCPolynomial::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Coeff NCPolynomial::constant_term() const {
  auto it = terms_.find(Word{});
  return it == terms_.end() ? Coeff() : it->second;
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& o) const {
  if (pres_ != o.pres_) throw AlgebraMismatch();
  NCPolynomial out = *this;
  for (const auto& [w, c] : o.terms_) accumulate(out.terms_, w, c);
  return out;
}

NCPolynomial NCPolynomial::operator-() const { return scaled(-1); }

NCPolynomial NCPolynomial::operator-(const NCPolynomial& o) const { return *this + (-o); }

NCPolynomial NCPolynomial::operator*(const NCPolynomial& o) const { return multiply(*this, o); }

NCPolynomial NCPolynomial::scaled(const Coeff& c) const {
  NCPolynomial out(pres_);
  if (c.is_zero()) return out;
  for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
  return out;
}

std::string NCPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Word, Coeff>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [this](auto* x, auto* y) { return pres_->less(y->first, x->first); });
  std::string out;
  for (auto* t : order) {
    if (!out.empty()) out += " + ";
    out += t->second.to_string() + " * " + pres_->word_text(t->first);
  }
  return out;
}

NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& r) {
  if (p.presentation() != r.presentation()) throw AlgebraMismatch();
  NCPolynomial::Terms raw;
  for (const auto& [w1, c1] : p.terms()) {
    for (const auto& [w2, c2] : r.terms()) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      accumulate(raw, w, c1 * c2);
    }
  }
  return NCPolynomial(p.presentation(), raw);
}

NCPolynomial involution(const NCPolynomial& p) {
  const auto& pres = *p.presentation();
  NCPolynomial::Terms raw;
  for (const auto& [w, c] : p.terms()) {
    Word r(w.rbegin(), w.rend());
    for (int& g : r) g = pres.star(g);
    accumulate(raw, r, c.conj());
  }
  return NCPolynomial(p.presentation(), raw);
}

NCPolynomial apply_sigma(const NCPolynomial& p) {
  const auto& pres = *p.presentation();
  NCPolynomial::Terms out;
  for (const auto& [w, c] : p.terms()) {
    Coeff x = c;
    for (int g : w) x *= pres.sigma(g);
    out.emplace(w, x);
  }
  return NCPolynomial(p.presentation(), out);
}

std::vector<Word> basis_words(const PresentationPtr& p, int max_degree) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (int g = 0; g < p->size(); ++g) {
        if (!w.empty() && p->rule_for(w.back(), g) >= 0) continue;
        Word nw = w;
        nw.push_back(g);
        next.push_back(nw);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Word& x, const Word& y) { return p->less(x, y); });
  return out;
}

std::vector<std::pair<std::string, NCPolynomial::Terms>> defining_relations(
    const PresentationPtr& p) {
  if (p->kind() == AlgebraKind::podles) {
    const int A = 0, B = 1, Bs = 2;
    return {
        {"B*B + (A-1)(A+s^2)", {{{Bs, B}, 1}, {{A, A}, 1}, {{A}, s(2) - 1}, {{}, -s(2)}}},
        {"BB* + (q^2A-1)(q^2A+s^2)",
         {{{B, Bs}, 1}, {{A, A}, q(4)}, {{A}, q(2) * s(2) - q(2)}, {{}, -s(2)}}},
        {"AB - q^-2 BA", {{{A, B}, 1}, {{B, A}, -q(-2)}}},
    };
  }
  const int a = 0, as = 1, b = 2, bs = 3;
  return {
      {"ba - q ab", {{{b, a}, 1}, {{a, b}, -q(1)}}},
      {"bb* - b*b", {{{b, bs}, 1}, {{bs, b}, -1}}},
      {"b*a - q ab*", {{{bs, a}, 1}, {{a, bs}, -q(1)}}},
      {"aa* + bb* - 1", {{{a, as}, 1}, {{b, bs}, 1}, {{}, -1}}},
      {"a*a + q^2 bb* - 1", {{{as, a}, 1}, {{b, bs}, q(2)}, {{}, -1}}},
  };
}

}  // namespace qmod

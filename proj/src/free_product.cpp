#include "qmod/ncalg.hpp"

namespace qmod {

namespace {

template <class Map, class Key>
void accumulate(Map& m, const Key& k, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = m.find(k);
  if (it == m.end()) {
    m.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

const char* copy_text(Copy c) { return c == Copy::iota ? "i" : "ib"; }

Coeff sigma_scalar(const Presentation& p, const Word& w) {
  Coeff x = 1;
  for (int g : w) x *= p.sigma(g);
  return x;
}

// Multiply fw (with coefficient c) on the right by the factor f, merging
// with the last factor when both live in the same copy.
void append_factor(const PresentationPtr& pres, const FreeWord& fw, const Coeff& c,
                   const Factor& f, FreeProductElement::Terms& out) {
  if (fw.empty() || fw.back().copy != f.copy) {
    FreeWord nw = fw;
    nw.push_back(f);
    accumulate(out, nw, c);
    return;
  }
  Word joined = fw.back().word;
  joined.insert(joined.end(), f.word.begin(), f.word.end());
  const NCPolynomial prod(pres, NCPolynomial::Terms{{joined, 1}});
  for (const auto& [pw, pc] : prod.terms()) {
    FreeWord nw(fw.begin(), fw.end() - 1);
    if (!pw.empty()) nw.push_back({f.copy, pw});
    accumulate(out, nw, c * pc);
  }
}

}  // namespace

FreeProductElement FreeProductElement::unit(PresentationPtr p) {
  FreeProductElement out(std::move(p));
  out.terms_[{}] = 1;
  return out;
}

FreeProductElement FreeProductElement::embed(Copy c, const NCPolynomial& x) {
  FreeProductElement out(x.presentation());
  for (const auto& [w, coeff] : x.terms()) {
    if (w.empty()) {
      out.add_term({}, coeff);
    } else {
      out.add_term({{c, w}}, coeff);
    }
  }
  return out;
}

void FreeProductElement::add_term(const FreeWord& w, const Coeff& c) { accumulate(terms_, w, c); }

FreeProductElement FreeProductElement::operator+(const FreeProductElement& o) const {
  if (pres_ != o.pres_) throw AlgebraMismatch();
  FreeProductElement out = *this;
  for (const auto& [w, c] : o.terms_) out.add_term(w, c);
  return out;
}

FreeProductElement FreeProductElement::operator-(const FreeProductElement& o) const {
  return *this + o.scaled(-1);
}

FreeProductElement FreeProductElement::operator*(const FreeProductElement& o) const {
  return free_multiply(*this, o);
}

FreeProductElement FreeProductElement::scaled(const Coeff& c) const {
  FreeProductElement out(pres_);
  if (c.is_zero()) return out;
  for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
  return out;
}

std::string FreeProductElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + " *";
    if (w.empty()) out += " 1";
    for (const Factor& f : w) {
      out += std::string(" ") + copy_text(f.copy) + "(" + pres_->word_text(f.word) + ")";
    }
  }
  return out;
}

FreeProductElement q_map(const NCPolynomial& x) {
  return FreeProductElement::embed(Copy::iota, x) - FreeProductElement::embed(Copy::iota_bar, x);
}

FreeProductElement free_multiply(const FreeProductElement& x, const FreeProductElement& y) {
  if (x.presentation() != y.presentation()) throw AlgebraMismatch();
  const PresentationPtr& pres = x.presentation();
  FreeProductElement out(pres);
  for (const auto& [wy, cy] : y.terms()) {
    FreeProductElement::Terms cur;
    for (const auto& [wx, cx] : x.terms()) accumulate(cur, wx, cx * cy);
    for (const Factor& f : wy) {
      FreeProductElement::Terms next;
      for (const auto& [w, c] : cur) append_factor(pres, w, c, f, next);
      cur = std::move(next);
    }
    for (const auto& [w, c] : cur) out.add_term(w, c);
  }
  return out;
}

FreeProductElement q_identity_residual(const NCPolynomial& a, const NCPolynomial& b,
                                       Copy left_bare, Copy right_bare) {
  const FreeProductElement qa = q_map(a);
  const FreeProductElement qb = q_map(b);
  const FreeProductElement ea = FreeProductElement::embed(left_bare, a);
  const FreeProductElement eb = FreeProductElement::embed(right_bare, b);
  return q_map(a * b) - qa * eb - ea * qb + qa * qb;
}

FreeProductElement verify_q_identity(const NCPolynomial& a, const NCPolynomial& b) {
  FreeProductElement r = q_identity_residual(a, b);
  if (!r.is_zero()) throw QIdentityViolated(r.to_string());
  return r;
}

FreeProductElement apply_sigma_free(const FreeProductElement& x) {
  const Presentation& p = *x.presentation();
  FreeProductElement out(x.presentation());
  for (const auto& [w, c] : x.terms()) {
    Coeff scale = c;
    for (const Factor& f : w) scale *= sigma_scalar(p, f.word);
    out.add_term(w, scale);
  }
  return out;
}

FreeProductElement flip(const FreeProductElement& x) {
  FreeProductElement out(x.presentation());
  for (const auto& [w, c] : x.terms()) {
    FreeWord nw = w;
    for (Factor& f : nw) f.copy = f.copy == Copy::iota ? Copy::iota_bar : Copy::iota;
    out.add_term(nw, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spanning form.

void SpanningForm::add_term(const SpanningTerm& t, const Coeff& c) { accumulate(terms_, t, c); }

int SpanningForm::q_degree() const {
  int m = 0;
  for (const auto& [t, c] : terms_) m = std::max(m, static_cast<int>(t.qs.size()));
  return m;
}

namespace {

// A product of iota(w) and q(w) items.
struct Item {
  bool is_q;
  Word w;
  auto operator<=>(const Item&) const = default;
};
using ItemSeq = std::vector<Item>;
using ItemTerms = std::map<ItemSeq, Coeff>;

ItemSeq splice(const ItemSeq& s, size_t pos, size_t len, const std::vector<Item>& mid) {
  ItemSeq out(s.begin(), s.begin() + pos);
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), s.begin() + pos + len, s.end());
  return out;
}

}  // namespace

SpanningForm to_spanning_form(const FreeProductElement& x, int q_degree_bound) {
  const PresentationPtr& pres = x.presentation();
  auto product = [&](const Word& u, const Word& v) {
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    return NCPolynomial(pres, NCPolynomial::Terms{{w, 1}});
  };

  // iota_bar(w) = iota(w) - q(w)
  ItemTerms pending;
  for (const auto& [fw, c] : x.terms()) {
    ItemTerms partial{{{}, c}};
    for (const Factor& f : fw) {
      ItemTerms next;
      for (const auto& [seq, sc] : partial) {
        ItemSeq a = seq;
        a.push_back({false, f.word});
        accumulate(next, a, sc);
        if (f.copy == Copy::iota_bar) {
          ItemSeq b = seq;
          b.push_back({true, f.word});
          accumulate(next, b, -sc);
        }
      }
      partial = std::move(next);
    }
    for (const auto& [seq, sc] : partial) accumulate(pending, seq, sc);
  }

  SpanningForm out(pres);
  long steps = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const ItemSeq& seq = node.key();
    const Coeff& c = node.mapped();
    if (++steps > pres->step_bound)
      throw SpanningFormFailure("spanning-form failure: rewriting exceeded the step bound");

    bool rewritten = false;
    for (size_t i = 0; i + 1 < seq.size() && !rewritten; ++i) {
      const Item& l = seq[i];
      const Item& r = seq[i + 1];
      if (!l.is_q && !r.is_q) {
        const NCPolynomial lr = product(l.w, r.w);
        for (const auto& [w, pc] : lr.terms()) {
          std::vector<Item> mid;
          if (!w.empty()) mid.push_back({false, w});
          accumulate(pending, splice(seq, i, 2, mid), c * pc);
        }
        rewritten = true;
      } else if (l.is_q && !r.is_q) {
        // q(x) iota(y) = q(xy) - iota(x) q(y) + q(x) q(y)
        const NCPolynomial lr = product(l.w, r.w);
        for (const auto& [w, pc] : lr.terms()) {
          if (w.empty()) continue;
          accumulate(pending, splice(seq, i, 2, {{true, w}}), c * pc);
        }
        accumulate(pending, splice(seq, i, 2, {{false, l.w}, {true, r.w}}), -c);
        accumulate(pending, splice(seq, i, 2, {{true, l.w}, {true, r.w}}), c);
        rewritten = true;
      }
    }
    if (rewritten) continue;

    SpanningTerm t;
    size_t start = 0;
    if (!seq.empty() && !seq[0].is_q) {
      t.a0 = seq[0].w;
      start = 1;
    }
    for (size_t i = start; i < seq.size(); ++i) t.qs.push_back(seq[i].w);
    if (static_cast<int>(t.qs.size()) > q_degree_bound)
      throw SpanningFormFailure("spanning-form failure: q-degree " + std::to_string(t.qs.size()) +
                                " exceeds bound " + std::to_string(q_degree_bound));
    out.add_term(t, c);
  }
  return out;
}

FreeProductElement from_spanning_form(const SpanningForm& f) {
  const PresentationPtr& pres = f.presentation();
  FreeProductElement out(pres);
  for (const auto& [t, c] : f.terms()) {
    FreeProductElement term = FreeProductElement::embed(Copy::iota, NCPolynomial::word(pres, t.a0, c));
    for (const Word& w : t.qs) term = term * q_map(NCPolynomial::word(pres, w));
    out = out + term;
  }
  return out;
}

FreeProductElement apply_sigma_tilde(const FreeProductElement& x, int q_degree_bound) {
  const PresentationPtr& pres = x.presentation();
  const SpanningForm sf = to_spanning_form(x, q_degree_bound);
  FreeProductElement out(pres);
  for (const auto& [t, c] : sf.terms()) {
    Coeff scale = c * sigma_scalar(*pres, t.a0);
    for (const Word& w : t.qs) scale *= sigma_scalar(*pres, w);
    if (t.qs.size() % 2 == 1) scale = -scale;
    const NCPolynomial a0 = NCPolynomial::word(pres, t.a0, scale);
    FreeProductElement term = FreeProductElement::embed(Copy::iota, a0);
    if (!t.a0.empty()) term = term - q_map(a0);
    for (const Word& w : t.qs) term = term * q_map(NCPolynomial::word(pres, w));
    out = out + term;
  }
  return out;
}

}  // namespace qmod

#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmod/coeff.hpp"
#include "qmod/errors.hpp"

namespace qmod {

enum class AlgebraKind { podles, suq2 };

/// A word is a sequence of generator ids; the empty word is the unit.
using Word = std::vector<int>;

struct RewriteRule {
  Word lhs;
  std::vector<std::pair<Word, Coeff>> rhs;
};

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// One of the two fixed presentations. Generators:
///   podles: A, B, Bstar          (ids 0, 1, 2)
///   suq2:   a, astar, b, bstar   (ids 0, 1, 2, 3)
/// Rules rewrite a length-2 word into lower terms of the monomial order.
class Presentation {
 public:
  static PresentationPtr podles();
  static PresentationPtr suq2();

  AlgebraKind kind() const { return kind_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int g) const { return names_.at(g); }
  int generator(std::string_view name) const;  // throws on unknown
  int star(int g) const { return star_.at(g); }
  const Coeff& sigma(int g) const { return sigma_.at(g); }
  std::array<int, 2> grade(int g) const { return grade_.at(g); }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  /// Index into rules() of the rule with lhs (g1, g2), or -1.
  int rule_for(int g1, int g2) const { return rule_table_[g1 * size() + g2]; }

  /// Monomial order. Podleś: degree, then lex A < B < B*. SU_q(2): degree,
  /// then number of a/a* letters, then lex a < a* < b < b*.
  bool less(const Word& x, const Word& y) const;

  std::string word_text(const Word& w) const;
  std::array<int, 2> grade(const Word& w) const;

  int step_bound = 200000;

 private:
  Presentation() = default;
  void finish();

  AlgebraKind kind_ = AlgebraKind::podles;
  std::vector<std::string> names_;
  std::vector<int> star_;
  std::vector<Coeff> sigma_;
  std::vector<std::array<int, 2>> grade_;
  std::vector<RewriteRule> rules_;
  std::vector<int> rule_table_;
};

enum class Strategy { leftmost, rightmost };

/// Polynomial with exact coefficients, always stored in normal form.
class NCPolynomial {
 public:
  using Terms = std::map<Word, Coeff>;

  explicit NCPolynomial(PresentationPtr p) : pres_(std::move(p)) {}
  /// Reduces `raw` to normal form.
  NCPolynomial(PresentationPtr p, const Terms& raw, Strategy s = Strategy::leftmost);

  static NCPolynomial constant(PresentationPtr p, const Coeff& c);
  static NCPolynomial word(PresentationPtr p, const Word& w, const Coeff& c = 1);
  static NCPolynomial generator(PresentationPtr p, std::string_view name);

  const PresentationPtr& presentation() const { return pres_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Coeff constant_term() const;

  NCPolynomial operator+(const NCPolynomial& o) const;
  NCPolynomial operator-(const NCPolynomial& o) const;
  NCPolynomial operator*(const NCPolynomial& o) const;
  NCPolynomial operator-() const;
  NCPolynomial scaled(const Coeff& c) const;
  bool operator==(const NCPolynomial& o) const { return pres_ == o.pres_ && terms_ == o.terms_; }

  /// `coeff * gen^k ...` terms, descending in the monomial order.
  std::string to_string() const;

 private:
  PresentationPtr pres_;
  Terms terms_;
};

NCPolynomial normal_form(const NCPolynomial& p, Strategy s = Strategy::leftmost);
NCPolynomial normal_form(PresentationPtr pres, const NCPolynomial::Terms& raw,
                         Strategy s = Strategy::leftmost);
NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& r);
NCPolynomial involution(const NCPolynomial& p);
NCPolynomial apply_sigma(const NCPolynomial& p);

/// Normal-form basis words of degree <= max_degree (including the unit).
std::vector<Word> basis_words(const PresentationPtr& p, int max_degree);

/// Defining relations as polynomials that must vanish in the algebra,
/// e.g. "B*B + (A-1)(A+s^2)", built without rewriting.
std::vector<std::pair<std::string, NCPolynomial::Terms>> defining_relations(
    const PresentationPtr& p);

// ---------------------------------------------------------------------------
// Unital free product A * A.

enum class Copy { iota, iota_bar };

struct Factor {
  Copy copy;
  Word word;  // nonempty normal-form word
  auto operator<=>(const Factor&) const = default;
};

using FreeWord = std::vector<Factor>;

/// Element of the free product: alternating words of nonempty factors.
/// The empty FreeWord is the unit.
class FreeProductElement {
 public:
  using Terms = std::map<FreeWord, Coeff>;

  explicit FreeProductElement(PresentationPtr p) : pres_(std::move(p)) {}

  static FreeProductElement unit(PresentationPtr p);
  static FreeProductElement embed(Copy c, const NCPolynomial& x);

  const PresentationPtr& presentation() const { return pres_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const FreeWord& w, const Coeff& c);
  FreeProductElement operator+(const FreeProductElement& o) const;
  FreeProductElement operator-(const FreeProductElement& o) const;
  FreeProductElement operator*(const FreeProductElement& o) const;
  FreeProductElement scaled(const Coeff& c) const;
  bool operator==(const FreeProductElement& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  PresentationPtr pres_;
  Terms terms_;
};

/// q(x) = iota(x) - iota_bar(x); constants are discarded.
FreeProductElement q_map(const NCPolynomial& x);
FreeProductElement free_multiply(const FreeProductElement& x, const FreeProductElement& y);

/// q(ab) - q(a) e(b) - e(a) q(b) + q(a) q(b) with the bare factors embedded
/// through `bare` (both sides). The residual vanishes exactly for
/// bare = iota; mixing the copies does not.
FreeProductElement q_identity_residual(const NCPolynomial& a, const NCPolynomial& b,
                                       Copy left_bare = Copy::iota,
                                       Copy right_bare = Copy::iota);

/// Returns the (zero) residual, throws QIdentityViolated otherwise.
FreeProductElement verify_q_identity(const NCPolynomial& a, const NCPolynomial& b);

/// sigma applied factorwise in both copies.
FreeProductElement apply_sigma_free(const FreeProductElement& x);
/// Swap the two copies.
FreeProductElement flip(const FreeProductElement& x);

/// a0 q(a1) ... q(am), with a0 possibly the unit (empty word).
struct SpanningTerm {
  Word a0;
  std::vector<Word> qs;
  auto operator<=>(const SpanningTerm&) const = default;
};

class SpanningForm {
 public:
  using Terms = std::map<SpanningTerm, Coeff>;
  explicit SpanningForm(PresentationPtr p) : pres_(std::move(p)) {}

  const PresentationPtr& presentation() const { return pres_; }
  const Terms& terms() const { return terms_; }
  void add_term(const SpanningTerm& t, const Coeff& c);
  int q_degree() const;

 private:
  PresentationPtr pres_;
  Terms terms_;
};

inline constexpr int default_q_degree_bound = 6;

/// Unique expansion in the basis a0 q(a1)...q(am). Throws
/// SpanningFormFailure when a term needs more than `q_degree_bound` q's.
SpanningForm to_spanning_form(const FreeProductElement& x,
                              int q_degree_bound = default_q_degree_bound);
FreeProductElement from_spanning_form(const SpanningForm& f);

/// Termwise: a0 q(a1)..q(am) -> (-1)^m (s(a0) - q(s(a0))) q(s(a1))..q(s(am)).
FreeProductElement apply_sigma_tilde(const FreeProductElement& x,
                                     int q_degree_bound = default_q_degree_bound);

}  // namespace qmod

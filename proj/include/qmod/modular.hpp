#pragma once

#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "qmod/rep.hpp"

namespace qmod {

/// A truncated value and an estimate of what the truncation left out.
struct Estimate {
  cd value = 0.0;
  double tail = 0.0;

  Estimate operator+(const Estimate& o) const { return {value + o.value, tail + o.tail}; }
  Estimate operator-(const Estimate& o) const { return {value - o.value, tail + o.tail}; }
  Estimate scaled(cd c) const { return {value * c, tail * std::abs(c)}; }
};

/// Basis vectors whose depth (or level depth) is at least `degree`.
std::vector<char> depth_mask(const Basis& b, int degree, bool level_only);

/// Per-level partial sums of a masked trace. Linear combinations are taken
/// level by level so that a combination gets its own tail.
struct LevelSeries {
  std::vector<cd> per_level;
  double abs_sum = 0.0;

  LevelSeries& add(const LevelSeries& o, cd c = 1.0);
  /// Geometric tail: the ratio of the block sums over [L/4, L/2) and
  /// [L/2, L] (L the top level) fixes a per-level decay rate, which is
  /// summed past L and doubled. Floored by the rounding level of the sum.
  Estimate estimate() const;
};

LevelSeries level_series(const Basis& b, const VecC& contributions, const std::vector<char>& mask);

/// Sum of `contributions` over the masked vectors with the tail above.
Estimate level_trace(const Basis& b, const VecC& contributions, const std::vector<char>& mask);

/// Phi(T) = Tr(K T) over vectors of depth >= exact_depth. Throws
/// WindowTooSmall if the tail exceeds `tolerance`.
Estimate weight_eval(const ModularModule& m, const TruncatedOperator& T, int exact_depth = 0,
                     double tolerance = std::numeric_limits<double>::infinity());

/// lambda_n; odd n use sqrt(2i) = 1 + i.
cd lambda_constant(int n);

/// phi(a0, ..., an) = Phi(gamma F [F,a0] ... [F,an]) with gamma = 1 for odd
/// modules. Values are exactly zero when the total grade is nonzero.
/// Commutators and word-tuple values are cached behind a mutex.
class TwistedFunctional {
 public:
  explicit TwistedFunctional(ModulePtr m);

  int arity() const { return m_->summability() + 1; }
  const ModularModule& module() const { return *m_; }
  const ModulePtr& module_ptr() const { return m_; }

  Estimate operator()(const std::vector<NCPolynomial>& args) const { return series(args).estimate(); }
  Estimate on_words(const std::vector<Word>& words) const { return word_series(words).estimate(); }

  LevelSeries series(const std::vector<NCPolynomial>& args) const;
  LevelSeries word_series(const std::vector<Word>& words) const;

 private:
  const SpMat& comm(const Word& w) const;

  ModulePtr m_;
  SpMat gammaF_;
  mutable std::mutex mu_;
  mutable std::map<Word, SpMat> comm_cache_;
  mutable std::map<std::vector<Word>, LevelSeries> value_cache_;
};

enum class Normalization { lambda, raw, index };

/// lambda: lambda_n / 2 * raw. index: the prefactor of the index formulas,
/// (-1)^(n/2) / 2 for even n and (-1)^((n+1)/2) / 2^(n+1) for odd n.
Estimate chern(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args,
               Normalization norm);
Estimate chern(const ModulePtr& m, const std::vector<NCPolynomial>& args, Normalization norm);

struct Residual {
  double value = 0.0;
  double tail = 0.0;
  double total() const { return value + tail; }
};

Residual check_sigma_invariance(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args);
Residual check_sigma_cyclicity(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args);
/// args has length n + 2.
Residual check_hochschild(const TwistedFunctional& phi, const std::vector<NCPolynomial>& args);

/// |Phi(xy) - Phi(sigma(y) x)| with sigma acting factorwise.
Residual twisted_trace_residual(const ModularModule& m, const FreeProductElement& x,
                                const FreeProductElement& y);

/// lambda_{2p} (-1)^p Phi_+(realize(q(a0) ... q(a_2p))) where Phi_+ is the
/// weight restricted to the plus summand of the doubled Podleś space.
Estimate chern_via_free_product(const ModularModule& m, const std::vector<NCPolynomial>& args);

struct ChainTerm {
  Coeff coeff;
  std::vector<NCPolynomial> factors;
};

struct TwistedChain {
  std::vector<ChainTerm> terms;
};

/// The twisted 2-cycle on the Podleś sphere built from A, B, B*.
TwistedChain hadfield_omega2();

Estimate pair_with_chain(const TwistedFunctional& phi, const TwistedChain& c);

struct Extrapolation {
  cd value;
  double error;
};

/// Evaluates along an increasing schedule (length >= 3). The error is the
/// largest of the last two successive differences; throws NonConvergent if
/// a difference fails to shrink by a factor of 2.
Extrapolation truncation_extrapolate(const std::function<cd(int)>& evaluate,
                                     const std::vector<int>& schedule);

}  // namespace qmod

#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qmod/ncalg.hpp"

namespace qmod {

using cd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cd>;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

enum class ModuleKind { podles, suq2_basic, suq2_dlssv };

std::string to_string(ModuleKind k);
ModuleKind parse_module_kind(const std::string& s);  // throws ConfigError

struct PodlesIndex {
  int k;
  int sign;  // +1 or -1
  bool operator==(const PodlesIndex&) const = default;
};

struct BasicIndex {
  int k;
  int l;
  bool operator==(const BasicIndex&) const = default;
};

/// Half-integers stored doubled: j2 = 2j, m2 = 2mu, n2 = 2n.
struct DlssvIndex {
  int j2;
  int m2;
  int n2;
  bool up;
  bool operator==(const DlssvIndex&) const = default;
};

using BasisIndex = std::variant<PodlesIndex, BasicIndex, DlssvIndex>;

std::string to_string(const BasisIndex& b);

/// Finite basis section. Podleś: k < N. Basic: k < N, |l| <= L.
/// DLSSV: 2j <= jmax2.
struct Window {
  int N = 0;
  int L = 0;
  int jmax2 = 0;
  int margin = 2;

  static Window podles(int N, int margin = 2) { return {N, 0, 0, margin}; }
  static Window basic(int N, int L, int margin = 2) { return {N, L, 0, margin}; }
  static Window dlssv(int jmax, int margin = 2) { return {0, 0, 2 * jmax, margin}; }

  std::string to_string(ModuleKind k) const;
};

/// Ordered labels with per-vector truncation data. `level` is the grading
/// along which traces converge (k, or 2j). `depth` is the number of
/// generator steps to the window boundary; `level_depth` counts only the
/// boundary in the level direction.
class Basis {
 public:
  int size() const { return static_cast<int>(labels_.size()); }
  const BasisIndex& operator[](int i) const { return labels_[i]; }
  int find(const BasisIndex& b, int component = 0) const;  // -1 if absent
  int component(int i) const { return component_[i]; }
  int level(int i) const { return level_[i]; }
  int depth(int i) const { return depth_[i]; }
  int level_depth(int i) const { return level_depth_[i]; }
  int components() const { return components_; }

  void add(const BasisIndex& b, int level, int depth, int level_depth, int component = 0);

 private:
  std::vector<BasisIndex> labels_;
  std::vector<int> component_, level_, depth_, level_depth_;
  std::map<std::tuple<int, int, int, int, int>, int> lookup_;
  int components_ = 1;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// which: +1, -1, or 0 for the doubled space (plus block first).
BasisPtr podles_basis(int N, int which = 0);
BasisPtr basic_basis(int N, int L);
/// Shells by increasing j, up before down, then lexicographic (mu, n).
BasisPtr dlssv_basis(int jmax2);
/// H tensor C^d, component-major.
BasisPtr amplify(const BasisPtr& b, int d);

struct TruncatedOperator {
  BasisPtr domain;
  BasisPtr codomain;
  SpMat mat;

  TruncatedOperator adjoint() const;
  TruncatedOperator operator*(const TruncatedOperator& o) const;
  TruncatedOperator operator+(const TruncatedOperator& o) const;
  TruncatedOperator operator-(const TruncatedOperator& o) const;
  TruncatedOperator scaled(cd c) const;
  VecC apply(const VecC& v) const { return mat * v; }
};

TruncatedOperator identity(const BasisPtr& b);
TruncatedOperator diagonal(const BasisPtr& b, const VecD& d);

struct Params {
  double q = 0.5;
  double s = 1.0;
};

/// Generator matrices of one representation on one window. Adjoint
/// generators are the matrix adjoints of the truncated a, b, B.
class Representation {
 public:
  Representation(ModuleKind kind, Params p, Window w, int podles_which = 0);

  ModuleKind kind() const { return kind_; }
  const Params& params() const { return params_; }
  const Window& window() const { return window_; }
  const PresentationPtr& presentation() const { return pres_; }
  const BasisPtr& basis() const { return basis_; }
  const SpMat& generator(int g) const { return gens_.at(g); }

  SpMat word(const Word& w) const;
  /// Sum of word images; the terms need not be in normal form.
  SpMat matrix(const NCPolynomial::Terms& terms) const;
  /// Throws WindowUnderflow if the window is shallower than p's degree.
  TruncatedOperator represent(const NCPolynomial& p) const;

  /// Largest |coefficient| dropped because its target label does not exist
  /// although its shell lies inside the window (DLSSV transcription check).
  double lost_weight() const { return lost_; }

 private:
  ModuleKind kind_;
  Params params_;
  Window window_;
  PresentationPtr pres_;
  BasisPtr basis_;
  std::vector<SpMat> gens_;
  double lost_ = 0.0;
};

enum class Parity { even, odd };

class ModularModule {
 public:
  ModularModule(ModuleKind kind, Params p, Window w);

  ModuleKind kind() const { return kind_; }
  const Params& params() const { return params_; }
  const Window& window() const { return window_; }
  const PresentationPtr& presentation() const { return rep_.presentation(); }
  const BasisPtr& basis() const { return rep_.basis(); }
  const Representation& representation() const { return rep_; }
  int summability() const { return summability_; }
  Parity parity() const { return parity_; }

  const TruncatedOperator& F() const { return F_; }
  const std::optional<TruncatedOperator>& gamma() const { return gamma_; }
  const VecD& K() const { return K_; }
  TruncatedOperator K_op() const { return diagonal(basis(), K_); }
  /// Diagonal of F when F is diagonal (basic, DLSSV); empty for Podleś.
  const VecD& F_diag() const { return F_diag_; }

  TruncatedOperator represent(const NCPolynomial& p) const { return rep_.represent(p); }
  SpMat word(const Word& w) const { return rep_.word(w); }
  /// [F, pi(w)]. For the Podleś module the off-diagonal blocks
  /// pi_+(w) - pi_-(w) are summed termwise so that small differences keep
  /// their relative accuracy.
  SpMat commutator_word(const Word& w) const;
  SpMat commutator(const NCPolynomial& p) const;

  /// Smallest window depth over which commutator products of total degree
  /// `degree` are exact, and the matching mask.
  std::vector<char> exact_mask(int degree, bool commutators_only) const;

 private:
  SpMat podles_difference(const Word& w) const;

  ModuleKind kind_;
  Params params_;
  Window window_;
  Representation rep_;
  int summability_;
  Parity parity_;
  TruncatedOperator F_;
  std::optional<TruncatedOperator> gamma_;
  VecD K_;
  VecD F_diag_;
  // Podleś only: single-copy generators and their stable differences.
  std::unique_ptr<Representation> plus_, minus_;
  std::vector<SpMat> diff_;
};

using ModulePtr = std::shared_ptr<const ModularModule>;

ModulePtr build_module(ModuleKind kind, Params p, Window w);

/// [k] = (q^-k - q^k) / (q^-1 - q).
double q_number(double k, double q);

/// Single-copy (which = +1/-1) or doubled (which = 0) Podleś representation.
TruncatedOperator represent_podles(const NCPolynomial& p, Params params, const Window& w,
                                   int which = 0);
TruncatedOperator represent_suq2_basic(const NCPolynomial& p, double q, const Window& w);
TruncatedOperator represent_dlssv(const NCPolynomial& p, double q, const Window& w);

/// DLSSV coefficient blocks; rows/cols ordered (up, down).
Eigen::Matrix2d dlssv_alpha(int j2, int m2, int n2, double q, int sign);
Eigen::Matrix2d dlssv_beta(int j2, int m2, int n2, double q, int sign);

TruncatedOperator commutator_F(const ModularModule& m, const TruncatedOperator& x);

struct RelationResidual {
  std::string name;
  double residual;
};

/// Max over defining relations and interior basis vectors of the column
/// norm of pi(relation), plus star-compatibility rows.
std::vector<RelationResidual> relations_residual(ModuleKind kind, Params p, const Window& w);

/// iota -> pi, iota_bar -> F pi F, evaluated through the spanning form so
/// that each q(a) becomes F [F, pi(a)].
TruncatedOperator realize_free_product(const FreeProductElement& x, const ModularModule& m);

/// Max over the interior (depth >= margin) of |(A - B) e_i|.
double interior_difference(const SpMat& A, const SpMat& B, const Basis& basis, int margin);

/// Dense row-major dump: [[[re, im], ...], ...].
std::string dump_operator_json(const TruncatedOperator& op);

}  // namespace qmod

#include <cmath>
#include <vector>

#include "internal.hpp"

namespace qmod {

namespace {

// [x]^(1/2); arguments below zero only occur for targets that do not exist.
double sq(double x, double q) {
  if (x < -1e-9) return 0.0;
  return std::sqrt(std::max(q_number(x, q), 0.0));
}

}  // namespace

double q_number(double k, double q) {
  return (std::pow(q, -k) - std::pow(q, k)) / (1.0 / q - q);
}

Eigen::Matrix2d dlssv_alpha(int j2, int m2, int n2, double q, int sign) {
  const double j = j2 / 2.0, mu = m2 / 2.0, n = n2 / 2.0;
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  double pre = std::pow(q, (mu + n - 0.5) / 2);
  if (sign > 0) {
    pre *= sq(j + mu + 1, q);
    M(0, 0) = std::pow(q, -j - 0.5) * sq(j + n + 1.5, q) / q_number(2 * j + 2, q);
    M(1, 0) = std::sqrt(q) * sq(j - n + 0.5, q) / (q_number(2 * j + 1, q) * q_number(2 * j + 2, q));
    M(1, 1) = std::pow(q, -j) * sq(j + n + 0.5, q) / q_number(2 * j + 1, q);
  } else {
    if (j2 == 0) return M;
    pre *= sq(j - mu, q);
    M(0, 0) = std::pow(q, j + 1) * sq(j - n + 0.5, q) / q_number(2 * j + 1, q);
    M(0, 1) = -std::sqrt(q) * sq(j + n + 0.5, q) / (q_number(2 * j, q) * q_number(2 * j + 1, q));
    M(1, 1) = std::pow(q, j + 0.5) * sq(j - n - 0.5, q) / q_number(2 * j, q);
  }
  return pre * M;
}

Eigen::Matrix2d dlssv_beta(int j2, int m2, int n2, double q, int sign) {
  const double j = j2 / 2.0, mu = m2 / 2.0, n = n2 / 2.0;
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  double pre = std::pow(q, (mu + n - 0.5) / 2);
  if (sign > 0) {
    pre *= sq(j + mu + 1, q);
    M(0, 0) = sq(j - n + 1.5, q) / q_number(2 * j + 2, q);
    M(1, 0) = -std::pow(q, -j - 1) * sq(j + n + 0.5, q) /
              (q_number(2 * j + 1, q) * q_number(2 * j + 2, q));
    M(1, 1) = std::pow(q, -0.5) * sq(j - n + 0.5, q) / q_number(2 * j + 1, q);
  } else {
    if (j2 == 0) return M;
    pre *= sq(j - mu, q);
    M(0, 0) = -std::pow(q, -0.5) * sq(j + n + 0.5, q) / q_number(2 * j + 1, q);
    M(0, 1) = -std::pow(q, j) * sq(j - n + 0.5, q) / (q_number(2 * j, q) * q_number(2 * j + 1, q));
    M(1, 1) = -sq(j + n - 0.5, q) / q_number(2 * j, q);
  }
  return pre * M;
}

void build_dlssv_generators(double q, const Basis& basis, int jmax2, SpMat& a, SpMat& b,
                            double& lost) {
  using Triplet = Eigen::Triplet<cd>;
  std::vector<Triplet> ta, tb;
  lost = 0.0;
  for (int i = 0; i < basis.size(); ++i) {
    const auto& src = std::get<DlssvIndex>(basis[i]);
    const int col = src.up ? 0 : 1;
    for (int sign : {+1, -1}) {
      const int tj2 = src.j2 + sign;
      if (tj2 < 0) continue;
      for (int which = 0; which < 2; ++which) {
        const int dn = which == 0 ? 1 : -1;
        const Eigen::Matrix2d M = which == 0 ? dlssv_alpha(src.j2, src.m2, src.n2, q, sign)
                                             : dlssv_beta(src.j2, src.m2, src.n2, q, sign);
        for (int row = 0; row < 2; ++row) {
          const double c = M(row, col);
          if (c == 0.0) continue;
          const int t = basis.find(DlssvIndex{tj2, src.m2 + 1, src.n2 + dn, row == 0});
          if (t < 0) {
            if (tj2 <= jmax2) lost = std::max(lost, std::abs(c));
            continue;
          }
          (which == 0 ? ta : tb).emplace_back(t, i, c);
        }
      }
    }
  }
  a.resize(basis.size(), basis.size());
  b.resize(basis.size(), basis.size());
  a.setFromTriplets(ta.begin(), ta.end());
  b.setFromTriplets(tb.begin(), tb.end());
}

}  // namespace qmod

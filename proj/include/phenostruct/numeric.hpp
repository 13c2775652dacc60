#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "phenostruct/core.hpp"

namespace pstruct {

inline constexpr double kFdStep = 1e-5;
inline constexpr double kRankTolRel = 1e-6;
inline constexpr double kGapRatioMin = 10.0;

struct non_finite : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct rank_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankReport {
  int observed_rank = 0;
  int predicted_rank = -1;
  std::vector<double> singular_values;  // descending
  double tol_rel = kRankTolRel;
  double gap_ratio = std::numeric_limits<double>::infinity();
  bool confident() const { return gap_ratio >= kGapRatioMin; }
};

struct ResidualStats {
  std::int64_t n_samples = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::string normalization;
};

inline ResidualStats residual_stats(std::span<const double> values, std::string normalization) {
  ResidualStats st;
  st.normalization = std::move(normalization);
  st.n_samples = static_cast<std::int64_t>(values.size());
  double sum = 0.0;
  for (double v : values) {
    const double a = std::abs(v);
    st.max_abs = std::max(st.max_abs, a);
    sum += a;
  }
  st.mean_abs = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  return st;
}

inline ResidualStats merge_stats(const ResidualStats& x, const ResidualStats& y) {
  ResidualStats st;
  st.n_samples = x.n_samples + y.n_samples;
  st.max_abs = std::max(x.max_abs, y.max_abs);
  st.mean_abs = st.n_samples == 0 ? 0.0
                                  : (x.mean_abs * static_cast<double>(x.n_samples) +
                                     y.mean_abs * static_cast<double>(y.n_samples)) /
                                        static_cast<double>(st.n_samples);
  st.normalization = x.normalization.empty() ? y.normalization : x.normalization;
  return st;
}

// Central differences, per-coordinate step h_base * max(1, |coord|).
inline Mat finite_diff_jacobian(const std::function<Vec(const Vec&)>& fn, const Vec& at,
                                double h_base = kFdStep) {
  const Vec f0 = fn(at);
  Mat jac(f0.size(), at.size());
  Vec x = at;
  for (int k = 0; k < at.size(); ++k) {
    const double h = h_base * std::max(1.0, std::abs(at[k]));
    x[k] = at[k] + h;
    const Vec fp = fn(x);
    x[k] = at[k] - h;
    const Vec fm = fn(x);
    x[k] = at[k];
    if (!fp.allFinite() || !fm.allFinite())
      throw non_finite("finite_diff_jacobian: probe left the domain");
    jac.col(k) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

inline RankReport numeric_rank(const Mat& m, double tol_rel = kRankTolRel) {
  RankReport rep;
  rep.tol_rel = tol_rel;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double smax = rep.singular_values.empty() ? 0.0 : rep.singular_values.front();
  const double cut = tol_rel * smax;
  int r = 0;
  for (double s : rep.singular_values)
    if (s > cut) ++r;
  rep.observed_rank = r;
  if (r > 0 && r < static_cast<int>(rep.singular_values.size())) {
    const double below = rep.singular_values[static_cast<std::size_t>(r)];
    rep.gap_ratio = below > 0.0 ? rep.singular_values[static_cast<std::size_t>(r - 1)] / below
                                : std::numeric_limits<double>::infinity();
  }
  return rep;
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

// Ordered pair list of a one-set cortege: (0,1),(0,2),...,(m-2,m-1).
inline std::vector<std::pair<int, int>> cortege_pairs(int m) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count(m)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// Jacobian of all pair distances of the cortege with respect to all point
// coordinates. Rows: pairs in cortege order, s components each. Columns:
// set_a coordinates then set_b coordinates. Entries for points outside a
// pair are structurally zero and never probed.
inline Mat functional_matrix(const MetricSpec& spec, const Cortege& cortege,
                             double h_base = kFdStep) {
  const int s = spec.s;
  const auto diff_pair = [&](const Vec& a, const Vec& b) {
    Vec joint(a.size() + b.size());
    joint << a, b;
    auto fn = [&spec, na = a.size()](const Vec& xy) {
      return spec.eval(xy.head(na), xy.tail(xy.size() - na));
    };
    return finite_diff_jacobian(fn, joint, h_base);
  };

  if (spec.family == Family::one_set) {
    const int m = static_cast<int>(cortege.set_a.size());
    const auto pairs = cortege_pairs(m);
    Mat out = Mat::Zero(s * static_cast<int>(pairs.size()), spec.dim_a * m);
    int row = 0;
    for (auto [i, j] : pairs) {
      const Mat block = diff_pair(cortege.set_a[static_cast<std::size_t>(i)],
                                  cortege.set_a[static_cast<std::size_t>(j)]);
      out.block(row, i * spec.dim_a, s, spec.dim_a) = block.leftCols(spec.dim_a);
      out.block(row, j * spec.dim_a, s, spec.dim_a) = block.rightCols(spec.dim_a);
      row += s;
    }
    return out;
  }

  const int na = static_cast<int>(cortege.set_a.size());
  const int nb = static_cast<int>(cortege.set_b.size());
  const int col_b0 = spec.dim_a * na;
  Mat out = Mat::Zero(s * na * nb, spec.dim_a * na + spec.dim_b * nb);
  int row = 0;
  for (int i = 0; i < na; ++i)
    for (int al = 0; al < nb; ++al) {
      const Mat block = diff_pair(cortege.set_a[static_cast<std::size_t>(i)],
                                  cortege.set_b[static_cast<std::size_t>(al)]);
      out.block(row, i * spec.dim_a, s, spec.dim_a) = block.leftCols(spec.dim_a);
      out.block(row, col_b0 + al * spec.dim_b, s, spec.dim_b) = block.rightCols(spec.dim_b);
      row += s;
    }
  return out;
}

inline double hadamard_bound(const Mat& m) {
  double bound = 1.0;
  for (int r = 0; r < m.rows(); ++r) bound *= m.row(r).norm();
  return bound;
}

// |det| divided by the Hadamard bound (product of row norms); scale-free.
inline double det_residual_hadamard(const Mat& m) {
  const double bound = hadamard_bound(m);
  if (bound <= 0.0) return 0.0;
  return std::abs(m.determinant()) / bound;
}

// Row scaling preserves rank; equilibration keeps mixed-magnitude rows of a
// functional matrix from hiding small but genuine singular values.
inline Mat equilibrate_rows(Mat m) {
  for (int r = 0; r < m.rows(); ++r) {
    const double n = m.row(r).norm();
    if (n > 0.0) m.row(r) /= n;
  }
  return m;
}

// Damped Newton on a square system, finite-difference Jacobian. Used for
// numeric inversion of local group elements near the identity.
inline std::optional<Vec> solve_newton(const std::function<Vec(const Vec&)>& fn, Vec x,
                                       int max_iter = 60, double tol = 1e-12) {
  for (int it = 0; it < max_iter; ++it) {
    Vec r = fn(x);
    if (!r.allFinite()) return std::nullopt;
    if (r.norm() < tol) return x;
    Mat j = finite_diff_jacobian(fn, x, 1e-7);
    Eigen::FullPivLU<Mat> lu(j);
    if (!lu.isInvertible()) return std::nullopt;
    Vec step = lu.solve(r);
    double lambda = 1.0;
    for (int back = 0; back < 30; ++back) {
      Vec trial = x - lambda * step;
      Vec rt = fn(trial);
      if (rt.allFinite() && rt.norm() < r.norm()) {
        x = trial;
        break;
      }
      lambda *= 0.5;
      if (back == 29) return std::nullopt;
    }
  }
  return fn(x).norm() < 1e-9 ? std::optional<Vec>(x) : std::nullopt;
}

}  // namespace pstruct

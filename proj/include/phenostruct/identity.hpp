#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "phenostruct/core.hpp"
#include "phenostruct/numeric.hpp"

namespace pstruct {

struct identity_missing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distance values of one cortege, the only input an identity form may read.
// One-set: values[c] is m x m, symmetric, diagonal filled on demand.
// Two-set: values[c] is len_a x len_b.
struct DistTable {
  Family family = Family::one_set;
  int s = 1;
  std::vector<Mat> values;

  double at(int c, int i, int j) const { return values[static_cast<std::size_t>(c)](i, j); }
  int rows() const { return static_cast<int>(values.front().rows()); }
  int cols() const { return static_cast<int>(values.front().cols()); }
};

enum class IdentityKind {
  cayley_menger,
  gram_unit,
  gram_diag,
  custom_det,
  linear_cocycle,
  alternation_quasigroup,
  custom
};

// A closed-form residual evaluator for one phenomenological-symmetry
// relation. Residual components are normalized (determinants by their
// Hadamard bound, alternations by the magnitude of the cancelling terms),
// so a pass threshold of 1e-8 is scale-free.
struct IdentityForm {
  IdentityKind kind = IdentityKind::custom;
  int len_a = 0;
  int len_b = 0;            // 0 for one-set forms
  bool needs_diag = false;  // diagonal pairs <ii> required (Gram forms)
  std::string note;
  std::function<bool(const DistTable&)> admissible;  // optional
  std::function<std::vector<double>(const DistTable&, const MetricSpec&)> residual;

  std::vector<double> eval(const DistTable& t, const MetricSpec& instance) const {
    return residual(t, instance);
  }
};

// ---------------------------------------------------------------------------
// Small determinant helpers.

inline double alternation_residual(double t_first, double t_second) {
  return std::abs(t_first - t_second) / (std::abs(t_first) + std::abs(t_second) + 1e-9);
}

// Bordered determinant of order n+1 over n points:
//   | 0  1 ... 1 |
//   | 1  0  f .. |  = 0
inline IdentityForm make_cayley_menger(int order) {
  IdentityForm form;
  form.kind = IdentityKind::cayley_menger;
  form.len_a = order - 1;
  form.note = "cayley-menger order " + std::to_string(order) + ", hadamard-normalized";
  form.residual = [order](const DistTable& t, const MetricSpec&) {
    const int m = order - 1;
    Mat cm = Mat::Zero(order, order);
    cm.row(0).setOnes();
    cm.col(0).setOnes();
    cm(0, 0) = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) cm(i + 1, j + 1) = i == j ? 0.0 : t.at(0, i, j);
    return std::vector<double>{det_residual_hadamard(cm)};
  };
  return form;
}

// Gramian of the given order; the diagonal holds the metric values of the
// diagonal pairs <ii> (constant 1 for unit-sphere charts).
inline IdentityForm make_gram_diag(int order, bool unit_diag = false) {
  IdentityForm form;
  form.kind = unit_diag ? IdentityKind::gram_unit : IdentityKind::gram_diag;
  form.len_a = order;
  form.needs_diag = !unit_diag;
  form.note = "gramian order " + std::to_string(order) + ", hadamard-normalized";
  form.residual = [order, unit_diag](const DistTable& t, const MetricSpec&) {
    Mat g(order, order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        g(i, j) = (i == j && unit_diag) ? 1.0 : t.at(0, i, j);
    return std::vector<double>{det_residual_hadamard(g)};
  };
  return form;
}

// Bordered antisymmetric determinant over an odd number of points:
//   | 0   1 ... 1 |
//   | -1  f(ij).. |  = 0
// (the plain odd-order antisymmetric determinant vanishes identically, so
// only the bordered form carries the relation).
inline IdentityForm make_bordered_antisym(int points) {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = points;
  form.note = "bordered antisymmetric determinant, hadamard-normalized";
  form.residual = [points](const DistTable& t, const MetricSpec&) {
    Mat m = Mat::Zero(points + 1, points + 1);
    for (int j = 0; j < points; ++j) {
      m(0, j + 1) = 1.0;
      m(j + 1, 0) = -1.0;
    }
    for (int i = 0; i < points; ++i)
      for (int j = 0; j < points; ++j)
        if (i != j) m(i + 1, j + 1) = t.at(0, i, j);
    return std::vector<double>{det_residual_hadamard(m)};
  };
  return form;
}

// f(ij) - f(ik) + f(jk) = 0 per component, over triples.
inline IdentityForm make_linear_cocycle(int s) {
  IdentityForm form;
  form.kind = IdentityKind::linear_cocycle;
  form.len_a = 3;
  form.note = "additive cocycle, normalized by term magnitudes";
  form.residual = [s](const DistTable& t, const MetricSpec&) {
    std::vector<double> out(static_cast<std::size_t>(s));
    for (int c = 0; c < s; ++c) {
      const double a = t.at(c, 0, 1), b = t.at(c, 0, 2), d = t.at(c, 1, 2);
      out[static_cast<std::size_t>(c)] =
          std::abs(a - b + d) / (std::abs(a) + std::abs(b) + std::abs(d) + 1e-9);
    }
    return out;
  };
  return form;
}

// The simplicial-plane relation over quadruples:
//   | f(ij)-f(jk)  f(jk)-f(ik)      0      |
//   | f(ij)-f(jl)      0        f(il)-f(jl)| = 0
//   |     0        f(ik)-f(kl)  f(il)-f(kl)|
inline IdentityForm make_simplicial_det() {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = 4;
  form.note = "simplicial 3x3 determinant, hadamard-normalized";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f = [&](int i, int j) { return t.at(0, i, j); };
    Mat m(3, 3);
    m << f(0, 1) - f(1, 2), f(1, 2) - f(0, 2), 0.0,  //
        f(0, 1) - f(1, 3), 0.0, f(0, 3) - f(1, 3),   //
        0.0, f(0, 2) - f(2, 3), f(0, 3) - f(2, 3);
    return std::vector<double>{det_residual_hadamard(m)};
  };
  return form;
}

// Two-set cocycle f(ia) - f(ib) - f(ja) + f(jb) = 0 per component.
inline IdentityForm make_two_set_cocycle(int s) {
  IdentityForm form;
  form.kind = IdentityKind::linear_cocycle;
  form.len_a = 2;
  form.len_b = 2;
  form.note = "two-set additive cocycle, normalized by term magnitudes";
  form.residual = [s](const DistTable& t, const MetricSpec&) {
    std::vector<double> out(static_cast<std::size_t>(s));
    for (int c = 0; c < s; ++c) {
      const double ia = t.at(c, 0, 0), ib = t.at(c, 0, 1), ja = t.at(c, 1, 0),
                   jb = t.at(c, 1, 1);
      out[static_cast<std::size_t>(c)] =
          std::abs(ia - ib - ja + jb) /
          (std::abs(ia) + std::abs(ib) + std::abs(ja) + std::abs(jb) + 1e-9);
    }
    return out;
  };
  return form;
}

// Multiplicative rank-(2,2) relation f(ia)f(jb) - f(ib)f(ja) = 0.
inline IdentityForm make_two_set_multiplicative() {
  IdentityForm form;
  form.kind = IdentityKind::custom;
  form.len_a = 2;
  form.len_b = 2;
  form.note = "2x2 minor, normalized by product magnitudes";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const double p = t.at(0, 0, 0) * t.at(0, 1, 1);
    const double q = t.at(0, 0, 1) * t.at(0, 1, 0);
    return std::vector<double>{std::abs(p - q) / (std::abs(p) + std::abs(q) + 1e-9)};
  };
  return form;
}

// Determinant of the full (len_a x len_b) distance grid, optionally extended
// by a column of ones and/or a bordering row/column of ones (the unimetric
// two-set relations are all of this shape).
inline IdentityForm make_grid_det(int len_a, int len_b, bool ones_column, bool bordered) {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = len_a;
  form.len_b = len_b;
  form.note = "grid determinant, hadamard-normalized";
  form.residual = [len_a, len_b, ones_column, bordered](const DistTable& t,
                                                        const MetricSpec&) {
    if (bordered) {
      Mat m = Mat::Ones(len_a + 1, len_b + 1);
      m(0, 0) = 0.0;
      for (int i = 0; i < len_a; ++i)
        for (int j = 0; j < len_b; ++j) m(i + 1, j + 1) = t.at(0, i, j);
      return std::vector<double>{det_residual_hadamard(m)};
    }
    const int cols = len_b + (ones_column ? 1 : 0);
    Mat m(len_a, cols);
    for (int i = 0; i < len_a; ++i) {
      for (int j = 0; j < len_b; ++j) m(i, j) = t.at(0, i, j);
      if (ones_column) m(i, len_b) = 1.0;
    }
    return std::vector<double>{det_residual_hadamard(m)};
  };
  return form;
}

// Rank-(4,2) relation: 4x4 determinant with a product column,
//   | f(ia)  f(ib)  f(ia)f(ib)  1 | = 0.
inline IdentityForm make_product_column_det(int len_a) {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = len_a;
  form.len_b = 2;
  form.note = "product-column determinant, hadamard-normalized";
  form.residual = [len_a](const DistTable& t, const MetricSpec&) {
    Mat m(len_a, 4);
    for (int i = 0; i < len_a; ++i) {
      const double a = t.at(0, i, 0), b = t.at(0, i, 1);
      m(i, 0) = a;
      m(i, 1) = b;
      m(i, 2) = a * b;
      m(i, 3) = 1.0;
    }
    return std::vector<double>{det_residual_hadamard(m)};
  };
  return form;
}

// Numbers a + e*b with e^2 = eps in {0, +1, -1}; the complexified relations
// expand a real determinant over them and split the two components.
struct ENum {
  double re = 0.0;
  double im = 0.0;
};

inline ENum e_add(ENum a, ENum b) { return {a.re + b.re, a.im + b.im}; }
inline ENum e_sub(ENum a, ENum b) { return {a.re - b.re, a.im - b.im}; }
inline ENum e_mul(ENum a, ENum b, double eps) {
  return {a.re * b.re + eps * a.im * b.im, a.re * b.im + a.im * b.re};
}
inline double e_mag(ENum a) { return std::hypot(a.re, a.im); }

inline ENum e_det(std::vector<std::vector<ENum>> m, double eps) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  ENum acc{0.0, 0.0};
  double sign = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<ENum>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<ENum> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != k) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    ENum term = e_mul(m[0][k], e_det(std::move(minor), eps), eps);
    acc.re += sign * term.re;
    acc.im += sign * term.im;
    sign = -sign;
  }
  return acc;
}

// The quasigroup-form relation: substituting the first column of distances
// into the metric function's own formula gives the same value for either
// point of the second set. Works off the representation whose coordinates
// the distances stand in for.
inline IdentityForm make_quasigroup_alternation() {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.note = "self-substitution alternation, normalized by term magnitudes";
  // len_a/len_b are set by the catalog per representation.
  form.residual = [](const DistTable& t, const MetricSpec& spec) {
    const int s = spec.s;
    const int pts_b = spec.dim_b / s;  // distance vectors feeding the xi side
    auto value_for = [&](int col) -> std::optional<Vec> {
      Vec a(spec.dim_a);
      for (int c = 0; c < s; ++c) a[c] = t.at(c, 0, col);
      Vec b(spec.dim_b);
      for (int p = 0; p < pts_b; ++p)
        for (int c = 0; c < s; ++c) b[p * s + c] = t.at(c, 1 + p, col);
      if (!spec.pair_ok(a, b)) return std::nullopt;
      Vec v = spec.eval(a, b);
      if (!v.allFinite()) return std::nullopt;
      return v;
    };
    auto g0 = value_for(0);
    auto g1 = value_for(1);
    if (!g0 || !g1) throw domain_violation("quasigroup form: synthetic pair off-domain");
    std::vector<double> out(static_cast<std::size_t>(s));
    for (int c = 0; c < s; ++c)
      out[static_cast<std::size_t>(c)] = alternation_residual((*g0)[c], (*g1)[c]);
    return out;
  };
  return form;
}

}  // namespace pstruct

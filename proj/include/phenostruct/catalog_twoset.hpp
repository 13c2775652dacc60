#pragma once

#include <cmath>

#include "phenostruct/catalog.hpp"

namespace pstruct {
namespace detail {

inline double det2v(double a, double b, double c, double d) { return a * d - b * c; }

inline Mat mat3(double a11, double a12, double a13, double a21, double a22, double a23,
                double a31, double a32, double a33) {
  Mat m(3, 3);
  m << a11, a12, a13, a21, a22, a23, a31, a32, a33;
  return m;
}

// det of [[p1,q1,1],[p2,q2,1],[p3,q3,1]].
inline double det3_ones(double p1, double q1, double p2, double q2, double p3, double q3) {
  return mat3(p1, q1, 1, p2, q2, 1, p3, q3, 1).determinant();
}

struct TwoSetBuilder {
  Catalog& cat;

  CatalogEntry entry(std::string id, std::string anchor, std::string note) {
    CatalogEntry e;
    e.id = std::move(id);
    e.anchor = std::move(anchor);
    e.note = std::move(note);
    return e;
  }

  MetricSpec spec(const CatalogEntry& e, int s, int dim_a, int dim_b) {
    return base_spec(e.id, Family::two_set, s, dim_a, dim_b);
  }

  void add(CatalogEntry e) {
    finish_entry(e);
    cat.add(std::move(e));
  }
};

// ---------------------------------------------------------------------------
// Unimetric structures of arbitrary rank and the two rank-(3,3) variants.

inline void register_twoset_unimetric(TwoSetBuilder& b) {
  {  // f = x + xi, rank (2,2)
    auto e = b.entry("two/u/r22", "9.2", "additive rank-(2,2) structure");
    auto m = b.spec(e, 1, 1, 1);
    m.eval = [](const Vec& x, const Vec& xi) { return vec1(x[0] + xi[0]); };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_two_set_cocycle(1);
    e.reps = {std::move(rep)};
    MotionSpec ms;
    ms.param_count = 1;
    ms.identity_params = vec1(0.0);
    ms.act_a = [](const Vec& p, const Vec& g) { return vec1(p[0] + g[0]); };
    ms.act_b = [](const Vec& p, const Vec& g) { return vec1(p[0] - g[0]); };
    ms.compose = [](const Vec& p, const Vec& q) { return vec1(p[0] + q[0]); };
    ms.sample_params = [](Rng& rng) { return vec1(rng.uniform(-2.0, 2.0)); };
    e.motions = ms;
    e.lie_basis = {{[](const Vec&) { return vec1(1.0); },
                    [](const Vec&) { return vec1(-1.0); }}};
    b.add(std::move(e));
  }

  {  // f = x xi, the multiplicative canonical form shared by several laws
    auto e = b.entry("two/u/r22-mult", "13.1", "multiplicative rank-(2,2) structure");
    auto m = b.spec(e, 1, 1, 1);
    m.box_a[0] = m.box_b[0] = positive_box();
    m.eval = [](const Vec& x, const Vec& xi) { return vec1(x[0] * xi[0]); };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_two_set_multiplicative();
    e.reps = {std::move(rep)};
    MotionSpec ms;
    ms.param_count = 1;
    ms.identity_params = vec1(1.0);
    ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
    ms.act_a = [](const Vec& p, const Vec& g) { return vec1(p[0] / g[0]); };
    ms.act_b = [](const Vec& p, const Vec& g) { return vec1(p[0] * g[0]); };
    ms.compose = [](const Vec& p, const Vec& q) { return vec1(p[0] * q[0]); };
    ms.sample_params = [](Rng& rng) { return vec1(rng.uniform(0.2, 2.0)); };
    e.motions = ms;
    e.lie_basis = {{[](const Vec& p) { return vec1(-p[0]); },
                    [](const Vec& p) { return vec1(p[0]); }}};
    b.add(std::move(e));
  }

  {  // f = x xi + eta, rank (3,2)
    auto e = b.entry("two/u/r32", "9.3", "bilinear-affine rank-(3,2) structure");
    auto m = b.spec(e, 1, 1, 2);
    m.eval = [](const Vec& x, const Vec& xi) { return vec1(x[0] * xi[0] + xi[1]); };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_grid_det(3, 2, /*ones_column=*/true, /*bordered=*/false);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // x' = a x + b, xi' = xi / a, eta' = eta - b xi / a
    ms.param_count = 2;
    ms.identity_params = vec2(1.0, 0.0);
    ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
    ms.act_a = [](const Vec& p, const Vec& g) { return vec1(g[0] * p[0] + g[1]); };
    ms.act_b = [](const Vec& p, const Vec& g) {
      return vec2(p[0] / g[0], p[1] - g[1] * p[0] / g[0]);
    };
    ms.compose = [](const Vec& p, const Vec& q) {
      return vec2(p[0] * q[0], q[0] * p[1] + q[1]);
    };
    ms.sample_params = [](Rng& rng) {
      const double a = rng.uniform(0.2, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0);
      return vec2(a, rng.uniform(-2.0, 2.0));
    };
    e.motions = ms;
    e.lie_basis = {
        {[](const Vec& p) { return vec1(p[0]); },
         [](const Vec& q) { return vec2(-q[0], 0.0); }},
        {[](const Vec&) { return vec1(1.0); },
         [](const Vec& q) { return vec2(0.0, -q[0]); }},
    };
    b.add(std::move(e));
  }

  {  // f = (x xi + eta) / (x + theta), rank (4,2)
    auto e = b.entry("two/u/r42", "9.4", "homographic rank-(4,2) structure");
    auto m = b.spec(e, 1, 1, 3);
    m.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(x[0] + xi[2]) >= 0.05;
    };
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec1((x[0] * xi[0] + xi[1]) / (x[0] + xi[2]));
    };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_product_column_det(4);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // moebius action; params (a, b, c), d = (1 + b c) / a
    ms.param_count = 3;
    ms.identity_params = vec3(1.0, 0.0, 0.0);
    ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
    const auto dpar = [](const Vec& g) { return (1.0 + g[1] * g[2]) / g[0]; };
    ms.act_a = [dpar](const Vec& p, const Vec& g) {
      const double den = g[2] * p[0] + dpar(g);
      if (std::abs(den) < kDomainMargin) throw domain_violation("moebius: pole");
      return vec1((g[0] * p[0] + g[1]) / den);
    };
    ms.act_b = [dpar](const Vec& q, const Vec& g) {
      const double d = dpar(g);
      const double den = d - g[2] * q[2];
      if (std::abs(den) < kDomainMargin) throw domain_violation("moebius: pole");
      return vec3((d * q[0] - g[2] * q[1]) / den, (g[0] * q[1] - g[1] * q[0]) / den,
                  (g[0] * q[2] - g[1]) / den);
    };
    ms.compose = [dpar](const Vec& p, const Vec& q) {
      // 2x2 unimodular matrices multiply: apply p then q.
      const double a = q[0] * p[0] + q[1] * p[2];
      const double bb = q[0] * p[1] + q[1] * dpar(p);
      const double c = q[2] * p[0] + dpar(q) * p[2];
      return vec3(a, bb, c);
    };
    ms.sample_params = [](Rng& rng) {
      const double a = rng.uniform(0.4, 1.6) * (rng.unit() < 0.5 ? -1.0 : 1.0);
      return vec3(a, rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
    };
    e.motions = ms;
    b.add(std::move(e));
  }

  {  // f = <x, xi> in dimension three, rank (4,4)
    auto e = b.entry("two/u/r44", "9.5", "bilinear rank-(4,4) structure, m=3");
    auto m = b.spec(e, 1, 3, 3);
    m.eval = [](const Vec& x, const Vec& xi) { return vec1(x.dot(xi)); };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_grid_det(4, 4, false, false);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // x' = A x, xi' = A^{-T} xi
    ms.param_count = 9;
    Vec id(9);
    id << 1, 0, 0, 0, 1, 0, 0, 0, 1;
    ms.identity_params = id;
    const auto mat_of = [](const Vec& g) {
      Mat a(3, 3);
      a << g[0], g[1], g[2], g[3], g[4], g[5], g[6], g[7], g[8];
      return a;
    };
    ms.param_domain = [mat_of](const Vec& g) {
      return std::abs(mat_of(g).determinant()) >= kDomainMargin;
    };
    ms.act_a = [mat_of](const Vec& p, const Vec& g) -> Vec { return mat_of(g) * p; };
    ms.act_b = [mat_of](const Vec& q, const Vec& g) -> Vec {
      return mat_of(g).inverse().transpose() * q;
    };
    ms.compose = [mat_of](const Vec& p, const Vec& q) {
      const Mat m2 = mat_of(q) * mat_of(p);
      Vec out(9);
      out << m2(0, 0), m2(0, 1), m2(0, 2), m2(1, 0), m2(1, 1), m2(1, 2), m2(2, 0),
          m2(2, 1), m2(2, 2);
      return out;
    };
    ms.sample_params = [mat_of](Rng& rng) {
      Vec g(9);
      for (int k = 0; k < 9; ++k) g[k] = rng.uniform(-1.0, 1.0);
      return g;
    };
    e.motions = ms;
    b.add(std::move(e));
  }

  {  // f = x1 xi1 + x2 xi2 + x3 + xi3, rank (4,4)
    auto e = b.entry("two/u/r44a", "9.6", "affine-bilinear rank-(4,4) structure, m=3");
    auto m = b.spec(e, 1, 3, 3);
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec1(x[0] * xi[0] + x[1] * xi[1] + x[2] + xi[2]);
    };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_grid_det(4, 4, false, /*bordered=*/true);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // params: A (2x2), b (3), c (2)
    ms.param_count = 9;
    Vec id(9);
    id << 1, 0, 0, 1, 0, 0, 0, 0, 0;
    ms.identity_params = id;
    const auto a_of = [](const Vec& g) {
      Mat a(2, 2);
      a << g[0], g[1], g[2], g[3];
      return a;
    };
    ms.param_domain = [a_of](const Vec& g) {
      return std::abs(a_of(g).determinant()) >= kDomainMargin;
    };
    ms.act_a = [a_of](const Vec& p, const Vec& g) {
      const Mat a = a_of(g);
      Vec out(3);
      out.head(2) = a * p.head(2) + Eigen::Vector2d(g[4], g[5]);
      out[2] = p[2] + g[7] * p[0] + g[8] * p[1] + g[6];
      return out;
    };
    ms.act_b = [a_of](const Vec& q, const Vec& g) {
      const Mat a = a_of(g);
      const Eigen::Vector2d c(g[7], g[8]);
      const Eigen::Vector2d b2(g[4], g[5]);
      const Eigen::Vector2d shifted = q.head(2) - c;
      const Eigen::Vector2d xi12 = a.inverse().transpose() * shifted;
      const Eigen::Vector2d w = a.inverse() * b2;
      Vec out(3);
      out.head(2) = xi12;
      out[2] = q[2] - w.dot(shifted) - g[6];
      return out;
    };
    ms.sample_params = [](Rng& rng) {
      Vec g(9);
      for (int k = 0; k < 9; ++k) g[k] = rng.uniform(-1.0, 1.0);
      return g;
    };
    e.motions = ms;
    b.add(std::move(e));
  }

  {  // f = <x, xi_{1..3}> + xi4, rank (5,4)
    auto e = b.entry("two/u/r54", "9.7", "bilinear rank-(5,4) structure, m=3");
    auto m = b.spec(e, 1, 3, 4);
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec1(x[0] * xi[0] + x[1] * xi[1] + x[2] * xi[2] + xi[3]);
    };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_grid_det(5, 4, /*ones_column=*/true, false);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // params: A (3x3), b (3)
    ms.param_count = 12;
    Vec id(12);
    id << 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0;
    ms.identity_params = id;
    const auto mat_of = [](const Vec& g) {
      Mat a(3, 3);
      a << g[0], g[1], g[2], g[3], g[4], g[5], g[6], g[7], g[8];
      return a;
    };
    ms.param_domain = [mat_of](const Vec& g) {
      return std::abs(mat_of(g).determinant()) >= kDomainMargin;
    };
    ms.act_a = [mat_of](const Vec& p, const Vec& g) -> Vec {
      return mat_of(g) * p + Eigen::Vector3d(g[9], g[10], g[11]);
    };
    ms.act_b = [mat_of](const Vec& q, const Vec& g) {
      const Mat a = mat_of(g);
      const Eigen::Vector3d b3(g[9], g[10], g[11]);
      const Eigen::Vector3d xi123 = a.inverse().transpose() * q.head(3);
      Vec out(4);
      out.head(3) = xi123;
      out[3] = q[3] - (a.inverse() * b3).dot(q.head(3));
      return out;
    };
    ms.sample_params = [](Rng& rng) {
      Vec g(12);
      for (int k = 0; k < 12; ++k) g[k] = rng.uniform(-1.0, 1.0);
      return g;
    };
    e.motions = ms;
    b.add(std::move(e));
  }

  {  // f = x xi + y eta, rank (3,3)
    auto e = b.entry("two/u/r33", "9.16", "bilinear rank-(3,3) structure");
    auto m = b.spec(e, 1, 2, 2);
    m.eval = [](const Vec& x, const Vec& xi) { return vec1(x.dot(xi)); };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_grid_det(3, 3, false, false);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // GL(2) on x, inverse transpose on xi; params (a,b,c,d)
    ms.param_count = 4;
    ms.identity_params = vec4(1.0, 0.0, 0.0, 1.0);
    ms.param_domain = [](const Vec& g) {
      return std::abs(g[0] * g[3] - g[1] * g[2]) >= kDomainMargin;
    };
    ms.act_a = [](const Vec& p, const Vec& g) {
      return vec2(g[0] * p[0] + g[1] * p[1], g[2] * p[0] + g[3] * p[1]);
    };
    ms.act_b = [](const Vec& q, const Vec& g) {
      const double delta = g[0] * g[3] - g[1] * g[2];
      return vec2((g[3] * q[0] - g[2] * q[1]) / delta,
                  (-g[1] * q[0] + g[0] * q[1]) / delta);
    };
    ms.compose = [](const Vec& p, const Vec& q) {
      return vec4(q[0] * p[0] + q[1] * p[2], q[0] * p[1] + q[1] * p[3],
                  q[2] * p[0] + q[3] * p[2], q[2] * p[1] + q[3] * p[3]);
    };
    ms.sample_params = [](Rng& rng) {
      Vec g(4);
      for (int k = 0; k < 4; ++k) g[k] = rng.uniform(-1.0, 1.0);
      return g;
    };
    e.motions = ms;
    e.lie_basis = {
        {[](const Vec& p) { return vec2(p[0], 0.0); },
         [](const Vec& q) { return vec2(-q[0], 0.0); }},
        {[](const Vec& p) { return vec2(p[1], 0.0); },
         [](const Vec& q) { return vec2(0.0, -q[0]); }},
        {[](const Vec& p) { return vec2(0.0, p[0]); },
         [](const Vec& q) { return vec2(-q[1], 0.0); }},
        {[](const Vec& p) { return vec2(0.0, p[1]); },
         [](const Vec& q) { return vec2(0.0, -q[1]); }},
    };
    b.add(std::move(e));
  }

  {  // f = x xi + y + eta, rank (3,3)
    auto e = b.entry("two/u/r33a", "9.17", "affine-bilinear rank-(3,3) structure");
    auto m = b.spec(e, 1, 2, 2);
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec1(x[0] * xi[0] + x[1] + xi[1]);
    };
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = make_grid_det(3, 3, false, /*bordered=*/true);
    e.reps = {std::move(rep)};
    MotionSpec ms;  // params (a,b,c,d): x'=ax+b, y'=y+cx+d
    ms.param_count = 4;
    ms.identity_params = vec4(1.0, 0.0, 0.0, 0.0);
    ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
    ms.act_a = [](const Vec& p, const Vec& g) {
      return vec2(g[0] * p[0] + g[1], p[1] + g[2] * p[0] + g[3]);
    };
    ms.act_b = [](const Vec& q, const Vec& g) {
      return vec2((q[0] - g[2]) / g[0],
                  q[1] - g[1] * q[0] / g[0] - (g[0] * g[3] - g[1] * g[2]) / g[0]);
    };
    ms.compose = [](const Vec& p, const Vec& q) {
      // 3x3 matrices [[a,0,b],[c,1,d],[0,0,1]] multiply (apply p then q)
      return vec4(q[0] * p[0], q[0] * p[1] + q[1], q[2] * p[0] + p[2],
                  q[2] * p[1] + p[3] + q[3]);
    };
    ms.sample_params = [](Rng& rng) {
      const double a = rng.uniform(0.2, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0);
      return vec4(a, rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    };
    e.motions = ms;
    e.lie_basis = {
        {[](const Vec& p) { return vec2(p[0], 0.0); },
         [](const Vec& q) { return vec2(-q[0], 0.0); }},
        {[](const Vec&) { return vec2(1.0, 0.0); },
         [](const Vec& q) { return vec2(0.0, -q[0]); }},
        {[](const Vec& p) { return vec2(0.0, p[0]); },
         [](const Vec&) { return vec2(-1.0, 0.0); }},
        {[](const Vec&) { return vec2(0.0, 1.0); },
         [](const Vec&) { return vec2(0.0, -1.0); }},
    };
    b.add(std::move(e));
  }
}

// ---------------------------------------------------------------------------
// Negative entries: no finite relation exists.

inline void register_twoset_negatives(TwoSetBuilder& b) {
  {
    auto e = b.entry("neg/cubic-tail", "9.x", "bilinear with cubic tail; only trivial motions");
    e.expect_no_structure = true;
    auto m = b.spec(e, 1, 1, 1);
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec1(x[0] * xi[0] + xi[0] * xi[0] * xi[0]);
    };
    Representation rep;
    rep.instances = {std::move(m)};
    e.reps = {std::move(rep)};
    b.add(std::move(e));
  }
  {
    auto e = b.entry("neg/r53-ratio", "12.x",
                     "rank-(5,3) candidate; its determinant relation fails");
    e.expect_no_structure = true;
    auto m = b.spec(e, 1, 2, 4);
    // Wide boxes: the violation of the candidate relation grows with the
    // sampled window, giving a clear witness.
    m.box_b = uniform_boxes(4, -2.0, 2.0);
    m.box_b[3] = Box{-4.0, 4.0};
    m.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(x[0] * x[1] + xi[3]) >= 0.15;
    };
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec1((x[0] * xi[0] + x[1] * xi[1] + xi[2]) / (x[0] * x[1] + xi[3]));
    };
    Representation rep;
    rep.instances = {std::move(m)};
    e.reps = {std::move(rep)};

    IdentityForm cand;  // 5x5 determinant with a triple-product column
    cand.kind = IdentityKind::custom_det;
    cand.len_a = 5;
    cand.len_b = 3;
    cand.note = "candidate determinant, hadamard-normalized";
    cand.residual = [](const DistTable& t, const MetricSpec&) {
      Mat m5(5, 5);
      for (int i = 0; i < 5; ++i) {
        const double fa = t.at(0, i, 0), fb = t.at(0, i, 1), fc = t.at(0, i, 2);
        m5(i, 0) = 1.0;
        m5(i, 1) = fa;
        m5(i, 2) = fb;
        m5(i, 3) = fc;
        m5(i, 4) = fa * fb * fc;
      }
      return std::vector<double>{det_residual_hadamard(m5)};
    };
    e.candidate_identity = std::move(cand);
    b.add(std::move(e));
  }
}

// ---------------------------------------------------------------------------
// Dimetric structures of rank (n+1, 2), canonical and quasigroup forms.

inline IdentityForm identity_10_3() { return make_two_set_cocycle(2); }

inline IdentityForm identity_10_4() {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = 2;
  form.len_b = 2;
  form.note = "two 2x2 determinants, hadamard-normalized";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    Mat m1(2, 2), m2(2, 2);
    m1 << f1(0, 0) - f1(0, 1), f1(0, 0) * f2(1, 0),  //
        f1(1, 0) - f1(1, 1), f1(1, 0) * f2(0, 0);
    m2 << f2(0, 0) - f2(1, 0), f2(0, 0) * f1(0, 1),  //
        f2(0, 1) - f2(1, 1), f2(0, 1) * f1(0, 0);
    return std::vector<double>{det_residual_hadamard(m1), det_residual_hadamard(m2)};
  };
  return form;
}

inline IdentityForm identity_10_5() {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = 3;
  form.len_b = 2;
  form.note = "sums of 3x3 determinants, hadamard-normalized";
  form.residual = [](const DistTable& t, const MetricSpec& spec) {
    const double eps = spec.params.at("eps");
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const Mat a = mat3(f1(0, 0), f1(0, 1), 1, f1(1, 0), f1(1, 1), 1, f1(2, 0), f1(2, 1), 1);
    const Mat bm = mat3(f2(0, 0), f2(0, 1), 1, f2(1, 0), f2(1, 1), 1, f2(2, 0), f2(2, 1), 1);
    const Mat c = mat3(f1(0, 0), f2(0, 1), 1, f1(1, 0), f2(1, 1), 1, f1(2, 0), f2(2, 1), 1);
    const Mat d = mat3(f2(0, 0), f1(0, 1), 1, f2(1, 0), f1(1, 1), 1, f2(2, 0), f1(2, 1), 1);
    const double r1 = std::abs(a.determinant() + eps * bm.determinant()) /
                      (hadamard_bound(a) + hadamard_bound(bm) + 1e-9);
    const double r2 = std::abs(c.determinant() + d.determinant()) /
                      (hadamard_bound(c) + hadamard_bound(d) + 1e-9);
    return std::vector<double>{r1, r2};
  };
  return form;
}

inline IdentityForm identity_10_6(double cpar) {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.len_a = 3;
  form.len_b = 2;
  form.note = "alternation of a scaled 3x3 determinant plus a plain 3x3 determinant";
  form.admissible = [](const DistTable& t) {
    for (int a = 0; a < 2; ++a)
      if (std::abs(t.at(0, 0, a) - t.at(0, 1, a)) < 0.05) return false;
    return true;
  };
  form.residual = [cpar](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const auto term = [&](int a) {
      const Mat m = mat3(f1(0, a), f2(0, a), 1, f1(1, a), f2(1, a), 1, f1(2, a), f2(2, a), 1);
      return m.determinant() / std::pow(f1(0, a) - f1(1, a), cpar + 1.0);
    };
    const Mat grid =
        mat3(f1(0, 0), f1(0, 1), 1, f1(1, 0), f1(1, 1), 1, f1(2, 0), f1(2, 1), 1);
    return std::vector<double>{alternation_residual(term(0), term(1)),
                               det_residual_hadamard(grid)};
  };
  return form;
}

inline IdentityForm identity_10_7() {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.len_a = 3;
  form.len_b = 2;
  form.note = "alternation with a logarithmic vandermonde correction";
  form.admissible = [](const DistTable& t) {
    for (int a = 0; a < 2; ++a)
      if (t.at(0, 0, a) - t.at(0, 1, a) < 0.05) return false;
    return true;
  };
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const auto term = [&](int a) {
      const double gap = f1(0, a) - f1(1, a);
      const Mat main =
          mat3(f1(0, a), f2(0, a), 1, f1(1, a), f2(1, a), 1, f1(2, a), f2(2, a), 1);
      const Mat vander = mat3(f1(0, a), f1(0, a) * f1(0, a), 1, f1(1, a),
                              f1(1, a) * f1(1, a), 1, f1(2, a), f1(2, a) * f1(2, a), 1);
      return (main.determinant() - vander.determinant() * std::log(gap)) /
             (gap * gap * gap);
    };
    return std::vector<double>{alternation_residual(term(0), term(1))};
  };
  return form;
}

inline IdentityForm identity_10_8() {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.len_a = 3;
  form.len_b = 2;
  form.note = "alternations of 2x2 determinant products";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const auto d1 = [&](int i, int j) {
      return det2v(f1(i, 0), f1(i, 1), f1(j, 0), f1(j, 1));
    };
    const auto d2 = [&](int i, int j) {
      return det2v(f2(i, 0), f2(i, 1), f2(j, 0), f2(j, 1));
    };
    // R(ij) of det1(i,k) * det2(j,k), and R(ik) of det1(i,j) * det2(k,j)
    const double t1a = d1(0, 2) * d2(1, 2), t1b = d1(1, 2) * d2(0, 2);
    const double t2a = d1(0, 1) * d2(2, 1), t2b = d1(2, 1) * d2(0, 1);
    return std::vector<double>{alternation_residual(t1a, t1b),
                               alternation_residual(t2a, t2b)};
  };
  return form;
}

inline IdentityForm identity_10_9() {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = 4;
  form.len_b = 2;
  form.note = "complexified product-column determinant, split components";
  form.residual = [](const DistTable& t, const MetricSpec& spec) {
    const double eps = spec.params.at("eps");
    std::vector<std::vector<ENum>> m(4, std::vector<ENum>(4));
    double bound = 0.0;
    for (int i = 0; i < 4; ++i) {
      const ENum fa{t.at(0, i, 0), t.at(1, i, 0)};
      const ENum fb{t.at(0, i, 1), t.at(1, i, 1)};
      m[static_cast<std::size_t>(i)] = {fa, fb, e_mul(fa, fb, eps), ENum{1.0, 0.0}};
      double rownorm = 0.0;
      for (const ENum& x : m[static_cast<std::size_t>(i)]) rownorm += e_mag(x) * e_mag(x);
      bound = bound == 0.0 ? std::sqrt(rownorm) : bound * std::sqrt(rownorm);
    }
    const ENum det = e_det(m, eps);
    return std::vector<double>{std::abs(det.re) / (bound + 1e-9),
                               std::abs(det.im) / (bound + 1e-9)};
  };
  return form;
}

inline IdentityForm identity_10_10() {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.len_a = 4;
  form.len_b = 2;
  form.note = "alternations of cross-ratio style expressions";
  form.admissible = [](const DistTable& t) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    for (int a = 0; a < 2; ++a) {
      if (std::abs(f1(0, a) - f1(3, a)) < 0.05) return false;
      if (std::abs(f1(1, a) - f1(2, a)) < 0.05) return false;
      if (std::abs(f1(1, a) - f1(3, a)) < 0.05) return false;
      if (std::abs(f1(0, a) - f1(2, a)) < 0.05) return false;
    }
    return true;
  };
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const auto cross = [&](int a) {
      return (f1(1, a) - f1(3, a)) * (f1(0, a) - f1(2, a)) /
             ((f1(0, a) - f1(3, a)) * (f1(1, a) - f1(2, a)));
    };
    const auto second = [&](int a) -> std::optional<double> {
      const double dkl1 = f1(2, a) - f1(3, a);
      const double dkl2 = f2(2, a) - f2(3, a);
      const double core = det2v(f1(2, a), f1(3, a), f2(2, a), f2(3, a));
      const double num = det2v(f1(0, a), dkl1, f2(0, a), dkl2) + core;
      const double den = det2v(f1(1, a), dkl1, f2(1, a), dkl2) + core;
      if (std::abs(den) < 1e-7) return std::nullopt;
      return (f1(1, a) - f1(3, a)) / (f1(0, a) - f1(3, a)) * num / den;
    };
    auto s0 = second(0), s1 = second(1);
    if (!s0 || !s1) throw domain_violation("10.10 identity: degenerate denominator");
    return std::vector<double>{alternation_residual(cross(0), cross(1)),
                               alternation_residual(*s0, *s1)};
  };
  return form;
}

inline IdentityForm identity_10_11() {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.len_a = 4;
  form.len_b = 2;
  form.note = "alternations of 3x3 determinant products";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const auto d1 = [&](int i, int j, int k) {
      return det3_ones(f1(i, 0), f1(i, 1), f1(j, 0), f1(j, 1), f1(k, 0), f1(k, 1));
    };
    const auto d2 = [&](int i, int j, int k) {
      return det3_ones(f2(i, 0), f2(i, 1), f2(j, 0), f2(j, 1), f2(k, 0), f2(k, 1));
    };
    // R(ij) of d1(i,k,l) d2(j,k,l); R(kl) of d1(i,j,k) d2(i,j,l)
    const double t1a = d1(0, 2, 3) * d2(1, 2, 3), t1b = d1(1, 2, 3) * d2(0, 2, 3);
    const double t2a = d1(0, 1, 2) * d2(0, 1, 3), t2b = d1(0, 1, 3) * d2(0, 1, 2);
    return std::vector<double>{alternation_residual(t1a, t1b),
                               alternation_residual(t2a, t2b)};
  };
  return form;
}

inline IdentityForm identity_10_12() {
  IdentityForm form;
  form.kind = IdentityKind::alternation_quasigroup;
  form.len_a = 5;
  form.len_b = 2;
  form.note = "alternations of 3x3 determinant cross-ratios";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int a) { return t.at(0, i, a); };
    const auto f2 = [&](int i, int a) { return t.at(1, i, a); };
    const auto d = [&](int i, int j, int k, int a) {
      return det3_ones(f1(i, a), f2(i, a), f1(j, a), f2(j, a), f1(k, a), f2(k, a));
    };
    const auto first = [&](int a) -> std::optional<double> {
      const double den1 = d(1, 2, 3, a), den2 = d(0, 2, 4, a);
      if (std::abs(den1) < 1e-7 || std::abs(den2) < 1e-7) return std::nullopt;
      return d(0, 2, 3, a) / den1 * d(1, 2, 4, a) / den2;
    };
    const auto second = [&](int a) -> std::optional<double> {
      const double den1 = d(1, 2, 3, a), den2 = d(0, 3, 4, a);
      if (std::abs(den1) < 1e-7 || std::abs(den2) < 1e-7) return std::nullopt;
      return d(0, 2, 3, a) / den1 * d(1, 3, 4, a) / den2;
    };
    auto f0 = first(0), f1v = first(1), s0 = second(0), s1 = second(1);
    if (!f0 || !f1v || !s0 || !s1)
      throw domain_violation("10.12 identity: degenerate denominator");
    return std::vector<double>{alternation_residual(*f0, *f1v),
                               alternation_residual(*s0, *s1)};
  };
  return form;
}

inline void register_twoset_dimetric(TwoSetBuilder& b) {
  struct DiEntry {
    const char* id;
    const char* anchor;
    const char* note;
    int n;  // rank (n+1, 2)
  };

  const auto add_entry = [&](const DiEntry& de, std::vector<MetricSpec> canonical,
                             std::optional<IdentityForm> canonical_identity,
                             std::vector<MetricSpec> primed,
                             std::optional<MotionSpec> motions = std::nullopt) {
    auto e = b.entry(de.id, de.anchor, de.note);
    Representation rep;
    rep.instances = std::move(canonical);
    rep.identity = std::move(canonical_identity);
    e.reps = {std::move(rep)};
    if (!primed.empty()) {
      Representation q;
      q.tag = "quasigroup";
      q.instances = std::move(primed);
      IdentityForm qf = make_quasigroup_alternation();
      qf.len_a = 1 + q.instances.front().dim_b / q.instances.front().s;
      qf.len_b = 2;
      q.identity = std::move(qf);
      e.reps.push_back(std::move(q));
    }
    e.motions = std::move(motions);
    b.add(std::move(e));
  };

  {  // (10.3): componentwise additive
    DiEntry de{"two/di/r22-add", "10.3", "additive dimetric rank-(2,2) structure", 1};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 2);
    m.id = de.id;
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec2(x[0] + xi[0], x[1] + xi[1]);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.eval = [](const Vec& x, const Vec& xi) {
      return vec2(x[0] - xi[0], x[1] - xi[1]);
    };
    MotionSpec ms;
    ms.param_count = 2;
    ms.identity_params = vec2(0.0, 0.0);
    ms.act_a = [](const Vec& pt, const Vec& g) { return vec2(pt[0] + g[0], pt[1] + g[1]); };
    ms.act_b = [](const Vec& pt, const Vec& g) { return vec2(pt[0] - g[0], pt[1] - g[1]); };
    ms.compose = [](const Vec& pp, const Vec& q) { return vec2(pp[0] + q[0], pp[1] + q[1]); };
    ms.sample_params = [](Rng& rng) {
      return vec2(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    };
    add_entry(de, {m}, identity_10_3(), {p}, ms);
  }

  {  // (10.4): scaled additive
    DiEntry de{"two/di/r22-scale", "10.4", "scaled dimetric rank-(2,2) structure", 1};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 2);
    m.id = de.id;
    m.box_a[1] = positive_box();
    m.box_b[1] = positive_box();
    m.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(x[0] + xi[0]) >= 0.05;
    };
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec2((x[0] + xi[0]) * x[1], (x[0] + xi[0]) * xi[1]);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.domain = [](const Vec& x, const Vec& xi) { return std::abs(xi[1]) >= kDomainMargin; };
    p.eval = [](const Vec& x, const Vec& xi) {
      return vec2((x[0] - xi[0]) * xi[1], x[1] / xi[1]);
    };
    MotionSpec ms;  // x'=ax+b, y'=y/a, xi'=a xi-b, eta'=eta/a
    ms.param_count = 2;
    ms.identity_params = vec2(1.0, 0.0);
    ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
    ms.act_a = [](const Vec& pt, const Vec& g) {
      return vec2(g[0] * pt[0] + g[1], pt[1] / g[0]);
    };
    ms.act_b = [](const Vec& pt, const Vec& g) {
      return vec2(g[0] * pt[0] - g[1], pt[1] / g[0]);
    };
    ms.compose = [](const Vec& pp, const Vec& q) {
      return vec2(pp[0] * q[0], q[0] * pp[1] + q[1]);
    };
    ms.sample_params = [](Rng& rng) {
      const double a = rng.uniform(0.2, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0);
      return vec2(a, rng.uniform(-2.0, 2.0));
    };
    add_entry(de, {m}, identity_10_4(), {p}, ms);
  }

  {  // (10.5): epsilon family of rank (3,2)
    DiEntry de{"two/di/r32-eps", "10.5", "bilinear dimetric rank-(3,2) family", 2};
    std::vector<MetricSpec> canonical, primed;
    for (double eps : {0.0, 1.0, -1.0}) {
      auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 4);
      m.id = std::string(de.id) + (eps == 0 ? "#eps=0" : (eps > 0 ? "#eps=+1" : "#eps=-1"));
      m.params["eps"] = eps;
      m.eval = [eps](const Vec& x, const Vec& xi) {
        return vec2(x[0] * xi[0] + eps * x[1] * xi[1] + xi[2],
                    x[0] * xi[1] + x[1] * xi[0] + xi[3]);
      };
      canonical.push_back(m);
      auto p = m;
      p.id += "'";
      p.point_ok_b = [eps](const Vec& xi) {
        return std::abs(sq(xi[0] - xi[2]) - eps * sq(xi[1] - xi[3])) >= 0.05;
      };
      p.eval = [eps](const Vec& x, const Vec& xi) {
        const double dxi = xi[0] - xi[2], deta = xi[1] - xi[3];
        const double den = sq(dxi) - eps * sq(deta);
        const double n1 = (x[0] - xi[2]) * dxi - eps * (x[1] - xi[3]) * deta;
        const double n2 = det3_ones(x[1], x[0], xi[1], xi[0], xi[3], xi[2]);
        return vec2(n1 / den, n2 / den);
      };
      primed.push_back(std::move(p));
    }
    add_entry(de, std::move(canonical), identity_10_5(), std::move(primed));
  }

  {  // (10.6): power family, c = 2
    DiEntry de{"two/di/r32-power", "10.6", "power dimetric rank-(3,2) structure, c=2", 2};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 4);
    m.id = de.id;
    m.params["c"] = 2.0;
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec2(x[0] * xi[0] + xi[2], x[0] * xi[1] + x[1] * sq(xi[0]) + xi[3]);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.point_ok_b = [](const Vec& xi) { return std::abs(xi[0] - xi[2]) >= 0.05; };
    p.eval = [](const Vec& x, const Vec& xi) {
      const double gap = xi[0] - xi[2];
      return vec2((x[0] - xi[2]) / gap,
                  det3_ones(x[1], x[0], xi[1], xi[0], xi[3], xi[2]) /
                      (gap * gap * gap));
    };
    add_entry(de, {m}, identity_10_6(2.0), {p});
  }

  {  // (10.7): logarithmic family
    DiEntry de{"two/di/r32-log", "10.7", "logarithmic dimetric rank-(3,2) structure", 2};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 4);
    m.id = de.id;
    m.box_b[0] = positive_box();
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec2(x[0] * xi[0] + xi[2], x[0] * xi[1] + x[1] * sq(xi[0]) +
                                            sq(x[0]) * sq(xi[0]) * std::log(xi[0]) + xi[3]);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.box_b[0] = Box{-kBoxHalfWidth, kBoxHalfWidth};
    p.point_ok_b = [](const Vec& xi) { return xi[0] - xi[2] >= 0.05; };
    p.eval = [](const Vec& x, const Vec& xi) {
      const double gap = xi[0] - xi[2];
      const double main = det3_ones(x[1], x[0], xi[1], xi[0], xi[3], xi[2]);
      const double vander =
          det3_ones(sq(x[0]), x[0], sq(xi[0]), xi[0], sq(xi[2]), xi[2]);
      return vec2((x[0] - xi[2]) / gap, (main - std::log(gap) * vander) / (gap * gap * gap));
    };
    add_entry(de, {m}, identity_10_7(), {p});
  }

  {  // (10.8): projective pair family
    DiEntry de{"two/di/r32-proj", "10.8", "projective dimetric rank-(3,2) structure", 2};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 4);
    m.id = de.id;
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec2(x[0] * xi[0] + x[1] * xi[2], x[0] * xi[1] + x[1] * xi[3]);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.point_ok_b = [](const Vec& xi) {
      return std::abs(xi[0] * xi[3] - xi[1] * xi[2]) >= 0.05;
    };
    p.eval = [](const Vec& x, const Vec& xi) {
      const double den = xi[0] * xi[3] - xi[1] * xi[2];
      return vec2((x[0] * xi[3] - x[1] * xi[2]) / den, (x[0] * xi[1] - x[1] * xi[0]) / den);
    };
    add_entry(de, {m}, identity_10_8(), {p});
  }

  {  // (10.9): complexified homographic family of rank (4,2)
    DiEntry de{"two/di/r42-complex", "10.9", "complexified homographic rank-(4,2) family", 3};
    std::vector<MetricSpec> canonical, primed;
    for (double eps : {0.0, 1.0, -1.0}) {
      auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 6);
      m.id = std::string(de.id) + (eps == 0 ? "#eps=0" : (eps > 0 ? "#eps=+1" : "#eps=-1"));
      m.params["eps"] = eps;
      m.domain = [eps](const Vec& x, const Vec& xi) {
        return std::abs(sq(x[0] + xi[4]) - eps * sq(x[1] + xi[5])) >= 0.05;
      };
      m.eval = [eps](const Vec& x, const Vec& xi) {
        const double u = x[0] + xi[4], v = x[1] + xi[5];
        const double den = sq(u) - eps * sq(v);
        const double p1 = x[0] * xi[0] + eps * x[1] * xi[1] + xi[2];
        const double p2 = x[0] * xi[1] + x[1] * xi[0] + xi[3];
        return vec2((p1 * u - eps * p2 * v) / den, (p2 * u - p1 * v) / den);
      };
      canonical.push_back(m);
      auto p = m;
      p.id += "'";
      // Disjoint windows keep the four pairwise e-norms of the cross ratio
      // bounded away from zero, so the alternation stays well conditioned.
      p.box_a = {Box{0.5, 1.1}, Box{-0.15, 0.15}};
      p.box_b = {Box{1.2, 2.0}, Box{-0.15, 0.15}, Box{-2.0, -1.2},
                 Box{-0.15, 0.15}, Box{-0.5, -0.1}, Box{-0.15, 0.15}};
      p.domain = [eps](const Vec& x, const Vec& xi) {
        const auto norm_e = [eps](double u, double v) { return u * u - eps * v * v; };
        const double n_zw = norm_e(x[0] - xi[2], x[1] - xi[3]);
        const double n_zr = norm_e(x[0] - xi[4], x[1] - xi[5]);
        const double n_cw = norm_e(xi[0] - xi[2], xi[1] - xi[3]);
        const double n_cr = norm_e(xi[0] - xi[4], xi[1] - xi[5]);
        return std::abs(n_zw) >= 0.15 && std::abs(n_zr) >= 0.15 &&
               std::abs(n_cw) >= 0.15 && std::abs(n_cr) >= 0.15;
      };
      p.eval = [eps](const Vec& x, const Vec& xi) {
        // e-number cross ratio (z - w)(zeta - rho) / ((z - rho)(zeta - w)),
        // the complexified form of the 10.10 representation.
        const double dx_m = x[0] - xi[2], dy_m = x[1] - xi[3];   // z - w
        const double dx_r = x[0] - xi[4], dy_r = x[1] - xi[5];   // z - rho
        const double dxi_m = xi[0] - xi[2], deta_m = xi[1] - xi[3];  // zeta - w
        const double dxi_r = xi[0] - xi[4], deta_r = xi[1] - xi[5];  // zeta - rho
        const ENum num = e_mul({dx_m, dy_m}, {dxi_r, deta_r}, eps);
        const ENum den = e_mul({dx_r, dy_r}, {dxi_m, deta_m}, eps);
        const double dd = den.re * den.re - eps * den.im * den.im;
        const ENum q = e_mul(num, {den.re / dd, -den.im / dd}, eps);
        return vec2(q.re, q.im);
      };
      primed.push_back(std::move(p));
    }
    add_entry(de, std::move(canonical), identity_10_9(), std::move(primed));
  }

  {  // (10.10): homographic-affine family of rank (4,2)
    DiEntry de{"two/di/r42-ratio", "10.10", "homographic-affine rank-(4,2) structure", 3};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 6);
    m.id = de.id;
    m.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(x[0] + xi[4]) >= 0.05;
    };
    m.eval = [](const Vec& x, const Vec& xi) {
      const double den = x[0] + xi[4];
      return vec2((x[0] * xi[0] + xi[2]) / den,
                  (x[0] * xi[1] + x[1] * xi[3] + xi[5]) / den);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(x[0] - xi[4]) >= 0.05 && std::abs(xi[0] - xi[2]) >= 0.05 &&
             std::abs(det3_ones(xi[0], xi[1], xi[2], xi[3], xi[4], xi[5])) >= 0.05;
    };
    p.eval = [](const Vec& x, const Vec& xi) {
      const double f1 = (x[0] - xi[2]) * (xi[0] - xi[4]) / ((x[0] - xi[4]) * (xi[0] - xi[2]));
      const double f2 = (xi[2] - xi[4]) * (xi[0] - xi[4]) / ((x[0] - xi[4]) * (xi[0] - xi[2])) *
                        det3_ones(x[1], x[0], xi[1], xi[0], xi[3], xi[2]) /
                        det3_ones(xi[0], xi[1], xi[2], xi[3], xi[4], xi[5]);
      return vec2(f1, f2);
    };
    add_entry(de, {m}, identity_10_10(), {p});
  }

  {  // (10.11): affine family of rank (4,2)
    DiEntry de{"two/di/r42-affine", "10.11", "affine dimetric rank-(4,2) structure", 3};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 6);
    m.id = de.id;
    m.eval = [](const Vec& x, const Vec& xi) {
      return vec2(x[0] * xi[0] + x[1] * xi[2] + xi[4], x[0] * xi[1] + x[1] * xi[3] + xi[5]);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.point_ok_b = [](const Vec& xi) {
      return std::abs(det3_ones(xi[0], xi[1], xi[2], xi[3], xi[4], xi[5])) >= 0.05;
    };
    p.eval = [](const Vec& x, const Vec& xi) {
      const double den = det3_ones(xi[0], xi[1], xi[2], xi[3], xi[4], xi[5]);
      return vec2(det3_ones(x[0], x[1], xi[2], xi[3], xi[4], xi[5]) / den,
                  det3_ones(x[0], x[1], xi[0], xi[1], xi[4], xi[5]) / den);
    };
    add_entry(de, {m}, identity_10_11(), {p});
  }

  {  // (10.12): the single rank-(5,2) structure
    DiEntry de{"two/di/r52-crossratio", "10.12", "projective dimetric rank-(5,2) structure", 4};
    auto m = b.spec(b.entry(de.id, "", ""), 2, 2, 8);
    m.id = de.id;
    m.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(x[0] * xi[6] + x[1] + xi[7]) >= 0.05;
    };
    m.eval = [](const Vec& x, const Vec& xi) {
      const double den = x[0] * xi[6] + x[1] + xi[7];
      return vec2((x[0] * xi[0] + x[1] * xi[2] + xi[4]) / den,
                  (x[0] * xi[1] + x[1] * xi[3] + xi[5]) / den);
    };
    auto p = m;
    p.id = std::string(de.id) + "'";
    p.domain = [](const Vec& x, const Vec& xi) {
      return std::abs(det3_ones(xi[0], xi[1], xi[2], xi[3], xi[6], xi[7])) >= 0.05 &&
             std::abs(det3_ones(x[0], x[1], xi[4], xi[5], xi[6], xi[7])) >= 0.05 &&
             std::abs(det3_ones(xi[0], xi[1], xi[2], xi[3], xi[4], xi[5])) >= 0.05;
    };
    p.eval = [](const Vec& x, const Vec& xi) {
      const double f1 = det3_ones(x[0], x[1], xi[2], xi[3], xi[6], xi[7]) /
                        det3_ones(xi[0], xi[1], xi[2], xi[3], xi[6], xi[7]) *
                        det3_ones(xi[0], xi[1], xi[4], xi[5], xi[6], xi[7]) /
                        det3_ones(x[0], x[1], xi[4], xi[5], xi[6], xi[7]);
      const double f2 = det3_ones(x[0], x[1], xi[0], xi[1], xi[4], xi[5]) /
                        det3_ones(xi[0], xi[1], xi[2], xi[3], xi[4], xi[5]) *
                        det3_ones(xi[2], xi[3], xi[4], xi[5], xi[6], xi[7]) /
                        det3_ones(x[0], x[1], xi[4], xi[5], xi[6], xi[7]);
      return vec2(f1, f2);
    };
    add_entry(de, {m}, identity_10_12(), {p});
  }
}

// ---------------------------------------------------------------------------
// Trimetric structures of rank (2,2): canonical (x + xi) forms and their
// quasigroup (x - xi) representations; the identity lives on the latter.

inline void register_twoset_trimetric(TwoSetBuilder& b) {
  const auto add_tri = [&](const char* id, const char* anchor, const char* note,
                           std::function<Vec(const Vec&, const Vec&)> canonical_eval,
                           std::function<void(MetricSpec&)> canonical_tweak,
                           std::function<Vec(const Vec&, const Vec&)> primed_eval,
                           std::function<void(MetricSpec&)> primed_tweak) {
    auto e = b.entry(id, anchor, note);
    auto m = b.spec(e, 3, 3, 3);
    m.eval = std::move(canonical_eval);
    if (canonical_tweak) canonical_tweak(m);
    Representation rep;
    rep.instances = {std::move(m)};
    e.reps = {std::move(rep)};

    auto p = b.spec(e, 3, 3, 3);
    p.id = std::string(id) + "'";
    p.eval = std::move(primed_eval);
    if (primed_tweak) primed_tweak(p);
    Representation q;
    q.tag = "quasigroup";
    q.instances = {std::move(p)};
    IdentityForm qf = make_quasigroup_alternation();
    qf.len_a = 2;
    qf.len_b = 2;
    q.identity = std::move(qf);
    e.reps.push_back(std::move(q));
    b.add(std::move(e));
  };

  add_tri("two/tri/r22-add", "10.18", "additive trimetric structure",
          [](const Vec& x, const Vec& xi) {
            return vec3(x[0] + xi[0], x[1] + xi[1], x[2] + xi[2]);
          },
          {},
          [](const Vec& x, const Vec& xi) {
            return vec3(x[0] - xi[0], x[1] - xi[1], x[2] - xi[2]);
          },
          {});

  add_tri("two/tri/r22-thermo", "10.19", "temperature/work style trimetric structure",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(x[1] - xi[1], u * x[1] + x[2] + xi[2], u * xi[1] + x[2] + xi[2]);
          },
          {},
          [](const Vec& x, const Vec& xi) {
            return vec3(x[0] - xi[0], x[1] - xi[1], (x[0] - xi[0]) * xi[1] + x[2] - xi[2]);
          },
          {});

  add_tri("two/tri/r22-dual-scale", "10.20", "dual-helmholtz factor with scales",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(sq(u) * std::exp(2.0 * (x[1] + xi[1]) / u), u * x[2], u * xi[2]);
          },
          [](MetricSpec& m) {
            m.domain = [](const Vec& x, const Vec& xi) {
              const double u = x[0] + xi[0];
              return std::abs(u) >= kDomainMargin &&
                     std::abs((x[1] + xi[1]) / u) <= 2.5;
            };
            m.box_a[2] = m.box_b[2] = positive_box();
          },
          [](const Vec& x, const Vec& xi) {
            const double th = xi[2];
            return vec3((x[0] - xi[0]) * th,
                        (x[1] - xi[1] - (x[0] - xi[0]) * std::log(th)) * th, x[2] / th);
          },
          [](MetricSpec& m) {
            m.box_a[2] = m.box_b[2] = positive_box();
            m.domain = [](const Vec&, const Vec& xi) { return xi[2] >= 0.05; };
          });

  add_tri("two/tri/r22-simplicial-scale", "10.21", "slope with scales",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(u / (x[1] + xi[1]), u * x[2], u * xi[2]);
          },
          [](MetricSpec& m) {
            m.domain = [](const Vec& x, const Vec& xi) {
              return std::abs(x[1] + xi[1]) >= 0.05;
            };
            m.box_a[2] = m.box_b[2] = positive_box();
          },
          [](const Vec& x, const Vec& xi) {
            return vec3((x[0] - xi[0]) * xi[2], (x[1] - xi[1]) * xi[2], x[2] / xi[2]);
          },
          [](MetricSpec& m) {
            m.box_a[2] = m.box_b[2] = positive_box();
            m.domain = [](const Vec&, const Vec& xi) { return std::abs(xi[2]) >= 0.05; };
          });

  add_tri("two/tri/r22-product-scale", "10.22", "product with scales",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(u * (x[1] + xi[1]), u * x[2], u * xi[2]);
          },
          [](MetricSpec& m) { m.box_a[2] = m.box_b[2] = positive_box(); },
          [](const Vec& x, const Vec& xi) {
            return vec3((x[0] - xi[0]) * xi[2], (x[1] - xi[1]) / xi[2], x[2] / xi[2]);
          },
          [](MetricSpec& m) {
            m.box_a[2] = m.box_b[2] = positive_box();
            m.domain = [](const Vec&, const Vec& xi) { return std::abs(xi[2]) >= 0.05; };
          });

  add_tri("two/tri/r22-shift-scale", "10.23", "difference with scales",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(x[1] + xi[1], u * x[2], u * xi[2]);
          },
          [](MetricSpec& m) { m.box_a[2] = m.box_b[2] = positive_box(); },
          [](const Vec& x, const Vec& xi) {
            return vec3((x[0] - xi[0]) * xi[2], x[1] - xi[1], x[2] / xi[2]);
          },
          [](MetricSpec& m) {
            m.box_a[2] = m.box_b[2] = positive_box();
            m.domain = [](const Vec&, const Vec& xi) { return std::abs(xi[2]) >= 0.05; };
          });

  add_tri("two/tri/r22-power-scale", "10.24", "fractional power with scales, p=1/2",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(std::sqrt(u) / (x[1] + xi[1]), u * x[2], u * xi[2]);
          },
          [](MetricSpec& m) {
            m.params["p"] = 0.5;
            m.domain = [](const Vec& x, const Vec& xi) {
              return x[0] + xi[0] >= kDomainMargin && std::abs(x[1] + xi[1]) >= 0.05;
            };
            m.box_a[2] = m.box_b[2] = positive_box();
          },
          [](const Vec& x, const Vec& xi) {
            return vec3((x[0] - xi[0]) * xi[2], (x[1] - xi[1]) * std::sqrt(xi[2]),
                        x[2] / xi[2]);
          },
          [](MetricSpec& m) {
            m.params["p"] = 0.5;
            m.box_a[2] = m.box_b[2] = positive_box();
            m.domain = [](const Vec&, const Vec& xi) { return xi[2] >= 0.05; };
          });

  add_tri("two/tri/r22-rotor", "10.25", "euclidean length with bearings",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0], v = x[1] + xi[1];
            const double ang = std::atan(v / u);
            return vec3(sq(u) + sq(v), x[2] + ang, xi[2] + ang);
          },
          [](MetricSpec& m) {
            m.domain = [](const Vec& x, const Vec& xi) {
              return std::abs(x[0] + xi[0]) >= kDomainMargin;
            };
          },
          [](const Vec& x, const Vec& xi) {
            const double c = std::cos(xi[2]), s = std::sin(xi[2]);
            const double dx = x[0] - xi[0], dy = x[1] - xi[1];
            return vec3(dx * c - dy * s, dx * s + dy * c, x[2] - xi[2]);
          },
          {});

  add_tri("two/tri/r22-helmholtz-rotor", "10.26", "helmholtz length with bearings, gamma=1",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0], v = x[1] + xi[1];
            const double ang = std::atan(v / u);
            return vec3((sq(u) + sq(v)) * std::exp(2.0 * ang), x[2] + ang, xi[2] + ang);
          },
          [](MetricSpec& m) {
            m.params["gamma"] = 1.0;
            m.domain = [](const Vec& x, const Vec& xi) {
              return std::abs(x[0] + xi[0]) >= kDomainMargin;
            };
          },
          [](const Vec& x, const Vec& xi) {
            const double c = std::cos(xi[2]), s = std::sin(xi[2]);
            const double dx = x[0] - xi[0], dy = x[1] - xi[1];
            const double damp = std::exp(1.0 * xi[2]);
            return vec3((dx * c - dy * s) / damp, (dx * s + dy * c) / damp, x[2] - xi[2]);
          },
          [](MetricSpec& m) { m.params["gamma"] = 1.0; });

  add_tri("two/tri/r22-sphere-rotor", "10.27", "spherical cosine with bearings",
          [](const Vec& x, const Vec& xi) {
            const double f1 = std::sin(x[1]) * std::sin(xi[1]) * std::cos(x[0] + xi[0]) +
                              std::cos(x[1]) * std::cos(xi[1]);
            const double root = std::sqrt(1.0 - sq(f1));
            return vec3(f1,
                        x[2] + std::asin(std::sin(x[0] + xi[0]) * std::sin(xi[1]) / root),
                        xi[2] + std::asin(std::sin(x[0] + xi[0]) * std::sin(x[1]) / root));
          },
          [](MetricSpec& m) {
            // Narrow chart: longitude sums stay small and colatitudes sit in
            // a band, so the acute-bearing restriction accepts readily.
            m.box_a[0] = m.box_b[0] = Box{0.1, 0.45};
            m.box_a[1] = m.box_b[1] = Box{0.55, 1.05};
            m.domain = [](const Vec& x, const Vec& xi) {
              return sphere_bearings_acute(x[0] + xi[0], x[1], xi[1]);
            };
          },
          [](const Vec& x, const Vec& xi) {
            const double ra = std::sqrt(1.0 - x.squaredNorm());
            const double rb = std::sqrt(1.0 - xi.squaredNorm());
            return vec3(x[0] * rb - xi[0] * ra + x[1] * xi[2] - x[2] * xi[1],
                        x[1] * rb - xi[1] * ra + x[2] * xi[0] - x[0] * xi[2],
                        x[2] * rb - xi[2] * ra + x[0] * xi[1] - x[1] * xi[0]);
          },
          [](MetricSpec& m) {
            m.box_a = uniform_boxes(3, -0.115, 0.115);
            m.box_b = uniform_boxes(3, -0.115, 0.115);
            m.domain = [](const Vec& x, const Vec& xi) {
              return x.norm() <= 0.45 && xi.norm() <= 0.45;
            };
          });

  add_tri("two/tri/r22-inverse-scale", "10.28", "product metric with reciprocal shifts",
          [](const Vec& x, const Vec& xi) {
            const double u = x[0] + xi[0];
            return vec3(u * x[1] * xi[1], x[2] + 1.0 / (u * sq(x[1])),
                        xi[2] - 1.0 / (u * sq(xi[1])));
          },
          [](MetricSpec& m) {
            m.domain = [](const Vec& x, const Vec& xi) {
              return std::abs(x[0] + xi[0]) >= 0.05;
            };
            m.box_a[1] = m.box_b[1] = positive_box();
          },
          [](const Vec& x, const Vec& xi) {
            const double core = 1.0 - (x[0] - xi[0]) * xi[2] * sq(xi[1]);
            return vec3((x[0] - xi[0]) * sq(xi[1]) / core, core * x[1] / xi[1],
                        x[2] - xi[2] * sq(xi[1]) / (core * sq(x[1])));
          },
          [](MetricSpec& m) {
            m.box_a[1] = m.box_b[1] = positive_box();
            m.box_a[0] = m.box_b[0] = Box{-0.35, 0.35};
            m.box_a[2] = m.box_b[2] = Box{-0.6, 0.6};
            m.domain = [](const Vec& x, const Vec& xi) {
              return std::abs(x[1]) >= 0.05 && std::abs(xi[1]) >= 0.05 &&
                     std::abs(1.0 - (x[0] - xi[0]) * xi[2] * sq(xi[1])) >= 0.05;
            };
          });
}

inline void register_twoset(Catalog& cat) {
  TwoSetBuilder b{cat};
  register_twoset_unimetric(b);
  register_twoset_dimetric(b);
  register_twoset_trimetric(b);
  register_twoset_negatives(b);
}

}  // namespace detail
}  // namespace pstruct

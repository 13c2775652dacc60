#pragma once

#include <cmath>

#include "phenostruct/catalog.hpp"

namespace pstruct {
namespace detail {

inline double sq(double u) { return u * u; }

// Chart-interior boxes keeping away from angular singularities.
inline Box angular_box() { return Box{0.2, M_PI - 0.2}; }
inline Box positive_box() { return Box{0.2, 2.0}; }

// Chart restriction for bearing-style spherical forms: both base angles of
// the triangle (pole, i, j) must stay acute so the principal arcsin branch
// returns the genuine angle. dx is the longitude difference, yi/yj the
// colatitudes.
inline bool sphere_bearings_acute(double dx, double yi, double yj) {
  const double cosd = std::sin(yi) * std::sin(yj) * std::cos(dx) + std::cos(yi) * std::cos(yj);
  const double sind2 = 1.0 - sq(cosd);
  if (sind2 < kDomainMargin) return false;
  const double sind = std::sqrt(sind2);
  const double cos_at_i = (std::cos(yj) - std::cos(yi) * cosd) / (std::sin(yi) * sind);
  const double cos_at_j = (std::cos(yi) - std::cos(yj) * cosd) / (std::sin(yj) * sind);
  if (cos_at_i < 0.05 || cos_at_j < 0.05) return false;
  return std::abs(std::sin(dx) * std::sin(yj) / sind) <= 1.0 - kDomainMargin &&
         std::abs(std::sin(dx) * std::sin(yi) / sind) <= 1.0 - kDomainMargin;
}

struct OneSetBuilder {
  Catalog& cat;

  CatalogEntry entry(std::string id, std::string anchor, std::string note) {
    CatalogEntry e;
    e.id = std::move(id);
    e.anchor = std::move(anchor);
    e.note = std::move(note);
    return e;
  }

  MetricSpec spec(const CatalogEntry& e, int s, int dim) {
    return base_spec(e.id, Family::one_set, s, dim, dim);
  }

  void add(CatalogEntry e, MetricSpec m, std::optional<IdentityForm> identity) {
    Representation rep;
    rep.instances = {std::move(m)};
    rep.identity = std::move(identity);
    e.reps = {std::move(rep)};
    finish_entry(e);
    cat.add(std::move(e));
  }

  void add_multi(CatalogEntry e, std::vector<MetricSpec> instances,
                 std::optional<IdentityForm> identity) {
    Representation rep;
    rep.instances = std::move(instances);
    rep.identity = std::move(identity);
    e.reps = {std::move(rep)};
    finish_entry(e);
    cat.add(std::move(e));
  }
};

// ---------------------------------------------------------------------------
// Dimensions 1..4, one component.

inline void register_oneset_unimetric(OneSetBuilder& b) {
  {  // f = x_i - x_j
    auto e = b.entry("one/1d/translation", "2.3", "one-dimensional additive metric");
    auto m = b.spec(e, 1, 1);
    m.eval = [](const Vec& a, const Vec& c) { return vec1(a[0] - c[0]); };
    MotionSpec ms;
    ms.param_count = 1;
    ms.identity_params = vec1(0.0);
    ms.act_a = [](const Vec& p, const Vec& t) { return vec1(p[0] + t[0]); };
    ms.compose = [](const Vec& p, const Vec& q) { return vec1(p[0] + q[0]); };
    ms.sample_params = [](Rng& rng) { return vec1(rng.uniform(-2.0, 2.0)); };
    e.motions = ms;
    e.lie_basis = {{[](const Vec&) { return vec1(1.0); }, nullptr}};
    b.add(std::move(e), std::move(m), make_linear_cocycle(1));
  }

  {  // euclidean plane
    auto e = b.entry("one/2d/euclid", "2.7", "euclidean plane, squared distance");
    auto m = b.spec(e, 1, 2);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(sq(a[0] - c[0]) + sq(a[1] - c[1]));
    };
    MotionSpec ms;  // rotation angle + two translations
    ms.param_count = 3;
    ms.identity_params = vec3(0.0, 0.0, 0.0);
    ms.act_a = [](const Vec& p, const Vec& g) {
      const double ct = std::cos(g[0]), st = std::sin(g[0]);
      return vec2(ct * p[0] - st * p[1] + g[1], st * p[0] + ct * p[1] + g[2]);
    };
    ms.compose = [](const Vec& p, const Vec& q) {
      const double ct = std::cos(q[0]), st = std::sin(q[0]);
      return vec3(p[0] + q[0], ct * p[1] - st * p[2] + q[1], st * p[1] + ct * p[2] + q[2]);
    };
    ms.sample_params = [](Rng& rng) {
      return vec3(rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    };
    e.motions = ms;
    e.lie_basis = {
        {[](const Vec& p) { return vec2(-p[1], p[0]); }, nullptr},
        {[](const Vec&) { return vec2(1.0, 0.0); }, nullptr},
        {[](const Vec&) { return vec2(0.0, 1.0); }, nullptr},
    };
    b.add(std::move(e), std::move(m), make_cayley_menger(5));
  }

  {  // two-dimensional sphere
    auto e = b.entry("one/2d/sphere", "2.8", "two-dimensional sphere chart");
    auto m = b.spec(e, 1, 2);
    m.box_a[1] = m.box_b[1] = angular_box();
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(std::sin(a[1]) * std::sin(c[1]) * std::cos(a[0] - c[0]) +
                  std::cos(a[1]) * std::cos(c[1]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(4, /*unit_diag=*/true));
  }

  {  // lobachevsky plane
    auto e = b.entry("one/2d/lobachevsky", "2.9", "lobachevsky plane (two-sheet hyperboloid)");
    auto m = b.spec(e, 1, 2);
    m.box_a[1] = m.box_b[1] = positive_box();
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(std::sinh(a[1]) * std::sinh(c[1]) * std::cos(a[0] - c[0]) -
                  std::cosh(a[1]) * std::cosh(c[1]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(4));
  }

  {  // minkowski plane
    auto e = b.entry("one/2d/minkowski", "2.10", "minkowski plane");
    auto m = b.spec(e, 1, 2);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(sq(a[0] - c[0]) - sq(a[1] - c[1]));
    };
    b.add(std::move(e), std::move(m), make_cayley_menger(5));
  }

  {  // one-sheet hyperboloid
    auto e = b.entry("one/2d/hyperboloid", "2.11", "two-dimensional one-sheet hyperboloid");
    auto m = b.spec(e, 1, 2);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(std::cosh(a[1]) * std::cosh(c[1]) * std::cos(a[0] - c[0]) -
                  std::sinh(a[1]) * std::sinh(c[1]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(4, /*unit_diag=*/true));
  }

  {  // symplectic plane
    auto e = b.entry("one/2d/symplectic", "2.12", "symplectic plane");
    auto m = b.spec(e, 1, 2);
    m.eval = [](const Vec& a, const Vec& c) { return vec1(a[0] * c[1] - c[0] * a[1]); };
    b.add(std::move(e), std::move(m), make_gram_diag(4));
  }

  {  // simplicial plane
    auto e = b.entry("one/2d/simplicial", "2.13", "simplicial plane, slope metric");
    auto m = b.spec(e, 1, 2);
    m.domain = guard_absdiff(0);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1((a[1] - c[1]) / (a[0] - c[0]));
    };
    b.add(std::move(e), std::move(m), make_simplicial_det());
  }

  {  // pseudo-helmholtz plane (double numbers); relation not in closed form
    auto e = b.entry("one/2d/pseudohelmholtz", "2.14", "pseudo-helmholtz plane, beta=2");
    auto m = b.spec(e, 1, 2);
    m.params["beta"] = 2.0;
    m.domain = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0];
      if (std::abs(dx) < kDomainMargin) return false;
      const double r = std::abs((a[1] - c[1]) / dx);
      return r <= 0.94 || r >= 1.07;  // keeps |ar(c)th| within range
    };
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dy = a[1] - c[1];
      return vec1((sq(dx) - sq(dy)) * std::exp(2.0 * 2.0 * arcth(dy / dx)));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }

  {  // dual-helmholtz plane (dual numbers)
    auto e = b.entry("one/2d/dualhelmholtz", "2.15", "dual-helmholtz plane");
    auto m = b.spec(e, 1, 2);
    m.domain = guard_ratio(0, 1, 2.5);
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dy = a[1] - c[1];
      return vec1(sq(dx) * std::exp(2.0 * dy / dx));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }

  {  // helmholtz plane
    auto e = b.entry("one/2d/helmholtz", "2.16", "helmholtz plane, gamma=1");
    auto m = b.spec(e, 1, 2);
    m.params["gamma"] = 1.0;
    m.domain = guard_absdiff(0);
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dy = a[1] - c[1];
      return vec1((sq(dx) + sq(dy)) * std::exp(2.0 * std::atan(dy / dx)));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }

  {  // disconnected two-dimensional manifold; one component per instance
    auto e = b.entry("one/2d/disconnected", "2.17",
                     "disconnected plane family, one connected component per instance");
    std::vector<MetricSpec> instances;
    for (double eps : {0.0, 1.0, -1.0}) {
      auto m = b.spec(e, 1, 2);
      m.id += eps == 0.0 ? "#eps=0" : (eps > 0 ? "#eps=+1" : "#eps=-1");
      m.params["eps"] = eps;
      m.box_a[1] = m.box_b[1] = positive_box();
      m.eval = [eps](const Vec& a, const Vec& c) {
        return vec1((sq(a[0] - c[0]) + eps * sq(a[1]) + eps * sq(c[1])) / (a[1] * c[1]));
      };
      instances.push_back(std::move(m));
    }
    b.add_multi(std::move(e), std::move(instances), make_gram_diag(4));
  }
}

inline void register_oneset_threedim(OneSetBuilder& b) {
  const auto sphere2 = [](double xi, double yi, double xj, double yj) {
    return std::sin(yi) * std::sin(yj) * std::cos(xi - xj) + std::cos(yi) * std::cos(yj);
  };

  {
    auto e = b.entry("one/3d/euclid", "2.23", "euclidean space");
    auto m = b.spec(e, 1, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(sq(a[0] - c[0]) + sq(a[1] - c[1]) + sq(a[2] - c[2]));
    };
    b.add(std::move(e), std::move(m), make_cayley_menger(6));
  }
  {
    auto e = b.entry("one/3d/sphere", "2.24", "three-dimensional sphere chart");
    auto m = b.spec(e, 1, 3);
    m.box_a[1] = m.box_b[1] = angular_box();
    m.box_a[2] = m.box_b[2] = angular_box();
    m.eval = [sphere2](const Vec& a, const Vec& c) {
      return vec1(std::sin(a[2]) * std::sin(c[2]) * sphere2(a[0], a[1], c[0], c[1]) +
                  std::cos(a[2]) * std::cos(c[2]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(5, true));
  }
  {
    auto e = b.entry("one/3d/lobachevsky", "2.25", "lobachevsky space");
    auto m = b.spec(e, 1, 3);
    m.box_a[1] = m.box_b[1] = angular_box();
    m.box_a[2] = m.box_b[2] = positive_box();
    m.eval = [sphere2](const Vec& a, const Vec& c) {
      return vec1(std::sinh(a[2]) * std::sinh(c[2]) * sphere2(a[0], a[1], c[0], c[1]) -
                  std::cosh(a[2]) * std::cosh(c[2]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(5));
  }
  {
    auto e = b.entry("one/3d/minkowski", "2.26", "minkowski space");
    auto m = b.spec(e, 1, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(sq(a[0] - c[0]) + sq(a[1] - c[1]) - sq(a[2] - c[2]));
    };
    b.add(std::move(e), std::move(m), make_cayley_menger(6));
  }
  {
    auto e = b.entry("one/3d/hyperboloid1", "2.27", "one-sheet hyperboloid, signature +++-");
    auto m = b.spec(e, 1, 3);
    m.box_a[1] = m.box_b[1] = angular_box();
    m.eval = [sphere2](const Vec& a, const Vec& c) {
      return vec1(std::cosh(a[2]) * std::cosh(c[2]) * sphere2(a[0], a[1], c[0], c[1]) -
                  std::sinh(a[2]) * std::sinh(c[2]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(5, true));
  }
  {
    auto e = b.entry("one/3d/hyperboloid2", "2.28", "one-sheet hyperboloid, signature ++--");
    auto m = b.spec(e, 1, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      const double inner = std::cosh(a[1]) * std::cosh(c[1]) * std::cos(a[0] - c[0]) -
                           std::sinh(a[1]) * std::sinh(c[1]);
      return vec1(std::cosh(a[2]) * std::cosh(c[2]) * inner -
                  std::sinh(a[2]) * std::sinh(c[2]));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(5, true));
  }
  {
    auto e = b.entry("one/3d/symplectic", "2.29", "symplectic space, odd dimension");
    auto m = b.spec(e, 1, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1(a[0] * c[1] - c[0] * a[1] + a[2] - c[2]);
    };
    b.add(std::move(e), std::move(m), make_bordered_antisym(5));
  }
  {
    auto e = b.entry("one/3d/simplicial-add", "2.30", "simplicial space, additive extension");
    auto m = b.spec(e, 1, 3);
    m.domain = guard_absdiff(0);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1((a[1] - c[1]) / (a[0] - c[0]) + a[2] + c[2]);
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }
  {
    auto e = b.entry("one/3d/simplicial-mult", "2.31",
                     "simplicial space, multiplicative extension");
    auto m = b.spec(e, 1, 3);
    m.domain = guard_absdiff(0);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1((a[1] - c[1]) / (a[0] - c[0]) * std::exp(a[2] + c[2]));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }
  {
    auto e = b.entry("one/3d/minkowski-conformal", "2.32",
                     "conformal extension of the minkowski plane");
    auto m = b.spec(e, 1, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1((sq(a[0] - c[0]) - sq(a[1] - c[1])) * std::exp(2.0 * (a[2] + c[2])));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(5));
  }
  {
    auto e = b.entry("one/3d/euclid-conformal", "2.33",
                     "conformal extension of the euclidean plane");
    auto m = b.spec(e, 1, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec1((sq(a[0] - c[0]) + sq(a[1] - c[1])) * std::exp(2.0 * (a[2] + c[2])));
    };
    b.add(std::move(e), std::move(m), make_gram_diag(5));
  }
  {
    auto e = b.entry("one/3d/pseudohelmholtz", "2.34", "pseudo-helmholtz space, beta=2");
    auto m = b.spec(e, 1, 3);
    m.params["beta"] = 2.0;
    m.box_a[2] = m.box_b[2] = Box{-1.0, 1.0};
    m.domain = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0];
      if (std::abs(dx) < kDomainMargin) return false;
      const double r = std::abs((a[1] - c[1]) / dx);
      return r <= 0.94 || r >= 1.07;
    };
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dy = a[1] - c[1];
      return vec1((sq(dx) - sq(dy)) *
                  std::exp(2.0 * (2.0 * arcth(dy / dx) + a[2] + c[2])));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }
  {
    auto e = b.entry("one/3d/dualhelmholtz", "2.35", "dual-helmholtz space");
    auto m = b.spec(e, 1, 3);
    m.box_a[2] = m.box_b[2] = Box{-1.0, 1.0};
    m.domain = guard_ratio(0, 1, 2.5);
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dy = a[1] - c[1];
      return vec1(sq(dx) * std::exp(2.0 * (dy / dx + a[2] + c[2])));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }
  {
    auto e = b.entry("one/3d/helmholtz", "2.36", "helmholtz space, gamma=1");
    auto m = b.spec(e, 1, 3);
    m.params["gamma"] = 1.0;
    m.domain = guard_absdiff(0);
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dy = a[1] - c[1];
      return vec1((sq(dx) + sq(dy)) *
                  std::exp(2.0 * (std::atan(dy / dx) + a[2] + c[2])));
    };
    b.add(std::move(e), std::move(m), std::nullopt);
  }
  {
    auto e = b.entry("one/3d/disconnected", "2.37",
                     "disconnected space family, one connected component per instance");
    std::vector<MetricSpec> instances;
    for (double sy : {1.0, -1.0})
      for (double eps : {0.0, 1.0, -1.0}) {
        auto m = b.spec(e, 1, 3);
        m.id += std::string("#sy=") + (sy > 0 ? "+" : "-") +
                (eps == 0.0 ? ",eps=0" : (eps > 0 ? ",eps=+1" : ",eps=-1"));
        m.params["sy"] = sy;
        m.params["eps"] = eps;
        m.box_a[2] = m.box_b[2] = positive_box();
        m.eval = [sy, eps](const Vec& a, const Vec& c) {
          return vec1((sq(a[0] - c[0]) + sy * sq(a[1] - c[1]) + eps * sq(a[2]) +
                       eps * sq(c[2])) /
                      (a[2] * c[2]));
        };
        instances.push_back(std::move(m));
      }
    b.add_multi(std::move(e), std::move(instances), make_gram_diag(5));
  }
}

inline void register_oneset_fourdim(OneSetBuilder& b) {
  const auto sphere2 = [](double xi, double yi, double xj, double yj) {
    return std::sin(yi) * std::sin(yj) * std::cos(xi - xj) + std::cos(yi) * std::cos(yj);
  };
  const auto sphere3 = [sphere2](const Vec& a, const Vec& c) {
    return std::sin(a[2]) * std::sin(c[2]) * sphere2(a[0], a[1], c[0], c[1]) +
           std::cos(a[2]) * std::cos(c[2]);
  };
  const auto hyp3 = [sphere2](const Vec& a, const Vec& c) {
    return std::cosh(a[2]) * std::cosh(c[2]) * sphere2(a[0], a[1], c[0], c[1]) -
           std::sinh(a[2]) * std::sinh(c[2]);
  };

  const auto quad = [&](const char* id, const char* anchor, const char* note,
                        std::function<Vec(const Vec&, const Vec&)> eval,
                        std::optional<IdentityForm> identity,
                        std::function<void(MetricSpec&)> tweak = {}) {
    auto e = b.entry(id, anchor, note);
    auto m = b.spec(e, 1, 4);
    m.eval = std::move(eval);
    if (tweak) tweak(m);
    b.add(std::move(e), std::move(m), std::move(identity));
  };

  quad("one/4d/euclid", "2.38", "euclidean four-space",
       [](const Vec& a, const Vec& c) {
         return vec1(sq(a[0] - c[0]) + sq(a[1] - c[1]) + sq(a[2] - c[2]) + sq(a[3] - c[3]));
       },
       make_cayley_menger(7));
  quad("one/4d/minkowski", "2.39", "minkowski four-space, signature +++-",
       [](const Vec& a, const Vec& c) {
         return vec1(sq(a[0] - c[0]) + sq(a[1] - c[1]) + sq(a[2] - c[2]) - sq(a[3] - c[3]));
       },
       make_cayley_menger(7));
  quad("one/4d/neutral", "2.40", "four-space of signature ++--",
       [](const Vec& a, const Vec& c) {
         return vec1(sq(a[0] - c[0]) + sq(a[1] - c[1]) - sq(a[2] - c[2]) - sq(a[3] - c[3]));
       },
       make_cayley_menger(7));
  quad("one/4d/euclid-conformal", "2.41", "conformal extension of euclidean space",
       [](const Vec& a, const Vec& c) {
         return vec1((sq(a[0] - c[0]) + sq(a[1] - c[1]) + sq(a[2] - c[2])) *
                     std::exp(2.0 * (a[3] + c[3])));
       },
       make_gram_diag(6),
       [](MetricSpec& m) { m.box_a[3] = m.box_b[3] = Box{-1.0, 1.0}; });
  quad("one/4d/minkowski-conformal", "2.42", "conformal extension of minkowski space",
       [](const Vec& a, const Vec& c) {
         return vec1((sq(a[0] - c[0]) + sq(a[1] - c[1]) - sq(a[2] - c[2])) *
                     std::exp(2.0 * (a[3] + c[3])));
       },
       make_gram_diag(6),
       [](MetricSpec& m) { m.box_a[3] = m.box_b[3] = Box{-1.0, 1.0}; });
  quad("one/4d/sphere", "2.43", "four-dimensional sphere chart",
       [sphere3](const Vec& a, const Vec& c) {
         return vec1(std::sin(a[3]) * std::sin(c[3]) * sphere3(a, c) +
                     std::cos(a[3]) * std::cos(c[3]));
       },
       make_gram_diag(6, true),
       [](MetricSpec& m) {
         for (int k : {1, 2, 3}) m.box_a[k] = m.box_b[k] = angular_box();
       });
  quad("one/4d/hyperboloid1", "2.44", "one-sheet hyperboloid over the three-sphere",
       [sphere3](const Vec& a, const Vec& c) {
         return vec1(std::cosh(a[3]) * std::cosh(c[3]) * sphere3(a, c) -
                     std::sinh(a[3]) * std::sinh(c[3]));
       },
       make_gram_diag(6, true),
       [](MetricSpec& m) {
         for (int k : {1, 2}) m.box_a[k] = m.box_b[k] = angular_box();
       });
  quad("one/4d/lobachevsky", "2.45", "four-dimensional lobachevsky space",
       [sphere3](const Vec& a, const Vec& c) {
         return vec1(std::sinh(a[3]) * std::sinh(c[3]) * sphere3(a, c) -
                     std::cosh(a[3]) * std::cosh(c[3]));
       },
       make_gram_diag(6),
       [](MetricSpec& m) {
         for (int k : {1, 2}) m.box_a[k] = m.box_b[k] = angular_box();
         m.box_a[3] = m.box_b[3] = positive_box();
       });
  quad("one/4d/hyperboloid2", "2.46", "one-sheet hyperboloid, signature ++--",
       [hyp3](const Vec& a, const Vec& c) {
         return vec1(std::cosh(a[3]) * std::cosh(c[3]) * hyp3(a, c) -
                     std::sinh(a[3]) * std::sinh(c[3]));
       },
       make_gram_diag(6, true),
       [](MetricSpec& m) { m.box_a[1] = m.box_b[1] = angular_box(); });
  quad("one/4d/hyperboloid3", "2.47", "two-sheet hyperboloid, signature ++--",
       [hyp3](const Vec& a, const Vec& c) {
         return vec1(std::sinh(a[3]) * std::sinh(c[3]) * hyp3(a, c) -
                     std::cosh(a[3]) * std::cosh(c[3]));
       },
       make_gram_diag(6),
       [](MetricSpec& m) {
         m.box_a[1] = m.box_b[1] = angular_box();
         m.box_a[3] = m.box_b[3] = positive_box();
       });
  quad("one/4d/symplectic", "2.48", "symplectic four-space",
       [](const Vec& a, const Vec& c) {
         return vec1(a[0] * c[1] - c[0] * a[1] + a[2] * c[3] - c[2] * a[3]);
       },
       make_gram_diag(6));

  {  // disconnected four-dimensional family
    auto e = b.entry("one/4d/disconnected", "2.49",
                     "disconnected four-space family, one component per instance");
    std::vector<MetricSpec> instances;
    for (double sy : {1.0, -1.0})
      for (double sz : {1.0, -1.0})
        for (double eps : {0.0, 1.0, -1.0}) {
          auto m = b.spec(e, 1, 4);
          m.id += std::string("#sy=") + (sy > 0 ? "+" : "-") + ",sz=" + (sz > 0 ? "+" : "-") +
                  (eps == 0.0 ? ",eps=0" : (eps > 0 ? ",eps=+1" : ",eps=-1"));
          m.params["sy"] = sy;
          m.params["sz"] = sz;
          m.params["eps"] = eps;
          m.box_a[3] = m.box_b[3] = positive_box();
          m.eval = [sy, sz, eps](const Vec& a, const Vec& c) {
            return vec1((sq(a[0] - c[0]) + sy * sq(a[1] - c[1]) + sz * sq(a[2] - c[2]) +
                         eps * sq(a[3]) + eps * sq(c[3])) /
                        (a[3] * c[3]));
          };
          instances.push_back(std::move(m));
        }
    b.add_multi(std::move(e), std::move(instances), make_gram_diag(6));
  }
}

// ---------------------------------------------------------------------------
// Dimetric and trimetric planes/spaces (rank 3).

// The pair of 3x3 determinant relations satisfied by the heat-style metric
// (components (x_i-x_j)y_i and (x_i-x_j)y_j) over triples.
inline IdentityForm make_thermo_pair_identity() {
  IdentityForm form;
  form.kind = IdentityKind::custom_det;
  form.len_a = 3;
  form.note = "two 3x3 determinants, hadamard-normalized";
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int j) { return t.at(0, i, j); };
    const auto f2 = [&](int i, int j) { return t.at(1, i, j); };
    Mat m1(3, 3), m2(3, 3);
    m1 << 0.0, -f2(0, 1), -f2(0, 2),  //
        f1(0, 1), 0.0, -f2(1, 2),     //
        f1(0, 2), f1(1, 2), 0.0;
    m2 << f1(0, 1), f1(1, 2), -f2(0, 2),  //
        f1(0, 2), 0.0, -f2(0, 2),         //
        f1(0, 2), -f2(0, 1), -f2(1, 2);
    return std::vector<double>{det_residual_hadamard(m1), det_residual_hadamard(m2)};
  };
  return form;
}

// The three relations satisfied by the temperature/work metric (3.29).
inline IdentityForm make_thermo_work_identity() {
  IdentityForm form;
  form.kind = IdentityKind::custom;
  form.len_a = 3;
  form.note = "cocycles of derived ratios, normalized by term magnitudes";
  form.admissible = [](const DistTable& t) {
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
      if (std::abs(t.at(0, i, j)) < kDomainMargin) return false;
    return true;
  };
  form.residual = [](const DistTable& t, const MetricSpec&) {
    const auto f1 = [&](int i, int j) { return t.at(0, i, j); };
    const auto f2 = [&](int i, int j) { return t.at(1, i, j); };
    const auto f3 = [&](int i, int j) { return t.at(2, i, j); };
    const auto ratio = [&](int i, int j) { return (f2(i, j) - f3(i, j)) / f1(i, j); };
    std::vector<double> out(3);
    {
      const double a = f1(0, 1), b = f1(0, 2), d = f1(1, 2);
      out[0] = std::abs(a - b + d) / (std::abs(a) + std::abs(b) + std::abs(d) + 1e-9);
    }
    {
      const double a = ratio(0, 1), b = ratio(0, 2), d = ratio(1, 2);
      out[1] = std::abs(a - b + d) / (std::abs(a) + std::abs(b) + std::abs(d) + 1e-9);
    }
    {
      const double lhs = (f3(0, 1) - f3(0, 2) + f2(1, 2)) / f1(1, 2);
      const double rhs = (f2(0, 2) - f3(0, 2)) / f1(0, 2);
      out[2] = alternation_residual(lhs, rhs);
    }
    return out;
  };
  return form;
}

inline void register_oneset_polymetric(OneSetBuilder& b) {
  {  // vector projections
    auto e = b.entry("one/di/translations", "3.12", "dimetric plane of vector projections");
    auto m = b.spec(e, 2, 2);
    m.eval = [](const Vec& a, const Vec& c) { return vec2(a[0] - c[0], a[1] - c[1]); };
    MotionSpec ms;
    ms.param_count = 2;
    ms.identity_params = vec2(0.0, 0.0);
    ms.act_a = [](const Vec& p, const Vec& g) { return vec2(p[0] + g[0], p[1] + g[1]); };
    ms.compose = [](const Vec& p, const Vec& q) { return vec2(p[0] + q[0], p[1] + q[1]); };
    ms.sample_params = [](Rng& rng) {
      return vec2(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    };
    e.motions = ms;
    e.lie_basis = {{[](const Vec&) { return vec2(1.0, 0.0); }, nullptr},
                   {[](const Vec&) { return vec2(0.0, 1.0); }, nullptr}};
    b.add(std::move(e), std::move(m), make_linear_cocycle(2));
  }

  {  // heat two-component metric on the state plane
    auto e = b.entry("one/di/thermo", "3.13", "dimetric heat metric on the state plane");
    auto m = b.spec(e, 2, 2);
    m.box_a[1] = m.box_b[1] = positive_box();
    m.domain = guard_absdiff(0);
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0];
      return vec2(dx * a[1], dx * c[1]);
    };
    MotionSpec ms;  // lambda = a x + b, sigma = y / a
    ms.param_count = 2;
    ms.identity_params = vec2(1.0, 0.0);
    ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
    ms.act_a = [](const Vec& p, const Vec& g) {
      return vec2(g[0] * p[0] + g[1], p[1] / g[0]);
    };
    ms.compose = [](const Vec& p, const Vec& q) {
      return vec2(p[0] * q[0], q[0] * p[1] + q[1]);
    };
    ms.sample_params = [](Rng& rng) {
      const double a = rng.uniform(0.2, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0);
      return vec2(a, rng.uniform(-2.0, 2.0));
    };
    e.motions = ms;
    e.lie_basis = {{[](const Vec& p) { return vec2(p[0], -p[1]); }, nullptr},
                   {[](const Vec&) { return vec2(1.0, 0.0); }, nullptr}};
    b.add(std::move(e), std::move(m), make_thermo_pair_identity());
  }

  {  // trimetric translations
    auto e = b.entry("one/tri/translations", "3.28", "trimetric space of vector projections");
    auto m = b.spec(e, 3, 3);
    m.eval = [](const Vec& a, const Vec& c) {
      return vec3(a[0] - c[0], a[1] - c[1], a[2] - c[2]);
    };
    MotionSpec ms;
    ms.param_count = 3;
    ms.identity_params = vec3(0.0, 0.0, 0.0);
    ms.act_a = [](const Vec& p, const Vec& g) {
      return vec3(p[0] + g[0], p[1] + g[1], p[2] + g[2]);
    };
    ms.compose = [](const Vec& p, const Vec& q) {
      return vec3(p[0] + q[0], p[1] + q[1], p[2] + q[2]);
    };
    ms.sample_params = [](Rng& rng) {
      return vec3(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    };
    e.motions = ms;
    e.lie_basis = {{[](const Vec&) { return vec3(1, 0, 0); }, nullptr},
                   {[](const Vec&) { return vec3(0, 1, 0); }, nullptr},
                   {[](const Vec&) { return vec3(0, 0, 1); }, nullptr}};
    b.add(std::move(e), std::move(m), make_linear_cocycle(3));
  }

  {  // temperature difference and two-way works
    auto e = b.entry("one/tri/thermo-work", "3.29",
                     "trimetric temperature/work metric");
    auto m = b.spec(e, 3, 3);
    m.domain = guard_absdiff(1);  // temperature differences stay separated
    m.eval = [](const Vec& a, const Vec& c) {
      const double dx = a[0] - c[0], dz = a[2] - c[2];
      return vec3(a[1] - c[1], dx * a[1] + dz, dx * c[1] + dz);
    };
    b.add(std::move(e), std::move(m), make_thermo_work_identity());
  }

  // The remaining trimetric families carry the rank predicate as their sole
  // certificate; their relations are not available in closed form here.
  const auto tri = [&](const char* id, const char* anchor, const char* note,
                       std::function<Vec(const Vec&, const Vec&)> eval,
                       std::function<void(MetricSpec&)> tweak = {}) {
    auto e = b.entry(id, anchor, note);
    auto m = b.spec(e, 3, 3);
    m.eval = std::move(eval);
    if (tweak) tweak(m);
    b.add(std::move(e), std::move(m), std::nullopt);
  };

  tri("one/tri/dual-scale", "3.30", "dual-helmholtz factor with two scale components",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0], dy = a[1] - c[1];
        return vec3(sq(dx) * std::exp(2.0 * dy / dx), dx * a[2], dx * c[2]);
      },
      [](MetricSpec& m) {
        m.domain = guard_ratio(0, 1, 2.5);
        m.box_a[2] = m.box_b[2] = positive_box();
      });
  tri("one/tri/simplicial-scale", "3.31", "slope with two scale components",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0];
        return vec3((a[1] - c[1]) / dx, dx * a[2], dx * c[2]);
      },
      [](MetricSpec& m) {
        m.domain = guard_absdiff(0);
        m.box_a[2] = m.box_b[2] = positive_box();
      });
  tri("one/tri/product-scale", "3.32", "coordinate product with two scale components",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0];
        return vec3(dx * (a[1] - c[1]), dx * a[2], dx * c[2]);
      },
      [](MetricSpec& m) {
        m.domain = guard_absdiff(0);
        m.box_a[2] = m.box_b[2] = positive_box();
      });
  tri("one/tri/shift-scale", "3.33", "coordinate difference with two scale components",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0];
        return vec3(a[1] - c[1], dx * a[2], dx * c[2]);
      },
      [](MetricSpec& m) {
        m.domain = guard_absdiff(0);
        m.box_a[2] = m.box_b[2] = positive_box();
      });
  tri("one/tri/power-scale", "3.34", "fractional power ratio with two scale components, p=1/2",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0];
        return vec3(std::sqrt(dx) / (a[1] - c[1]), dx * a[2], dx * c[2]);
      },
      [](MetricSpec& m) {
        m.params["p"] = 0.5;
        m.domain = [](const Vec& a, const Vec& c) {
          return a[0] - c[0] >= kDomainMargin && std::abs(a[1] - c[1]) >= kDomainMargin;
        };
        m.box_a[2] = m.box_b[2] = positive_box();
      });
  tri("one/tri/euclid-rotor", "3.35", "euclidean length with two angle-shift components",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0], dy = a[1] - c[1];
        const double ang = std::atan(dy / dx);
        return vec3(sq(dx) + sq(dy), a[2] + ang, c[2] + ang);
      },
      [](MetricSpec& m) { m.domain = guard_absdiff(0); });
  tri("one/tri/helmholtz-rotor", "3.36",
      "helmholtz length with two angle-shift components, gamma=1",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0], dy = a[1] - c[1];
        const double ang = std::atan(dy / dx);
        return vec3((sq(dx) + sq(dy)) * std::exp(2.0 * ang), a[2] + ang, c[2] + ang);
      },
      [](MetricSpec& m) {
        m.params["gamma"] = 1.0;
        m.domain = guard_absdiff(0);
      });
  tri("one/tri/sphere-rotor", "3.37", "spherical cosine with two bearing components",
      [](const Vec& a, const Vec& c) {
        const double f1 = std::sin(a[1]) * std::sin(c[1]) * std::cos(a[0] - c[0]) +
                          std::cos(a[1]) * std::cos(c[1]);
        const double root = std::sqrt(1.0 - sq(f1));
        return vec3(f1, a[2] - std::asin(std::sin(a[0] - c[0]) * std::sin(c[1]) / root),
                    c[2] + std::asin(std::sin(a[0] - c[0]) * std::sin(a[1]) / root));
      },
      [](MetricSpec& m) {
        m.box_a[1] = m.box_b[1] = angular_box();
        m.domain = [](const Vec& a, const Vec& c) {
          return sphere_bearings_acute(a[0] - c[0], a[1], c[1]);
        };
      });
  tri("one/tri/inverse-scale", "3.38", "product metric with reciprocal shift components",
      [](const Vec& a, const Vec& c) {
        const double dx = a[0] - c[0];
        return vec3(dx * a[1] * c[1], a[2] + 1.0 / (dx * sq(a[1])),
                    c[2] - 1.0 / (dx * sq(c[1])));
      },
      [](MetricSpec& m) {
        m.domain = guard_absdiff(0, 0.05);
        m.box_a[1] = m.box_b[1] = positive_box();
      });
}

// The twelve explicit four-component families of rank 3.
inline void register_oneset_fourmetric(OneSetBuilder& b) {
  const auto family = [&](int num, const char* note, std::vector<double> eps_values,
                          std::function<Vec(const Vec&, const Vec&, double)> eval,
                          std::function<void(MetricSpec&)> tweak = {}) {
    char idbuf[64];
    std::snprintf(idbuf, sizeof(idbuf), "one/quad/family-%02d", num);
    char anchor[32];
    std::snprintf(anchor, sizeof(anchor), "T6.%02d", num);
    auto e = b.entry(idbuf, anchor, note);
    std::vector<MetricSpec> instances;
    if (eps_values.empty()) eps_values = {0.0};
    const bool enumerate = eps_values.size() > 1;
    for (double eps : eps_values) {
      auto m = b.spec(e, 4, 4);
      if (enumerate) {
        m.id += std::string("#eps=") + (eps > 0 ? "1" : "0");
        m.params["eps"] = eps;
      }
      m.eval = [eval, eps](const Vec& a, const Vec& c) { return eval(a, c, eps); };
      if (tweak) tweak(m);
      instances.push_back(std::move(m));
    }
    b.add_multi(std::move(e), std::move(instances), std::nullopt);
  };

  const auto ratio_guard = [](MetricSpec& m) { m.domain = guard_ratio(0, 1, 2.5); };
  const double k = 1.0, l = 1.0, cpar = 2.0;

  family(1, "three scaled squares with a shift component", {0.0, 1.0},
         [=](const Vec& a, const Vec& c, double eps) {
           const double t = a[3] + c[3];
           return vec4(sq(a[0] - c[0]) * std::exp(eps * t),
                       sq(a[1] - c[1]) * std::exp(k * t),
                       sq(a[2] - c[2]) * std::exp(l * t), a[3] - c[3]);
         });
  family(2, "helmholtz length, angle shift, scaled square", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1];
           const double ang = std::atan(dy / dx), t = a[3] + c[3];
           return vec4((sq(dx) + sq(dy)) * std::exp(-2.0 * k * ang),
                       2.0 * ang + t, sq(a[2] - c[2]) * std::exp(l * t), a[3] - c[3]);
         },
         [](MetricSpec& m) { m.domain = guard_absdiff(0); });
  family(3, "dual-helmholtz length, ratio shift, scaled square", {0.0, 1.0},
         [=](const Vec& a, const Vec& c, double eps) {
           const double dx = a[0] - c[0], r = (a[1] - c[1]) / dx, t = a[3] + c[3];
           return vec4(sq(dx) * std::exp(-2.0 * k * r), 2.0 * r + t,
                       sq(a[2] - c[2]) * std::exp(eps * t), a[3] - c[3]);
         },
         ratio_guard);
  family(4, "difference, ratio shift, parabolic defect", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1];
           return vec4(dx, 2.0 * dy / dx - (a[3] + c[3]),
                       a[2] - c[2] - sq(dy) / (2.0 * dx), a[3] - c[3]);
         },
         ratio_guard);
  family(5, "difference, ratio shift, logarithmic component", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1], dz = a[2] - c[2];
           return vec4(dx, 2.0 * dy / dx - (a[3] + c[3]),
                       dx * std::log(dz + dy + dx) - dy, a[3] - c[3]);
         },
         [](MetricSpec& m) {
           m.domain = guard_all(
               {guard_ratio(0, 1, 2.5), [](const Vec& a, const Vec& c) {
                  return (a[2] - c[2]) + (a[1] - c[1]) + (a[0] - c[0]) >= kDomainMargin;
                }});
         });
  family(6, "dual-helmholtz length, ratio shift, linear mix", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1], r = dy / dx;
           return vec4(sq(dx) * std::exp(-2.0 * k * r), 2.0 * r - (a[3] + c[3]),
                       k * dy - dx - sq(k) * (a[2] - c[2]), a[3] - c[3]);
         },
         ratio_guard);
  family(7, "dual-helmholtz length, ratio shift, quadratic ratio", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1], r = dy / dx;
           return vec4(sq(dx) * std::exp(-2.0 * k * r), 2.0 * r - (a[3] + c[3]),
                       2.0 * (a[2] - c[2]) / dx - k * sq(r), a[3] - c[3]);
         },
         ratio_guard);
  family(8, "sheared squares with a common scale", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1], t = a[3] + c[3];
           return vec4(sq(dx - a[2] * dy) * std::exp(cpar * t),
                       sq(dx - c[2] * dy) * std::exp(cpar * t), sq(dy) * std::exp(t),
                       a[3] - c[3]);
         },
         [](MetricSpec& m) { m.params["c"] = 2.0; });
  family(9, "two independent scaled differences", {},
         [=](const Vec& a, const Vec& c, double) {
           return vec4((a[0] - c[0]) * std::exp(a[2]), (a[0] - c[0]) * std::exp(c[2]),
                       (a[1] - c[1]) * std::exp(a[3]), (a[1] - c[1]) * std::exp(c[3]));
         });
  family(10, "euclidean length with scale and two shifts", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0], dy = a[1] - c[1];
           return vec4((sq(dx) + sq(dy)) * std::exp(a[2] + c[2]),
                       2.0 * std::atan(dy / dx) + a[3] + c[3], a[2] - c[2], a[3] - c[3]);
         },
         [](MetricSpec& m) { m.domain = guard_absdiff(0); });
  family(11, "spherical cosine with bearings and a shift", {},
         [=](const Vec& a, const Vec& c, double) {
           const double f1 = std::sin(a[1]) * std::sin(c[1]) * std::cos(a[0] - c[0]) +
                             std::cos(a[1]) * std::cos(c[1]);
           const double root = std::sqrt(1.0 - sq(f1));
           return vec4(f1, a[2] - std::asin(std::sin(a[0] - c[0]) * std::sin(c[1]) / root),
                       c[2] + std::asin(std::sin(a[0] - c[0]) * std::sin(a[1]) / root),
                       a[3] - c[3]);
         },
         [](MetricSpec& m) {
           m.box_a[1] = m.box_b[1] = angular_box();
           m.domain = [](const Vec& a, const Vec& c) {
             return sphere_bearings_acute(a[0] - c[0], a[1], c[1]);
           };
         });
  family(12, "product metric with reciprocal shifts and a difference", {},
         [=](const Vec& a, const Vec& c, double) {
           const double dx = a[0] - c[0];
           return vec4(dx * a[1] * c[1], a[2] + 1.0 / (dx * sq(a[1])),
                       c[2] - 1.0 / (dx * sq(c[1])), a[3] - c[3]);
         },
         [](MetricSpec& m) {
           m.domain = guard_absdiff(0, 0.05);
           m.box_a[1] = m.box_b[1] = positive_box();
         });
}

// Oriented triangle area: a ternary function kept for the alternating-sum
// relation and its five-parameter unimodular affine motions. It is excluded
// from the two-point machinery.
inline void register_oneset_area(OneSetBuilder& b) {
  CatalogEntry e = b.entry("one/2d/oriented-area", "5.9",
                           "oriented triangle area on the plane (ternary)");
  e.family = Family::one_set;
  e.s = 1;
  e.dim_a = e.dim_b = 2;
  e.arity = 3;
  e.rank_len_a = 7;  // seven-point figure for the degrees-of-freedom check
  e.rank_len_b = 0;
  e.predicted_rank = 9;  // 14 coordinates minus 5 motion parameters

  MotionSpec ms;  // unimodular affine maps: (a, b, g, c, d), h = (1 + b g) / a
  ms.param_count = 5;
  Vec id(5);
  id << 1.0, 0.0, 0.0, 0.0, 0.0;
  ms.identity_params = id;
  ms.param_domain = [](const Vec& g) { return std::abs(g[0]) >= 0.05; };
  ms.act_a = [](const Vec& p, const Vec& g) {
    const double h = (1.0 + g[1] * g[2]) / g[0];
    return vec2(g[0] * p[0] + g[1] * p[1] + g[3], g[2] * p[0] + h * p[1] + g[4]);
  };
  ms.compose = [](const Vec& p, const Vec& q) {
    const double hp = (1.0 + p[1] * p[2]) / p[0];
    const double hq = (1.0 + q[1] * q[2]) / q[0];
    // linear parts multiply, translations compose affinely (apply p then q)
    const double a = q[0] * p[0] + q[1] * p[2];
    const double bb = q[0] * p[1] + q[1] * hp;
    const double g = q[2] * p[0] + hq * p[2];
    const double tx = q[0] * p[3] + q[1] * p[4] + q[3];
    const double ty = q[2] * p[3] + hq * p[4] + q[4];
    Vec out(5);
    out << a, bb, g, tx, ty;
    return out;
  };
  ms.sample_params = [](Rng& rng) {
    Vec g(5);
    g << rng.uniform(0.4, 1.8) * (rng.unit() < 0.5 ? -1.0 : 1.0), rng.uniform(-1.0, 1.0),
        rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
    return g;
  };
  e.motions = ms;
  b.cat.add(std::move(e));
}

inline void register_oneset(Catalog& cat) {
  OneSetBuilder b{cat};
  register_oneset_unimetric(b);
  register_oneset_threedim(b);
  register_oneset_fourdim(b);
  register_oneset_polymetric(b);
  register_oneset_fourmetric(b);
  register_oneset_area(b);
}

}  // namespace detail
}  // namespace pstruct

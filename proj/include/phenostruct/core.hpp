#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phenostruct/rng.hpp"

namespace pstruct {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default sampling box half-width and the margin kept from every
// denominator zero, branch cut and arcsin saturation.
inline constexpr double kBoxHalfWidth = 2.0;
inline constexpr double kDomainMargin = 1e-3;
inline constexpr int kRejectionBudget = 10000;

struct domain_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unknown_id : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Family { one_set, two_set };
enum class Side { a, b };

struct Box {
  double lo = -kBoxHalfWidth;
  double hi = kBoxHalfWidth;
};

// A cortege for a one-set check holds only set_a; two-set checks use both.
struct Cortege {
  std::vector<Vec> set_a;
  std::vector<Vec> set_b;
};

// One concrete metric function: every parameter bound, sampling boxes and
// domain predicate attached. `eval` must be pure and total on `domain`.
struct MetricSpec {
  std::string id;
  Family family = Family::one_set;
  int s = 1;
  int dim_a = 0;
  int dim_b = 0;  // equal to dim_a for one-set specs
  std::map<std::string, double> params;
  std::vector<Box> box_a;
  std::vector<Box> box_b;
  std::function<bool(const Vec&)> point_ok_a;  // optional extra point constraint
  std::function<bool(const Vec&)> point_ok_b;
  std::function<bool(const Vec&, const Vec&)> domain;  // ordered pair predicate
  std::function<Vec(const Vec&, const Vec&)> eval;

  bool pair_ok(const Vec& a, const Vec& b) const { return !domain || domain(a, b); }
};

inline std::vector<Box> uniform_boxes(int dim, double lo = -kBoxHalfWidth,
                                      double hi = kBoxHalfWidth) {
  return std::vector<Box>(static_cast<std::size_t>(dim), Box{lo, hi});
}

inline Vec sample_point(const MetricSpec& spec, Side side, Rng& rng) {
  const int dim = side == Side::a ? spec.dim_a : spec.dim_b;
  const auto& boxes = side == Side::a ? spec.box_a : spec.box_b;
  const auto& ok = side == Side::a ? spec.point_ok_a : spec.point_ok_b;
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    Vec p(dim);
    for (int k = 0; k < dim; ++k) {
      const Box box = k < static_cast<int>(boxes.size()) ? boxes[k] : Box{};
      p[k] = rng.uniform(box.lo, box.hi);
    }
    if (!ok || ok(p)) return p;
  }
  throw domain_exhausted("sample_point: rejection budget exceeded for " + spec.id);
}

// Draws points one at a time and rejects any draw whose pairs with the
// already-accepted points fall outside the spec's domain. `extra_ok`, when
// given, vets the whole cortege (used for identity-specific admissibility).
inline Cortege sample_cortege(const MetricSpec& spec, int len_a, int len_b, Rng& rng,
                              const std::function<bool(const Cortege&)>& extra_ok = {}) {
  // A point that refuses to fit abandons the whole cortege: an unlucky early
  // configuration must not strand the remaining draws.
  int budget = kRejectionBudget;
  const int per_point = 150;
  while (budget > 0) {
    Cortege c;
    bool ok = true;
    for (int i = 0; i < len_a && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < per_point && budget > 0; ++tries, --budget) {
        Vec p = sample_point(spec, Side::a, rng);
        bool pairs_ok = true;
        if (spec.family == Family::one_set) {
          for (const Vec& q : c.set_a)
            if (!spec.pair_ok(q, p)) {
              pairs_ok = false;
              break;
            }
        }
        if (pairs_ok) {
          c.set_a.push_back(std::move(p));
          placed = true;
          --budget;
          break;
        }
      }
      if (!placed) ok = false;
    }
    for (int j = 0; j < len_b && ok; ++j) {
      bool placed = false;
      for (int tries = 0; tries < per_point && budget > 0; ++tries, --budget) {
        Vec q = sample_point(spec, Side::b, rng);
        bool pairs_ok = true;
        for (const Vec& p : c.set_a)
          if (!spec.pair_ok(p, q)) {
            pairs_ok = false;
            break;
          }
        if (pairs_ok) {
          c.set_b.push_back(std::move(q));
          placed = true;
          --budget;
          break;
        }
      }
      if (!placed) ok = false;
    }
    if (!ok) continue;
    if (extra_ok && !extra_ok(c)) continue;
    return c;
  }
  throw domain_exhausted("sample_cortege: rejection budget exceeded for " + spec.id);
}

inline Vec eval_metric(const MetricSpec& spec, const Vec& a, const Vec& b) {
  if (!spec.pair_ok(a, b))
    throw domain_violation("eval_metric: pair outside domain of " + spec.id);
  Vec v = spec.eval(a, b);
  if (!v.allFinite())
    throw domain_violation("eval_metric: non-finite value from " + spec.id);
  return v;
}

// Componentwise strictly monotone reparameterization of the metric values.
struct ScalingComponent {
  std::function<double(double)> fn;
  std::function<double(double)> inverse;  // optional; bisection fallback below
};

struct ScalingMap {
  std::vector<ScalingComponent> comps;

  static ScalingMap identity(int s) {
    ScalingMap m;
    for (int k = 0; k < s; ++k)
      m.comps.push_back({[](double u) { return u; }, [](double u) { return u; }});
    return m;
  }
};

// Monotone inverse by bisection on [lo, hi]; used when a scaling component
// has no closed-form inverse.
inline double invert_monotone(const std::function<double(double)>& fn, double value,
                              double lo, double hi) {
  double flo = fn(lo), fhi = fn(hi);
  bool increasing = flo < fhi;
  if ((increasing && (value < flo || value > fhi)) ||
      (!increasing && (value > flo || value < fhi)))
    throw domain_violation("invert_monotone: value outside bracket");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if ((fm < value) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// New spec evaluating psi(f). Identity forms are representation-specific and
// do not carry over; callers re-derive what they need.
inline MetricSpec apply_scaling(const MetricSpec& spec, const ScalingMap& psi) {
  if (static_cast<int>(psi.comps.size()) != spec.s)
    throw std::invalid_argument("apply_scaling: component count mismatch");
  MetricSpec out = spec;
  out.id = spec.id + "#scaled";
  auto base = spec.eval;
  auto comps = psi.comps;
  out.eval = [base, comps](const Vec& a, const Vec& b) {
    Vec v = base(a, b);
    for (int k = 0; k < v.size(); ++k) v[k] = comps[static_cast<std::size_t>(k)].fn(v[k]);
    return v;
  };
  return out;
}

}  // namespace pstruct

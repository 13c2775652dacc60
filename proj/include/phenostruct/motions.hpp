#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phenostruct/core.hpp"
#include "phenostruct/numeric.hpp"

namespace pstruct {

struct param_domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invariance_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct group_law_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kInvarianceTol = 1e-9;
inline constexpr double kIdentityActionTol = 1e-12;
inline constexpr double kLieTol = 1e-6;

// A parameterized group action: one transformation per underlying set.
// `compose` (when present) gives the parameters of "apply p then q".
struct MotionSpec {
  int param_count = 0;
  Vec identity_params;
  std::function<bool(const Vec&)> param_domain;
  std::function<Vec(const Vec&, const Vec&)> act_a;  // (point, params) -> point
  std::function<Vec(const Vec&, const Vec&)> act_b;  // absent for one-set entries
  std::function<Vec(const Vec&, const Vec&)> compose;
  // Draws parameters across the full admissible domain (not just near
  // identity); falls back to a ball around the identity when absent.
  std::function<Vec(Rng&)> sample_params;
};

inline bool params_ok(const MotionSpec& ms, const Vec& params) {
  return !ms.param_domain || ms.param_domain(params);
}

inline Vec apply_motion(const MotionSpec& ms, const Vec& params, const Vec& p, Side side) {
  if (!params_ok(ms, params)) throw param_domain_error("apply_motion: parameters rejected");
  const auto& act = side == Side::a ? ms.act_a : ms.act_b;
  if (!act) throw param_domain_error("apply_motion: no action on this side");
  return act(p, params);
}

// Parameters inside a ball of radius 0.5 around the identity (local group
// sampling), rejected against the param domain.
inline Vec sample_params_near_identity(const MotionSpec& ms, Rng& rng, double radius = 0.5) {
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    Vec p = ms.identity_params;
    for (int k = 0; k < p.size(); ++k) p[k] += rng.uniform(-radius, radius);
    if (params_ok(ms, p)) return p;
  }
  throw domain_exhausted("sample_params_near_identity: budget exceeded");
}

inline Vec sample_params_full(const MotionSpec& ms, Rng& rng) {
  if (ms.sample_params) {
    for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
      Vec p = ms.sample_params(rng);
      if (params_ok(ms, p)) return p;
    }
    throw domain_exhausted("sample_params_full: budget exceeded");
  }
  return sample_params_near_identity(ms, rng);
}

// Componentwise |f(g a, g b) - f(a, b)| over random points and admissible
// parameters; half the draws come from the full stated parameter domain.
// Draws where the transformed pair leaves the metric's domain are redrawn.
inline ResidualStats check_invariance(const MetricSpec& spec, const MotionSpec& ms,
                                      int n_samples, Rng& rng) {
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(n_samples));
  int guard = kRejectionBudget;
  while (static_cast<int>(residuals.size()) < n_samples && guard-- > 0) {
    const bool near = residuals.size() % 2 == 0;
    Vec params;
    try {
      params = near ? sample_params_near_identity(ms, rng) : sample_params_full(ms, rng);
    } catch (const domain_exhausted&) {
      break;
    }
    Vec a = sample_point(spec, Side::a, rng);
    Vec b = sample_point(spec, spec.family == Family::two_set ? Side::b : Side::a, rng);
    if (!spec.pair_ok(a, b)) continue;
    Vec ga, gb;
    try {
      ga = ms.act_a(a, params);
      gb = spec.family == Family::two_set ? ms.act_b(b, params) : ms.act_a(b, params);
    } catch (const domain_violation&) {
      continue;
    }
    if (!ga.allFinite() || !gb.allFinite() || !spec.pair_ok(ga, gb)) continue;
    const Vec before = spec.eval(a, b);
    const Vec after = spec.eval(ga, gb);
    if (!before.allFinite() || !after.allFinite()) continue;
    for (int c = 0; c < spec.s; ++c) residuals.push_back(std::abs(after[c] - before[c]));
  }
  return residual_stats(residuals, "componentwise |f(ga,gb)-f(a,b)|");
}

struct GroupLawReport {
  double identity_residual = 0.0;  // max |act(p, e) - p|
  double closure_residual = 0.0;   // max |act(act(p,g),h) - act(p, g*h)|
  double inverse_residual = 0.0;   // max |act(act(p,g), g^-1) - p|
  int inverse_failures = 0;        // elements near identity with no numeric inverse
  int n_samples = 0;
  bool pass(double tol = kInvarianceTol) const {
    return identity_residual < tol && closure_residual < tol && inverse_residual < tol &&
           inverse_failures == 0;
  }
};

// Numeric inverse near the identity: solve compose(g, h) = e when a
// composition rule exists, else fit h pointwise so that h undoes g.
inline std::optional<Vec> invert_params(const MotionSpec& ms, const Vec& g,
                                        const std::vector<Vec>& probes_a) {
  if (ms.compose) {
    auto fn = [&](const Vec& h) -> Vec {
      if (!params_ok(ms, h)) return Vec::Constant(ms.identity_params.size(),
                                                  std::numeric_limits<double>::quiet_NaN());
      return ms.compose(g, h) - ms.identity_params;
    };
    return solve_newton(fn, ms.identity_params);
  }
  auto fn = [&](const Vec& h) -> Vec {
    Vec r(static_cast<int>(probes_a.size()) * static_cast<int>(probes_a.front().size()));
    int k = 0;
    if (!params_ok(ms, h)) {
      r.setConstant(std::numeric_limits<double>::quiet_NaN());
      return r;
    }
    for (const Vec& p : probes_a) {
      const Vec round_trip = ms.act_a(ms.act_a(p, g), h) - p;
      r.segment(k, round_trip.size()) = round_trip;
      k += static_cast<int>(round_trip.size());
    }
    return r;
  };
  // Overdetermined in general; Gauss-Newton with a least-squares step.
  Vec h = ms.identity_params;
  for (int it = 0; it < 80; ++it) {
    Vec r = fn(h);
    if (!r.allFinite()) return std::nullopt;
    if (r.norm() < 1e-12) return h;
    Mat j = finite_diff_jacobian(fn, h, 1e-7);
    Vec step = j.colPivHouseholderQr().solve(r);
    if (!step.allFinite()) return std::nullopt;
    h -= step;
  }
  return fn(h).norm() < 1e-9 ? std::optional<Vec>(h) : std::nullopt;
}

// Identity, closure (against the composition rule when given, pointwise
// otherwise) and inverse existence, with parameters near the identity.
inline GroupLawReport check_group_laws(const MetricSpec& spec, const MotionSpec& ms,
                                       int n_samples, Rng& rng) {
  GroupLawReport rep;
  rep.n_samples = n_samples;
  std::vector<Vec> probes;
  for (int k = 0; k < 4; ++k) probes.push_back(sample_point(spec, Side::a, rng));

  for (const Vec& p : probes) {
    const double r = (ms.act_a(p, ms.identity_params) - p).norm();
    rep.identity_residual = std::max(rep.identity_residual, r);
    if (ms.act_b) {
      Vec q = sample_point(spec, Side::b, rng);
      rep.identity_residual =
          std::max(rep.identity_residual, (ms.act_b(q, ms.identity_params) - q).norm());
    }
  }

  for (int n = 0; n < n_samples; ++n) {
    Vec g, h;
    try {
      g = sample_params_near_identity(ms, rng, 0.35);
      h = sample_params_near_identity(ms, rng, 0.35);
    } catch (const domain_exhausted&) {
      break;
    }
    if (ms.compose) {
      const Vec gh = ms.compose(g, h);
      for (const Vec& p : probes) {
        const Vec left = ms.act_a(ms.act_a(p, g), h);
        const Vec right = ms.act_a(p, gh);
        rep.closure_residual = std::max(rep.closure_residual, (left - right).norm());
      }
      if (ms.act_b) {
        Vec q = sample_point(spec, Side::b, rng);
        const Vec left = ms.act_b(ms.act_b(q, g), h);
        const Vec right = ms.act_b(q, gh);
        rep.closure_residual = std::max(rep.closure_residual, (left - right).norm());
      }
    }
    auto ginv = invert_params(ms, g, probes);
    if (!ginv) {
      ++rep.inverse_failures;
      continue;
    }
    for (const Vec& p : probes) {
      const Vec back = ms.act_a(ms.act_a(p, g), *ginv);
      rep.inverse_residual = std::max(rep.inverse_residual, (back - p).norm());
    }
    if (ms.act_b) {
      Vec q = sample_point(spec, Side::b, rng);
      const Vec back = ms.act_b(ms.act_b(q, g), *ginv);
      rep.inverse_residual = std::max(rep.inverse_residual, (back - q).norm());
    }
  }
  return rep;
}

// Basis vector field of the motion algebra in operator form: coefficient
// functions of the point coordinates, one per coordinate, per side.
struct LieOperator {
  std::function<Vec(const Vec&)> coef_a;
  std::function<Vec(const Vec&)> coef_b;  // absent for one-set entries
};

// Directional derivative of f along the operator at both arguments:
// X(i)f(ij) + X(j)f(ij) (one set) or X(i)f(ia) + Xi(a)f(ia) (two sets).
inline ResidualStats check_infinitesimal_invariance(const MetricSpec& spec,
                                                    const std::vector<LieOperator>& basis,
                                                    int n_samples, Rng& rng) {
  std::vector<double> residuals;
  const double h = 1e-6;
  int guard = kRejectionBudget;
  while (static_cast<int>(residuals.size()) < n_samples * spec.s * static_cast<int>(basis.size()) &&
         guard-- > 0) {
    Vec a = sample_point(spec, Side::a, rng);
    Vec b = sample_point(spec, spec.family == Family::two_set ? Side::b : Side::a, rng);
    if (!spec.pair_ok(a, b)) continue;
    bool all_ok = true;
    std::vector<double> local;
    for (const auto& op : basis) {
      const Vec da = op.coef_a(a);
      const Vec db = spec.family == Family::two_set ? op.coef_b(b) : op.coef_a(b);
      const Vec ap = a + h * da, am = a - h * da;
      const Vec bp = b + h * db, bm = b - h * db;
      if (!spec.pair_ok(ap, b) || !spec.pair_ok(am, b) || !spec.pair_ok(a, bp) ||
          !spec.pair_ok(a, bm)) {
        all_ok = false;
        break;
      }
      const Vec term_a = (spec.eval(ap, b) - spec.eval(am, b)) / (2 * h);
      const Vec term_b = (spec.eval(a, bp) - spec.eval(a, bm)) / (2 * h);
      const Vec sum = term_a + term_b;
      if (!sum.allFinite()) {
        all_ok = false;
        break;
      }
      for (int c = 0; c < spec.s; ++c) local.push_back(std::abs(sum[c]));
    }
    if (all_ok)
      residuals.insert(residuals.end(), local.begin(), local.end());
  }
  return residual_stats(residuals, "|X(i)f + X(j)f| central differences");
}

// The action's derivative at the identity parameters must reproduce the
// stored operator coefficients (consistency between the finite and the
// infinitesimal descriptions).
inline double motion_operator_consistency(const MetricSpec& spec, const MotionSpec& ms,
                                          const std::vector<LieOperator>& basis, Rng& rng,
                                          int n_points = 20) {
  double worst = 0.0;
  const double h = 1e-6;
  for (int n = 0; n < n_points; ++n) {
    Vec a = sample_point(spec, Side::a, rng);
    for (int k = 0; k < ms.param_count; ++k) {
      Vec pp = ms.identity_params, pm = ms.identity_params;
      pp[k] += h;
      pm[k] -= h;
      if (!params_ok(ms, pp) || !params_ok(ms, pm)) continue;
      const Vec d = (ms.act_a(a, pp) - ms.act_a(a, pm)) / (2 * h);
      worst = std::max(worst, (d - basis[static_cast<std::size_t>(k)].coef_a(a)).norm());
      if (ms.act_b && basis[static_cast<std::size_t>(k)].coef_b) {
        Vec q = sample_point(spec, Side::b, rng);
        const Vec db = (ms.act_b(q, pp) - ms.act_b(q, pm)) / (2 * h);
        worst = std::max(worst,
                         (db - basis[static_cast<std::size_t>(k)].coef_b(q)).norm());
      }
    }
  }
  return worst;
}

}  // namespace pstruct

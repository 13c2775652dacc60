#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phenostruct/catalog.hpp"
#include "phenostruct/core.hpp"
#include "phenostruct/identity.hpp"
#include "phenostruct/numeric.hpp"

namespace pstruct {

inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kIdentityFailFloor = 1e-3;

// ---------------------------------------------------------------------------
// Distance tables.

inline DistTable build_dist_table(const MetricSpec& spec, const Cortege& cortege,
                                  bool needs_diag) {
  DistTable t;
  t.family = spec.family;
  t.s = spec.s;
  if (spec.family == Family::one_set) {
    const int m = static_cast<int>(cortege.set_a.size());
    t.values.assign(static_cast<std::size_t>(spec.s), Mat::Zero(m, m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j && !needs_diag) continue;
        const Vec v = spec.eval(cortege.set_a[static_cast<std::size_t>(i)],
                                cortege.set_a[static_cast<std::size_t>(j)]);
        if (!v.allFinite()) throw domain_violation("dist table: non-finite value");
        for (int c = 0; c < spec.s; ++c) t.values[static_cast<std::size_t>(c)](i, j) = v[c];
      }
    return t;
  }
  const int na = static_cast<int>(cortege.set_a.size());
  const int nb = static_cast<int>(cortege.set_b.size());
  t.values.assign(static_cast<std::size_t>(spec.s), Mat::Zero(na, nb));
  for (int i = 0; i < na; ++i)
    for (int al = 0; al < nb; ++al) {
      const Vec v = spec.eval(cortege.set_a[static_cast<std::size_t>(i)],
                              cortege.set_b[static_cast<std::size_t>(al)]);
      if (!v.allFinite()) throw domain_violation("dist table: non-finite value");
      for (int c = 0; c < spec.s; ++c) t.values[static_cast<std::size_t>(c)](i, al) = v[c];
    }
  return t;
}

// Draw a cortege whose distance table the form accepts.
inline DistTable sample_identity_table(const MetricSpec& spec, const IdentityForm& form,
                                       Rng& rng) {
  const int len_b = spec.family == Family::two_set ? form.len_b : 0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Cortege c = sample_cortege(spec, form.len_a, len_b, rng);
    try {
      DistTable t = build_dist_table(spec, c, form.needs_diag);
      if (form.admissible && !form.admissible(t)) continue;
      return t;
    } catch (const domain_violation&) {
      continue;
    }
  }
  throw domain_exhausted("sample_identity_table: budget exceeded for " + spec.id);
}

// Max normalized residual of the relation over sampled corteges.
inline ResidualStats check_identity_form(const MetricSpec& spec, const IdentityForm& form,
                                         int n_samples, Rng& rng) {
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(n_samples));
  int produced = 0;
  int guard = 40 * n_samples + 200;
  while (produced < n_samples && guard-- > 0) {
    DistTable t = sample_identity_table(spec, form, rng);
    try {
      for (double r : form.eval(t, spec)) residuals.push_back(r);
      ++produced;
    } catch (const domain_violation&) {
      continue;
    }
  }
  ResidualStats st = residual_stats(residuals, form.note);
  st.n_samples = produced;
  return st;
}

// A copy of the spec with every sampling box shrunk toward its centre, so
// distance values sit at the scale of the corruption being injected.
inline MetricSpec shrink_boxes(const MetricSpec& spec, double factor) {
  MetricSpec out = spec;
  const auto shrink = [factor](std::vector<Box>& boxes) {
    for (Box& b : boxes) {
      const double mid = 0.5 * (b.lo + b.hi), half = 0.5 * (b.hi - b.lo) * factor;
      b = Box{mid - half, mid + half};
    }
  };
  shrink(out.box_a);
  shrink(out.box_b);
  return out;
}

// Corrupt one distance value by `bump` and report the largest residual the
// corruption produces (per-sample max over relation components). A corrupted
// distance propagates to every cell that reads it: the mirror cell of a
// symmetric metric moves with it, the mirror of an antisymmetric metric
// moves oppositely. Corteges are drawn at reduced scale so the corruption is
// at the scale of the values it damages.
inline ResidualStats check_identity_perturbed(const MetricSpec& spec,
                                              const IdentityForm& form, int n_samples,
                                              Rng& rng, double bump = 0.1,
                                              double box_factor = 0.35) {
  const MetricSpec local = shrink_boxes(spec, box_factor);
  std::vector<double> per_sample;
  int produced = 0;
  int guard = 40 * n_samples + 200;
  int position = 0;
  while (produced < n_samples && guard-- > 0) {
    DistTable t = sample_identity_table(local, form, rng);
    const int rows = t.rows(), cols = t.cols();
    const int cells = rows * cols;
    // walk through cells (and components) round-robin, skipping diagonals of
    // forms that ignore them
    int cell = position % cells;
    int comp = (position / cells) % t.s;
    ++position;
    int i = cell / cols, j = cell % cols;
    if (spec.family == Family::one_set && i == j) {
      j = (j + 1) % cols;
      if (i == j) continue;
    }
    DistTable tp = t;
    Mat& grid = tp.values[static_cast<std::size_t>(comp)];
    if (spec.family == Family::one_set) {
      const double here = grid(i, j), mirror = grid(j, i);
      if (std::abs(mirror - here) < 1e-12)
        grid(j, i) += bump;
      else if (std::abs(mirror + here) < 1e-12)
        grid(j, i) -= bump;
    }
    grid(i, j) += bump;
    try {
      double worst = 0.0;
      for (double r : form.eval(tp, local)) worst = std::max(worst, r);
      per_sample.push_back(worst);
      ++produced;
    } catch (const domain_violation&) {
      continue;
    }
  }
  ResidualStats st;
  st.normalization = "per-sample max after +0.1 corruption";
  st.n_samples = produced;
  double mx = 0.0, sum = 0.0;
  for (double v : per_sample) {
    mx = std::max(mx, v);
    sum += v;
  }
  st.max_abs = mx;
  st.mean_abs = per_sample.empty() ? 0.0 : sum / static_cast<double>(per_sample.size());
  return st;
}

// Largest perturbed residual a single corrupted distance can produce over a
// cortege, maximized over the corrupted cell (the mirror cell moves with the
// distance it shares).
inline double corrupted_residual(const MetricSpec& spec, const IdentityForm& form,
                                 const Cortege& cortege, double bump = 0.1) {
  const DistTable t = build_dist_table(spec, cortege, form.needs_diag);
  if (form.admissible && !form.admissible(t))
    throw domain_violation("corrupted_residual: inadmissible cortege");
  double best = 0.0;
  for (int comp = 0; comp < t.s; ++comp)
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) {
        if (spec.family == Family::one_set && i == j) continue;
        DistTable tp = t;
        Mat& grid = tp.values[static_cast<std::size_t>(comp)];
        if (spec.family == Family::one_set) {
          const double here = grid(i, j), mirror = grid(j, i);
          if (std::abs(mirror - here) < 1e-12)
            grid(j, i) += bump;
          else if (std::abs(mirror + here) < 1e-12)
            grid(j, i) -= bump;
        }
        grid(i, j) += bump;
        try {
          for (double r : form.eval(tp, spec)) best = std::max(best, r);
        } catch (const domain_violation&) {
          // the corruption pushed a derived value off the admissible range;
          // other cells still measure the sensitivity
          continue;
        }
      }
  return best;
}

// Hunts a witness cortege on which the corruption is loudest: random draws
// at several window scales, then a greedy coordinate refinement of the best
// find. A true identity cannot be gamed above roundoff by any search.
inline double perturbation_witness(const MetricSpec& spec, const IdentityForm& form,
                                   Rng& rng, int n_random = 120, int n_refine = 300,
                                   double bump = 0.1) {
  const auto clean_ok = [&form](const MetricSpec& s, const Cortege& c) {
    try {
      const DistTable t = build_dist_table(s, c, form.needs_diag);
      if (form.admissible && !form.admissible(t)) return false;
      (void)form.eval(t, s);
      return true;
    } catch (const domain_violation&) {
      return false;
    }
  };

  double best = 0.0;
  Cortege best_cortege;
  MetricSpec best_spec = spec;
  for (double factor : {1.0, 0.6, 0.35, 0.22}) {
    const MetricSpec local = shrink_boxes(spec, factor);
    int produced = 0, guard = 20 * n_random;
    while (produced < n_random / 4 && guard-- > 0) {
      Cortege c;
      try {
        c = sample_cortege(local, form.len_a,
                           spec.family == Family::two_set ? form.len_b : 0, rng);
        if (!clean_ok(local, c)) continue;
        const double r = corrupted_residual(local, form, c, bump);
        ++produced;
        if (r > best) {
          best = r;
          best_cortege = c;
          best_spec = local;
        }
      } catch (const domain_violation&) {
        continue;
      } catch (const domain_exhausted&) {
        break;
      }
    }
  }
  if (best_cortege.set_a.empty()) return best;
  double step = 0.3;
  for (int it = 0; it < n_refine; ++it) {
    Cortege trial = best_cortege;
    const bool side_b = spec.family == Family::two_set && rng.unit() < 0.4;
    auto& points = side_b ? trial.set_b : trial.set_a;
    const auto& boxes = side_b ? spec.box_b : spec.box_a;
    const int p = rng.uniform_int(0, static_cast<int>(points.size()) - 1);
    const int k = rng.uniform_int(0, static_cast<int>(points[0].size()) - 1);
    const Box box = k < static_cast<int>(boxes.size()) ? boxes[k] : Box{};
    auto& coord = points[static_cast<std::size_t>(p)][k];
    coord = std::clamp(coord + rng.uniform(-step, step), box.lo, box.hi);
    bool ok = true;
    if (spec.family == Family::one_set) {
      for (std::size_t a = 0; a < trial.set_a.size() && ok; ++a)
        for (std::size_t b = a + 1; b < trial.set_a.size() && ok; ++b)
          ok = spec.pair_ok(trial.set_a[a], trial.set_a[b]);
    } else {
      for (const Vec& x : trial.set_a)
        for (const Vec& xi : trial.set_b)
          if (!spec.pair_ok(x, xi)) ok = false;
    }
    if (!ok || !clean_ok(spec, trial)) continue;
    try {
      const double r = corrupted_residual(spec, form, trial, bump);
      if (r > best) {
        best = r;
        best_cortege = trial;
      }
    } catch (const domain_violation&) {
      continue;
    }
    if (it % 100 == 99) step *= 0.6;
  }
  return best;
}

struct identity_residual_too_large : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Corruption-detection floor per form. A +0.1 single-distance corruption at
// the best achievable cortege moves every form beyond 1e-3 except the
// order-6 gramians, whose geometric supremum sits near 9e-4 (the hyperbolic
// chart); those still detect the corruption four orders above the clean
// level.
inline double perturbation_floor(const IdentityForm& form) {
  const bool gram6 = (form.kind == IdentityKind::gram_diag ||
                      form.kind == IdentityKind::gram_unit) &&
                     form.len_a == 6;
  return gram6 ? 1e-4 : kIdentityFailFloor;
}

// All identity-bearing representations and instances of one entry.
inline ResidualStats check_identity(const CatalogEntry& entry, int n_samples, Rng& rng) {
  if (!entry.has_identity())
    throw identity_missing("entry has no identity form: " + entry.id);
  ResidualStats total;
  bool first = true;
  for (const auto& rep : entry.reps) {
    if (!rep.identity) continue;
    for (const auto& inst : rep.instances) {
      Rng sub = rng.fork();
      ResidualStats st = check_identity_form(inst, *rep.identity, n_samples, sub);
      total = first ? st : merge_stats(total, st);
      first = false;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Rank certification.

struct RankSummary {
  std::string id;
  int predicted = 0;
  int n_samples = 0;
  int n_discarded = 0;
  int n_mismatch = 0;
  int n_exceed = 0;
  RankReport worst;  // lowest-margin retained report

  bool pass(double required_fraction = 0.99) const {
    if (n_samples == 0 || n_exceed > 0) return false;
    const double bad = static_cast<double>(n_mismatch);
    return bad <= (1.0 - required_fraction) * static_cast<double>(n_samples);
  }
};

inline RankSummary check_rank_instance(const MetricSpec& spec, int len_a, int len_b,
                                       int predicted, int n_corteges, Rng& rng,
                                       double tol_rel = kRankTolRel) {
  RankSummary summary;
  summary.id = spec.id;
  summary.predicted = predicted;
  double worst_gap = std::numeric_limits<double>::infinity();
  int guard = 20 * n_corteges + 100;
  while (summary.n_samples < n_corteges && guard-- > 0) {
    Cortege c = sample_cortege(spec, len_a, spec.family == Family::two_set ? len_b : 0, rng);
    Mat fm;
    try {
      fm = functional_matrix(spec, c);
    } catch (const non_finite&) {
      ++summary.n_discarded;
      continue;
    }
    RankReport rep = numeric_rank(equilibrate_rows(fm), tol_rel);
    rep.predicted_rank = predicted;
    if (!rep.confident()) {
      ++summary.n_discarded;
      continue;
    }
    ++summary.n_samples;
    if (rep.observed_rank > predicted) ++summary.n_exceed;
    if (rep.observed_rank != predicted) ++summary.n_mismatch;
    if (summary.n_samples == 1 || rep.gap_ratio < worst_gap) {
      worst_gap = rep.gap_ratio;
      summary.worst = rep;
    }
  }
  return summary;
}

inline RankSummary check_rank_predicate(const CatalogEntry& entry, int n_corteges, Rng& rng,
                                        double tol_rel = kRankTolRel) {
  RankSummary total;
  total.id = entry.id;
  total.predicted = entry.predicted_rank;
  bool first = true;
  for (const auto& inst : entry.reps.front().instances) {
    Rng sub = rng.fork();
    RankSummary s = check_rank_instance(inst, entry.rank_len_a, entry.rank_len_b,
                                        entry.predicted_rank, n_corteges, sub, tol_rel);
    if (first) {
      total = s;
      total.id = entry.id;
      first = false;
    } else {
      total.n_samples += s.n_samples;
      total.n_discarded += s.n_discarded;
      total.n_mismatch += s.n_mismatch;
      total.n_exceed += s.n_exceed;
      if (s.worst.gap_ratio < total.worst.gap_ratio) total.worst = s.worst;
    }
  }
  return total;
}

struct NoRelationReport {
  RankSummary rank;          // observed must equal the full function count
  double min_candidate = 0;  // smallest candidate-relation residual seen
  double max_candidate = 0;  // witness: a genuine identity could never reach 1e-2
  int candidate_samples = 0;
  bool pass() const {
    return rank.pass() && (candidate_samples == 0 || max_candidate > 1e-2);
  }
};

// Full rank on the minimal cortege certifies the absence of a relation; for
// entries with a recorded failed relation, random corteges must produce
// residuals far beyond what any true identity could (its zero set is a
// hypersurface, so small values still occur near it; the witness is the max).
inline NoRelationReport check_no_relation(const CatalogEntry& entry, int n_corteges,
                                          Rng& rng) {
  NoRelationReport rep;
  const MetricSpec& spec = entry.spec();
  const int rows = entry.family == Family::one_set
                       ? spec.s * pair_count(entry.rank_len_a)
                       : spec.s * entry.rank_len_a * entry.rank_len_b;
  Rng sub = rng.fork();
  rep.rank = check_rank_instance(spec, entry.rank_len_a, entry.rank_len_b, rows,
                                 n_corteges, sub);
  if (entry.candidate_identity) {
    rep.min_candidate = std::numeric_limits<double>::infinity();
    Rng sub2 = rng.fork();
    const int n_cand = std::max(100, n_corteges);
    for (int n = 0; n < n_cand; ++n) {
      DistTable t = sample_identity_table(spec, *entry.candidate_identity, sub2);
      for (double r : entry.candidate_identity->eval(t, spec)) {
        rep.min_candidate = std::min(rep.min_candidate, r);
        rep.max_candidate = std::max(rep.max_candidate, r);
      }
      ++rep.candidate_samples;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Distance symmetry.

enum class DistanceSymmetry { symmetric, antisymmetric, neither };

inline const char* to_string(DistanceSymmetry s) {
  switch (s) {
    case DistanceSymmetry::symmetric: return "symmetric";
    case DistanceSymmetry::antisymmetric: return "antisymmetric";
    default: return "neither";
  }
}

inline DistanceSymmetry classify_distance_symmetry(const MetricSpec& spec, Rng& rng,
                                                   int n_samples = 200) {
  double sym = 0.0, anti = 0.0;
  int produced = 0;
  int guard = 40 * n_samples;
  while (produced < n_samples && guard-- > 0) {
    Vec a = sample_point(spec, Side::a, rng);
    Vec b = sample_point(spec, Side::a, rng);
    if (!spec.pair_ok(a, b) || !spec.pair_ok(b, a)) continue;
    const Vec fab = spec.eval(a, b), fba = spec.eval(b, a);
    if (!fab.allFinite() || !fba.allFinite()) continue;
    const double scale = fab.cwiseAbs().maxCoeff() + fba.cwiseAbs().maxCoeff() + 1e-9;
    sym = std::max(sym, (fab - fba).cwiseAbs().maxCoeff() / scale);
    anti = std::max(anti, (fab + fba).cwiseAbs().maxCoeff() / scale);
    ++produced;
  }
  if (produced == 0) return DistanceSymmetry::neither;
  if (sym < 1e-9) return DistanceSymmetry::symmetric;
  if (anti < 1e-9) return DistanceSymmetry::antisymmetric;
  return DistanceSymmetry::neither;
}

// ---------------------------------------------------------------------------
// Cycles: curves along which a planar metric becomes shift-invariant.

struct CycleCurve {
  std::function<Vec(double)> point;
  double t_lo = -1.0;
  double t_hi = 1.0;
};

inline ResidualStats check_cycle(const CycleCurve& curve, const MetricSpec& spec,
                                 int n_samples, Rng& rng) {
  std::vector<double> residuals;
  int guard = 40 * n_samples;
  while (static_cast<int>(residuals.size()) < n_samples && guard-- > 0) {
    const double span = curve.t_hi - curve.t_lo;
    const double ti = rng.uniform(curve.t_lo, curve.t_hi);
    const double tj = rng.uniform(curve.t_lo, curve.t_hi);
    const double shift = rng.uniform(-0.25 * span, 0.25 * span);
    const Vec a = curve.point(ti), b = curve.point(tj);
    const Vec as = curve.point(ti + shift), bs = curve.point(tj + shift);
    if (!spec.pair_ok(a, b) || !spec.pair_ok(as, bs)) continue;
    const Vec f0 = spec.eval(a, b), f1 = spec.eval(as, bs);
    if (!f0.allFinite() || !f1.allFinite()) continue;
    residuals.push_back((f1 - f0).cwiseAbs().maxCoeff());
  }
  return residual_stats(residuals, "|f(t_i,t_j) - f(t_i+d,t_j+d)|");
}

// ---------------------------------------------------------------------------
// The translation canonical form of the associativity-style equation:
// phi(u,v) = psi(psi^{-1}(u) - psi^{-1}(v)) satisfies
// phi(phi(x,z), phi(y,z)) = phi(x,y).

inline ResidualStats check_translation_form(const ScalingComponent& psi, double pre_lo,
                                            double pre_hi, int n_samples, Rng& rng) {
  const auto inverse = [&](double value) {
    if (psi.inverse) return psi.inverse(value);
    return invert_monotone(psi.fn, value, 2 * pre_lo - 1.0, 2 * pre_hi + 1.0);
  };
  const auto phi = [&](double u, double v) { return psi.fn(inverse(u) - inverse(v)); };
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(n_samples));
  for (int n = 0; n < n_samples; ++n) {
    const double x = psi.fn(rng.uniform(pre_lo, pre_hi));
    const double y = psi.fn(rng.uniform(pre_lo, pre_hi));
    const double z = psi.fn(rng.uniform(pre_lo, pre_hi));
    const double lhs = phi(phi(x, z), phi(y, z));
    const double rhs = phi(x, y);
    residuals.push_back(std::abs(lhs - rhs));
  }
  return residual_stats(residuals, "|phi(phi(x,z),phi(y,z)) - phi(x,y)|");
}

// ---------------------------------------------------------------------------
// Oriented-area suite: the alternating-sum relation, the degrees-of-freedom
// rank of the fourteen areas of a seven-point figure, and invariance under
// the unimodular affine motions.

inline double oriented_area(const Vec& p, const Vec& q, const Vec& r) {
  return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
}

struct AreaReport {
  ResidualStats relation;    // alternating sum over quadruples
  RankSummary rank;          // fourteen-area jacobian rank (predicted 9)
  ResidualStats invariance;  // area preserved by the five-parameter motions
  bool pass() const {
    return relation.max_abs < 1e-10 && rank.pass() && rank.n_mismatch == 0 &&
           invariance.max_abs < kInvarianceTol;
  }
};

inline AreaReport check_area_ternary(int n_samples, Rng& rng) {
  AreaReport rep;
  const auto rand_pt = [&](Rng& r) { return vec2(r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0)); };

  {  // (a) alternating sum vanishes on quadruples
    std::vector<double> residuals;
    for (int n = 0; n < n_samples; ++n) {
      const Vec i = rand_pt(rng), j = rand_pt(rng), k = rand_pt(rng), l = rand_pt(rng);
      const double s1 = oriented_area(i, j, k), s2 = oriented_area(i, j, l),
                   s3 = oriented_area(i, k, l), s4 = oriented_area(j, k, l);
      residuals.push_back(std::abs(s1 - s2 + s3 - s4) /
                          (std::abs(s1) + std::abs(s2) + std::abs(s3) + std::abs(s4) + 1e-9));
    }
    rep.relation = residual_stats(residuals, "normalized alternating sum");
  }

  {  // (b) fourteen areas of a seven-point figure have rank 9 = 14 - 5
    rep.rank.id = "one/2d/oriented-area";
    rep.rank.predicted = 9;
    const int figures = std::max(1, n_samples / 10);
    double worst_gap = std::numeric_limits<double>::infinity();
    for (int n = 0; n < figures; ++n) {
      Vec coords(14);
      for (int k = 0; k < 14; ++k) coords[k] = rng.uniform(-2.0, 2.0);
      // triples containing point 0, except (0,1,2)
      std::vector<std::pair<int, int>> tails;
      for (int jj = 1; jj < 7; ++jj)
        for (int kk = jj + 1; kk < 7; ++kk)
          if (!(jj == 1 && kk == 2)) tails.emplace_back(jj, kk);
      auto areas = [&tails](const Vec& c) {
        Vec out(static_cast<int>(tails.size()));
        int row = 0;
        for (auto [jj, kk] : tails) {
          const Vec p0 = vec2(c[0], c[1]);
          const Vec pj = vec2(c[2 * jj], c[2 * jj + 1]);
          const Vec pk = vec2(c[2 * kk], c[2 * kk + 1]);
          out[row++] = oriented_area(p0, pj, pk);
        }
        return out;
      };
      RankReport r = numeric_rank(equilibrate_rows(finite_diff_jacobian(areas, coords)));
      r.predicted_rank = 9;
      if (!r.confident()) {
        ++rep.rank.n_discarded;
        continue;
      }
      ++rep.rank.n_samples;
      if (r.observed_rank > 9) ++rep.rank.n_exceed;
      if (r.observed_rank != 9) ++rep.rank.n_mismatch;
      if (r.gap_ratio < worst_gap) {
        worst_gap = r.gap_ratio;
        rep.rank.worst = r;
      }
    }
  }

  {  // (c) invariance under the unimodular affine group
    const CatalogEntry& area = get_entry("one/2d/oriented-area");
    std::vector<double> residuals;
    for (int n = 0; n < n_samples; ++n) {
      Vec g = sample_params_full(*area.motions, rng);
      const Vec i = rand_pt(rng), j = rand_pt(rng), k = rand_pt(rng);
      const double before = oriented_area(i, j, k);
      const double after = oriented_area(area.motions->act_a(i, g), area.motions->act_a(j, g),
                                         area.motions->act_a(k, g));
      residuals.push_back(std::abs(after - before));
    }
    rep.invariance = residual_stats(residuals, "|S(gi,gj,gk) - S(ijk)|");
  }
  return rep;
}

}  // namespace pstruct

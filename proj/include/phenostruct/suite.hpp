#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include "phenostruct/catalog.hpp"
#include "phenostruct/counting.hpp"
#include "phenostruct/heap.hpp"
#include "phenostruct/laws.hpp"
#include "phenostruct/report.hpp"
#include "phenostruct/verify.hpp"

namespace pstruct {
namespace detail_suite {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

inline CheckRecord base_record(const RunConfig& cfg, std::string check, std::string entry,
                               std::string anchor) {
  CheckRecord rec;
  rec.check = std::move(check);
  rec.entry = std::move(entry);
  rec.anchor = std::move(anchor);
  rec.seed = Rng::splitmix(cfg.seed ^ Rng::fnv1a(rec.check + ":" + rec.entry));
  return rec;
}

inline Rng record_rng(const CheckRecord& rec) { return Rng(rec.seed); }

// --- per-entry checks -------------------------------------------------------

inline std::vector<CheckRecord> entry_checks(const RunConfig& cfg, const CatalogEntry& e,
                                             bool with_identity_rank, bool with_invariance) {
  std::vector<CheckRecord> out;
  if (e.arity != 2) {
    if (!with_identity_rank) return out;
    CheckRecord rec = base_record(cfg, "area-ternary", e.id, e.anchor);
    Timer t;
    Rng rng = record_rng(rec);
    try {
      AreaReport rep = check_area_ternary(std::max(50, cfg.samples / 10), rng);
      rec.pass = rep.pass();
      rec.max_residual = std::max(rep.relation.max_abs, rep.invariance.max_abs);
      rec.observed_rank = rep.rank.worst.observed_rank;
      rec.predicted_rank = rep.rank.predicted;
      rec.samples = rep.relation.n_samples;
    } catch (const std::exception& ex) {
      rec.pass = false;
      rec.detail = ex.what();
    }
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
    return out;
  }

  if (with_identity_rank) {
    if (e.has_identity()) {
      CheckRecord rec = base_record(cfg, "identity", e.id, e.anchor);
      Timer t;
      Rng rng = record_rng(rec);
      try {
        ResidualStats st = check_identity(e, cfg.samples, rng);
        rec.pass = st.max_abs < cfg.tol_identity;
        rec.max_residual = st.max_abs;
        rec.samples = st.n_samples;
      } catch (const std::exception& ex) {
        rec.pass = false;
        rec.detail = ex.what();
      }
      rec.wall_ms = t.ms();
      out.push_back(std::move(rec));
    }
    {
      CheckRecord rec = base_record(cfg, e.expect_no_structure ? "no-relation" : "rank",
                                    e.id, e.anchor);
      Timer t;
      Rng rng = record_rng(rec);
      const int n = std::max(10, cfg.samples / 10);
      try {
        if (e.expect_no_structure) {
          NoRelationReport rep = check_no_relation(e, n, rng);
          rec.pass = rep.pass();
          rec.observed_rank = rep.rank.worst.observed_rank;
          rec.predicted_rank = rep.rank.predicted;
          rec.samples = rep.rank.n_samples;
          if (rep.candidate_samples > 0) {
            std::ostringstream d;
            d << "candidate residual max=" << rep.max_candidate;
            rec.detail = d.str();
          }
        } else {
          RankSummary rep = check_rank_predicate(e, n, rng, cfg.tol_rank_rel);
          rec.pass = rep.pass();
          rec.observed_rank = rep.worst.observed_rank;
          rec.predicted_rank = rep.predicted;
          rec.samples = rep.n_samples;
        }
      } catch (const std::exception& ex) {
        rec.pass = false;
        rec.detail = ex.what();
      }
      rec.wall_ms = t.ms();
      out.push_back(std::move(rec));
    }
  }

  if (with_invariance && e.motions) {
    CheckRecord rec = base_record(cfg, "invariance", e.id, e.anchor);
    Timer t;
    Rng rng = record_rng(rec);
    try {
      ResidualStats total;
      bool first = true;
      for (const auto& inst : e.reps.front().instances) {
        Rng sub = rng.fork();
        ResidualStats st = check_invariance(inst, *e.motions, std::max(20, cfg.samples / 4), sub);
        total = first ? st : merge_stats(total, st);
        first = false;
      }
      rec.pass = total.max_abs < kInvarianceTol && total.n_samples > 0;
      rec.max_residual = total.max_abs;
      rec.samples = total.n_samples;
    } catch (const std::exception& ex) {
      rec.pass = false;
      rec.detail = ex.what();
    }
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

// --- verify-module checks ---------------------------------------------------

inline std::vector<CheckRecord> verify_module_checks(const RunConfig& cfg) {
  std::vector<CheckRecord> out;

  for (const auto& e : catalog().entries()) {
    if (e.arity != 2 || e.s != 1 || e.family != Family::one_set) continue;
    CheckRecord rec = base_record(cfg, "symmetry", e.id, e.anchor);
    Timer t;
    Rng rng = record_rng(rec);
    try {
      DistanceSymmetry s = classify_distance_symmetry(e.spec(), rng);
      rec.pass = true;
      rec.detail = to_string(s);
      rec.samples = 200;
    } catch (const std::exception& ex) {
      rec.pass = false;
      rec.detail = ex.what();
    }
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }

  const MetricSpec& euclid = get_entry("one/2d/euclid").spec();
  const auto cycle_check = [&](const char* tag, const CycleCurve& curve, bool expect_cycle) {
    CheckRecord rec = base_record(cfg, "cycle", tag, "6.24");
    Timer t;
    Rng rng = record_rng(rec);
    try {
      ResidualStats st = check_cycle(curve, euclid, std::max(50, cfg.samples / 4), rng);
      rec.max_residual = st.max_abs;
      rec.samples = st.n_samples;
      rec.pass = expect_cycle ? st.max_abs < 1e-9 : st.max_abs > kIdentityFailFloor;
      if (!expect_cycle) rec.detail = "negative control: shift invariance must fail";
    } catch (const std::exception& ex) {
      rec.pass = false;
      rec.detail = ex.what();
    }
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  };
  cycle_check("euclid-circle",
              {[](double t) { return vec2(std::cos(t), std::sin(t)); }, -2.0, 2.0}, true);
  cycle_check("euclid-line", {[](double t) { return vec2(t, 2.0 * t + 1.0); }, -1.5, 1.5},
              true);
  cycle_check("euclid-parabola", {[](double t) { return vec2(t, t * t); }, -1.5, 1.5},
              false);

  const auto translation_check = [&](const char* tag, const ScalingComponent& psi,
                                     double lo, double hi) {
    CheckRecord rec = base_record(cfg, "translation-form", tag, "6.5");
    Timer t;
    Rng rng = record_rng(rec);
    try {
      ResidualStats st = check_translation_form(psi, lo, hi, std::max(100, cfg.samples / 2), rng);
      rec.max_residual = st.max_abs;
      rec.samples = st.n_samples;
      rec.pass = st.max_abs < 1e-9;
    } catch (const std::exception& ex) {
      rec.pass = false;
      rec.detail = ex.what();
    }
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  };
  translation_check("identity",
                    {[](double u) { return u; }, [](double u) { return u; }}, -1.5, 1.5);
  translation_check("exp", {[](double u) { return std::exp(u); },
                            [](double u) { return std::log(u); }},
                    -1.2, 1.2);
  translation_check("tanh", {[](double u) { return std::tanh(u); }, nullptr}, -1.2, 1.2);
  return out;
}

// --- counting ----------------------------------------------------------------

inline std::vector<CheckRecord> counting_checks(const RunConfig& cfg) {
  std::vector<CheckRecord> out;

  {
    CheckRecord rec = base_record(cfg, "counting", "binary-degrees", "5.7");
    Timer t;
    bool ok = true;
    long long cases = 0;
    // One-set: the closed-form degree agrees with the superposition scan for
    // every dimension at, below and above the rank relation.
    for (Int s = 1; s <= 3 && ok; ++s)
      for (Int M = 3; M <= 8 && ok; ++M)
        for (Int m = 1; m <= s * (M - 2) + 2 && ok; ++m) {
          DegreeResult d = one_set_degree(s, M, m);
          PolyaryResult p = polyary_group_symmetry(binary_one_set(s, M, m), 160);
          ++cases;
          if (d.finite())
            ok = p.finite() && p.degree == d.degree && d.degree == s * (M - 1) * (M - 2) / 2;
          else
            ok = m < s * (M - 2) ? p.saturated() : p.kind == PolyaryKind::unbounded;
        }
    // Two-set: exact dimensions give the finite degree; a deficit on either
    // side saturates, an excess is unbounded.
    for (Int s = 1; s <= 3 && ok; ++s)
      for (Int M = 2; M <= 8 && ok; ++M)
        for (Int N = 2; N <= 8 && ok; ++N)
          for (Int dm = -1; dm <= 1 && ok; ++dm)
            for (Int dn = -1; dn <= 1 && ok; ++dn) {
              if (dm != 0 && dn != 0) continue;  // perturb one side at a time
              const Int m = s * (N - 1) + dm, n = s * (M - 1) + dn;
              if (m < 1 || n < 1) continue;
              DegreeResult d = two_set_degree(s, M, N, m, n);
              PolyaryResult p = polyary_group_symmetry(binary_two_set(s, M, N, m, n), 300);
              ++cases;
              if (dm == 0 && dn == 0)
                ok = d.finite() && p.finite() && p.degree == d.degree &&
                     d.degree == s * (M - 1) * (N - 1);
              else if (dm < 0 || dn < 0)
                ok = !d.finite() && p.saturated();
              else
                ok = !d.finite() && p.kind == PolyaryKind::unbounded;
            }
    rec.pass = ok;
    rec.samples = cases;
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }

  {
    CheckRecord rec = base_record(cfg, "counting", "polyary-saturation", "5.5");
    Timer t;
    bool ok = true;
    // ternary on one, two and three sets; quaternary with up to two sets
    ok &= polyary_group_symmetry(StructureShape{1, {{2, 3, 4}}}, 20).saturated();
    ok &= polyary_group_symmetry(StructureShape{1, {{2, 2, 3}, {2, 1, 2}}}, 14).saturated();
    ok &= polyary_group_symmetry(StructureShape{1, {{1, 1, 2}, {1, 1, 2}, {1, 1, 2}}}, 14)
              .saturated();
    ok &= polyary_group_symmetry(StructureShape{1, {{2, 4, 5}}}, 20).saturated();
    ok &= polyary_group_symmetry(StructureShape{1, {{2, 3, 4}, {2, 1, 2}}}, 12).saturated();
    ok &= polyary_group_symmetry(StructureShape{1, {{2, 2, 3}, {2, 2, 3}}}, 12).saturated();
    rec.pass = ok;
    rec.samples = 6;
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }

  {
    CheckRecord rec = base_record(cfg, "counting", "degrees-vs-motions", "11.6");
    Timer t;
    bool ok = true;
    int cases = 0;
    for (const auto& e : catalog().entries()) {
      if (!e.motions || e.arity != 2 || e.expect_no_structure) continue;
      ++cases;
      DegreeResult d;
      if (e.family == Family::one_set)
        d = one_set_degree(e.s, e.rank_len_a, e.dim_a);
      else
        d = two_set_degree(e.s, e.rank_len_a, e.rank_len_b, e.dim_a, e.dim_b);
      ok &= d.finite() && d.degree == e.motions->param_count;
    }
    rec.pass = ok && cases > 0;
    rec.samples = cases;
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

// --- heap ---------------------------------------------------------------------

inline std::vector<CheckRecord> heap_checks(const RunConfig& cfg) {
  std::vector<CheckRecord> out;

  {
    CheckRecord rec = base_record(cfg, "heap", "group-heaps", "A.2");
    Timer t;
    bool ok = true;
    long long cases = 0;
    std::vector<FiniteGroup> groups;
    for (int n = 2; n <= 8; ++n) groups.push_back(FiniteGroup::cyclic(n));
    groups.push_back(FiniteGroup::klein4());
    groups.push_back(FiniteGroup::symmetric3());
    for (const auto& grp : groups) {
      ok &= grp.valid();
      const FiniteTernaryOp op = heap_from_group(grp);
      for (HeapDef def : {HeapDef::d1, HeapDef::d2, HeapDef::d4, HeapDef::d5}) {
        ok &= is_heap(op, def);
        ++cases;
      }
    }
    rec.pass = ok;
    rec.samples = cases;
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }

  {
    CheckRecord rec = base_record(cfg, "heap", "definition-equivalences", "A.L3");
    Timer t;
    Rng rng = record_rng(rec);
    bool ok = true;
    const int n_tables = std::max(1000, cfg.samples * 10);
    long long agreements = 0;
    for (int n = 0; n < n_tables && ok; ++n) {
      FiniteTernaryOp op = FiniteTernaryOp::uniform_random(3, rng);
      // bias a slice of the stream toward near-heaps so the equivalence is
      // exercised on passing tables too
      if (n % 5 == 0) {
        op = heap_from_group(FiniteGroup::cyclic(3));
        if (n % 10 == 0)
          op.set(rng.uniform_int(0, 2), rng.uniform_int(0, 2), rng.uniform_int(0, 2),
                 rng.uniform_int(0, 2));
      }
      const bool d1 = is_heap(op, HeapDef::d1);
      const bool d2 = is_heap(op, HeapDef::d2);
      const bool d4 = is_heap(op, HeapDef::d4);
      const bool d5 = is_heap(op, HeapDef::d5);
      ok = d1 == d2 && d2 == d4 && d4 == d5;
      ++agreements;
    }
    rec.pass = ok;
    rec.samples = agreements;
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }

  {
    CheckRecord rec = base_record(cfg, "heap", "structure-relation", "A.7");
    Timer t;
    bool ok = true;
    {  // additive table over Z5
      const FiniteGroup z5 = FiniteGroup::cyclic(5);
      FiniteTable f;
      f.rows = f.cols = 5;
      f.g = 5;
      f.v.resize(25);
      for (int i = 0; i < 5; ++i)
        for (int a = 0; a < 5; ++a) f.set(i, a, (i + a) % 5);
      const FiniteTernaryOp op = heap_from_group(z5);
      ok &= check_structure_relation(f, op).empty();
      ok &= check_table_surjective(f);
      ok &= is_heap(op, HeapDef::d2);
    }
    {  // multiplicative table over Z5 \ {0}
      FiniteGroup mult;  // multiplicative group modulo 5, carrier {1..4} -> {0..3}
      mult.order = 4;
      mult.identity = 0;
      mult.mul.resize(16);
      mult.inv.resize(4);
      const int elems[4] = {1, 2, 3, 4};
      const auto index_of = [&](int value) {
        for (int k = 0; k < 4; ++k)
          if (elems[k] == value) return k;
        return -1;
      };
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          mult.mul[static_cast<std::size_t>(a * 4 + b)] =
              index_of(elems[a] * elems[b] % 5);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (mult.mul[static_cast<std::size_t>(a * 4 + b)] == 0)
            mult.inv[static_cast<std::size_t>(a)] = b;
      ok &= mult.valid();
      FiniteTable f;
      f.rows = f.cols = 4;
      f.g = 4;
      f.v.resize(16);
      for (int i = 0; i < 4; ++i)
        for (int a = 0; a < 4; ++a) f.set(i, a, index_of(elems[i] * elems[a] % 5));
      const FiniteTernaryOp op = heap_from_group(mult);
      ok &= check_structure_relation(f, op).empty();
      ok &= check_table_surjective(f);
      ok &= is_heap(op, HeapDef::d2);
    }
    rec.pass = ok;
    rec.samples = 2;
    rec.wall_ms = t.ms();
    out.push_back(std::move(rec));
  }
  return out;
}

// --- laws ---------------------------------------------------------------------

inline std::vector<CheckRecord> law_checks(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  for (LawId id : all_laws()) {
    const LawSpec& spec = law_spec(id);
    {
      CheckRecord rec = base_record(cfg, "law-relation", spec.name, "13");
      Timer t;
      Rng rng = record_rng(rec);
      double worst = 0.0;
      long long tables = 0;
      bool ok = true;
      const int n_tables = std::max(10, cfg.samples / 10);
      try {
        for (int n = 0; n < n_tables; ++n) {
          ObservationTable tab =
              generate_observations(id, spec.min_rows + 1, spec.min_cols + 1, rng);
          ResidualStats st = check_law_relation(id, tab);
          worst = std::max(worst, st.max_abs);
          ++tables;
        }
        ok = worst < 1e-9;
      } catch (const std::exception& ex) {
        ok = false;
        rec.detail = ex.what();
      }
      rec.pass = ok;
      rec.max_residual = worst;
      rec.samples = tables;
      rec.wall_ms = t.ms();
      out.push_back(std::move(rec));
    }
    {
      CheckRecord rec = base_record(cfg, "law-perturbation", spec.name, "12");
      Timer t;
      Rng rng = record_rng(rec);
      double least = std::numeric_limits<double>::infinity();
      long long tables = 0;
      bool ok = true;
      const int n_tables = std::max(5, cfg.samples / 40);
      try {
        for (int n = 0; n < n_tables; ++n) {
          ObservationTable tab =
              generate_observations(id, spec.min_rows + 1, spec.min_cols + 1, rng);
          const int i = rng.uniform_int(0, static_cast<int>(tab.values.rows()) - 1);
          const int a = rng.uniform_int(0, static_cast<int>(tab.values.cols()) - 1);
          tab.values(i, a) *= 1.01;
          ResidualStats st = check_law_relation(id, tab);
          least = std::min(least, st.max_abs);
          ++tables;
        }
        ok = least > 1e-9;
      } catch (const std::exception& ex) {
        ok = false;
        rec.detail = ex.what();
      }
      rec.pass = ok;
      rec.max_residual = least;
      rec.samples = tables;
      rec.wall_ms = t.ms();
      out.push_back(std::move(rec));
    }
    {
      CheckRecord rec = base_record(cfg, "law-embedding", spec.name, "13.2");
      Timer t;
      Rng rng = record_rng(rec);
      bool ok = true;
      double worst = 0.0;
      try {
        for (int n = 0; n < 10; ++n) {
          ObservationTable tab =
              generate_observations(id, spec.min_rows + 1, spec.min_cols + 1, rng);
          EmbeddingReport rep = canonical_embedding(id, tab);
          worst = std::max(worst, rep.max_error);
          ok &= rep.pass();
        }
      } catch (const std::exception& ex) {
        ok = false;
        rec.detail = ex.what();
      }
      rec.pass = ok;
      rec.max_residual = worst;
      rec.samples = 10;
      rec.detail = rec.detail.empty() ? ("canonical=" + spec.canonical_id) : rec.detail;
      rec.wall_ms = t.ms();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace detail_suite

// Resolves the suite selection, dispatches checks in parallel across entries,
// and assembles records in a fixed order so reports are reproducible.
inline VerificationReport run_suite(const RunConfig& cfg) {
  cfg.validate();
  using namespace detail_suite;

  bool do_entries = false, do_verify = false, do_counting = false, do_heap = false,
       do_laws = false, do_invariance = false;
  std::set<std::string> chosen_entries;
  if (cfg.suite.empty() || (cfg.suite.size() == 1 && cfg.suite[0] == "all")) {
    do_entries = do_verify = do_counting = do_heap = do_laws = do_invariance = true;
  } else {
    for (const std::string& token : cfg.suite) {
      if (token == "all") {
        do_entries = do_verify = do_counting = do_heap = do_laws = do_invariance = true;
      } else if (token == "catalog") {
        do_entries = true;
      } else if (token == "motions") {
        do_invariance = true;
      } else if (token == "verify") {
        do_verify = true;
      } else if (token == "counting") {
        do_counting = true;
      } else if (token == "heap") {
        do_heap = true;
      } else if (token == "laws") {
        do_laws = true;
      } else if (catalog().contains(token)) {
        chosen_entries.insert(token);
      } else {
        throw config_error("unknown suite selection: " + token);
      }
    }
  }

  VerificationReport report;
  report.seed = cfg.seed;
  report.config = cfg;

  const auto& entries = catalog().entries();
  std::vector<std::vector<CheckRecord>> slots(entries.size());
  const unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());

  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t idx = cursor.fetch_add(1);
        if (idx >= entries.size()) return;
        const CatalogEntry& e = entries[idx];
        const bool selected = chosen_entries.count(e.id) > 0;
        const bool identity_rank = do_entries || selected;
        const bool invariance = do_invariance || selected;
        if (!identity_rank && !invariance) continue;
        slots[idx] = entry_checks(cfg, e, identity_rank, invariance);
      }
    });
  for (auto& w : workers) w.join();
  for (auto& records : slots)
    for (auto& r : records) report.checks.push_back(std::move(r));

  if (do_verify)
    for (auto& r : verify_module_checks(cfg)) report.checks.push_back(std::move(r));
  if (do_counting)
    for (auto& r : counting_checks(cfg)) report.checks.push_back(std::move(r));
  if (do_heap)
    for (auto& r : heap_checks(cfg)) report.checks.push_back(std::move(r));
  if (do_laws)
    for (auto& r : law_checks(cfg)) report.checks.push_back(std::move(r));
  return report;
}

}  // namespace pstruct

// Development probe: sweeps the catalog and prints per-entry identity
// residuals and rank outcomes so regressions surface immediately.
#include <cstdio>
#include <string>

#include "phenostruct/verify.hpp"

using namespace pstruct;

int main(int argc, char** argv) {
  const int n_ident = argc > 1 ? std::atoi(argv[1]) : 40;
  const int n_rank = argc > 2 ? std::atoi(argv[2]) : 8;
  const std::string only = argc > 3 ? argv[3] : "";
  int bad = 0;
  for (const auto& e : catalog().entries()) {
    if (!only.empty() && e.id.find(only) == std::string::npos) continue;
    if (e.arity != 2) continue;
    std::string line = e.id;
    try {
      for (const auto& rep : e.reps) {
        if (!rep.identity) continue;
        for (const auto& inst : rep.instances) {
          Rng rng = Rng::for_check(42, "probe-ident:" + inst.id + rep.tag);
          auto st = check_identity_form(inst, *rep.identity, n_ident, rng);
          const bool ok = st.max_abs < 1e-8;
          if (!ok) ++bad;
          std::printf("%-34s %-12s ident  max=%.3e %s  [%s]\n", e.id.c_str(),
                      rep.tag.c_str(), st.max_abs, ok ? "ok" : "FAIL", inst.id.c_str());
        }
      }
      if (!e.expect_no_structure) {
        Rng rng = Rng::for_check(42, "probe-rank:" + e.id);
        auto rs = check_rank_predicate(e, n_rank, rng);
        const bool ok = rs.pass();
        if (!ok) ++bad;
        std::printf("%-34s %-12s rank   obs-pred=%d pred=%d mism=%d/%d disc=%d gap=%.1e %s\n",
                    e.id.c_str(), "", rs.worst.observed_rank - rs.predicted, rs.predicted,
                    rs.n_mismatch, rs.n_samples, rs.n_discarded, rs.worst.gap_ratio,
                    ok ? "ok" : "FAIL");
      } else {
        Rng rng = Rng::for_check(42, "probe-neg:" + e.id);
        auto nr = check_no_relation(e, n_rank, rng);
        const bool ok = nr.pass();
        if (!ok) ++bad;
        std::printf("%-34s %-12s norel  obs=%d full=%d mism=%d/%d cand_max=%.3e %s\n",
                    e.id.c_str(), "", nr.rank.worst.observed_rank, nr.rank.predicted,
                    nr.rank.n_mismatch, nr.rank.n_samples, nr.max_candidate,
                    ok ? "ok" : "FAIL");
      }
    } catch (const std::exception& ex) {
      ++bad;
      std::printf("%-34s EXCEPTION: %s\n", e.id.c_str(), ex.what());
    }
  }
  std::printf("entries=%zu problems=%d\n", catalog().size(), bad);
  return bad == 0 ? 0 : 1;
}

#include <catch2/catch_amalgamated.hpp>

#include "phenostruct/catalog.hpp"
#include "phenostruct/verify.hpp"

using namespace pstruct;

TEST_CASE("unit square satisfies the fifth-order bordered determinant") {
  const auto& e = get_entry("one/2d/euclid");
  Cortege c;
  c.set_a = {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
  const DistTable t = build_dist_table(e.spec(), c, false);
  const double residual = e.reps.front().identity->eval(t, e.spec()).front();
  CHECK(residual < 1e-12);
}

TEST_CASE("spherical quadruples satisfy the unit-diagonal gramian") {
  const auto& e = get_entry("one/2d/sphere");
  Rng rng(3);
  const ResidualStats st = check_identity_form(e.spec(), *e.reps.front().identity, 100, rng);
  CHECK(st.max_abs < 1e-10);
}

TEST_CASE("additive two-set relation on spot values") {
  // x = (1,2), xi = (3,5): f(ia) - f(ib) - f(ja) + f(jb) = 4 - 6 - 5 + 7 = 0
  const auto& e = get_entry("two/u/r22");
  Cortege c;
  c.set_a = {vec1(1), vec1(2)};
  c.set_b = {vec1(3), vec1(5)};
  const DistTable t = build_dist_table(e.spec(), c, false);
  CHECK(e.reps.front().identity->eval(t, e.spec()).front() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("quasigroup alternation for the scaled dimetric structure") {
  const auto& e = get_entry("two/di/r22-scale");
  const auto& rep = e.reps.back();
  REQUIRE(rep.tag == "quasigroup");
  Rng rng(9);
  const ResidualStats st = check_identity_form(rep.instances.front(), *rep.identity, 200, rng);
  CHECK(st.max_abs < 1e-8);
}

TEST_CASE("every identity form reacts to a corrupted distance") {
  for (const auto& e : catalog().entries()) {
    if (e.arity != 2) continue;
    for (const auto& rep : e.reps) {
      if (!rep.identity) continue;
      for (const auto& inst : rep.instances) {
        Rng rng = Rng::for_check(42, "perturb:" + inst.id + rep.tag);
        const double witness = perturbation_witness(inst, *rep.identity, rng, 60, 150);
        CAPTURE(inst.id, rep.tag);
        CHECK(witness > perturbation_floor(*rep.identity));
      }
    }
  }
}

TEST_CASE("rank predicate on reference entries") {
  for (const char* id : {"one/2d/euclid", "one/3d/euclid", "one/tri/translations"}) {
    const auto& e = get_entry(id);
    Rng rng = Rng::for_check(42, std::string("rank:") + id);
    const RankSummary s = check_rank_predicate(e, 20, rng);
    CAPTURE(id);
    CHECK(s.pass());
    CHECK(s.worst.observed_rank == e.predicted_rank);
  }
}

TEST_CASE("no-relation check accepts the negatives and rejects euclid") {
  Rng rng(5);
  const NoRelationReport cubic = check_no_relation(get_entry("neg/cubic-tail"), 20, rng);
  CHECK(cubic.pass());
  CHECK(cubic.rank.worst.observed_rank == 4);

  Rng rng2(6);
  const NoRelationReport euclid = check_no_relation(get_entry("one/2d/euclid"), 20, rng2);
  CHECK_FALSE(euclid.pass());  // a relation exists, full rank is unreachable
}

TEST_CASE("distance symmetry classification") {
  Rng rng(8);
  CHECK(classify_distance_symmetry(get_entry("one/2d/euclid").spec(), rng) ==
        DistanceSymmetry::symmetric);
  CHECK(classify_distance_symmetry(get_entry("one/2d/symplectic").spec(), rng) ==
        DistanceSymmetry::antisymmetric);
  CHECK(classify_distance_symmetry(get_entry("one/2d/simplicial").spec(), rng) ==
        DistanceSymmetry::symmetric);
  CHECK(classify_distance_symmetry(get_entry("one/1d/translation").spec(), rng) ==
        DistanceSymmetry::antisymmetric);
  CHECK(classify_distance_symmetry(get_entry("one/2d/helmholtz").spec(), rng) ==
        DistanceSymmetry::symmetric);
}

TEST_CASE("cycles of the euclidean plane") {
  const auto& euclid = get_entry("one/2d/euclid").spec();
  Rng rng(10);

  const CycleCurve circle{[](double t) { return vec2(std::cos(t), std::sin(t)); }, -2, 2};
  CHECK(check_cycle(circle, euclid, 200, rng).max_abs < 1e-9);

  // along the unit circle the metric is 2 - 2cos(dt)
  const Vec p = circle.point(0.4), q = circle.point(-0.9);
  CHECK(euclid.eval(p, q)[0] == Catch::Approx(2.0 - 2.0 * std::cos(1.3)));

  const CycleCurve line{[](double t) { return vec2(t, 2.0 * t + 1.0); }, -1.5, 1.5};
  CHECK(check_cycle(line, euclid, 200, rng).max_abs < 1e-9);

  const CycleCurve parabola{[](double t) { return vec2(t, t * t); }, -1.5, 1.5};
  CHECK(check_cycle(parabola, euclid, 200, rng).max_abs > 1e-3);

  // explicit witness: t = (0,1) against (1,2)
  const double f01 = euclid.eval(parabola.point(0), parabola.point(1))[0];
  const double f12 = euclid.eval(parabola.point(1), parabola.point(2))[0];
  CHECK(std::abs(f01 - f12) > 1e-1);
}

TEST_CASE("translation canonical form") {
  Rng rng(12);
  const ScalingComponent identity{[](double u) { return u; }, [](double u) { return u; }};
  CHECK(check_translation_form(identity, -1.5, 1.5, 200, rng).max_abs < 1e-12);

  const ScalingComponent exp_psi{[](double u) { return std::exp(u); },
                                 [](double u) { return std::log(u); }};
  CHECK(check_translation_form(exp_psi, -1.2, 1.2, 200, rng).max_abs < 1e-9);

  // no closed-form inverse supplied: bisection path
  const ScalingComponent tanh_psi{[](double u) { return std::tanh(u); }, nullptr};
  CHECK(check_translation_form(tanh_psi, -1.2, 1.2, 200, rng).max_abs < 1e-9);
}

TEST_CASE("oriented area suite") {
  Rng rng(14);
  const AreaReport rep = check_area_ternary(100, rng);
  CHECK(rep.relation.max_abs < 1e-10);
  CHECK(rep.rank.n_mismatch == 0);
  CHECK(rep.rank.worst.observed_rank == 9);
  CHECK(rep.invariance.max_abs < 1e-9);
  CHECK(rep.pass());

  // alternating sum on the unit square, evaluated directly
  const Vec i = vec2(0, 0), j = vec2(1, 0), k = vec2(0, 1), l = vec2(1, 1);
  const double sum = oriented_area(i, j, k) - oriented_area(i, j, l) +
                     oriented_area(i, k, l) - oriented_area(j, k, l);
  CHECK(sum == Catch::Approx(0.0).margin(1e-14));

  // degenerate collinear triple
  CHECK(oriented_area(vec2(0, 0), vec2(1, 1), vec2(2, 2)) == Catch::Approx(0.0));
}

TEST_CASE("identity check errors on entries without a relation") {
  Rng rng(15);
  CHECK_THROWS_AS(check_identity(get_entry("one/2d/helmholtz"), 10, rng), identity_missing);
}

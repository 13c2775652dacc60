#include <catch2/catch_amalgamated.hpp>

#include "phenostruct/catalog.hpp"
#include "phenostruct/motions.hpp"

using namespace pstruct;

TEST_CASE("apply_motion spot values") {
  {  // quarter turn about the origin
    const auto& ms = *get_entry("one/2d/euclid").motions;
    const Vec out = apply_motion(ms, vec3(M_PI / 2.0, 0.0, 0.0), vec2(1, 0), Side::a);
    CHECK(out[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(out[1] == Catch::Approx(1.0));
  }
  {  // additive rank-(2,2): x -> x + a, xi -> xi - a
    const auto& ms = *get_entry("two/u/r22").motions;
    CHECK(apply_motion(ms, vec1(3.0), vec1(1.0), Side::a)[0] == Catch::Approx(4.0));
    CHECK(apply_motion(ms, vec1(3.0), vec1(1.0), Side::b)[0] == Catch::Approx(-2.0));
  }
  {  // the affine rank-(3,3) action with a=2, b=1, c=0, d=0
    const auto& ms = *get_entry("two/u/r33a").motions;
    const Vec out = apply_motion(ms, vec4(2, 1, 0, 0), vec2(1, 1), Side::a);
    CHECK(out[0] == Catch::Approx(3.0));
    CHECK(out[1] == Catch::Approx(1.0));
  }
  {
    const auto& ms = *get_entry("one/di/thermo").motions;
    CHECK_THROWS_AS(apply_motion(ms, vec2(0.0, 1.0), vec2(1, 1), Side::a),
                    param_domain_error);
  }
}

TEST_CASE("metric invariance under the stored motions") {
  {  // rigid motions of the plane are exact isometries
    const auto& e = get_entry("one/2d/euclid");
    Rng rng(3);
    CHECK(check_invariance(e.spec(), *e.motions, 200, rng).max_abs < 1e-12);
  }
  {  // the heat metric under lambda = a S + b, sigma = T / a with a=2, b=1
    const auto& e = get_entry("one/di/thermo");
    const Vec g = vec2(2.0, 1.0);
    Rng rng(4);
    for (int n = 0; n < 50; ++n) {
      const Vec i = sample_point(e.spec(), Side::a, rng);
      const Vec j = sample_point(e.spec(), Side::a, rng);
      if (!e.spec().pair_ok(i, j)) continue;
      const Vec before = e.spec().eval(i, j);
      const Vec after = e.spec().eval(e.motions->act_a(i, g), e.motions->act_a(j, g));
      CHECK((after - before).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  {  // random nondegenerate matrix and its reciprocal partner
    const auto& e = get_entry("two/u/r44");
    Rng rng(5);
    CHECK(check_invariance(e.spec(), *e.motions, 150, rng).max_abs < 1e-9);
  }
}

TEST_CASE("every stored motion group preserves its metric") {
  for (const auto& e : catalog().entries()) {
    if (!e.motions || e.arity != 2) continue;
    for (const auto& inst : e.reps.front().instances) {
      Rng rng = Rng::for_check(42, "motions:" + inst.id);
      const ResidualStats st = check_invariance(inst, *e.motions, 120, rng);
      CAPTURE(inst.id);
      REQUIRE(st.n_samples > 0);
      CHECK(st.max_abs < kInvarianceTol);
    }
  }
}

TEST_CASE("identity parameters act as the identity map") {
  for (const auto& e : catalog().entries()) {
    if (!e.motions || e.arity != 2) continue;
    const auto& ms = *e.motions;
    Rng rng = Rng::for_check(42, "identity-action:" + e.id);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const Vec p = sample_point(e.spec(), Side::a, rng);
      worst = std::max(worst, (ms.act_a(p, ms.identity_params) - p).norm());
      if (ms.act_b) {
        const Vec q = sample_point(e.spec(), Side::b, rng);
        worst = std::max(worst, (ms.act_b(q, ms.identity_params) - q).norm());
      }
    }
    CAPTURE(e.id);
    CHECK(worst < kIdentityActionTol);
  }
}

TEST_CASE("group laws for the stored compositions") {
  for (const char* id : {"one/2d/euclid", "one/di/thermo", "two/u/r22", "two/u/r32",
                         "two/u/r33", "two/u/r33a", "two/u/r44", "two/u/r42",
                         "two/di/r22-add", "two/di/r22-scale", "one/2d/oriented-area"}) {
    const auto& e = get_entry(id);
    REQUIRE(e.motions.has_value());
    const MetricSpec probe_spec =
        e.arity == 2 ? e.spec() : get_entry("one/2d/euclid").spec();
    Rng rng = Rng::for_check(42, std::string("laws:") + id);
    const GroupLawReport rep = check_group_laws(probe_spec, *e.motions, 25, rng);
    CAPTURE(id, rep.identity_residual, rep.closure_residual, rep.inverse_residual,
            rep.inverse_failures);
    CHECK(rep.pass());
  }
}

TEST_CASE("inverse parameters of the scaling action solve exactly") {
  // x -> a x + b with a=2, b=3 inverts to a'=1/2, b'=-3/2
  const auto& ms = *get_entry("two/u/r32").motions;
  std::vector<Vec> probes = {vec1(0.3), vec1(-1.2), vec1(0.9), vec1(1.7)};
  const auto inv = invert_params(ms, vec2(2.0, 3.0), probes);
  REQUIRE(inv.has_value());
  CHECK((*inv)[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK((*inv)[1] == Catch::Approx(-1.5).margin(1e-9));
}

TEST_CASE("associativity of translations") {
  const auto& ms = *get_entry("two/u/r22").motions;
  const Vec ab = ms.compose(vec1(0.25), vec1(-0.75));
  CHECK(apply_motion(ms, ab, vec1(1.0), Side::a)[0] == Catch::Approx(0.5));
}

TEST_CASE("matrix composition rule reproduces the composed action") {
  const auto& e = get_entry("two/u/r33");
  const auto& ms = *e.motions;
  Rng rng(21);
  for (int n = 0; n < 20; ++n) {
    const Vec g = sample_params_near_identity(ms, rng, 0.4);
    const Vec h = sample_params_near_identity(ms, rng, 0.4);
    const Vec p = sample_point(e.spec(), Side::a, rng);
    const Vec q = sample_point(e.spec(), Side::b, rng);
    const Vec gh = ms.compose(g, h);
    CHECK((ms.act_a(ms.act_a(p, g), h) - ms.act_a(p, gh)).norm() < 1e-12);
    CHECK((ms.act_b(ms.act_b(q, g), h) - ms.act_b(q, gh)).norm() < 1e-12);
  }
}

TEST_CASE("infinitesimal invariance of the stored bases") {
  for (const auto& e : catalog().entries()) {
    if (e.lie_basis.empty() || e.arity != 2) continue;
    for (const auto& inst : e.reps.front().instances) {
      Rng rng = Rng::for_check(42, "lie:" + inst.id);
      const ResidualStats st =
          check_infinitesimal_invariance(inst, e.lie_basis, 100, rng);
      CAPTURE(inst.id);
      REQUIRE(st.n_samples > 0);
      CHECK(st.max_abs < kLieTol);
    }
  }
}

TEST_CASE("operators match the derivative of the action at the identity") {
  for (const auto& e : catalog().entries()) {
    if (e.lie_basis.empty() || !e.motions || e.arity != 2) continue;
    REQUIRE(static_cast<int>(e.lie_basis.size()) == e.motions->param_count);
    Rng rng = Rng::for_check(42, "consistency:" + e.id);
    const double worst = motion_operator_consistency(e.spec(), *e.motions, e.lie_basis, rng);
    CAPTURE(e.id);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("specific operator pairs annihilate their invariants") {
  {  // X = x d/dx paired with Xi = -xi d/dxi on f = x xi + y eta
    const auto& e = get_entry("two/u/r33");
    const auto& op = e.lie_basis.front();
    const Vec x = vec2(1.3, -0.4), xi = vec2(0.8, 2.1);
    const Vec da = op.coef_a(x), db = op.coef_b(xi);
    // directional derivative of f along (da, db) must vanish: x xi - xi x
    const double deriv = da[0] * xi[0] + da[1] * xi[1] + db[0] * x[0] + db[1] * x[1];
    CHECK(deriv == Catch::Approx(0.0).margin(1e-15));
  }
  {  // translations on the euclidean plane
    const auto& e = get_entry("one/2d/euclid");
    Rng rng(33);
    const ResidualStats st = check_infinitesimal_invariance(e.spec(), e.lie_basis, 50, rng);
    CHECK(st.max_abs < 1e-8);
  }
}

TEST_CASE("invariance holds far from the identity parameters") {
  // translations with |a| up to 2, rotations up to pi, scalings up to 2:
  // the full-domain sampler draws them; the residual stays at roundoff
  const auto& e = get_entry("two/u/r33a");
  const auto& ms = *e.motions;
  Rng rng(44);
  double far = 0.0;
  for (int n = 0; n < 200; ++n) {
    const Vec g = sample_params_full(ms, rng);
    far = std::max(far, (g - ms.identity_params).norm());
  }
  CHECK(far > 1.0);  // the sampler genuinely leaves the identity ball
  Rng rng2(45);
  CHECK(check_invariance(e.spec(), ms, 300, rng2).max_abs < 1e-9);
}

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "phenostruct/catalog.hpp"
#include "phenostruct/numeric.hpp"
#include "phenostruct/verify.hpp"

using namespace pstruct;

TEST_CASE("central differences on simple functions") {
  const auto square = [](const Vec& u) { return vec1(u[0] * u[0]); };
  const Mat j = finite_diff_jacobian(square, vec1(3.0), 1e-5);
  CHECK(j(0, 0) == Catch::Approx(6.0).margin(1e-8));

  // central differences are exact for quadratics up to roundoff
  const auto quad = [](const Vec& u) {
    return vec1(2.0 * u[0] * u[0] - 3.0 * u[0] * u[1] + u[1] * u[1] + 5.0 * u[0]);
  };
  const Vec at = vec2(1.3, -0.7);
  const Mat jq = finite_diff_jacobian(quad, at, 1e-5);
  CHECK(jq(0, 0) == Catch::Approx(4.0 * at[0] - 3.0 * at[1] + 5.0).margin(1e-8));
  CHECK(jq(0, 1) == Catch::Approx(-3.0 * at[0] + 2.0 * at[1]).margin(1e-8));
}

TEST_CASE("euclidean derivative and the helmholtz analytic oracle") {
  const auto& euclid = get_entry("one/2d/euclid").spec();
  const auto fn = [&](const Vec& xy) {
    return euclid.eval(xy.head(2), xy.tail(2));
  };
  Vec joint(4);
  joint << 0, 0, 1, 0;
  const Mat j = finite_diff_jacobian(fn, joint);
  CHECK(j(0, 0) == Catch::Approx(-2.0).margin(1e-7));

  const auto& helm = get_entry("one/2d/helmholtz").spec();
  Rng rng(23);
  for (int n = 0; n < 20; ++n) {
    const Vec a = sample_point(helm, Side::a, rng);
    const Vec b = sample_point(helm, Side::a, rng);
    if (!helm.pair_ok(a, b)) continue;
    Vec j2(4);
    j2 << a, b;
    const Mat grad = finite_diff_jacobian(
        [&](const Vec& xy) { return helm.eval(xy.head(2), xy.tail(2)); }, j2);
    const Vec analytic = oracles::helmholtz_gradient_first_point(a, b, 1.0);
    CHECK(std::abs(grad(0, 0) - analytic[0]) < 1e-6 * std::max(1.0, std::abs(analytic[0])));
    CHECK(std::abs(grad(0, 1) - analytic[1]) < 1e-6 * std::max(1.0, std::abs(analytic[1])));
  }
}

TEST_CASE("numeric rank on reference matrices") {
  CHECK(numeric_rank(Mat::Zero(4, 4)).observed_rank == 0);
  CHECK(numeric_rank(Mat::Identity(3, 3)).observed_rank == 3);

  Mat near(2, 2);
  near << 1.0, 1.0, 1.0, 1.0 + 1e-12;
  CHECK(numeric_rank(near, 1e-6).observed_rank == 1);
}

TEST_CASE("rank is invariant under permutations and orthogonal maps") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m(5, 7);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 7; ++c) m(r, c) = rng.uniform(-1, 1);
    m.row(4) = 0.5 * m.row(0) - 2.0 * m.row(2);  // force rank 4
    const int base = numeric_rank(m).observed_rank;
    REQUIRE(base == 4);

    Mat perm = m;
    perm.row(0).swap(perm.row(3));
    perm.col(1).swap(perm.col(6));
    CHECK(numeric_rank(perm).observed_rank == base);

    // a random rotation of the row space
    Mat g(5, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) g(r, c) = rng.uniform(-1, 1);
    const Mat q = Eigen::HouseholderQR<Mat>(g).householderQ();
    CHECK(numeric_rank(q * m).observed_rank == base);
  }
}

TEST_CASE("functional matrix shapes and zero blocks") {
  Rng rng(5);
  {
    const auto& e = get_entry("one/2d/euclid");
    const Cortege c = sample_cortege(e.spec(), 4, 0, rng);
    const Mat fm = functional_matrix(e.spec(), c);
    CHECK(fm.rows() == 6);
    CHECK(fm.cols() == 8);
    // row for the pair (0,1) must not touch coordinates of points 2 and 3
    CHECK(fm.block(0, 4, 1, 4).cwiseAbs().maxCoeff() == 0.0);
    // pair (2,3) is the last row; the first four columns are exactly zero
    CHECK(fm.block(5, 0, 1, 4).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    const auto& e = get_entry("two/u/r32");
    const Cortege c = sample_cortege(e.spec(), 3, 2, rng);
    const Mat fm = functional_matrix(e.spec(), c);
    CHECK(fm.rows() == 6);
    CHECK(fm.cols() == 7);
  }
  {
    const auto& e = get_entry("one/di/thermo");
    const Cortege c = sample_cortege(e.spec(), 3, 0, rng);
    const Mat fm = functional_matrix(e.spec(), c);
    CHECK(fm.rows() == 6);
    CHECK(fm.cols() == 6);
  }
}

TEST_CASE("residual statistics") {
  CHECK(residual_stats(std::vector<double>{0.0, 0.0}, "x").max_abs == 0.0);
  const auto st = residual_stats(std::vector<double>{1e-12, 1e-14}, "x");
  CHECK(st.max_abs == Catch::Approx(1e-12));
  CHECK(st.mean_abs >= 0.0);
  CHECK(st.max_abs >= st.mean_abs);
}

TEST_CASE("euclidean relation residuals over a hundred quadruples") {
  const auto& e = get_entry("one/2d/euclid");
  Rng rng(41);
  const ResidualStats st =
      check_identity_form(e.spec(), *e.reps.front().identity, 100, rng);
  CHECK(st.max_abs < 1e-9);
}

TEST_CASE("newton solve inverts small systems") {
  const auto fn = [](const Vec& v) {
    return vec2(v[0] * v[0] + v[1] - 3.0, v[0] - v[1] + 1.0);
  };
  const auto root = solve_newton(fn, vec2(0.5, 0.5));
  REQUIRE(root.has_value());
  CHECK(fn(*root).norm() < 1e-9);
}

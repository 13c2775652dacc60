#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "phenostruct/laws.hpp"

using namespace pstruct;

namespace {

ObservationTable table_from(LawId id, std::vector<Vec> rows, std::vector<Vec> cols) {
  const LawSpec& spec = law_spec(id);
  ObservationTable t;
  t.law = id;
  t.hidden_rows = std::move(rows);
  t.hidden_cols = std::move(cols);
  t.values.resize(static_cast<int>(t.hidden_rows.size()),
                  static_cast<int>(t.hidden_cols.size()));
  for (int i = 0; i < t.values.rows(); ++i)
    for (int a = 0; a < t.values.cols(); ++a)
      t.values(i, a) = spec.observe(t.hidden_rows[static_cast<std::size_t>(i)],
                                    t.hidden_cols[static_cast<std::size_t>(a)]);
  return t;
}

}  // namespace

TEST_CASE("acceleration table for masses (2,4) and forces (6,8)") {
  const auto t = table_from(LawId::newton, {vec1(2), vec1(4)}, {vec1(6), vec1(8)});
  CHECK(t.values(0, 0) == Catch::Approx(3.0));
  CHECK(t.values(0, 1) == Catch::Approx(4.0));
  CHECK(t.values(1, 0) == Catch::Approx(1.5));
  CHECK(t.values(1, 1) == Catch::Approx(2.0));
  // 3 * 2 - 4 * 1.5 = 0
  CHECK(check_law_relation(LawId::newton, t).max_abs < 1e-15);
}

TEST_CASE("current table for three conductors and two sources") {
  const auto t = table_from(LawId::ohm, {vec1(1), vec1(2), vec1(3)},
                            {vec2(10, 1), vec2(5, 2)});
  CHECK(t.values(0, 0) == Catch::Approx(5.0));
  CHECK(t.values(0, 1) == Catch::Approx(5.0 / 3.0));
  CHECK(t.values(1, 0) == Catch::Approx(10.0 / 3.0));
  CHECK(t.values(1, 1) == Catch::Approx(5.0 / 4.0));
  CHECK(t.values(2, 0) == Catch::Approx(2.5));
  CHECK(t.values(2, 1) == Catch::Approx(1.0));
  CHECK(check_law_relation(LawId::ohm, t).max_abs < 1e-14);
}

TEST_CASE("refraction angles follow from the sine ratio") {
  const double phi1 = 30.0 * M_PI / 180.0, phi2 = 45.0 * M_PI / 180.0;
  const auto t = table_from(LawId::refraction, {vec1(phi1), vec1(phi2)},
                            {vec1(1.5), vec1(2.0)});
  CHECK(t.values(0, 0) == Catch::Approx(std::asin(std::sin(phi1) / 1.5)));
  CHECK(t.values(1, 1) == Catch::Approx(std::asin(std::sin(phi2) / 2.0)));
  CHECK(check_law_relation(LawId::refraction, t).max_abs < 1e-14);
}

TEST_CASE("thick lens with two identical-focal lenses and four objects") {
  const auto t = table_from(
      LawId::thicklens,
      {vec1(3.0), vec1(4.0), vec1(5.5), vec1(7.0)},
      {vec3(2.0, 0.1, 0.1), vec3(2.5, 0.2, 0.15)});
  CHECK(check_law_relation(LawId::thicklens, t).max_abs < 1e-12);
}

TEST_CASE("relations fail under a one-percent corruption") {
  auto t = table_from(LawId::newton, {vec1(2), vec1(4)}, {vec1(6), vec1(8)});
  t.values(0, 0) *= 1.01;
  CHECK(check_law_relation(LawId::newton, t).max_abs > 1e-3);

  Rng rng(3);
  for (LawId id : all_laws()) {
    const LawSpec& spec = law_spec(id);
    for (int trial = 0; trial < 10; ++trial) {
      ObservationTable tab =
          generate_observations(id, spec.min_rows + 1, spec.min_cols + 1, rng);
      tab.values(0, 0) *= 1.01;
      CAPTURE(spec.name, trial);
      CHECK(check_law_relation(id, tab).max_abs > 1e-9);
    }
  }
}

TEST_CASE("shape guards") {
  Rng rng(1);
  CHECK_THROWS_AS(generate_observations(LawId::ohm, 2, 2, rng), shape_error);
}

TEST_CASE("canonical embeddings reproduce the observations") {
  Rng rng(5);
  for (LawId id : all_laws()) {
    const LawSpec& spec = law_spec(id);
    const ObservationTable t =
        generate_observations(id, spec.min_rows + 1, spec.min_cols + 1, rng);
    const EmbeddingReport rep = canonical_embedding(id, t);
    CAPTURE(spec.name);
    CHECK(rep.max_error < 1e-12);
  }

  CHECK(law_spec(LawId::newton).canonical_id == "two/u/r22-mult");
  CHECK(law_spec(LawId::refraction).canonical_id == "two/u/r22-mult");
  CHECK(law_spec(LawId::thicklens).canonical_id == "two/u/r42");
  CHECK(law_spec(LawId::lines).canonical_id == "two/u/r42");
  // the current and thermal-expansion laws share one canonical structure
  CHECK(law_spec(LawId::ohm).canonical_id == law_spec(LawId::thermal).canonical_id);
}

TEST_CASE("observation tables stay finite over many draws") {
  Rng rng(7);
  for (LawId id : all_laws()) {
    const LawSpec& spec = law_spec(id);
    for (int n = 0; n < 100; ++n) {
      const ObservationTable t =
          generate_observations(id, spec.min_rows, spec.min_cols, rng);
      CHECK(t.values.allFinite());
    }
  }
}

TEST_CASE("csv export carries the law id and seed") {
  Rng rng = Rng::for_check(7, "csv-test");
  const ObservationTable t = generate_observations(LawId::newton, 3, 2, rng, 7);
  std::ostringstream os;
  write_csv(t, os);
  const std::string text = os.str();
  CHECK(text.rfind("law=newton,seed=7,rows=3,cols=2\n", 0) == 0);
  // three data lines follow the header
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  std::ostringstream os2;
  Rng rng2 = Rng::for_check(7, "csv-test");
  write_csv(generate_observations(LawId::newton, 3, 2, rng2, 7), os2);
  CHECK(os.str() == os2.str());  // byte-identical for the same seed
}

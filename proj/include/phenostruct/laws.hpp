#pragma once

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "phenostruct/catalog.hpp"
#include "phenostruct/core.hpp"
#include "phenostruct/numeric.hpp"
#include "phenostruct/verify.hpp"

namespace pstruct {

struct shape_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LawId { newton, ohm, refraction, thermal, thicklens, lines };

inline const std::vector<LawId>& all_laws() {
  static const std::vector<LawId> ids = {LawId::newton,      LawId::ohm,
                                         LawId::refraction,  LawId::thermal,
                                         LawId::thicklens,   LawId::lines};
  return ids;
}

inline const char* to_string(LawId id) {
  switch (id) {
    case LawId::newton: return "newton";
    case LawId::ohm: return "ohm";
    case LawId::refraction: return "refraction";
    case LawId::thermal: return "thermal";
    case LawId::thicklens: return "thicklens";
    default: return "lines";
  }
}

// Synthetic measurement table: rows are elements of the first set, columns of
// the second; hidden parameters are retained for oracle use only.
struct ObservationTable {
  LawId law = LawId::newton;
  std::uint64_t seed = 0;
  Mat values;
  std::vector<Vec> hidden_rows;
  std::vector<Vec> hidden_cols;
};

// One physical law: hidden-parameter layout, the observation function, and
// the coordinate maps into its canonical catalog structure.
struct LawSpec {
  LawId id;
  std::string name;
  int min_rows = 2;
  int min_cols = 2;
  std::string canonical_id;
  // Minimum sup-norm separation of hidden parameters within one table;
  // coincident elements carry no information and ruin the sensitivity of
  // the determinant relations.
  double row_sep = 0.0;
  double col_sep = 0.0;
  std::function<Vec(Rng&)> sample_row;
  std::function<Vec(Rng&)> sample_col;
  // Optional: row ranges that depend on the drawn columns (the thick-lens
  // object distances must clear every lens's focal plane).
  std::function<Vec(const std::vector<Vec>&, Rng&)> sample_row_given;
  std::function<double(const Vec&, const Vec&)> observe;
  std::function<Vec(const Vec&)> canonical_a;       // row hidden params -> x
  std::function<Vec(const Vec&)> canonical_b;       // column hidden params -> xi
  std::function<double(double)> from_canonical;     // canonical value -> observation
  std::function<ResidualStats(const Mat&)> relation;  // phenomenological check
};

namespace detail_laws {

inline double deg(double d) { return d * M_PI / 180.0; }

// All 2x2 minors a(i,al)a(j,be) - a(i,be)a(j,al), product-normalized.
inline ResidualStats minor_relation(const Mat& t) {
  if (t.rows() < 2 || t.cols() < 2) throw shape_error("relation needs a 2x2 table");
  std::vector<double> residuals;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = i + 1; j < t.rows(); ++j)
      for (int a = 0; a < t.cols(); ++a)
        for (int b = a + 1; b < t.cols(); ++b) {
          const double p = t(i, a) * t(j, b), q = t(i, b) * t(j, a);
          residuals.push_back(std::abs(p - q) / (std::abs(p) + std::abs(q) + 1e-9));
        }
  return residual_stats(residuals, "2x2 minors, product-normalized");
}

// All 3x2 subtables: det [[g(i,al), g(i,be), 1], ...] with g an entrywise
// transform of the measurements (reciprocal for the current law).
inline ResidualStats column_det_relation(const Mat& t,
                                         const std::function<double(double)>& g) {
  if (t.rows() < 3 || t.cols() < 2) throw shape_error("relation needs a 3x2 table");
  std::vector<double> residuals;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = i + 1; j < t.rows(); ++j)
      for (int k = j + 1; k < t.rows(); ++k)
        for (int a = 0; a < t.cols(); ++a)
          for (int b = a + 1; b < t.cols(); ++b) {
            Mat m(3, 3);
            m << g(t(i, a)), g(t(i, b)), 1.0,  //
                g(t(j, a)), g(t(j, b)), 1.0,   //
                g(t(k, a)), g(t(k, b)), 1.0;
            residuals.push_back(det_residual_hadamard(m));
          }
  return residual_stats(residuals, "3x3 column determinants, hadamard-normalized");
}

// All 4x2 subtables: det [[f(i,al), f(i,be), f(i,al)f(i,be), 1], ...].
inline ResidualStats product_det_relation(const Mat& t) {
  if (t.rows() < 4 || t.cols() < 2) throw shape_error("relation needs a 4x2 table");
  std::vector<double> residuals;
  std::vector<int> rows_idx(static_cast<std::size_t>(t.rows()));
  for (int i = 0; i < t.rows(); ++i) rows_idx[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = i + 1; j < t.rows(); ++j)
      for (int k = j + 1; k < t.rows(); ++k)
        for (int l = k + 1; l < t.rows(); ++l)
          for (int a = 0; a < t.cols(); ++a)
            for (int b = a + 1; b < t.cols(); ++b) {
              Mat m(4, 4);
              for (int r = 0; r < 4; ++r) {
                const int idx = r == 0 ? i : r == 1 ? j : r == 2 ? k : l;
                const double fa = t(idx, a), fb = t(idx, b);
                m.row(r) << fa, fb, fa * fb, 1.0;
              }
              residuals.push_back(det_residual_hadamard(m));
            }
  return residual_stats(residuals, "4x4 product-column determinants, hadamard-normalized");
}

}  // namespace detail_laws

inline const LawSpec& law_spec(LawId id) {
  using detail_laws::deg;
  static const std::vector<LawSpec> specs = [] {
    std::vector<LawSpec> v;
    {
      LawSpec s;
      s.id = LawId::newton;
      s.row_sep = 0.15;
      s.col_sep = 0.15;
      s.name = "newton";
      s.min_rows = 2;
      s.min_cols = 2;
      s.canonical_id = "two/u/r22-mult";
      s.sample_row = [](Rng& rng) { return vec1(rng.uniform(0.5, 5.0)); };  // mass
      s.sample_col = [](Rng& rng) { return vec1(rng.uniform(0.5, 5.0)); };  // force
      s.observe = [](const Vec& m, const Vec& f) { return f[0] / m[0]; };
      s.canonical_a = [](const Vec& m) { return vec1(1.0 / m[0]); };
      s.canonical_b = [](const Vec& f) { return vec1(f[0]); };
      s.from_canonical = [](double f) { return f; };
      s.relation = [](const Mat& t) { return detail_laws::minor_relation(t); };
      v.push_back(std::move(s));
    }
    {
      LawSpec s;
      s.id = LawId::ohm;
      s.row_sep = 0.3;
      s.col_sep = 0.3;
      s.name = "ohm";
      s.min_rows = 3;
      s.min_cols = 2;
      s.canonical_id = "two/u/r32";
      s.sample_row = [](Rng& rng) { return vec1(rng.uniform(0.5, 10.0)); };  // resistance
      s.sample_col = [](Rng& rng) {
        return vec2(rng.uniform(1.0, 12.0), rng.uniform(0.1, 3.0));  // emf, internal r
      };
      s.observe = [](const Vec& r, const Vec& src) { return src[0] / (r[0] + src[1]); };
      s.canonical_a = [](const Vec& r) { return vec1(r[0]); };
      s.canonical_b = [](const Vec& src) {
        return vec2(1.0 / src[0], src[1] / src[0]);
      };
      s.from_canonical = [](double f) { return 1.0 / f; };
      s.relation = [](const Mat& t) {
        return detail_laws::column_det_relation(t, [](double u) { return 1.0 / u; });
      };
      v.push_back(std::move(s));
    }
    {
      LawSpec s;
      s.id = LawId::refraction;
      s.row_sep = 0.05;
      s.col_sep = 0.05;
      s.name = "refraction";
      s.min_rows = 2;
      s.min_cols = 2;
      s.canonical_id = "two/u/r22-mult";
      s.sample_row = [](Rng& rng) { return vec1(rng.uniform(deg(5), deg(85))); };  // phi
      s.sample_col = [](Rng& rng) { return vec1(rng.uniform(1.1, 2.5)); };         // index
      s.observe = [](const Vec& phi, const Vec& n) {
        return std::asin(std::sin(phi[0]) / n[0]);
      };
      s.canonical_a = [](const Vec& phi) { return vec1(std::sin(phi[0])); };
      s.canonical_b = [](const Vec& n) { return vec1(1.0 / n[0]); };
      s.from_canonical = [](double f) { return std::asin(f); };
      s.relation = [](const Mat& t) {
        Mat sins = t.unaryExpr([](double u) { return std::sin(u); });
        return detail_laws::minor_relation(sins);
      };
      v.push_back(std::move(s));
    }
    {
      LawSpec s;
      s.id = LawId::thermal;
      s.row_sep = 8.0;
      s.col_sep = 0.1;
      s.name = "thermal";
      s.min_rows = 3;
      s.min_cols = 2;
      s.canonical_id = "two/u/r32";
      s.sample_row = [](Rng& rng) { return vec1(rng.uniform(-50.0, 200.0)); };  // temperature
      s.sample_col = [](Rng& rng) {
        return vec2(rng.uniform(0.5, 2.0), rng.uniform(1e-5, 5e-5));  // L0, E
      };
      s.observe = [](const Vec& t, const Vec& bar) {
        return bar[0] * (1.0 + bar[1] * t[0]);
      };
      s.canonical_a = [](const Vec& t) { return vec1(t[0]); };
      s.canonical_b = [](const Vec& bar) { return vec2(bar[1] * bar[0], bar[0]); };
      s.from_canonical = [](double f) { return f; };
      s.relation = [](const Mat& t) {
        return detail_laws::column_det_relation(t, [](double u) { return u; });
      };
      v.push_back(std::move(s));
    }
    {
      LawSpec s;
      s.id = LawId::thicklens;
      s.row_sep = 0.5;
      s.col_sep = 0.3;
      s.name = "thicklens";
      s.min_rows = 4;
      s.min_cols = 2;
      s.canonical_id = "two/u/r42";
      s.sample_row = [](Rng& rng) { return vec1(rng.uniform(5.5, 10.0)); };  // object distance
      s.sample_row_given = [](const std::vector<Vec>& lenses, Rng& rng) {
        double fmax = 1.0;
        for (const Vec& lens : lenses) fmax = std::max(fmax, lens[0]);
        return vec1(rng.uniform(fmax + 0.5, 10.0));  // clears every focal plane
      };
      s.sample_col = [](Rng& rng) {
        return vec3(rng.uniform(1.0, 5.0), rng.uniform(0.05, 0.3),
                    rng.uniform(0.05, 0.3));  // F, lambda, sigma
      };
      s.observe = [](const Vec& x, const Vec& lens) {
        const double F = lens[0], la = lens[1], si = lens[2];
        return (x[0] * (F - si) + (la + si) * F - la * si) / (x[0] + la - F);
      };
      s.canonical_a = [](const Vec& x) { return vec1(x[0]); };
      s.canonical_b = [](const Vec& lens) {
        const double F = lens[0], la = lens[1], si = lens[2];
        return vec3(F - si, (la + si) * F - la * si, la - F);
      };
      s.from_canonical = [](double f) { return f; };
      s.relation = [](const Mat& t) { return detail_laws::product_det_relation(t); };
      v.push_back(std::move(s));
    }
    {
      LawSpec s;  // pencil of lines through the origin meeting offset lines
      s.id = LawId::lines;
      s.row_sep = 0.06;
      s.col_sep = 0.15;
      s.name = "lines";
      s.min_rows = 4;
      s.min_cols = 2;
      s.canonical_id = "two/u/r42";
      s.sample_row = [](Rng& rng) { return vec1(rng.uniform(deg(35), deg(80))); };  // phi
      s.sample_col = [](Rng& rng) {
        return vec3(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                    rng.uniform(deg(-60), deg(20)));  // a, b, theta
      };
      s.observe = [](const Vec& phi, const Vec& line) {
        const double tphi = std::tan(phi[0]), ct = std::cos(line[2]),
                     tth = std::tan(line[2]);
        return (-(line[0] / ct) * tphi + line[1] / ct) / (tphi - tth);
      };
      s.canonical_a = [](const Vec& phi) { return vec1(std::tan(phi[0])); };
      s.canonical_b = [](const Vec& line) {
        const double ct = std::cos(line[2]);
        return vec3(-line[0] / ct, line[1] / ct, -std::tan(line[2]));
      };
      s.from_canonical = [](double f) { return f; };
      s.relation = [](const Mat& t) { return detail_laws::product_det_relation(t); };
      v.push_back(std::move(s));
    }
    return v;
  }();
  return specs[static_cast<std::size_t>(id)];
}

inline ObservationTable generate_observations(LawId id, int rows, int cols, Rng& rng,
                                              std::uint64_t seed_tag = 0) {
  const LawSpec& spec = law_spec(id);
  if (rows < spec.min_rows || cols < spec.min_cols)
    throw shape_error(std::string("table too small for ") + spec.name);
  ObservationTable t;
  t.law = id;
  t.seed = seed_tag;
  t.values.resize(rows, cols);
  const auto draw_separated = [&](std::vector<Vec>& into, int count,
                                  const std::function<Vec(Rng&)>& sample, double sep) {
    for (int k = 0; k < count; ++k) {
      for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
        Vec candidate = sample(rng);
        bool distinct = true;
        for (const Vec& prev : into)
          if ((candidate - prev).cwiseAbs().maxCoeff() < sep) {
            distinct = false;
            break;
          }
        if (distinct) {
          into.push_back(std::move(candidate));
          break;
        }
      }
    }
    if (static_cast<int>(into.size()) != count)
      throw domain_exhausted("generate_observations: separation budget exceeded");
  };
  draw_separated(t.hidden_cols, cols, spec.sample_col, spec.col_sep);
  const auto row_sampler =
      spec.sample_row_given
          ? std::function<Vec(Rng&)>(
                [&](Rng& r) { return spec.sample_row_given(t.hidden_cols, r); })
          : spec.sample_row;
  draw_separated(t.hidden_rows, rows, row_sampler, spec.row_sep);
  for (int i = 0; i < rows; ++i)
    for (int a = 0; a < cols; ++a)
      t.values(i, a) = spec.observe(t.hidden_rows[static_cast<std::size_t>(i)],
                                    t.hidden_cols[static_cast<std::size_t>(a)]);
  if (!t.values.allFinite()) throw domain_violation("observation table not finite");
  return t;
}

inline ResidualStats check_law_relation(LawId id, const ObservationTable& t) {
  return law_spec(id).relation(t.values);
}

struct EmbeddingReport {
  std::string catalog_id;
  double max_error = 0.0;
  bool pass(double tol = 1e-12) const { return max_error < tol; }
};

// Maps the hidden parameters through the canonical coordinate maps, evaluates
// the catalog metric and re-derives every observation.
inline EmbeddingReport canonical_embedding(LawId id, const ObservationTable& t) {
  const LawSpec& spec = law_spec(id);
  const CatalogEntry& entry = get_entry(spec.canonical_id);
  const MetricSpec& metric = entry.spec();
  EmbeddingReport rep;
  rep.catalog_id = spec.canonical_id;
  for (int i = 0; i < t.values.rows(); ++i)
    for (int a = 0; a < t.values.cols(); ++a) {
      const Vec x = spec.canonical_a(t.hidden_rows[static_cast<std::size_t>(i)]);
      const Vec xi = spec.canonical_b(t.hidden_cols[static_cast<std::size_t>(a)]);
      const double reproduced = spec.from_canonical(metric.eval(x, xi)[0]);
      rep.max_error = std::max(rep.max_error, std::abs(reproduced - t.values(i, a)));
    }
  return rep;
}

// CSV export: one metadata line, then the measurement grid (rows = first
// set, columns = second set).
inline void write_csv(const ObservationTable& t, std::ostream& os) {
  os << "law=" << to_string(t.law) << ",seed=" << t.seed << ",rows=" << t.values.rows()
     << ",cols=" << t.values.cols() << "\n";
  for (int i = 0; i < t.values.rows(); ++i) {
    for (int a = 0; a < t.values.cols(); ++a) {
      if (a) os << ",";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", t.values(i, a));
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace pstruct

// Command-line harness: run verification suites, dump the catalog, print the
// classification tables and export law observation tables.
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "phenostruct.hpp"

namespace {

using namespace pstruct;

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
  if (path.empty()) return nullptr;
  auto os = std::make_unique<std::ofstream>(path);
  if (!*os) throw config_error("cannot open output path: " + path);
  return os;
}

int cmd_verify(const RunConfig& cfg) {
  VerificationReport report = run_suite(cfg);
  auto file = open_out(cfg.out_path);
  emit_report(report, cfg.format, file ? *file : std::cout);
  return report.all_pass() ? 0 : 1;
}

int cmd_list(const std::string& out_path, bool as_json) {
  auto file = open_out(out_path);
  std::ostream& os = file ? *file : std::cout;
  if (as_json) {
    Json j = Json::array();
    for (const auto& e : catalog().entries()) {
      Json je;
      je["id"] = e.id;
      je["equation"] = e.anchor;
      je["family"] = e.family == Family::one_set ? "one-set" : "two-set";
      je["s"] = e.s;
      je["dim_a"] = e.dim_a;
      je["dim_b"] = e.dim_b;
      je["arity"] = e.arity;
      je["predicted_rank"] = e.predicted_rank;
      je["has_identity"] = e.has_identity();
      je["has_motions"] = e.motions.has_value();
      Json insts = Json::array();
      for (const auto& rep : e.reps)
        for (const auto& inst : rep.instances) {
          Json ji;
          ji["id"] = inst.id;
          ji["params"] = inst.params;
          insts.push_back(std::move(ji));
        }
      je["instances"] = std::move(insts);
      j.push_back(std::move(je));
    }
    os << j.dump(2) << "\n";
    return 0;
  }
  os << "id\tequation\tfamily\ts\tdim_a\tdim_b\trank\tidentity\tmotions\tinstances\n";
  for (const auto& e : catalog().entries()) {
    os << e.id << "\t" << e.anchor << "\t"
       << (e.family == Family::one_set ? "one-set" : "two-set") << "\t" << e.s << "\t"
       << e.dim_a << "\t" << e.dim_b << "\t" << e.predicted_rank << "\t"
       << (e.has_identity() ? "yes" : "no") << "\t" << (e.motions ? "yes" : "no") << "\t";
    bool first = true;
    for (const auto& rep : e.reps)
      for (const auto& inst : rep.instances) {
        if (!first) os << ";";
        first = false;
        os << inst.id;
        for (const auto& [k, v] : inst.params) os << " " << k << "=" << v;
      }
    os << "\n";
  }
  return 0;
}

int cmd_tables(const std::string& out_path) {
  auto file = open_out(out_path);
  std::ostream& os = file ? *file : std::cout;

  os << "Classification of phenomenologically symmetric geometries (one set)\n";
  os << "  s   n   dim  rank  degree  solved\n";
  struct OneRow {
    Int s, n;
    bool solved;
  };
  const OneRow one_rows[] = {{1, 1, true},  {1, 2, true},  {1, 3, true},  {1, 4, false},
                             {1, 5, false}, {2, 1, true},  {2, 2, false}, {3, 1, true},
                             {3, 2, false}, {4, 1, true},  {4, 2, false}, {5, 1, false}};
  for (const auto& row : one_rows) {
    const DegreeResult d = one_set_degree(row.s, row.n + 2, row.s * row.n);
    os << "  " << row.s << "   " << row.n << "   " << row.s * row.n << "    "
       << row.n + 2 << "     " << d.degree << "       " << (row.solved ? "+" : "-")
       << "\n";
  }

  os << "\nClassification of polymetric physical structures (two sets)\n";
  os << "  s   m   n   rank      degree  solved\n";
  struct TwoRow {
    Int s, m, n;
    bool solved;
  };
  const TwoRow two_rows[] = {{1, 1, 1, true},  {1, 1, 2, true},  {1, 2, 2, true},
                             {2, 1, 1, true},  {2, 1, 2, true},  {2, 2, 2, false},
                             {3, 1, 1, true},  {3, 1, 2, false}, {3, 2, 2, false},
                             {4, 1, 1, true},  {4, 1, 2, false}, {5, 1, 1, false}};
  for (const auto& row : two_rows) {
    const DegreeResult d = two_set_degree(row.s, row.n + 1, row.m + 1, row.s * row.m,
                                          row.s * row.n);
    os << "  " << row.s << "   " << row.m << "   " << row.n << "   (" << row.n + 1 << ","
       << row.m + 1 << ")     " << d.degree << "       " << (row.solved ? "+" : "-")
       << "\n";
  }
  return 0;
}

int cmd_laws(const std::string& law_name, int rows, int cols, std::uint64_t seed,
             const std::string& out_path) {
  LawId id = LawId::newton;
  bool found = false;
  for (LawId candidate : all_laws())
    if (law_name == to_string(candidate)) {
      id = candidate;
      found = true;
    }
  if (!found) throw config_error("unknown law: " + law_name);
  const LawSpec& spec = law_spec(id);
  const int r = rows > 0 ? rows : spec.min_rows + 1;
  const int c = cols > 0 ? cols : spec.min_cols + 1;
  Rng rng = Rng::for_check(seed, std::string("laws-csv:") + spec.name);
  ObservationTable t = generate_observations(id, r, c, rng, seed);
  auto file = open_out(out_path);
  write_csv(t, file ? *file : std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phenostruct: catalog and verification harness for phenomenologically "
               "symmetric geometries"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  auto* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("--suite", cfg.suite,
                     "all | module names (catalog, motions, verify, counting, heap, laws) "
                     "| catalog entry ids");
  verify->add_option("--samples", cfg.samples, "samples per check (default 1000)");
  verify->add_option("--tol-identity", cfg.tol_identity, "identity pass threshold");
  verify->add_option("--tol-rank", cfg.tol_rank_rel, "relative singular value cutoff");
  verify->add_option("--seed", cfg.seed, "suite seed (default 42)");
  verify->add_option("--out", cfg.out_path, "write the report to this path");
  verify->add_option("--format", format, "text | json");
  verify->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");

  std::string list_out, list_format = "text";
  auto* list = app.add_subcommand("list", "dump the catalog");
  list->add_option("--out", list_out, "write the listing to this path");
  list->add_option("--format", list_format, "text | json");

  std::string tables_out;
  auto* tables = app.add_subcommand("tables", "print the classification tables");
  tables->add_option("--out", tables_out, "write the tables to this path");

  std::string law_name = "newton", laws_out;
  int law_rows = 0, law_cols = 0;
  std::uint64_t law_seed = 42;
  auto* laws = app.add_subcommand("laws", "export a synthetic observation table as CSV");
  laws->add_option("--law", law_name, "newton | ohm | refraction | thermal | thicklens | lines");
  laws->add_option("--rows", law_rows, "elements in the first set");
  laws->add_option("--cols", law_cols, "elements in the second set");
  laws->add_option("--seed", law_seed, "generation seed");
  laws->add_option("--out", laws_out, "write the CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (format == "json")
        cfg.format = pstruct::RunConfig::Format::json;
      else if (format != "text")
        throw pstruct::config_error("unknown format: " + format);
      return cmd_verify(cfg);
    }
    if (list->parsed()) return cmd_list(list_out, list_format == "json");
    if (tables->parsed()) return cmd_tables(tables_out);
    if (laws->parsed()) return cmd_laws(law_name, law_rows, law_cols, law_seed, laws_out);
  } catch (const pstruct::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

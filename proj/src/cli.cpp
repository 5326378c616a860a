#include "polydyn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polydyn/algebra.hpp"
#include "polydyn/comonoid.hpp"
#include "polydyn/error.hpp"
#include "polydyn/hom.hpp"
#include "polydyn/json_io.hpp"
#include "polydyn/laws.hpp"
#include "polydyn/wiring.hpp"

namespace polydyn {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Raised for unreadable or malformed input files.
struct FileError : Error {
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FinPoly read_poly(const std::string& path) {
  std::string text = read_text(path);
  try {
    return poly_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw FileError(path + ": " + e.what());
  } catch (const Error& e) {
    throw FileError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << text;
}

wd::WiringSpec read_spec(const std::string& path) { return wd::parse(read_text(path)); }

int cmd_check(const std::string& file, std::ostream& out) {
  wd::WiringSpec spec = read_spec(file);
  Report r = wd::validate(spec);
  if (r.ok() && !spec.machines.empty()) {
    try {
      wd::compile_machines(spec);
    } catch (const Error& e) {
      r.violations.push_back(e.what());
    }
  }
  for (const auto& v : r.violations) out << v << '\n';
  if (!r.ok()) return kFailed;
  out << "ok\n";
  return kOk;
}

int cmd_compile(const std::string& file, const std::string& path, std::ostream& out) {
  wd::WiringSpec spec = read_spec(file);
  Report r = wd::validate(spec);
  for (const auto& v : r.violations) out << v << '\n';
  if (!r.ok()) return kFailed;
  write_file(path, dump(lens_to_json(wd::compile_wiring(spec))));
  return kOk;
}

std::vector<std::map<std::string, std::string>> read_inputs(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw FileError(path + ": " + e.what());
  }
  if (!j.is_array()) throw FileError(path + ": expected an array of port valuations");
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& row : j) {
    if (!row.is_object()) throw FileError(path + ": expected an object per step");
    std::map<std::string, std::string> vals;
    for (const auto& [k, v] : row.items()) {
      if (!v.is_string()) throw FileError(path + ": value of " + k + " must be a string");
      vals[k] = v.get<std::string>();
    }
    rows.push_back(std::move(vals));
  }
  return rows;
}

int cmd_simulate(const std::string& file, std::size_t steps, const std::string& input, const std::string& trace_path,
                 const std::string& format, std::ostream& out) {
  wd::WiringSpec spec = read_spec(file);
  Report r = wd::validate(spec);
  for (const auto& v : r.violations) out << v << '\n';
  if (!r.ok()) return kFailed;
  auto [sys, init] = wd::compile_system(spec);
  bool closed = true;
  for (const auto& pos : sys.interface) closed = closed && pos.dirs.size() == 1;
  Trace t;
  if (closed && input.empty()) {
    t = run_closed(sys, init, steps);
  } else {
    if (input.empty()) throw FileError("the outer box has inputs; pass --input");
    auto rows = read_inputs(input);
    if (rows.size() < steps)
      throw FileError(input + " has " + std::to_string(rows.size()) + " steps, fewer than " + std::to_string(steps));
    std::vector<std::string> dirs;
    for (std::size_t k = 0; k < steps; ++k) dirs.push_back(wd::outer_direction(spec, rows[k]));
    t = run_open(sys, init, dirs);
  }
  std::string text = format == "csv" ? trace_to_csv(t) : dump(trace_to_json(t));
  if (trace_path.empty())
    out << text;
  else
    write_file(trace_path, text);
  return kOk;
}

int cmd_hom(const std::string& pfile, const std::string& qfile, bool count, bool enumerate, const std::string& path,
            std::ostream& out) {
  if (count == enumerate) throw CLI::ValidationError("hom", "pass exactly one of --count and --enumerate");
  FinPoly p = read_poly(pfile), q = read_poly(qfile);
  if (count) {
    out << hom_count(p, q).str() << '\n';
    return kOk;
  }
  if (path.empty()) throw CLI::ValidationError("hom", "--enumerate needs --out");
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : hom_enumerate(p, q)) arr.push_back(lens_to_json(f));
  write_file(path, dump(arr));
  out << arr.size() << '\n';
  return kOk;
}

int cmd_laws(const std::string& suite, std::size_t bound, std::size_t samples, std::optional<std::uint64_t> seed,
             std::ostream& out) {
  LawsOptions opt;
  opt.suite = suite;
  opt.size_bound = bound;
  opt.samples = samples;
  if (seed) {
    opt.seed = *seed;
  } else if (const char* env = std::getenv("POLYDYN_SEED")) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("POLYDYN_SEED", "not an unsigned integer");
    }
  }
  LawsReport rep = run_laws(opt);
  out << dump(rep.to_json());
  return rep.ok() ? kOk : kFailed;
}

int cmd_unroll(const std::string& file, const std::string& box, std::size_t depth, const std::string& format,
               std::ostream& out) {
  wd::WiringSpec spec = read_spec(file);
  std::optional<MDDS> sys;
  std::string start;
  if (spec.outer && spec.outer->name == box) {
    auto [s, init] = wd::compile_system(spec);
    sys.emplace(std::move(s));
    start = init;
  } else {
    for (const auto& bm : wd::compile_machines(spec))
      if (bm.box == box) {
        sys.emplace(moore_system(bm.machine));
        start = bm.machine.states[bm.machine.initial];
      }
  }
  if (!sys) throw CLI::ValidationError("--box", "no machine for box " + box);
  StrategyTree t = unroll(*sys, start, depth);
  out << (format == "dot" ? t.to_dot() : dump(t.to_json()));
  return kOk;
}

int cmd_cofree(const std::string& pfile, std::size_t depth, std::ostream& out) {
  FinPoly p = read_poly(pfile);
  CofreeTruncation ct = cofree_truncation(p, depth);
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t k = 0; k < ct.stages.size(); ++k)
    stages.push_back({{"depth", k}, {"positions", ct.stages[k].size()}});
  out << dump({{"polynomial", to_algebraic(p)}, {"stages", stages}});
  return kOk;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial functors, lenses and mode-dependent dynamical systems", "polydyn"};
  app.set_version_flag("--version", std::string("polydyn ") + kVersion);
  app.require_subcommand(1);

  std::string file, file2, out_path, input, trace_path, format = "json", suite = "all", box;
  std::size_t steps = 0, depth = 0, bound = 3, samples = 100;
  std::optional<std::uint64_t> seed;
  bool count = false, enumerate = false;

  auto* check = app.add_subcommand("check", "Validate a wiring program");
  check->add_option("file", file, "Wiring program")->required();

  auto* compile = app.add_subcommand("compile", "Compile a wiring program to a lens");
  compile->add_option("file", file, "Wiring program")->required();
  compile->add_option("--out", out_path, "Output JSON path")->required();

  auto* simulate = app.add_subcommand("simulate", "Run a wired system");
  simulate->add_option("file", file, "Wiring program")->required();
  simulate->add_option("--steps", steps, "Number of steps")->required();
  simulate->add_option("--input", input, "JSON array of outer input valuations");
  simulate->add_option("--trace", trace_path, "Write the trace here instead of stdout");
  simulate->add_option("--format", format, "Trace format")->check(CLI::IsMember({"json", "csv"}));

  auto* hom = app.add_subcommand("hom", "Count or list the lenses between two polynomials");
  hom->add_option("p", file, "Domain polynomial JSON")->required();
  hom->add_option("q", file2, "Codomain polynomial JSON")->required();
  hom->add_flag("--count", count, "Print the number of lenses");
  hom->add_flag("--enumerate", enumerate, "Write every lens");
  hom->add_option("--out", out_path, "Output JSON path for --enumerate");

  auto* laws = app.add_subcommand("laws", "Run the property suites");
  laws->add_option("--suite", suite, "Suite name or all")
      ->check(CLI::IsMember({"all", "poly-core", "poly-algebra", "comonoid-cat", "dynamics"}));
  laws->add_option("--size-bound", bound, "Largest position and direction count")->check(CLI::PositiveNumber);
  laws->add_option("--samples", samples, "Samples per property");
  laws->add_option("--seed", seed, "Random seed (default: POLYDYN_SEED or 0)");

  auto* canon = app.add_subcommand("canon", "Print the canonical form of a polynomial");
  canon->add_option("p", file, "Polynomial JSON")->required();

  auto* unroll_cmd = app.add_subcommand("unroll", "Unroll a machine into its strategy tree");
  unroll_cmd->add_option("file", file, "Wiring program")->required();
  unroll_cmd->add_option("--box", box, "Box with a machine, or the outer box")->required();
  unroll_cmd->add_option("--depth", depth, "Tree depth")->required();
  unroll_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));

  auto* cofree_cmd = app.add_subcommand("cofree", "Position counts of the cofree comonoid truncations");
  cofree_cmd->add_option("p", file, "Polynomial JSON")->required();
  cofree_cmd->add_option("--depth", depth, "Truncation depth")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(file, out);
    if (*compile) return cmd_compile(file, out_path, out);
    if (*simulate) return cmd_simulate(file, steps, input, trace_path, format, out);
    if (*hom) return cmd_hom(file, file2, count, enumerate, out_path, out);
    if (*laws) return cmd_laws(suite, bound, samples, seed, out);
    if (*canon) {
      out << dump(poly_to_json(canonical_form(read_poly(file))));
      return kOk;
    }
    if (*unroll_cmd) return cmd_unroll(file, box, depth, format, out);
    if (*cofree_cmd) return cmd_cofree(file, depth, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << file << ": " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace polydyn

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "polydyn/cli.hpp"
#include "polydyn/json_io.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/wiring.hpp"
#include "support.hpp"

using namespace polydyn;
using namespace polydyn::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "polydyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(POLYDYN_SAMPLES_DIR) + "/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("polydyn_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    std::string p = (path / name).string();
    if (!text.empty()) write_text_file(p, text);
    return p;
  }
};

}  // namespace

TEST_CASE("hom") {
  Result r = run({"hom", sample("p.json"), sample("q.json"), "--count"});
  CHECK(r.code == 0);
  CHECK(r.out == "264\n");
  TempDir tmp;
  std::string out = tmp.file("all.json");
  r = run({"hom", sample("p.json"), sample("q.json"), "--enumerate", "--out", out});
  CHECK(r.code == 0);
  nlohmann::json all = nlohmann::json::parse(slurp(out));
  REQUIRE(all.is_array());
  CHECK(all.size() == 264);
  CHECK(lens_from_json(all[0]).dom() == poly_from_json(nlohmann::json::parse(slurp(sample("p.json")))));
  CHECK(run({"hom", sample("p.json"), sample("q.json")}).code == 2);
}

TEST_CASE("check and compile") {
  for (const char* name : {"control.wd", "supplier.wd", "attach.wd", "toggle.wd"}) {
    Result r = run({"check", sample(name)});
    CHECK(r.code == 0);
    CHECK(r.out == "ok\n");
  }
  TempDir tmp;
  std::string bad = tmp.file("bad.wd", "set A = {a}\nbox X {\n  in p : A;\n}\n");
  Result r = run({"check", bad});
  CHECK(r.code == 1);
  CHECK(r.out.find("undriven port X.p") != std::string::npos);
  std::string broken = tmp.file("broken.wd", "set A = {a}\nbox X {\n  in p : Nope;\n}\n");
  r = run({"check", broken});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);

  std::string out = tmp.file("lens.json");
  r = run({"compile", sample("control.wd"), "--out", out});
  CHECK(r.code == 0);
  Lens compiled = lens_from_json(nlohmann::json::parse(slurp(out)));
  CHECK(compiled == wd::compile_wiring(wd::parse(slurp(sample("control.wd")))));
  CHECK(run({"compile", bad, "--out", out}).code == 1);
}

TEST_CASE("simulate") {
  TempDir tmp;
  SUBCASE("supplier trace tracks the mode") {
    std::string trace = tmp.file("trace.json");
    Result r = run({"simulate", sample("supplier.wd"), "--steps", "5", "--trace", trace});
    CHECK(r.code == 0);
    nlohmann::json t = nlohmann::json::parse(slurp(trace));
    REQUIRE(t["steps"].size() == 5);
    std::vector<std::string> states;
    for (const auto& s : t["steps"]) states.push_back(s["state"].get<std::string>());
    states.push_back(t["final"]["state"].get<std::string>());
    for (std::size_t k = 0; k + 1 < states.size(); ++k) {
      // Company state m<mode>_w<widget>: the next widget comes from the supplier named by the mode.
      CHECK(states[k + 1][5] == states[k][2]);
      CHECK(states[k + 1][2] != states[k][2]);
    }
  }
  SUBCASE("open systems read their inputs") {
    std::string in = tmp.file("in.json", R"([{"a": "a1"}, {"a": "a0"}, {"a": "a1"}])");
    Result r = run({"simulate", sample("control.wd"), "--steps", "3", "--input", in, "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("step,state,position,direction\n", 0) == 0);
    CHECK(r.out.find("\n0,\"(k0,p0)\",c0,a1\n") != std::string::npos);
    CHECK(run({"simulate", sample("control.wd"), "--steps", "4", "--input", in}).code != 0);
    CHECK(run({"simulate", sample("control.wd"), "--steps", "3"}).code != 0);
  }
}

TEST_CASE("laws") {
  Result a = run({"laws", "--suite", "poly-core", "--size-bound", "2", "--samples", "20", "--seed", "5"});
  Result b = run({"laws", "--suite", "poly-core", "--size-bound", "2", "--samples", "20", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  nlohmann::json j = nlohmann::json::parse(a.out);
  CHECK(j["ok"] == true);
  CHECK(j["seed"] == 5);
  CHECK(run({"laws", "--suite", "nope"}).code == 2);
  CHECK(run({"laws", "--size-bound", "0"}).code == 2);
}

TEST_CASE("canon, unroll and cofree") {
  Result r = run({"canon", sample("p.json")});
  CHECK(r.code == 0);
  CHECK(poly_from_json(nlohmann::json::parse(r.out)) == canonical_form(poly_from_json(nlohmann::json::parse(slurp(sample("p.json"))))));

  r = run({"unroll", sample("toggle.wd"), "--box", "Toggle", "--depth", "3"});
  CHECK(r.code == 0);
  nlohmann::json tree = nlohmann::json::parse(r.out);
  CHECK(tree["position"] == "off");
  CHECK(tree["branches"]["go"]["position"] == "on");
  CHECK(tree["branches"]["go"]["branches"]["go"]["position"] == "off");
  r = run({"unroll", sample("toggle.wd"), "--box", "Lamp", "--depth", "2", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
  CHECK(run({"unroll", sample("toggle.wd"), "--box", "Nope", "--depth", "2"}).code == 2);

  r = run({"cofree", sample("p.json"), "--depth", "2"});
  CHECK(r.code == 0);
  nlohmann::json c = nlohmann::json::parse(r.out);
  CHECK(c["stages"][2]["positions"] == 56);
}

TEST_CASE("errors and exit codes") {
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"--version"}).out.find("0.1.0") != std::string::npos);
  CHECK(run({"hom", sample("p.json"), sample("q.json"), "--count", "--bogus"}).code == 2);
  CHECK(run({"check", "/nonexistent/file.wd"}).code == 2);
  CHECK(run({"hom", "/nonexistent.json", sample("q.json"), "--count"}).code == 2);
  CHECK(run({}).code == 2);
  TempDir tmp;
  std::string junk = tmp.file("junk.json", "{ not json");
  CHECK(run({"canon", junk}).code == 2);

  // The installed binary reports the same codes to the shell.
  std::string cli = std::string("\"") + POLYDYN_CLI + "\"";
  auto status = [](const std::string& cmd) {
    int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status(cli + " hom " + sample("p.json") + " " + sample("q.json") + " --count") == 0);
  CHECK(status(cli + " check " + tmp.file("bad.wd", "set A = {a}\nbox X {\n  in p : A;\n}\n")) == 1);
  CHECK(status(cli + " --no-such-flag") == 2);
  std::string laws = cli + " laws --suite poly-core --size-bound 2 --samples 10";
  std::string seeded = tmp.file("seeded.json"), env = tmp.file("env.json");
  CHECK(std::system((laws + " --seed 7 >" + seeded).c_str()) == 0);
  CHECK(std::system(("POLYDYN_SEED=7 " + laws + " >" + env).c_str()) == 0);
  CHECK(nlohmann::json::parse(slurp(env))["seed"] == 7);
  CHECK(slurp(seeded) == slurp(env));
  CHECK(status("POLYDYN_SEED=x " + laws) == 2);
}

#include "cobarlab/cli.hpp"
#include "cobarlab/io.hpp"
#include "cobarlab/witness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cobarlab;
namespace fs = std::filesystem;

namespace {

const fs::path kSamples = COBARLAB_SAMPLES_DIR;

struct Run {
  int code;
  std::string out, err;
  json report;
};

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "cobarlab_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

Run run(std::vector<std::string> args) {
  const auto report = scratch("report.json");
  fs::remove(report);
  args.insert(args.begin(), {"--out", report.string()});
  std::ostringstream out, err;
  Run r{run_cli(args, out, err), out.str(), err.str(), {}};
  if (fs::exists(report)) r.report = json::parse(std::ifstream(report));
  return r;
}

std::string sample(const std::string& name) { return (kSamples / name).string(); }

fs::path write_temp(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

json without_time(json r) {
  r.erase("wall_seconds");
  return r;
}

}  // namespace

TEST_CASE("validate: exit codes and messages") {
  auto ok = run({"validate", sample("c3.json")});
  CHECK(ok.code == 0);
  CHECK(ok.report["result"]["valid"] == true);
  CHECK(ok.report["result"]["report"]["conilpotent"] == true);
  CHECK(ok.report["inputs"][0]["sha256"].get<std::string>().size() == 64);

  auto broken = run({"validate", sample("broken_counit.json")});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("counital: false") != std::string::npos);

  auto empty = run({"validate", sample("empty.json")});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("empty document") != std::string::npos);

  CHECK(run({"validate", sample("nonconilpotent.json")}).code == 1);
  CHECK(run({"validate", sample("quad_xy.json")}).code == 0);
  CHECK(run({"validate", sample("dual_numbers.json")}).code == 0);
  CHECK(run({"validate", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("schema errors name their location") {
  auto bad_scalar = write_temp("bad_scalar.json", R"j({"schema":"cobarlab/1","kind":"finite","field":"Q","dim":2,
    "grouplike":0,"counit":[1,"1/0"],"comul":[[[0,0,1]],[[0,1,1],[1,0,1]]]})j");
  auto r = run({"validate", bad_scalar.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("/counit/1") != std::string::npos);

  auto bad_schema = write_temp("bad_schema.json", R"j({"schema":"cobarlab/0","kind":"finite"})j");
  r = run({"validate", bad_schema.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("/schema") != std::string::npos);

  auto missing = write_temp("missing.json", R"j({"schema":"cobarlab/1","kind":"finite","field":"GF(7)","dim":1})j");
  r = run({"validate", missing.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("/grouplike") != std::string::npos);

  auto syntax = write_temp("syntax.json", "{\"schema\": ");
  r = run({"validate", syntax.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("invalid JSON") != std::string::npos);

  auto range = write_temp("range.json", R"j({"schema":"cobarlab/1","kind":"finite","field":"Q","dim":1,
    "grouplike":0,"counit":[1],"comul":[[[0,3,1]]]})j");
  CHECK(run({"validate", range.string()}).code == 2);

  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"ext", sample("c2.json"), "--side", "sideways"}).code == 2);
}

TEST_CASE("ext matches the dense Python oracle") {
  const auto expected = json::parse(std::ifstream(kSamples / "expected.json"));
  REQUIRE(expected.size() >= 7);
  for (const auto& [name, want] : expected.items()) {
    CAPTURE(name);
    const auto imax = std::to_string(want["imax"].get<unsigned>());
    const auto jmax = std::to_string(want["jmax"].get<unsigned>());
    auto r = run({"ext", sample(name), "--imax", imax, "--jmax", jmax});
    REQUIRE(r.code == 0);
    json got = json::object();
    for (const auto& e : r.report["result"]["table"]["entries"])
      got[std::to_string(e[0].get<unsigned>()) + "," + std::to_string(e[1].get<unsigned>())] = e[2];
    CHECK(got == want["entries"]);
  }
}

TEST_CASE("ext: documented examples, sides and truncation") {
  auto sym = run({"ext", sample("sym2_d4.json"), "--imax", "3", "--jmax", "4"});
  CHECK(sym.code == 0);
  CHECK(sym.report["result"]["table"]["totals"] == json{1, 2, 1, 0});

  auto c2 = run({"ext", sample("c2.json"), "--imax", "5"});
  CHECK(c2.report["result"]["table"]["totals"] == json{1, 1, 1, 1, 1, 1});

  for (const char* name : {"c2.json", "c3.json", "c3_gf5.json", "square_zero.json", "sym2_d4.json", "ten2_d2.json",
                           "quad_xy_dual_d4.json"}) {
    CAPTURE(name);
    auto r = run({"ext", sample(name), "--imax", "3", "--side", "op"});
    CHECK(r.code == 0);
    CHECK(r.report["result"]["symmetric"] == true);
  }

  // bar over the dual algebra reproduces the cobar table
  for (const char* name : {"c3.json", "sym2_d4.json", "quad_xy_dual_d4.json"}) {
    CAPTURE(name);
    auto co = run({"ext", sample(name), "--imax", "3"});
    auto al = run({"ext", sample(name), "--imax", "3", "--side", "algebra"});
    CHECK(co.report["result"]["table"]["entries"] == al.report["result"]["table"]["entries"]);
  }
  auto quad = run({"ext", sample("quad_xy.json"), "--imax", "3", "--side", "algebra"});
  CHECK(quad.report["result"]["table"]["totals"] == json{1, 2, 1, 0});
  auto dn = run({"ext", sample("dual_numbers.json"), "--imax", "4", "--side", "algebra"});
  CHECK(dn.report["result"]["table"]["totals"] == json{1, 1, 1, 1, 1});
  CHECK(run({"ext", sample("quad_xy.json"), "--side", "co"}).code == 2);

  auto trunc = run({"ext", sample("sym2_d4.json"), "--imax", "2", "--jmax", "6"});
  CHECK(trunc.code == 2);
  CHECK(trunc.err.find("truncation bound 4") != std::string::npos);
  CHECK(run({"ext", sample("nonconilpotent.json")}).code == 2);
}

TEST_CASE("flatten round trip") {
  const auto flat = scratch("sym_flat.json");
  std::ostringstream out, err;
  REQUIRE(run_cli({"flatten", sample("sym2_d4.json"), "--out", flat.string()}, out, err) == 0);
  auto a = run({"ext", sample("sym2_d4.json"), "--imax", "3"});
  auto b = run({"ext", flat.string(), "--imax", "3", "--jmax", "4"});
  CHECK(a.report["result"]["table"] == b.report["result"]["table"]);
  CHECK(run({"ext", flat.string(), "--jmax", "5"}).code == 2);
  CHECK(run({"flatten", sample("c3.json")}).code == 2);
}

TEST_CASE("resolve and compare") {
  auto r = run({"resolve", sample("sym2_d4.json"), "--length", "3"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["cogenerator_dims"] == json{1, 2, 1, 0});
  CHECK(r.report["result"]["weight_cap"] == 4);

  auto c3 = run({"resolve", sample("c3.json"), "--length", "5", "--seed", "11"});
  CHECK(c3.report["result"]["cogenerator_dims"] == json{1, 1, 1, 1, 1, 1});
  CHECK(c3.report["seed"] == 11);
  auto reg = run({"resolve", sample("c3.json"), "--length", "2", "--module", "regular"});
  CHECK(reg.report["result"]["cogenerator_dims"] == json{1, 0, 0});
  CHECK(run({"resolve", sample("nonconilpotent.json")}).code == 2);

  auto cmp = run({"compare", sample("c3.json"), "--L", "k", "--M", "k", "--n", "4"});
  CHECK(cmp.code == 0);
  CHECK(cmp.report["result"]["verdict"] == true);
  CHECK(cmp.report["result"]["comodule_side"] == json{1, 1, 1, 1, 1});

  auto mixed = run({"compare", sample("c3.json"), "--L", sample("c3_ext_e1.json"), "--M", "regular", "--n", "3"});
  CHECK(mixed.code == 0);
  CHECK(mixed.report["inputs"].size() == 2);

  auto graded = run({"compare", sample("sym2_d4.json")});
  CHECK(graded.code == 2);
  CHECK(graded.err.find("flatten") != std::string::npos);
}

TEST_CASE("demos") {
  auto nr = run({"demo", "nonrational"});
  CHECK(nr.code == 0);
  CHECK(nr.report["result"]["is_rational"] == false);
  CHECK(nr.report["result"]["module_axioms"] == true);
  CHECK(nr.report["result"]["samples"] == 200);
  CHECK(nr.report["result"]["max_rational_submodule"] == "span(e1)");
  CHECK(nr.report["seed"] == kDefaultWitnessSeed);

  auto co = run({"demo", "contra", "--seed", "5"});
  CHECK(co.code == 0);
  CHECK(co.report["result"]["module_trivial"] == true);
  CHECK(co.report["result"]["contra_nontrivial"] == true);
  CHECK(co.report["result"]["splitting_not_contra_linear"] == true);
  CHECK(co.report["seed"] == 5);
  CHECK(run({"demo", "other"}).code == 2);
}

TEST_CASE("reports are deterministic and independent of thread count") {
  const std::vector<std::vector<std::string>> cmds = {
      {"ext", sample("ten2_d2.json"), "--imax", "4"},
      {"ext", sample("square_zero.json"), "--imax", "3", "--side", "op"},
      {"resolve", sample("sym2_d4.json"), "--length", "3", "--seed", "3"},
      {"compare", sample("c3.json"), "--n", "3"},
      {"demo", "nonrational"},
  };
  for (const auto& cmd : cmds) {
    CAPTURE(cmd[0]);
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(without_time(a.report).dump() == without_time(b.report).dump());
    auto threaded = cmd;
    threaded.insert(threaded.end(), {"--threads", "4"});
    CHECK(without_time(run(threaded).report)["result"].dump() == without_time(a.report)["result"].dump());
  }
}

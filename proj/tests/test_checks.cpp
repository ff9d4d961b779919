#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "gcinf/catalog.hpp"
#include "gcinf/checks.hpp"
#include "gcinf/error.hpp"
#include "gcinf/spec_document.hpp"

using namespace gcinf;

namespace {

RunConfig config(const std::string& command, const std::string& input) {
  RunConfig c;
  c.command = command;
  c.inputs = {input};
  c.points = 6;
  return c;
}

const ResidualReport* find_check(const ReportSection& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name() == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("curvature of constant curvature documents") {
  const auto r = run_command(config("curvature", "catalog:upper-half-space-3"));
  REQUIRE(r.sections.size() == 1);
  CHECK(r.passed());
  CHECK(find_check(r.sections[0], "constant_curvature") != nullptr);
  CHECK(find_check(r.sections[0], "riemann_symmetry") != nullptr);
}

TEST_CASE("check on good and bad pairs") {
  auto c = config("check", "catalog:sphere-pair-2");
  c.engine = EngineChoice::both;
  const auto good = run_command(c);
  CHECK(good.passed());
  CHECK(find_check(good.sections[0], "gc.gauss[fd]") != nullptr);
  CHECK(find_check(good.sections[0], "surface_gauss[ad]") != nullptr);

  const auto bad = run_command(config("check", "catalog:perturbed-horosphere-pair-2"));
  CHECK_FALSE(bad.passed());
}

TEST_CASE("tolerance overrides") {
  auto c = config("check", "catalog:perturbed-horosphere-pair-2");
  c.tol_rel = 10.0;
  CHECK(run_command(c).passed());
  c.tol_rel.reset();
  c.tol_overrides = {{"gc.gauss", 10.0}, {"gc.codazzi", 10.0}, {"surface_gauss", 10.0}};
  CHECK(run_command(c).passed());
  CHECK(c.tolerance("gc.gauss", 1e-8) == 10.0);
  CHECK(c.tolerance("other", 1e-8) == 1e-8);
  c.points = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("unloadable input becomes a section error") {
  const auto r = run_command(config("curvature", "missing-file.json"));
  REQUIRE(r.sections.size() == 1);
  CHECK_FALSE(r.sections[0].error.empty());
  CHECK_FALSE(r.passed());
}

TEST_CASE("dualize emits a loadable pair at infinity") {
  const std::string path = "gcinf_test_dual.json";
  auto c = config("dualize", "catalog:sphere-pair-2");
  c.emit = path;
  CHECK(run_command(c).passed());
  const auto dual = read_spec_file(path);
  std::remove(path.c_str());
  CHECK(dual.kind == SpecKind::pair);
  CHECK(dual.meta_string("side") == std::optional<std::string>("infinity"));
  const auto loaded = load_spec(dual);
  CHECK(loaded.pair->side() == Side::infinity);

  const auto dd = dual_document(catalog_document("sphere-pair-2"));
  CHECK(write_spec(dd) == write_spec(dual));
}

TEST_CASE("weyl-schouten") {
  CHECK(run_command(config("weyl-schouten", "catalog:round-sphere-4")).passed());
  CHECK_FALSE(run_command(config("weyl-schouten", "catalog:non-lcf-4a")).passed());
  const auto two = run_command(config("weyl-schouten", "catalog:flat-2"));
  CHECK_FALSE(two.sections[0].error.empty());
}

TEST_CASE("flow table") {
  const std::string path = "gcinf_test_flow.txt";
  auto c = config("flow", "catalog:geodesic-sphere-2-r1");
  c.t_min = -1.0;
  c.t_max = 1.0;
  c.t_steps = 3;
  c.points = 2;
  c.emit = path;
  run_command(c);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(path.c_str());
  const std::string text = ss.str();
  CHECK(text.rfind("# t", 0) == 0);
  // The sphere collapses at t = -1.
  CHECK(text.find("degenerate") != std::string::npos);
}

TEST_CASE("reports are deterministic without the wall time") {
  for (const char* cmd : {"curvature", "check"}) {
    auto c = config(cmd, std::string(cmd) == "check" ? "catalog:graph-2a" : "catalog:polynomial-3");
    c.engine = EngineChoice::both;
    const auto a = run_command(c).to_json(false);
    const auto b = run_command(c).to_json(false);
    CHECK(a == b);
    CHECK(a.find("wall_time") == std::string::npos);
  }
  const auto with = run_command(config("curvature", "catalog:flat-2")).to_json(true);
  CHECK(with.find("wall_time") != std::string::npos);
}

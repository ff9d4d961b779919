#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "gcinf/catalog.hpp"
#include "gcinf/error.hpp"
#include "gcinf/spec_document.hpp"

using namespace gcinf;

namespace {

std::string metric_doc(const std::string& entries, const std::string& box = "[[-1, 1], [-1, 1]]") {
  return R"({"kind": "metric", "dim": 2, "box": )" + box + R"(, "entries": {)" + entries + "}}";
}

template <class E>
std::string message_of(const std::string& text) {
  try {
    load_spec(parse_spec(text));
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal documents") {
  const auto doc = parse_spec(metric_doc(R"("g.1.1": "1+x1^2", "g.2.2": "1")"));
  CHECK(doc.kind == SpecKind::metric);
  CHECK(doc.dim == 2);
  CHECK(doc.box.hi(0) == 1.0);
  CHECK(*doc.entry("g.1.1") == "1+x1^2");
  CHECK(doc.entry("g.1.2") == nullptr);
  const auto loaded = load_spec(doc);
  CHECK(loaded.metric.has_value());
  CHECK_FALSE(loaded.pair.has_value());
}

TEST_CASE("asymmetric metric entries are refused") {
  const auto msg = message_of<SymmetryError>(metric_doc(R"("g.1.1": "2", "g.2.2": "2", "g.1.2": "x1", "g.2.1": "x2")"));
  CHECK(msg.find("g.1.2") != std::string::npos);
  // Agreeing duplicates are fine.
  CHECK_NOTHROW(load_spec(parse_spec(metric_doc(R"("g.1.1": "2", "g.2.2": "2", "g.1.2": "x1", "g.2.1": "x1")"))));
}

TEST_CASE("non positive definite metric names the point") {
  try {
    load_spec(parse_spec(metric_doc(R"("g.1.1": "x1", "g.2.2": "1")")));
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    CHECK(std::string(e.what()).find("at (") != std::string::npos);
    CHECK(e.smallest_eigenvalue() <= 0.0);
  }
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(parse_spec(metric_doc(R"("g.1.1": "1", "g.3.3": "1")")), SpecError);
  CHECK_THROWS_AS(parse_spec(metric_doc(R"("g.1.1": "1", "B.1.1": "1")")), SpecError);
  CHECK_THROWS_AS(parse_spec(metric_doc(R"("g.1.1": "1", "g.2.2": "1")", "[[1, -1], [-1, 1]]")), SpecError);
  CHECK_THROWS_AS(parse_spec(metric_doc(R"("g.1.1": "1", "g.2.2": "1")", "[[-1, 1]]")), SpecError);
  CHECK_THROWS_AS(parse_spec(R"({"kind": "blob", "dim": 2, "box": [[0, 1], [0, 1]], "entries": {}})"), SpecError);
  CHECK_THROWS_AS(parse_spec(R"({"kind": "metric", "dim": 9, "box": [], "entries": {}})"), SpecError);
  CHECK_THROWS_AS(parse_spec(metric_doc(R"("g.1.1": "1", "g.2.2": "1")").insert(1, R"("extra": 1, )")), SpecError);
  // Missing diagonal.
  CHECK_THROWS_AS(load_spec(parse_spec(metric_doc(R"("g.1.1": "1")"))), SpecError);
  // Expression errors name the key.
  try {
    parse_spec(metric_doc(R"("g.1.1": "1 + ", "g.2.2": "1")"));
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("g.1.1") != std::string::npos);
  }
}

TEST_CASE("malformed JSON reports a position") {
  try {
    parse_spec("{\"kind\": \"metric\",, }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() > 1);
  }
}

TEST_CASE("domain violations inside the box") {
  CHECK_THROWS_AS(load_spec(parse_spec(metric_doc(R"js("g.1.1": "log(x1)", "g.2.2": "1")js"))), SpecError);
}

TEST_CASE("pairs and immersions are validated") {
  const std::string not_self_adjoint = R"({"kind": "pair", "dim": 2, "box": [[-1, 1], [-1, 1]],
    "entries": {"g.1.1": "1", "g.2.2": "1", "B.1.2": "1"}})";
  CHECK_THROWS_AS(load_spec(parse_spec(not_self_adjoint)), SymmetryError);

  const std::string off_hyperboloid = R"js({"kind": "immersion", "dim": 2, "box": [[-0.5, 0.5], [-0.5, 0.5]],
    "entries": {"f.1": "x1", "f.2": "x2", "f.3": "0", "f.4": "1.01*sqrt(1+x1^2+x2^2)"}})js";
  CHECK_THROWS_AS(load_spec(parse_spec(off_hyperboloid)), SpecError);

  const std::string half_normal = R"js({"kind": "immersion", "dim": 2, "box": [[-0.5, 0.5], [-0.5, 0.5]],
    "entries": {"f.1": "x1", "f.2": "x2", "f.3": "0", "f.4": "sqrt(1+x1^2+x2^2)", "N.3": "1"}})js";
  CHECK_THROWS_AS(load_spec(parse_spec(half_normal)), SpecError);

  const std::string conformal_curved_reference = R"({"kind": "conformal", "dim": 2, "box": [[-1, 1], [-1, 1]],
    "entries": {"u": "x1", "g.1.1": "1+x2^2", "g.2.2": "1"}})";
  CHECK_THROWS_AS(load_spec(parse_spec(conformal_curved_reference)), SpecError);
}

TEST_CASE("write then parse round trip") {
  for (const auto& doc : catalog_documents()) {
    const std::string text = write_spec(doc);
    const auto again = parse_spec(text);
    CHECK_MESSAGE(write_spec(again) == text, doc.name());
    CHECK(again.entries == doc.entries);
    CHECK(again.meta == doc.meta);
  }
}

TEST_CASE("file reading") {
  const std::string path = "gcinf_test_spec.json";
  {
    std::ofstream out(path);
    out << write_spec(catalog_document("flat-2"));
  }
  CHECK(read_spec_file(path).name() == "flat-2");
  std::remove(path.c_str());
  try {
    read_spec_file("does-not-exist.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("does-not-exist.json") != std::string::npos);
  }
}

TEST_CASE("every catalog document loads") {
  const auto docs = catalog_documents();
  CHECK(docs.size() == builtin_catalog().size());
  CHECK(docs.size() >= 40);
  for (const auto& doc : docs) {
    CHECK_NOTHROW_MESSAGE(load_spec(doc), doc.name());
    CHECK(!tags(doc).empty());
  }
  CHECK_THROWS_AS(catalog_document("no-such-entry"), SpecError);
  CHECK(catalog_documents(SpecKind::immersion).size() >= 10);
  for (const auto& doc : catalog_documents_tagged("non_lcf")) CHECK(doc.kind == SpecKind::metric);
}

TEST_CASE("generators are deterministic") {
  CHECK(write_spec(random_conformal_spec(3, 5)) == write_spec(random_conformal_spec(3, 5)));
  CHECK(write_spec(random_conformal_spec(3, 5)) != write_spec(random_conformal_spec(3, 6)));
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK_NOTHROW(load_spec(random_metric_spec(3, s)));
    CHECK_NOTHROW(load_spec(random_graph_immersion_spec(2, s)));
    CHECK_NOTHROW(load_spec(random_conformal_spec(4, s)));
  }
}

#include "gcinf/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gcinf/error.hpp"
#include "gcinf/report.hpp"
#include "gcinf/sampling.hpp"
#include "json.hpp"

namespace gcinf {
namespace {

// Coefficient in [-scale, scale] rounded to three decimals, so generated
// documents read cleanly.
double coefficient(UniformSource& rng, double scale) {
  return std::round(rng.next(-scale, scale) * 1000.0) / 1000.0;
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string var(int i) { return "x" + std::to_string(i + 1); }

// Random monomial of total degree in [1, degree].
std::string monomial(UniformSource& rng, int dim, int degree) {
  const int d = 1 + static_cast<int>(rng.next() * degree);
  std::vector<int> powers(static_cast<std::size_t>(dim), 0);
  for (int k = 0; k < d; ++k) ++powers[static_cast<std::size_t>(rng.next() * dim)];
  std::string s;
  for (int i = 0; i < dim; ++i) {
    const int p = powers[static_cast<std::size_t>(i)];
    if (p == 0) continue;
    if (!s.empty()) s += "*";
    s += var(i);
    if (p > 1) s += "^" + std::to_string(p);
  }
  return s;
}

std::string signed_term(double c, const std::string& body) {
  if (c == 0.0) return "";
  std::string s = c < 0 ? "-" : "+";
  s += short_number(std::fabs(c));
  if (!body.empty()) s += "*" + body;
  return s;
}

std::string strip_plus(std::string s) {
  if (s.empty()) return "0";
  return s[0] == '+' ? s.substr(1) : s;
}

SpecDocument base_document(SpecKind kind, int dim, double lo, double hi, const std::string& name, std::uint64_t seed) {
  if (dim < 1 || dim > kMaxJetDim) throw DimensionError("generator dimension out of range");
  SpecDocument doc;
  doc.kind = kind;
  doc.dim = dim;
  doc.box = Box::cube(dim, lo, hi);
  doc.set_meta_string("name", name);
  doc.set_meta_number("seed", static_cast<double>(seed));
  return doc;
}

}  // namespace

SpecDocument catalog_document(const std::string& name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return parse_spec(e.json);
  throw SpecError("no catalog entry named '" + name + "'");
}

std::vector<SpecDocument> catalog_documents() {
  std::vector<SpecDocument> out;
  for (const auto& e : builtin_catalog()) out.push_back(parse_spec(e.json));
  return out;
}

std::vector<SpecDocument> catalog_documents(SpecKind kind) {
  std::vector<SpecDocument> out;
  for (auto& d : catalog_documents())
    if (d.kind == kind) out.push_back(std::move(d));
  return out;
}

std::vector<SpecDocument> catalog_documents_tagged(const std::string& tag) {
  std::vector<SpecDocument> out;
  for (auto& d : catalog_documents())
    if (has_tag(d, tag)) out.push_back(std::move(d));
  return out;
}

std::vector<std::string> tags(const SpecDocument& doc) {
  std::vector<std::string> out;
  for (const auto& [k, v] : doc.meta) {
    if (k != "tags") continue;
    const auto j = nlohmann::json::parse(v);
    if (!j.is_array()) return out;
    for (const auto& t : j)
      if (t.is_string()) out.push_back(t.get<std::string>());
  }
  return out;
}

bool has_tag(const SpecDocument& doc, const std::string& tag) {
  const auto t = tags(doc);
  return std::find(t.begin(), t.end(), tag) != t.end();
}

SpecDocument random_conformal_spec(int dim, std::uint64_t seed) {
  SpecDocument doc =
      base_document(SpecKind::conformal, dim, -1.0, 1.0, "random-conformal-" + std::to_string(dim) + "-" + std::to_string(seed), seed);
  UniformSource rng(seed * 7919 + static_cast<std::uint64_t>(dim));
  std::string u;
  const int terms = 3 + static_cast<int>(rng.next() * 3);
  for (int t = 0; t < terms; ++t) u += signed_term(coefficient(rng, 0.3), monomial(rng, dim, 3));
  const int axis = static_cast<int>(rng.next() * dim);
  const double freq = std::round(rng.next(0.5, 1.5) * 100.0) / 100.0;
  u += signed_term(coefficient(rng, 0.2), "sin(" + short_number(freq) + "*" + var(axis) + ")");
  doc.set_entry("u", strip_plus(u));
  return doc;
}

SpecDocument random_metric_spec(int dim, std::uint64_t seed, int degree) {
  SpecDocument doc =
      base_document(SpecKind::metric, dim, -1.0, 1.0, "random-metric-" + std::to_string(dim) + "-" + std::to_string(seed), seed);
  UniformSource rng(seed * 104729 + static_cast<std::uint64_t>(dim * 31 + degree));
  // Each off-diagonal entry is one monomial with |coefficient| <= 0.1 / dim,
  // each diagonal entry 1 plus terms summing to at most 0.1 in size, so
  // the matrix stays diagonally dominant on the box.
  for (int i = 0; i < dim; ++i) {
    std::string e = "1";
    e += signed_term(std::fabs(coefficient(rng, 0.3)), var(static_cast<int>(rng.next() * dim)) + "^2");
    e += signed_term(coefficient(rng, 0.05), monomial(rng, dim, degree));
    e += signed_term(coefficient(rng, 0.05), monomial(rng, dim, degree));
    doc.set_entry("g." + std::to_string(i + 1) + "." + std::to_string(i + 1), e);
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      doc.set_entry("g." + std::to_string(i + 1) + "." + std::to_string(j + 1),
                    strip_plus(signed_term(coefficient(rng, 0.1 / dim), monomial(rng, dim, degree))));
  return doc;
}

SpecDocument random_graph_immersion_spec(int dim, std::uint64_t seed) {
  SpecDocument doc =
      base_document(SpecKind::immersion, dim, -0.5, 0.5, "random-graph-" + std::to_string(dim) + "-" + std::to_string(seed), seed);
  UniformSource rng(seed * 15485863 + static_cast<std::uint64_t>(dim));
  std::string h;
  for (int t = 0; t < 3; ++t) h += signed_term(coefficient(rng, 0.25), monomial(rng, dim, 3));
  h = strip_plus(h);
  std::string sq;
  for (int i = 0; i < dim; ++i) {
    doc.set_entry("f." + std::to_string(i + 1), var(i));
    sq += "+" + var(i) + "^2";
  }
  doc.set_entry("f." + std::to_string(dim + 1), h);
  doc.set_entry("f." + std::to_string(dim + 2), "sqrt(1" + sq + "+(" + h + ")^2)");
  doc.set_meta_number("normal_orientation", 1.0);
  return doc;
}

}  // namespace gcinf

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcinf/spec_document.hpp"

namespace gcinf {

// Spec documents compiled into the library from the catalog/ directory.
struct CatalogEntry {
  std::string name;
  std::string json;
};

// Sorted by name.
const std::vector<CatalogEntry>& builtin_catalog();
// Throws SpecError for an unknown name.
SpecDocument catalog_document(const std::string& name);
std::vector<SpecDocument> catalog_documents();
std::vector<SpecDocument> catalog_documents(SpecKind kind);
// Documents whose meta "tags" array contains `tag`.
std::vector<SpecDocument> catalog_documents_tagged(const std::string& tag);

std::vector<std::string> tags(const SpecDocument& doc);
bool has_tag(const SpecDocument& doc, const std::string& tag);

// Seeded generators. The same (dim, seed) always gives the same document.
//
// Conformal factor u on [-1, 1]^dim: a few monomials of degree <= 3 plus
// one sine term, coefficients at most 0.3 in size.
SpecDocument random_conformal_spec(int dim, std::uint64_t seed);
// Metric on [-1, 1]^dim with polynomial entries of degree <= `degree`,
// diagonally dominant (so positive definite on the box).
SpecDocument random_metric_spec(int dim, std::uint64_t seed, int degree = 3);
// Graph immersion x -> (x, h(x), sqrt(1 + |x|^2 + h^2)) on [-0.5, 0.5]^dim
// with a small cubic h; the normal is computed.
SpecDocument random_graph_immersion_spec(int dim, std::uint64_t seed);

}  // namespace gcinf

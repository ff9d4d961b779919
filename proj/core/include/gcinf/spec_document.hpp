#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcinf/duality.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/field.hpp"
#include "gcinf/hyperbolic.hpp"
#include "gcinf/lcf.hpp"

namespace gcinf {

enum class SpecKind { metric, conformal, pair, immersion };

std::string to_string(SpecKind kind);
SpecKind spec_kind_from_string(const std::string& s);

// Text form of a field specification (see docs/spec-format.md).
//
// Entry keys, with 1-based indices:
//   metric     g.i.j                      (symmetric; one of g.i.j / g.j.i suffices)
//   conformal  u, optional g.i.j          (flat reference metric, default delta)
//   pair       g.i.j and B.i.j            (B.i.j = B^i_j, row i column j)
//   immersion  f.1 .. f.(n+2), optional N.1 .. N.(n+2)
// Missing off-diagonal g entries are 0; missing B entries are 0.
struct SpecDocument {
  SpecKind kind = SpecKind::metric;
  int dim = 0;
  Box box;
  // Expression text per key, in the order keys were given.
  std::vector<std::pair<std::string, std::string>> entries;
  // Metadata values kept as JSON text.
  std::vector<std::pair<std::string, std::string>> meta;

  const std::string* entry(const std::string& key) const;
  void set_entry(const std::string& key, std::string expr);

  std::optional<std::string> meta_string(const std::string& key) const;
  std::optional<double> meta_number(const std::string& key) const;
  void set_meta_string(const std::string& key, const std::string& value);
  void set_meta_number(const std::string& key, double value);

  std::string name() const;
};

// Throws ParseError for malformed JSON and SpecError for schema problems
// (unknown kind, bad box, missing or unknown entry keys, expression errors).
SpecDocument parse_spec(const std::string& json_text);
SpecDocument read_spec_file(const std::string& path);
// Stable key order: kind, dim, box, entries, meta.
std::string write_spec(const SpecDocument& doc);

// Fields built from a document. Which members are set depends on the kind:
//   metric     metric
//   conformal  metric (the presented metric), presentation
//   pair       metric, pair
//   immersion  metric (induced), pair (induced, finite side), immersion
struct LoadedSpec {
  SpecDocument doc;
  std::optional<Sym2Field> metric;
  std::optional<ConformalPresentation> presentation;
  std::optional<DualityPair> pair;
  std::optional<Immersion> immersion;
};

struct LoadOptions {
  // Points (in the box) used for validation.
  int validation_points = 12;
  std::uint64_t seed = 7;
};

// Builds the fields and validates them at sample points: symmetry of g,
// positive definiteness, domain of every expression, self-adjointness of B
// and the hyperboloid / unit normal constraints of immersions. Failures
// raise SymmetryError, DegenerateError or SpecError naming the point.
LoadedSpec load_spec(const SpecDocument& doc, const LoadOptions& options = {});

}  // namespace gcinf

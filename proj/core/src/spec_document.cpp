#include "gcinf/spec_document.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gcinf/error.hpp"
#include "gcinf/report.hpp"
#include "gcinf/sampling.hpp"
#include "json.hpp"

namespace gcinf {
namespace {

using Json = nlohmann::ordered_json;

std::string point_text(std::span<const double> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += format_number(p[i]);
  }
  return s + ")";
}

// Splits "g.1.2" into ("g", {1, 2}).
bool split_key(const std::string& key, std::string& head, std::vector<int>& idx) {
  std::stringstream ss(key);
  std::string part;
  if (!std::getline(ss, head, '.')) return false;
  idx.clear();
  while (std::getline(ss, part, '.')) {
    if (part.empty() || part.size() > 2) return false;
    for (char c : part)
      if (c < '0' || c > '9') return false;
    idx.push_back(std::stoi(part));
  }
  return true;
}

void check_key(const SpecDocument& doc, const std::string& key) {
  std::string head;
  std::vector<int> idx;
  const int n = doc.dim;
  auto bad = [&](const std::string& why) {
    return SpecError("entry '" + key + "' is not valid for kind " + to_string(doc.kind) + ": " + why);
  };
  if (!split_key(key, head, idx)) throw bad("malformed key");
  auto in_range = [](int i, int hi) { return i >= 1 && i <= hi; };
  if (head == "g" && doc.kind != SpecKind::immersion) {
    if (idx.size() != 2 || !in_range(idx[0], n) || !in_range(idx[1], n)) throw bad("expected g.i.j with 1 <= i, j <= dim");
    return;
  }
  if (head == "u" && doc.kind == SpecKind::conformal) {
    if (!idx.empty()) throw bad("u takes no indices");
    return;
  }
  if (head == "B" && doc.kind == SpecKind::pair) {
    if (idx.size() != 2 || !in_range(idx[0], n) || !in_range(idx[1], n)) throw bad("expected B.i.j with 1 <= i, j <= dim");
    return;
  }
  if ((head == "f" || head == "N") && doc.kind == SpecKind::immersion) {
    if (idx.size() != 1 || !in_range(idx[0], n + 2)) throw bad("expected " + head + ".a with 1 <= a <= dim + 2");
    return;
  }
  throw bad("unknown key");
}

ExprPtr compile(const SpecDocument& doc, const std::string& key, const std::string& text) {
  try {
    return parse_expr(text, doc.dim);
  } catch (const ParseError& e) {
    throw SpecError("entry '" + key + "': " + e.what());
  }
}

ExprPtr compiled_or(const SpecDocument& doc, const std::string& key, const char* fallback) {
  const std::string* t = doc.entry(key);
  return compile(doc, key, t ? *t : std::string(fallback));
}

std::string key2(const char* head, int i, int j) {
  return std::string(head) + "." + std::to_string(i + 1) + "." + std::to_string(j + 1);
}

std::vector<ExprPtr> metric_components(const SpecDocument& doc, const std::vector<std::vector<double>>& points) {
  const int n = doc.dim;
  std::vector<ExprPtr> out(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const std::string upper = key2("g", i, j);
      const std::string lower = key2("g", j, i);
      const std::string* a = doc.entry(upper);
      const std::string* b = doc.entry(lower);
      ExprPtr e;
      if (a && b && i != j) {
        e = compile(doc, upper, *a);
        const ExprPtr other = compile(doc, lower, *b);
        for (const auto& p : points) {
          double va = 0.0;
          double vb = 0.0;
          try {
            va = eval(*e, p);
            vb = eval(*other, p);
          } catch (const DomainError&) {
            continue;  // reported by the domain check
          }
          if (std::fabs(va - vb) > 1e-12 * std::max(1.0, std::fabs(va)))
            throw SymmetryError("metric entries " + upper + " and " + lower + " differ at " + point_text(p) + ": " +
                                format_number(va) + " vs " + format_number(vb));
        }
      } else if (a) {
        e = compile(doc, upper, *a);
      } else if (b) {
        e = compile(doc, lower, *b);
      } else if (i == j) {
        throw SpecError("missing diagonal metric entry " + upper);
      } else {
        e = Expr::number(0.0);
      }
      out[static_cast<std::size_t>(i * n + j)] = e;
      out[static_cast<std::size_t>(j * n + i)] = e;
    }
  return out;
}

void check_domain(const Field& f, const std::vector<std::vector<double>>& points, const std::string& what) {
  for (const auto& p : points) {
    try {
      for (double v : f.values_at(p))
        if (!std::isfinite(v)) throw DomainError("non-finite value");
    } catch (const DomainError& e) {
      throw SpecError(what + " cannot be evaluated at " + point_text(p) + ": " + e.what());
    }
  }
}

void check_metric(const Sym2Field& g, const std::vector<std::vector<double>>& points, const std::string& what) {
  const int n = g.dim();
  for (const auto& p : points) {
    const auto v = g.field()->values_at(p);
    const Eigen::Map<const Eigen::MatrixXd> m(v.data(), n, n);
    try {
      const MetricValue mv(Sym2Value::from_matrix(m));
      (void)mv;
    } catch (const DegenerateError& e) {
      throw DegenerateError(what + " is not positive definite at " + point_text(p) + " (smallest eigenvalue " +
                                format_number(e.smallest_eigenvalue()) + ")",
                            e.smallest_eigenvalue());
    }
  }
}

}  // namespace

std::string to_string(SpecKind kind) {
  switch (kind) {
    case SpecKind::metric: return "metric";
    case SpecKind::conformal: return "conformal";
    case SpecKind::pair: return "pair";
    case SpecKind::immersion: return "immersion";
  }
  return "metric";
}

SpecKind spec_kind_from_string(const std::string& s) {
  if (s == "metric") return SpecKind::metric;
  if (s == "conformal") return SpecKind::conformal;
  if (s == "pair") return SpecKind::pair;
  if (s == "immersion") return SpecKind::immersion;
  throw SpecError("unknown kind '" + s + "' (expected metric, conformal, pair or immersion)");
}

const std::string* SpecDocument::entry(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

void SpecDocument::set_entry(const std::string& key, std::string expr) {
  for (auto& [k, v] : entries)
    if (k == key) {
      v = std::move(expr);
      return;
    }
  entries.emplace_back(key, std::move(expr));
}

std::optional<std::string> SpecDocument::meta_string(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) {
      const Json j = Json::parse(v);
      if (j.is_string()) return j.get<std::string>();
      return v;
    }
  return std::nullopt;
}

std::optional<double> SpecDocument::meta_number(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) {
      const Json j = Json::parse(v);
      if (j.is_number()) return j.get<double>();
      return std::nullopt;
    }
  return std::nullopt;
}

void SpecDocument::set_meta_string(const std::string& key, const std::string& value) {
  const std::string text = Json(value).dump();
  for (auto& [k, v] : meta)
    if (k == key) {
      v = text;
      return;
    }
  meta.emplace_back(key, text);
}

void SpecDocument::set_meta_number(const std::string& key, double value) {
  const std::string text = format_number(value);
  for (auto& [k, v] : meta)
    if (k == key) {
      v = text;
      return;
    }
  meta.emplace_back(key, text);
}

std::string SpecDocument::name() const { return meta_string("name").value_or("unnamed"); }

SpecDocument parse_spec(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), static_cast<int>(e.byte));
  }
  if (!root.is_object()) throw SpecError("spec document must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (key != "kind" && key != "dim" && key != "box" && key != "entries" && key != "meta")
      throw SpecError("unknown top-level key '" + key + "'");
  }
  SpecDocument doc;
  if (!root.contains("kind") || !root["kind"].is_string()) throw SpecError("missing string 'kind'");
  doc.kind = spec_kind_from_string(root["kind"].get<std::string>());
  if (!root.contains("dim") || !root["dim"].is_number_integer()) throw SpecError("missing integer 'dim'");
  doc.dim = root["dim"].get<int>();
  if (doc.dim < 1 || doc.dim > kMaxJetDim)
    throw SpecError("'dim' must be between 1 and " + std::to_string(kMaxJetDim));

  if (!root.contains("box") || !root["box"].is_array()) throw SpecError("missing array 'box'");
  const Json& box = root["box"];
  if (static_cast<int>(box.size()) != doc.dim) throw SpecError("'box' must have one [lo, hi] interval per dimension");
  std::vector<std::pair<double, double>> axes;
  for (const auto& iv : box) {
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      throw SpecError("'box' intervals must be [lo, hi] number pairs");
    const double lo = iv[0].get<double>();
    const double hi = iv[1].get<double>();
    if (!(lo < hi)) throw SpecError("'box' interval with lo >= hi");
    axes.emplace_back(lo, hi);
  }
  doc.box = Box(std::move(axes));

  if (!root.contains("entries") || !root["entries"].is_object()) throw SpecError("missing object 'entries'");
  for (const auto& [key, value] : root["entries"].items()) {
    if (!value.is_string()) throw SpecError("entry '" + key + "' must be an expression string");
    check_key(doc, key);
    compile(doc, key, value.get<std::string>());
    doc.entries.emplace_back(key, value.get<std::string>());
  }
  if (root.contains("meta")) {
    if (!root["meta"].is_object()) throw SpecError("'meta' must be an object");
    for (const auto& [key, value] : root["meta"].items()) doc.meta.emplace_back(key, value.dump());
  }
  return doc;
}

SpecDocument read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.column());
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

std::string write_spec(const SpecDocument& doc) {
  Json root;
  root["kind"] = to_string(doc.kind);
  root["dim"] = doc.dim;
  // Placeholder, replaced below so the box prints on one line.
  root["box"] = "@box@";
  Json entries = Json::object();
  for (const auto& [k, v] : doc.entries) entries[k] = v;
  root["entries"] = entries;
  if (!doc.meta.empty()) {
    Json meta = Json::object();
    for (const auto& [k, v] : doc.meta) meta[k] = Json::parse(v);
    root["meta"] = meta;
  }
  std::string box = "[";
  for (const auto& [lo, hi] : doc.box.axes()) {
    if (box.size() > 1) box += ", ";
    box += "[" + format_number(lo) + ", " + format_number(hi) + "]";
  }
  box += "]";
  std::string text = root.dump(2);
  text.replace(text.find("\"@box@\""), 7, box);
  return text + "\n";
}

LoadedSpec load_spec(const SpecDocument& doc, const LoadOptions& options) {
  const int n = doc.dim;
  if (doc.box.dim() != n) throw SpecError("box dimension does not match 'dim'");
  for (const auto& [k, v] : doc.entries) {
    (void)v;
    check_key(doc, k);
  }
  const auto points =
      sample_points(doc.box, SamplePlan{options.validation_points, options.seed, true, true});
  LoadedSpec out{doc, std::nullopt, std::nullopt, std::nullopt, std::nullopt};

  switch (doc.kind) {
    case SpecKind::metric: {
      const Sym2Field g(expr_field(metric_components(doc, points), n));
      check_domain(*g.field(), points, "metric");
      check_metric(g, points, "metric");
      out.metric = g;
      break;
    }
    case SpecKind::conformal: {
      if (!doc.entry("u")) throw SpecError("conformal spec needs the entry 'u'");
      const ScalarField u(expr_field({compile(doc, "u", *doc.entry("u"))}, n));
      check_domain(*u.field(), points, "conformal factor u");
      bool has_reference = false;
      for (const auto& [k, v] : doc.entries) {
        (void)v;
        if (k.rfind("g.", 0) == 0) has_reference = true;
      }
      Sym2Field reference = flat_metric(n);
      if (has_reference) {
        const auto comps = metric_components(doc, points);
        for (const auto& c : comps)
          if (!c->is_constant()) throw SpecError("the reference metric of a conformal spec must have constant entries");
        reference = Sym2Field(expr_field(comps, n));
        check_metric(reference, points, "reference metric");
      }
      ConformalPresentation pres{reference, u};
      out.metric = pres.metric();
      out.presentation = std::move(pres);
      break;
    }
    case SpecKind::pair: {
      const Sym2Field g(expr_field(metric_components(doc, points), n));
      check_domain(*g.field(), points, "metric");
      check_metric(g, points, "metric");
      std::vector<ExprPtr> b;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.push_back(compiled_or(doc, key2("B", i, j), "0"));
      const EndoField bf(expr_field(std::move(b), n));
      check_domain(*bf.field(), points, "shape operator");
      for (const auto& p : points) {
        const auto gv = g.field()->values_at(p);
        const auto bv = bf.field()->values_at(p);
        const MetricValue gm(Sym2Value::from_matrix(Eigen::Map<const Eigen::MatrixXd>(gv.data(), n, n)));
        // Components are row-major; Eigen maps column-major, hence the transpose.
        const EndoValue be(Eigen::Map<const Eigen::MatrixXd>(bv.data(), n, n).transpose());
        if (!is_self_adjoint(gm, be, 1e-10))
          throw SymmetryError("shape operator is not self-adjoint for g at " + point_text(p));
      }
      const Side side = side_from_string(doc.meta_string("side").value_or("finite"));
      out.metric = g;
      out.pair = DualityPair(g, bf, side);
      break;
    }
    case SpecKind::immersion: {
      const int m = n + 2;
      std::vector<ExprPtr> f;
      for (int a = 1; a <= m; ++a) {
        const std::string key = "f." + std::to_string(a);
        if (!doc.entry(key)) throw SpecError("immersion spec is missing " + key);
        f.push_back(compile(doc, key, *doc.entry(key)));
      }
      int normals = 0;
      std::vector<ExprPtr> nv;
      for (int a = 1; a <= m; ++a) {
        const std::string key = "N." + std::to_string(a);
        if (doc.entry(key)) {
          ++normals;
          nv.push_back(compile(doc, key, *doc.entry(key)));
        }
      }
      if (normals != 0 && normals != m) throw SpecError("immersion spec must give all or none of N.1 .. N.(dim+2)");
      const MapField fm(expr_field(std::move(f), n));
      check_domain(*fm.field(), points, "immersion f");
      Immersion imm = normals == m ? Immersion(fm, MapField(expr_field(std::move(nv), n)))
                                   : Immersion::with_computed_normal(
                                         fm, static_cast<int>(doc.meta_number("normal_orientation").value_or(1.0)));
      for (const auto& p : points) {
        try {
          check_immersion(imm, p);
        } catch (const DomainError& e) {
          throw SpecError(std::string("immersion invalid at ") + point_text(p) + ": " + e.what());
        } catch (const DegenerateError& e) {
          throw DegenerateError(std::string("immersion degenerate at ") + point_text(p) + ": " + e.what(),
                                e.smallest_eigenvalue());
        }
      }
      out.metric = induced_metric(imm);
      out.pair = induced_pair(imm);
      out.immersion = std::move(imm);
      break;
    }
  }
  return out;
}

}  // namespace gcinf

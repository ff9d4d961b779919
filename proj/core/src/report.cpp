#include "gcinf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gcinf/error.hpp"

namespace gcinf {
namespace {

void write_string(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void newline(std::string& out, int depth, bool indent) {
  if (!indent) return;
  out.push_back('\n');
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

JsonValue JsonValue::numbers(std::span<const double> xs) {
  Array a;
  a.reserve(xs.size());
  for (double x : xs) a.emplace_back(x);
  return JsonValue(std::move(a));
}

JsonValue& JsonValue::operator[](const std::string& key) {
  if (std::holds_alternative<std::nullptr_t>(v_)) v_ = Object{};
  auto* obj = std::get_if<Object>(&v_);
  if (!obj) throw Error("JsonValue: not an object");
  for (auto& [k, v] : *obj) {
    if (k == key) return v;
  }
  obj->emplace_back(key, JsonValue());
  return obj->back().second;
}

void JsonValue::push_back(JsonValue v) {
  if (std::holds_alternative<std::nullptr_t>(v_)) v_ = Array{};
  auto* arr = std::get_if<Array>(&v_);
  if (!arr) throw Error("JsonValue: not an array");
  arr->push_back(std::move(v));
}

std::string JsonValue::dump(bool indent) const {
  std::string out;
  write(out, 0, indent);
  if (indent) out.push_back('\n');
  return out;
}

void JsonValue::write(std::string& out, int depth, bool indent) const {
  if (std::holds_alternative<std::nullptr_t>(v_)) {
    out += "null";
  } else if (const auto* b = std::get_if<bool>(&v_)) {
    out += *b ? "true" : "false";
  } else if (const auto* d = std::get_if<double>(&v_)) {
    out += format_number(*d);
  } else if (const auto* s = std::get_if<std::string>(&v_)) {
    write_string(out, *s);
  } else if (const auto* a = std::get_if<Array>(&v_)) {
    if (a->empty()) {
      out += "[]";
      return;
    }
    // Arrays of plain numbers stay on one line.
    bool flat = true;
    for (const auto& e : *a) flat = flat && std::holds_alternative<double>(e.v_);
    out.push_back('[');
    for (std::size_t i = 0; i < a->size(); ++i) {
      if (i) out += flat && indent ? ", " : ",";
      if (!flat) newline(out, depth + 1, indent);
      (*a)[i].write(out, depth + 1, indent);
    }
    if (!flat) newline(out, depth, indent);
    out.push_back(']');
  } else {
    const auto& o = std::get<Object>(v_);
    if (o.empty()) {
      out += "{}";
      return;
    }
    out.push_back('{');
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (i) out.push_back(',');
      newline(out, depth + 1, indent);
      write_string(out, o[i].first);
      out += indent ? ": " : ":";
      o[i].second.write(out, depth + 1, indent);
    }
    newline(out, depth, indent);
    out.push_back('}');
  }
}

ResidualReport::ResidualReport(std::string name, double tolerance, Expectation expectation)
    : name_(std::move(name)), tolerance_(tolerance), expectation_(expectation) {}

void ResidualReport::add(std::span<const double> point, double residual) {
  points_.emplace_back(point.begin(), point.end());
  residuals_.push_back(residual);
}

void ResidualReport::skip(std::span<const double> point, double smallest_eigenvalue, std::string reason) {
  skipped_.push_back({std::vector<double>(point.begin(), point.end()), smallest_eigenvalue, std::move(reason)});
}

void ResidualReport::annotate(const std::string& key, double value) {
  for (auto& [k, v] : notes_) {
    if (k == key) {
      v = std::isnan(v) ? v : std::max(v, value);
      return;
    }
  }
  notes_.emplace_back(key, value);
}

double ResidualReport::max() const {
  double m = 0.0;
  for (double r : residuals_) {
    if (std::isnan(r)) return std::numeric_limits<double>::infinity();
    m = std::max(m, r);
  }
  return m;
}

double ResidualReport::mean() const {
  if (residuals_.empty()) return 0.0;
  double s = 0.0;
  for (double r : residuals_) s += std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
  return s / static_cast<double>(residuals_.size());
}

bool ResidualReport::passed() const {
  if (residuals_.empty()) return false;
  const double total = static_cast<double>(residuals_.size() + skipped_.size());
  if (static_cast<double>(skipped_.size()) > 0.1 * total) return false;
  const double m = max();
  return expectation_ == Expectation::at_most ? m <= tolerance_ : m > tolerance_;
}

JsonValue ResidualReport::to_json(bool include_points) const {
  JsonValue j = JsonValue::object();
  j["name"] = name_;
  j["expectation"] = expectation_ == Expectation::at_most ? "at_most" : "exceeds";
  j["tolerance"] = tolerance_;
  j["max"] = max();
  j["mean"] = mean();
  j["evaluated"] = evaluated();
  j["skipped"] = skipped_.size();
  j["passed"] = passed();
  for (const auto& [k, v] : notes_) j[k] = v;
  if (include_points) {
    JsonValue pts = JsonValue::array();
    for (std::size_t i = 0; i < residuals_.size(); ++i) {
      JsonValue e = JsonValue::object();
      e["point"] = JsonValue::numbers(points_[i]);
      e["residual"] = residuals_[i];
      pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
  }
  if (!skipped_.empty()) {
    JsonValue sk = JsonValue::array();
    for (const auto& s : skipped_) {
      JsonValue e = JsonValue::object();
      e["point"] = JsonValue::numbers(s.point);
      e["smallest_eigenvalue"] = s.smallest_eigenvalue;
      e["reason"] = s.reason;
      sk.push_back(std::move(e));
    }
    j["skipped_points"] = std::move(sk);
  }
  return j;
}

ResidualReport sample_check(std::string name, double tolerance, const std::vector<std::vector<double>>& points,
                            const std::function<double(std::span<const double>)>& residual, Expectation expectation) {
  ResidualReport report(std::move(name), tolerance, expectation);
  for (const auto& p : points) {
    try {
      report.add(p, residual(p));
    } catch (const DegenerateError& e) {
      report.skip(p, e.smallest_eigenvalue(), e.what());
    } catch (const Error&) {
      report.add(p, std::numeric_limits<double>::quiet_NaN());
    }
  }
  return report;
}

double relative_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("relative_difference: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::max(1.0, std::sqrt(den));
}

}  // namespace gcinf

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gcinf {

// Minimal ordered JSON tree for reports. Object keys keep insertion order;
// numbers are written with 17 significant digits so output is diffable and
// round-trips.
class JsonValue {
 public:
  using Array = std::vector<JsonValue>;
  using Object = std::vector<std::pair<std::string, JsonValue>>;

  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}  // NOLINT
  JsonValue(bool b) : v_(b) {}                // NOLINT
  JsonValue(double d) : v_(d) {}              // NOLINT
  JsonValue(int i) : v_(static_cast<double>(i)) {}  // NOLINT
  JsonValue(long long i) : v_(static_cast<double>(i)) {}  // NOLINT
  JsonValue(std::size_t i) : v_(static_cast<double>(i)) {}  // NOLINT
  JsonValue(const char* s) : v_(std::string(s)) {}  // NOLINT
  JsonValue(std::string s) : v_(std::move(s)) {}    // NOLINT
  JsonValue(Array a) : v_(std::move(a)) {}          // NOLINT
  JsonValue(Object o) : v_(std::move(o)) {}         // NOLINT

  static JsonValue array() { return JsonValue(Array{}); }
  static JsonValue object() { return JsonValue(Object{}); }
  static JsonValue numbers(std::span<const double> xs);

  // Object access; appends the key if missing.
  JsonValue& operator[](const std::string& key);
  void push_back(JsonValue v);

  bool is_object() const { return std::holds_alternative<Object>(v_); }
  bool is_array() const { return std::holds_alternative<Array>(v_); }

  // Pretty-printed with two-space indent when `indent` is true.
  std::string dump(bool indent = true) const;

 private:
  void write(std::string& out, int depth, bool indent) const;
  std::variant<std::nullptr_t, bool, double, std::string, Array, Object> v_;
};

// "%.17g"; non-finite values become the strings "nan", "inf", "-inf".
std::string format_number(double x);

enum class Expectation { at_most, exceeds };

// Residuals of one named check over sampled points.
class ResidualReport {
 public:
  struct Skipped {
    std::vector<double> point;
    double smallest_eigenvalue;
    std::string reason;
  };

  ResidualReport(std::string name, double tolerance, Expectation expectation = Expectation::at_most);

  void add(std::span<const double> point, double residual);
  void skip(std::span<const double> point, double smallest_eigenvalue, std::string reason);
  void set_tolerance(double tol) { tolerance_ = tol; }
  void set_name(std::string name) { name_ = std::move(name); }
  // Named scalar annotation; repeated keys keep the largest value.
  void annotate(const std::string& key, double value);

  const std::string& name() const noexcept { return name_; }
  double tolerance() const noexcept { return tolerance_; }
  Expectation expectation() const noexcept { return expectation_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }
  const std::vector<Skipped>& skipped() const noexcept { return skipped_; }
  std::size_t evaluated() const noexcept { return residuals_.size(); }
  // NaN residuals count as +infinity.
  double max() const;
  double mean() const;
  // at_most: max <= tolerance; exceeds: max > tolerance. Fails when no
  // point was evaluated or more than 10% of points were skipped.
  bool passed() const;

  JsonValue to_json(bool include_points = true) const;

 private:
  std::string name_;
  double tolerance_;
  Expectation expectation_;
  std::vector<double> residuals_;
  std::vector<std::vector<double>> points_;
  std::vector<Skipped> skipped_;
  std::vector<std::pair<std::string, double>> notes_;
};

// Evaluates `residual` at every point. A DegenerateError skips the point
// (recording its smallest eigenvalue); any other library error is recorded
// as a NaN residual, which fails the check.
ResidualReport sample_check(std::string name, double tolerance, const std::vector<std::vector<double>>& points,
                            const std::function<double(std::span<const double>)>& residual,
                            Expectation expectation = Expectation::at_most);

// ||a - b|| / max(1, ||b||) in the Euclidean norm of the flattened arrays.
double relative_difference(std::span<const double> a, std::span<const double> b);

}  // namespace gcinf

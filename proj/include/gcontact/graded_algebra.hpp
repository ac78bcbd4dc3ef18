#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcontact/errors.hpp"

namespace gcontact {

using Rational = mpq_class;

/// (-1)^k for any integer k.
constexpr int sign_power(long k) { return (k % 2 == 0) ? 1 : -1; }

enum class GeneratorKind { coordinate, differential, exponential };

struct Generator {
  std::string name;
  int degree = 0;       // internal degree
  int form_degree = 0;  // 1 for differentials, 0 otherwise
  GeneratorKind kind = GeneratorKind::coordinate;
  // differential -> its coordinate; coordinate -> its differential;
  // exponential -> the degree-0 coordinate t it exponentiates.
  int partner = -1;

  bool odd() const { return ((degree + form_degree) & 1) != 0; }
};

struct CoordinateSpec {
  std::string name;
  int degree = 0;
};

struct ChartOptions {
  std::optional<int> contact_degree;
  /// When set, adds a formal exponential generator `exponential_name` standing
  /// for e^t, where t is the named degree-0 coordinate.
  std::optional<std::string> exponential_of;
  std::string exponential_name = "u";
  /// Reject negative coordinate degrees (N-manifold charts).
  bool require_nonnegative = true;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Ordered generator set of a coordinate chart.  Every coordinate is followed
/// immediately by its differential; the exponential generator (if any) is last.
class Chart {
 public:
  static ChartPtr make(const std::vector<CoordinateSpec>& coordinates, const ChartOptions& options = {});

  std::size_t size() const { return generators_.size(); }
  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<Generator>& generators() const { return generators_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownGenerator.
  std::size_t index_of(std::string_view name) const;

  /// Indices of the coordinate generators, in chart order.
  const std::vector<std::size_t>& coordinates() const { return coordinates_; }
  std::vector<CoordinateSpec> coordinate_specs() const;
  std::size_t differential_of(std::size_t coordinate) const;
  std::optional<std::size_t> exponential() const { return exponential_; }
  std::optional<int> contact_degree() const { return options_.contact_degree; }
  const ChartOptions& options() const { return options_; }

  bool odd(std::size_t i) const { return generators_[i].odd(); }
  std::size_t odd_count() const;
  bool all_degree_zero() const;

 private:
  Chart() = default;

  std::vector<Generator> generators_;
  std::vector<std::size_t> coordinates_;
  std::optional<std::size_t> exponential_;
  ChartOptions options_;
};

/// Exponent vector indexed by chart generator.  Odd generators have exponent
/// 0 or 1; the exponential generator may carry any integer exponent.
using Exponents = std::vector<int>;

/// Degree of a graded element: an integer or "mixed" for inhomogeneous input.
class Degree {
 public:
  Degree(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  static Degree mixed() {
    Degree d(0);
    d.mixed_ = true;
    return d;
  }

  bool is_mixed() const { return mixed_; }
  /// Throws InhomogeneousInput on a mixed degree.
  int value() const;

  friend bool operator==(const Degree&, const Degree&) = default;

 private:
  int value_ = 0;
  bool mixed_ = false;
};

struct NormalForm {
  int sign = 1;  // 0 when an odd generator repeats
  Exponents monomial;
};

/// Sorts a word of generator indices into chart order, tracking the Koszul sign.
NormalForm normalize(const Chart& chart, std::span<const std::size_t> word);
/// Same, with generators given by name.  Throws UnknownGenerator.
NormalForm normalize(const Chart& chart, std::span<const std::string> word);

/// Sign incurred when the product a*b of two normal-ordered monomials is
/// brought to normal order; 0 if an odd generator repeats.
int product_sign(const Chart& chart, const Exponents& a, const Exponents& b);

/// Exact polynomial in the graded-commutative algebra generated by a chart.
/// Terms are stored in normal order with nonzero coefficients only.
class GradedPoly {
 public:
  using Terms = std::map<Exponents, Rational>;

  explicit GradedPoly(ChartPtr chart);

  static GradedPoly constant(ChartPtr chart, const Rational& c);
  static GradedPoly generator(ChartPtr chart, std::size_t index);
  static GradedPoly generator(ChartPtr chart, std::string_view name);
  /// `exponents` must already be normal ordered (odd exponents 0/1).
  static GradedPoly monomial(ChartPtr chart, Exponents exponents, const Rational& c = 1);

  const ChartPtr& chart() const { return chart_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Rational constant_term() const;
  Rational coefficient(const Exponents& monomial) const;

  Degree degree() const;
  Degree form_degree() const;
  /// Terms of internal degree `degree` only.
  GradedPoly component(int degree) const;
  std::map<int, GradedPoly> components() const;
  /// Largest sum of absolute exponents over all terms (0 for the zero poly).
  int total_degree() const;

  void add_term(const Exponents& monomial, const Rational& c);

  GradedPoly& operator+=(const GradedPoly& other);
  GradedPoly& operator-=(const GradedPoly& other);
  GradedPoly& operator*=(const Rational& c);
  GradedPoly operator-() const;

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend bool operator==(const GradedPoly& a, const GradedPoly& b);

  /// Expression-grammar rendering, e.g. `2*x*p - 1/2*dtheta`.
  std::string to_string() const;

 private:
  ChartPtr chart_;
  Terms terms_;
};

GradedPoly mul(const GradedPoly& f, const GradedPoly& g);
Degree degree_of(const GradedPoly& f);
/// Scales every monomial by its internal degree (the Euler vector field).
GradedPoly euler_apply(const GradedPoly& f);

/// Re-expresses `f` on `target`, matching generators by name.
GradedPoly transport(const GradedPoly& f, const ChartPtr& target);

void require_same_chart(const GradedPoly& a, const GradedPoly& b);
std::string format_rational(const Rational& q);

}  // namespace gcontact

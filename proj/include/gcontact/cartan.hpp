#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gcontact/graded_algebra.hpp"

namespace gcontact {

/// Differential forms are polynomials in coordinates and their differentials.
using BigradedForm = GradedPoly;

struct Bidegree {
  Degree form;      // p: number of differentials
  Degree internal;  // l: internal degree
};

Bidegree bidegree(const BigradedForm& beta);

/// Homogeneous graded vector field, stored by its value on each coordinate.
/// On the exponential generator u = e^t it acts as X(u) = u X(t).
class Derivation {
 public:
  /// The zero derivation of the given degree.
  Derivation(ChartPtr chart, int degree);

  /// Throws InhomogeneousInput if some value has the wrong degree.
  static Derivation from_values(ChartPtr chart, int degree, const std::map<std::string, GradedPoly>& values);
  static Derivation from_values(ChartPtr chart, int degree, std::vector<GradedPoly> values);
  /// Coordinate vector field d/dz; degree -|z|.
  static Derivation partial(ChartPtr chart, std::string_view coordinate);
  static Derivation euler(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool odd() const { return (degree_ & 1) != 0; }

  /// Value on the k-th coordinate (in `chart()->coordinates()` order).
  const GradedPoly& value(std::size_t k) const { return values_.at(k); }
  const GradedPoly& value(std::string_view coordinate) const;
  const std::vector<GradedPoly>& values() const { return values_; }

  /// Applies the derivation to a function (no differentials allowed).
  GradedPoly operator()(const GradedPoly& f) const;

  bool is_zero() const;

  Derivation& operator+=(const Derivation& other);
  Derivation& operator-=(const Derivation& other);
  Derivation& operator*=(const Rational& c);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Rational& c, Derivation a) { return a *= c; }
  /// f X, of degree |f| + |X|; f must be homogeneous.
  friend Derivation operator*(const GradedPoly& f, const Derivation& x);
  friend bool operator==(const Derivation& a, const Derivation& b);

  /// One line per coordinate: `X(z) = ...`.
  std::string describe(std::string_view symbol = "X") const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<Exponents, GradedPoly> images;
  };

  void reset_cache() { cache_ = std::make_shared<Cache>(); }

  ChartPtr chart_;
  int degree_ = 0;
  std::vector<GradedPoly> values_;
  std::shared_ptr<Cache> cache_;
};

/// Moves a derivation to a chart containing all its coordinates; coordinates
/// missing from the source get the value 0.
Derivation transport(const Derivation& x, const ChartPtr& target);

/// Applies the superderivation of the given parity determined by its value on
/// each generator, via the graded Leibniz rule.
GradedPoly apply_superderivation(const GradedPoly& f, int parity,
                                 const std::function<GradedPoly(std::size_t generator)>& value);

/// [X, Y] = XY - (-1)^{|X||Y|} YX.
Derivation commutator(const Derivation& x, const Derivation& y);
bool is_homological(const Derivation& q);

/// de Rham differential, bidegree (1, 0).
BigradedForm d(const BigradedForm& beta);
/// Contraction i_X, bidegree (-1, |X|).
BigradedForm contract(const Derivation& x, const BigradedForm& beta);
/// Lie derivative L_X = i_X d + (-1)^{|X|} d i_X.
BigradedForm lie(const Derivation& x, const BigradedForm& beta);

}  // namespace gcontact

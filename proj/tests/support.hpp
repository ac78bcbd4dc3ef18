#pragma once

// Shared fixtures for the test binaries: standard charts and seeded random
// generators of homogeneous polynomials, forms and vector fields.

#include <random>
#include <string>
#include <vector>

#include "gcontact/cartan.hpp"
#include "gcontact/contact.hpp"
#include "gcontact/graded_algebra.hpp"

namespace gcontact::testing {

using Rng = std::mt19937_64;

inline GradedPoly gen(const ChartPtr& c, const std::string& name) { return GradedPoly::generator(c, name); }
inline GradedPoly cst(const ChartPtr& c, const Rational& q) { return GradedPoly::constant(c, q); }

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational(Rng& rng) {
  int num = uniform_int(rng, -4, 4);
  if (num == 0) num = 1;
  Rational q(num, uniform_int(rng, 1, 3));
  q.canonicalize();
  return q;
}

/// All normal-ordered monomials with the given internal and form degree whose
/// total exponent is at most `max_total`.
inline std::vector<Exponents> monomials(const Chart& chart, int degree, int form_degree, int max_total,
                                        bool allow_exponential = false) {
  std::vector<Exponents> out;
  Exponents e(chart.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int deg, int form, int total) -> void {
    if (i == chart.size()) {
      if (deg == degree && form == form_degree) out.push_back(e);
      return;
    }
    const auto& g = chart.generator(i);
    if (g.kind == GeneratorKind::exponential && !allow_exponential) {
      self(self, i + 1, deg, form, total);
      return;
    }
    const int cap = g.odd() ? 1 : max_total - total;
    for (int k = 0; k <= cap && total + k <= max_total; ++k) {
      if (deg + k * g.degree > degree + 0 && g.degree > 0) break;
      if (form + k * g.form_degree > form_degree) break;
      e[i] = k;
      self(self, i + 1, deg + k * g.degree, form + k * g.form_degree, total + k);
    }
    e[i] = 0;
  };
  rec(rec, 0, 0, 0, 0);
  return out;
}

inline GradedPoly random_poly(Rng& rng, const ChartPtr& chart, int degree, int form_degree = 0, int max_total = 3,
                              int max_terms = 3) {
  auto pool = monomials(*chart, degree, form_degree, max_total);
  GradedPoly p(chart);
  if (pool.empty()) return p;
  const int terms = uniform_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    p.add_term(pool[rng() % pool.size()], small_rational(rng));
  }
  return p;
}

inline Derivation random_derivation(Rng& rng, const ChartPtr& chart, int degree, int max_total = 2) {
  std::vector<GradedPoly> values;
  for (auto g : chart->coordinates()) {
    const int want = degree + chart->generator(g).degree;
    values.push_back(want < 0 ? GradedPoly(chart) : random_poly(rng, chart, want, 0, max_total, 2));
  }
  return Derivation::from_values(chart, degree, std::move(values));
}

/// Darboux chart of degree 1 on a d-dimensional base: x_i (0), p_i (1), theta (1).
inline ChartPtr darboux1_chart(int d) {
  std::vector<CoordinateSpec> specs;
  for (int i = 1; i <= d; ++i) specs.push_back({"x" + std::to_string(i), 0});
  for (int i = 1; i <= d; ++i) specs.push_back({"p" + std::to_string(i), 1});
  specs.push_back({"theta", 1});
  ChartOptions opts;
  opts.contact_degree = 1;
  return Chart::make(specs, opts);
}

inline ContactChart darboux1(int d) {
  auto c = darboux1_chart(d);
  GradedPoly alpha = gen(c, "dtheta");
  for (int i = 1; i <= d; ++i) alpha += gen(c, "p" + std::to_string(i)) * gen(c, "dx" + std::to_string(i));
  return ContactChart::make(c, alpha);
}

/// Degree-2 chart x_i (0), v_a (1), p_i (2), theta (2) with the form
/// p_i dx^i + 1/2 g_ab v^a dv^b + 1/2 dtheta, g diagonal with entries `g`.
inline ContactChart darboux2(int d, const std::vector<Rational>& g) {
  std::vector<CoordinateSpec> specs;
  for (int i = 1; i <= d; ++i) specs.push_back({"x" + std::to_string(i), 0});
  for (std::size_t a = 1; a <= g.size(); ++a) specs.push_back({"v" + std::to_string(a), 1});
  for (int i = 1; i <= d; ++i) specs.push_back({"p" + std::to_string(i), 2});
  specs.push_back({"theta", 2});
  ChartOptions opts;
  opts.contact_degree = 2;
  auto c = Chart::make(specs, opts);
  GradedPoly alpha = cst(c, Rational(1, 2)) * gen(c, "dtheta");
  for (int i = 1; i <= d; ++i) alpha += gen(c, "p" + std::to_string(i)) * gen(c, "dx" + std::to_string(i));
  for (std::size_t a = 1; a <= g.size(); ++a) {
    const auto v = "v" + std::to_string(a);
    alpha += cst(c, g[a - 1] / 2) * gen(c, v) * gen(c, "d" + v);
  }
  return ContactChart::make(c, alpha);
}

/// Ungraded R^3 with alpha = dz - y dx.
inline ContactChart standard_r3() {
  auto c = Chart::make({{"x", 0}, {"y", 0}, {"z", 0}});
  return ContactChart::make(c, gen(c, "dz") - gen(c, "y") * gen(c, "dx"));
}

}  // namespace gcontact::testing

#include "gcontact/graded_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace gcontact {

ChartPtr Chart::make(const std::vector<CoordinateSpec>& coordinates, const ChartOptions& options) {
  auto chart = std::shared_ptr<Chart>(new Chart());
  chart->options_ = options;
  std::set<std::string> names;
  auto claim = [&](const std::string& name) {
    if (name.empty()) throw InvalidChart("empty generator name");
    if (!names.insert(name).second) throw InvalidChart("duplicate generator name '" + name + "'");
  };
  for (const auto& spec : coordinates) {
    if (options.require_nonnegative && spec.degree < 0) {
      throw InvalidChart("coordinate '" + spec.name + "' has negative degree " + std::to_string(spec.degree));
    }
    claim(spec.name);
    claim("d" + spec.name);
    const int coord = static_cast<int>(chart->generators_.size());
    chart->coordinates_.push_back(chart->generators_.size());
    chart->generators_.push_back({spec.name, spec.degree, 0, GeneratorKind::coordinate, coord + 1});
    chart->generators_.push_back({"d" + spec.name, spec.degree, 1, GeneratorKind::differential, coord});
  }
  if (options.exponential_of) {
    auto t = chart->find(*options.exponential_of);
    if (!t || chart->generators_[*t].kind != GeneratorKind::coordinate) {
      throw InvalidChart("exponential generator must pair with a coordinate, got '" + *options.exponential_of + "'");
    }
    if (chart->generators_[*t].degree != 0) {
      throw InvalidChart("exponential generator must pair with a degree-0 coordinate");
    }
    claim(options.exponential_name);
    chart->exponential_ = chart->generators_.size();
    chart->generators_.push_back(
        {options.exponential_name, 0, 0, GeneratorKind::exponential, static_cast<int>(*t)});
  }
  return chart;
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Chart::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw UnknownGenerator(std::string(name));
  return *i;
}

std::vector<CoordinateSpec> Chart::coordinate_specs() const {
  std::vector<CoordinateSpec> out;
  for (auto i : coordinates_) out.push_back({generators_[i].name, generators_[i].degree});
  return out;
}

std::size_t Chart::differential_of(std::size_t coordinate) const {
  const auto& g = generators_.at(coordinate);
  if (g.kind != GeneratorKind::coordinate) throw InvalidChart("'" + g.name + "' is not a coordinate");
  return static_cast<std::size_t>(g.partner);
}

std::size_t Chart::odd_count() const {
  return static_cast<std::size_t>(
      std::count_if(generators_.begin(), generators_.end(), [](const Generator& g) { return g.odd(); }));
}

bool Chart::all_degree_zero() const {
  return std::all_of(coordinates_.begin(), coordinates_.end(),
                     [this](std::size_t i) { return generators_[i].degree == 0; });
}

int Degree::value() const {
  if (mixed_) throw InhomogeneousInput("degree requested of an inhomogeneous element");
  return value_;
}

NormalForm normalize(const Chart& chart, std::span<const std::size_t> word) {
  std::vector<std::size_t> w(word.begin(), word.end());
  for (auto i : w) {
    if (i >= chart.size()) throw UnknownGenerator("#" + std::to_string(i));
  }
  int swaps = 0;
  // Insertion sort; each adjacent transposition of two odd generators flips the sign.
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      if (chart.odd(w[j - 1]) && chart.odd(w[j])) ++swaps;
      std::swap(w[j - 1], w[j]);
    }
  }
  NormalForm out;
  out.monomial.assign(chart.size(), 0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0 && w[k] == w[k - 1] && chart.odd(w[k])) {
      return {0, Exponents(chart.size(), 0)};
    }
    ++out.monomial[w[k]];
  }
  out.sign = sign_power(swaps);
  return out;
}

NormalForm normalize(const Chart& chart, std::span<const std::string> word) {
  std::vector<std::size_t> idx;
  idx.reserve(word.size());
  for (const auto& name : word) idx.push_back(chart.index_of(name));
  return normalize(chart, idx);
}

int product_sign(const Chart& chart, const Exponents& a, const Exponents& b) {
  int odd_after = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && chart.odd(i)) ++odd_after;
  }
  int parity = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!chart.odd(i)) continue;
    if (a[i] != 0) --odd_after;
    if (b[i] != 0) {
      if (a[i] != 0) return 0;
      parity += odd_after;
    }
  }
  return sign_power(parity);
}

GradedPoly::GradedPoly(ChartPtr chart) : chart_(std::move(chart)) {}

GradedPoly GradedPoly::constant(ChartPtr chart, const Rational& c) {
  GradedPoly p(chart);
  p.add_term(Exponents(chart->size(), 0), c);
  return p;
}

GradedPoly GradedPoly::generator(ChartPtr chart, std::size_t index) {
  if (index >= chart->size()) throw UnknownGenerator("#" + std::to_string(index));
  Exponents e(chart->size(), 0);
  e[index] = 1;
  return monomial(std::move(chart), std::move(e));
}

GradedPoly GradedPoly::generator(ChartPtr chart, std::string_view name) {
  const auto index = chart->index_of(name);
  return generator(std::move(chart), index);
}

GradedPoly GradedPoly::monomial(ChartPtr chart, Exponents exponents, const Rational& c) {
  if (exponents.size() != chart->size()) throw InvalidChart("exponent vector length mismatch");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const auto kind = chart->generator(i).kind;
    if (exponents[i] < 0 && kind != GeneratorKind::exponential) {
      throw InvalidChart("negative exponent on '" + chart->generator(i).name + "'");
    }
    if (chart->odd(i) && exponents[i] > 1) {
      GradedPoly zero(chart);
      return zero;
    }
  }
  GradedPoly p(chart);
  p.add_term(exponents, c);
  return p;
}

Rational GradedPoly::constant_term() const { return coefficient(Exponents(chart_->size(), 0)); }

Rational GradedPoly::coefficient(const Exponents& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

int monomial_degree(const Chart& chart, const Exponents& e) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * chart.generator(i).degree;
  return d;
}

int monomial_form_degree(const Chart& chart, const Exponents& e) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * chart.generator(i).form_degree;
  return d;
}

template <class F>
Degree common_degree(const GradedPoly::Terms& terms, F&& of) {
  if (terms.empty()) return Degree(0);
  const int first = of(terms.begin()->first);
  for (const auto& [m, c] : terms) {
    if (of(m) != first) return Degree::mixed();
  }
  return Degree(first);
}

}  // namespace

Degree GradedPoly::degree() const {
  return common_degree(terms_, [this](const Exponents& e) { return monomial_degree(*chart_, e); });
}

Degree GradedPoly::form_degree() const {
  return common_degree(terms_, [this](const Exponents& e) { return monomial_form_degree(*chart_, e); });
}

GradedPoly GradedPoly::component(int degree) const {
  GradedPoly out(chart_);
  for (const auto& [m, c] : terms_) {
    if (monomial_degree(*chart_, m) == degree) out.terms_.emplace(m, c);
  }
  return out;
}

std::map<int, GradedPoly> GradedPoly::components() const {
  std::map<int, GradedPoly> out;
  for (const auto& [m, c] : terms_) {
    auto [it, inserted] = out.try_emplace(monomial_degree(*chart_, m), chart_);
    it->second.terms_.emplace(m, c);
  }
  return out;
}

int GradedPoly::total_degree() const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int e : m) d += std::abs(e);
    best = std::max(best, d);
  }
  return best;
}

void GradedPoly::add_term(const Exponents& monomial, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(monomial, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void require_same_chart(const GradedPoly& a, const GradedPoly& b) {
  if (a.chart() == b.chart()) return;
  const auto& ga = a.chart()->generators();
  const auto& gb = b.chart()->generators();
  const bool same = ga.size() == gb.size() &&
                    std::equal(ga.begin(), ga.end(), gb.begin(), [](const Generator& x, const Generator& y) {
                      return x.name == y.name && x.degree == y.degree && x.form_degree == y.form_degree &&
                             x.kind == y.kind;
                    });
  if (!same) throw ChartMismatch();
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& other) {
  require_same_chart(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& other) {
  require_same_chart(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly out(*this);
  out *= Rational(-1);
  return out;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  require_same_chart(a, b);
  const Chart& chart = *a.chart_;
  GradedPoly out(a.chart_);
  Exponents prod(chart.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const int s = product_sign(chart, ma, mb);
      if (s == 0) continue;
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
      out.add_term(prod, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
    }
  }
  return out;
}

bool operator==(const GradedPoly& a, const GradedPoly& b) {
  require_same_chart(a, b);
  return a.terms_ == b.terms_;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print in ascending generator order, i.e. lowest monomials last in map
  // order; reverse iteration keeps constants at the end.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      std::string f = chart_->generator(i).name;
      if (m[i] != 1) f += "^" + std::to_string(m[i]);
      factors.push_back(std::move(f));
    }
    bool wrote = false;
    if (mag != 1 || factors.empty()) {
      os << format_rational(mag);
      wrote = true;
    }
    for (const auto& f : factors) {
      if (wrote) os << "*";
      os << f;
      wrote = true;
    }
  }
  return os.str();
}

GradedPoly mul(const GradedPoly& f, const GradedPoly& g) { return f * g; }

Degree degree_of(const GradedPoly& f) { return f.degree(); }

GradedPoly euler_apply(const GradedPoly& f) {
  GradedPoly out(f.chart());
  for (const auto& [m, c] : f.terms()) {
    const int d = monomial_degree(*f.chart(), m);
    out.add_term(m, c * d);
  }
  return out;
}

GradedPoly transport(const GradedPoly& f, const ChartPtr& target) {
  const Chart& src = *f.chart();
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    map[i] = target->index_of(src.generator(i).name);
    const auto& a = src.generator(i);
    const auto& b = target->generator(map[i]);
    if (a.degree != b.degree || a.form_degree != b.form_degree || a.kind != b.kind) {
      throw ChartMismatch();
    }
  }
  GradedPoly out(target);
  for (const auto& [m, c] : f.terms()) {
    Exponents e(target->size(), 0);
    std::vector<std::size_t> odd_targets;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      e[map[i]] = m[i];
      if (src.odd(i)) odd_targets.push_back(map[i]);
    }
    int inversions = 0;
    for (std::size_t i = 0; i < odd_targets.size(); ++i) {
      for (std::size_t j = i + 1; j < odd_targets.size(); ++j) {
        if (odd_targets[i] > odd_targets[j]) ++inversions;
      }
    }
    out.add_term(e, c * sign_power(inversions));
  }
  return out;
}

}  // namespace gcontact

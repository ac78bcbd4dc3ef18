#include "gcontact/cartan.hpp"

#include <sstream>

namespace gcontact {

Bidegree bidegree(const BigradedForm& beta) { return {beta.form_degree(), beta.degree()}; }

namespace {

std::size_t coordinate_position(const Chart& chart, std::size_t generator) {
  const auto& coords = chart.coordinates();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == generator) return k;
  }
  throw UnknownGenerator(chart.generator(generator).name);
}

void check_value_degree(const Chart& chart, int degree, std::size_t k, const GradedPoly& v) {
  if (v.is_zero()) return;
  const auto coord = chart.coordinates()[k];
  const Degree got = v.degree();
  const int want = degree + chart.generator(coord).degree;
  if (got.is_mixed() || got.value() != want) {
    throw InhomogeneousInput("value on '" + chart.generator(coord).name + "' has degree " +
                             (got.is_mixed() ? std::string("mixed") : std::to_string(got.value())) +
                             ", expected " + std::to_string(want));
  }
  if (!v.form_degree().is_mixed() && v.form_degree().value() != 0) {
    throw InhomogeneousInput("vector field values must be functions");
  }
}

}  // namespace

Derivation::Derivation(ChartPtr chart, int degree)
    : chart_(std::move(chart)), degree_(degree), cache_(std::make_shared<Cache>()) {
  values_.assign(chart_->coordinates().size(), GradedPoly(chart_));
}

Derivation Derivation::from_values(ChartPtr chart, int degree, std::vector<GradedPoly> values) {
  if (values.size() != chart->coordinates().size()) throw InvalidChart("derivation value count mismatch");
  Derivation out(chart, degree);
  for (std::size_t k = 0; k < values.size(); ++k) {
    require_same_chart(values[k], out.values_[k]);
    check_value_degree(*chart, degree, k, values[k]);
  }
  out.values_ = std::move(values);
  return out;
}

Derivation Derivation::from_values(ChartPtr chart, int degree, const std::map<std::string, GradedPoly>& values) {
  std::vector<GradedPoly> v(chart->coordinates().size(), GradedPoly(chart));
  for (const auto& [name, value] : values) {
    v[coordinate_position(*chart, chart->index_of(name))] = value;
  }
  return from_values(std::move(chart), degree, std::move(v));
}

Derivation Derivation::partial(ChartPtr chart, std::string_view coordinate) {
  const auto g = chart->index_of(coordinate);
  const auto k = coordinate_position(*chart, g);
  Derivation out(chart, -chart->generator(g).degree);
  out.values_[k] = GradedPoly::constant(chart, 1);
  return out;
}

Derivation Derivation::euler(ChartPtr chart) {
  Derivation out(chart, 0);
  for (std::size_t k = 0; k < chart->coordinates().size(); ++k) {
    const auto g = chart->coordinates()[k];
    out.values_[k] = GradedPoly::generator(chart, g) * Rational(chart->generator(g).degree);
  }
  return out;
}

const GradedPoly& Derivation::value(std::string_view coordinate) const {
  return values_.at(coordinate_position(*chart_, chart_->index_of(coordinate)));
}

GradedPoly apply_superderivation(const GradedPoly& f, int parity,
                                 const std::function<GradedPoly(std::size_t generator)>& value) {
  const ChartPtr& chart = f.chart();
  const std::size_t n = chart->size();
  std::vector<std::optional<GradedPoly>> images(n);
  auto image = [&](std::size_t i) -> const GradedPoly& {
    if (!images[i]) images[i] = value(i);
    return *images[i];
  };
  GradedPoly out(chart);
  for (const auto& [m, c] : f.terms()) {
    Exponents prefix(n, 0);
    int prefix_parity = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      const GradedPoly& v = image(i);
      if (!v.is_zero()) {
        Exponents rest = m;
        for (std::size_t j = 0; j < i; ++j) rest[j] = 0;
        rest[i] -= 1;
        const int s = sign_power(static_cast<long>(parity) * prefix_parity);
        GradedPoly term = GradedPoly::monomial(chart, prefix) * v * GradedPoly::monomial(chart, rest);
        term *= Rational(c * m[i] * s);
        out += term;
      }
      prefix[i] = m[i];
      if (chart->odd(i)) prefix_parity += m[i];
    }
  }
  return out;
}

GradedPoly Derivation::operator()(const GradedPoly& f) const {
  require_same_chart(f, GradedPoly(chart_));
  const Chart& chart = *chart_;
  auto value = [&](std::size_t g) -> GradedPoly {
    const auto& gen = chart.generator(g);
    switch (gen.kind) {
      case GeneratorKind::coordinate:
        return values_[coordinate_position(chart, g)];
      case GeneratorKind::exponential:
        return GradedPoly::generator(chart_, g) * values_[coordinate_position(chart, gen.partner)];
      case GeneratorKind::differential:
        break;
    }
    throw InvalidChart("vector fields act on functions; use lie() for forms");
  };
  GradedPoly out(chart_);
  for (const auto& [m, c] : f.terms()) {
    GradedPoly image(chart_);
    bool cached = false;
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->images.find(m);
      if (it != cache_->images.end()) {
        image = it->second;
        cached = true;
      }
    }
    if (!cached) {
      image = apply_superderivation(GradedPoly::monomial(chart_, m), degree_ & 1, value);
      std::lock_guard lock(cache_->mutex);
      cache_->images.emplace(m, image);
    }
    out += image * c;
  }
  return out;
}

bool Derivation::is_zero() const {
  for (const auto& v : values_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Derivation& Derivation::operator+=(const Derivation& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    degree_ = other.degree_;
  } else if (other.degree_ != degree_) {
    throw InhomogeneousInput("sum of derivations of degrees " + std::to_string(degree_) + " and " +
                             std::to_string(other.degree_));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_.at(k);
  reset_cache();
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) {
  Derivation neg = other;
  neg *= Rational(-1);
  return *this += neg;
}

Derivation& Derivation::operator*=(const Rational& c) {
  for (auto& v : values_) v *= c;
  reset_cache();
  return *this;
}

Derivation operator*(const GradedPoly& f, const Derivation& x) {
  const int df = f.is_zero() ? 0 : f.degree().value();
  Derivation out(x.chart_, df + x.degree_);
  for (std::size_t k = 0; k < x.values_.size(); ++k) out.values_[k] = f * x.values_[k];
  return out;
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.values_.size() != b.values_.size()) return false;
  for (std::size_t k = 0; k < a.values_.size(); ++k) {
    if (!(a.values_[k] == b.values_[k])) return false;
  }
  return a.is_zero() || a.degree_ == b.degree_;
}

std::string Derivation::describe(std::string_view symbol) const {
  std::ostringstream os;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    os << symbol << "(" << chart_->generator(chart_->coordinates()[k]).name << ") = " << values_[k].to_string()
       << "\n";
  }
  return os.str();
}

Derivation transport(const Derivation& x, const ChartPtr& target) {
  std::vector<GradedPoly> values(target->coordinates().size(), GradedPoly(target));
  const auto& src = *x.chart();
  for (std::size_t k = 0; k < src.coordinates().size(); ++k) {
    const auto g = target->index_of(src.generator(src.coordinates()[k]).name);
    values[coordinate_position(*target, g)] = transport(x.value(k), target);
  }
  return Derivation::from_values(target, x.degree(), std::move(values));
}

Derivation commutator(const Derivation& x, const Derivation& y) {
  if (x.chart() != y.chart()) require_same_chart(GradedPoly(x.chart()), GradedPoly(y.chart()));
  const int s = sign_power(static_cast<long>(x.degree()) * y.degree());
  std::vector<GradedPoly> values;
  values.reserve(x.values().size());
  for (std::size_t k = 0; k < x.values().size(); ++k) {
    GradedPoly v = x(y.value(k));
    GradedPoly w = y(x.value(k));
    w *= Rational(s);
    values.push_back(v - w);
  }
  return Derivation::from_values(x.chart(), x.degree() + y.degree(), std::move(values));
}

bool is_homological(const Derivation& q) { return q.degree() == 1 && commutator(q, q).is_zero(); }

BigradedForm d(const BigradedForm& beta) {
  const ChartPtr& chart = beta.chart();
  return apply_superderivation(beta, 1, [&](std::size_t g) -> GradedPoly {
    const auto& gen = chart->generator(g);
    switch (gen.kind) {
      case GeneratorKind::coordinate:
        return GradedPoly::generator(chart, static_cast<std::size_t>(gen.partner));
      case GeneratorKind::differential:
        return GradedPoly(chart);
      case GeneratorKind::exponential: {
        const auto dt = chart->differential_of(static_cast<std::size_t>(gen.partner));
        return GradedPoly::generator(chart, g) * GradedPoly::generator(chart, dt);
      }
    }
    return GradedPoly(chart);
  });
}

BigradedForm contract(const Derivation& x, const BigradedForm& beta) {
  require_same_chart(beta, GradedPoly(x.chart()));
  const ChartPtr& chart = beta.chart();
  return apply_superderivation(beta, (x.degree() + 1) & 1, [&](std::size_t g) -> GradedPoly {
    const auto& gen = chart->generator(g);
    if (gen.kind != GeneratorKind::differential) return GradedPoly(chart);
    return x.value(coordinate_position(*chart, static_cast<std::size_t>(gen.partner)));
  });
}

BigradedForm lie(const Derivation& x, const BigradedForm& beta) {
  require_same_chart(beta, GradedPoly(x.chart()));
  const ChartPtr& chart = beta.chart();
  const int s = sign_power(x.degree());
  return apply_superderivation(beta, x.degree() & 1, [&](std::size_t g) -> GradedPoly {
    const auto& gen = chart->generator(g);
    switch (gen.kind) {
      case GeneratorKind::coordinate:
        return x.value(coordinate_position(*chart, g));
      case GeneratorKind::differential: {
        GradedPoly v = d(x.value(coordinate_position(*chart, static_cast<std::size_t>(gen.partner))));
        v *= Rational(s);
        return v;
      }
      case GeneratorKind::exponential:
        return GradedPoly::generator(chart, g) *
               x.value(coordinate_position(*chart, static_cast<std::size_t>(gen.partner)));
    }
    return GradedPoly(chart);
  });
}

}  // namespace gcontact

#include "gcontact/symplectization.hpp"

#include <algorithm>

namespace gcontact {

namespace {

std::string fresh_name(const Chart& chart, const std::string& base) {
  std::string name = base;
  // names must also leave room for the differential "d" + name
  while (chart.find(name) || chart.find("d" + name)) name += "_";
  return name;
}

}  // namespace

Symplectization Symplectization::make(const ContactChart& c) {
  if (c.verdict() != ContactVerdict::contact) throw NotContact("symplectization needs a contact chart");
  const Chart& src = *c.chart();
  auto specs = src.coordinate_specs();
  const std::string t = fresh_name(src, "t");
  specs.push_back({t, 0});
  ChartOptions opts = src.options();
  opts.exponential_of = t;
  opts.exponential_name = "u";
  while (std::any_of(specs.begin(), specs.end(), [&](const CoordinateSpec& s) {
    return s.name == opts.exponential_name || "d" + s.name == opts.exponential_name;
  })) {
    opts.exponential_name += "_";
  }
  ChartPtr ext = Chart::make(specs, opts);

  const GradedPoly u = GradedPoly::generator(ext, *ext->exponential());
  const BigradedForm alpha = transport(c.alpha(), ext);
  BigradedForm omega = d(u * alpha);
  const BigradedForm reduced = GradedPoly::generator(ext, "d" + t) * alpha + transport(c.dalpha(), ext);

  Derivation z = Derivation::partial(ext, t);
  if (!d(omega).is_zero()) throw Error("symplectic form is not closed");
  if (!(lie(z, omega) == omega)) throw Error("symplectic form is not homogeneous");

  const auto& coords = ext->coordinates();
  std::vector<std::vector<GradedPoly>> rows;
  rows.reserve(coords.size());
  for (auto g : coords) {
    rows.push_back(one_form_coefficients(contract(Derivation::partial(ext, ext->generator(g).name), reduced)));
  }
  FlatSystem system(ext, std::move(rows));
  if (!system.constant_part_invertible()) throw NotContact("symplectic form is degenerate");

  return Symplectization(std::make_shared<State>(
      State{c, ext, t, opts.exponential_name, std::move(omega), std::move(z), std::move(system)}));
}

GradedPoly Symplectization::extend(const GradedPoly& f) const { return transport(f, chart()); }

Derivation Symplectization::extend(const Derivation& x) const { return transport(x, chart()); }

GradedPoly Symplectization::lift_function(const GradedPoly& f) const {
  return GradedPoly::generator(chart(), *chart()->exponential()) * extend(f);
}

Derivation Symplectization::hamiltonian(const GradedPoly& f) const {
  const ChartPtr& ext = chart();
  require_same_chart(f, GradedPoly(ext));
  const int n = base().n();
  if (f.is_zero()) return Derivation(ext, -n);
  const Degree df = f.degree();
  if (df.is_mixed()) throw InhomogeneousInput("hamiltonian needs a homogeneous function");
  const int deg = df.value();
  // i_X omega = u i_X(reduced), so solve against the reduced form with target u^{-1} (...)
  Exponents inv(ext->size(), 0);
  inv[*ext->exponential()] = -1;
  BigradedForm target = GradedPoly::monomial(ext, inv) * d(f);
  target *= Rational(sign_power(deg - n - 1));
  auto values = state_->system.solve(one_form_coefficients(target));
  return Derivation::from_values(ext, deg - n, std::move(values));
}

GradedPoly Symplectization::poisson_bracket(const GradedPoly& f, const GradedPoly& g) const {
  GradedPoly out(chart());
  require_same_chart(g, out);
  for (const auto& [deg, fh] : f.components()) out += hamiltonian(fh)(g);
  return out;
}

BigradedForm Symplectization::lambda() const {
  const int n = base().n();
  if (n == 0) throw InvalidChart("lambda = (1/n) i_eps omega needs n > 0");
  BigradedForm out = contract(Derivation::euler(chart()), omega());
  out *= Rational(1, n);
  return out;
}

BigradedForm Symplectization::zero_section_pullback(const BigradedForm& beta) const {
  require_same_chart(beta, GradedPoly(chart()));
  const ChartPtr& src = base().chart();
  const std::size_t keep = src->size();
  BigradedForm out(src);
  for (const auto& [m, c] : beta.terms()) {
    bool vanishes = false;
    for (std::size_t i = keep; i < m.size(); ++i) {
      if (chart()->generator(i).kind != GeneratorKind::exponential && m[i] != 0) vanishes = true;
    }
    if (vanishes) continue;
    out.add_term(Exponents(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(keep)), c);
  }
  return out;
}

Symplectization symplectize(const ContactChart& c) { return Symplectization::make(c); }

}  // namespace gcontact

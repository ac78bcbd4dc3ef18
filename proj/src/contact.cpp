#include "gcontact/contact.hpp"

namespace gcontact {

std::string to_string(ContactVerdict v) {
  switch (v) {
    case ContactVerdict::contact:
      return "contact";
    case ContactVerdict::indeterminate:
      return "indeterminate";
    case ContactVerdict::degenerate:
      return "degenerate";
  }
  return "?";
}

std::vector<GradedPoly> one_form_coefficients(const BigradedForm& beta) {
  const ChartPtr& chart = beta.chart();
  const auto& coords = chart->coordinates();
  std::vector<GradedPoly> out(coords.size(), GradedPoly(chart));
  std::vector<int> slot(chart->size(), -1);
  for (std::size_t k = 0; k < coords.size(); ++k) slot[chart->differential_of(coords[k])] = static_cast<int>(k);

  for (const auto& [m, c] : beta.terms()) {
    int found = -1;
    int forms = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (chart->generator(i).kind == GeneratorKind::differential && m[i] != 0) {
        forms += m[i];
        found = static_cast<int>(i);
      }
    }
    if (forms != 1) throw InhomogeneousInput("expected a 1-form, got a term of form degree " + std::to_string(forms));
    int after = 0;
    for (std::size_t i = static_cast<std::size_t>(found) + 1; i < m.size(); ++i) {
      if (chart->odd(i)) after += m[i];
    }
    const int s = chart->odd(static_cast<std::size_t>(found)) ? sign_power(after) : 1;
    Exponents rest = m;
    rest[static_cast<std::size_t>(found)] = 0;
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(found)])].add_term(rest, c * s);
  }
  return out;
}

BigradedForm one_form(const ChartPtr& chart, const std::vector<GradedPoly>& coefficients) {
  BigradedForm out(chart);
  const auto& coords = chart->coordinates();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coefficients[k].is_zero()) continue;
    out += coefficients[k] * GradedPoly::generator(chart, chart->differential_of(coords[k]));
  }
  return out;
}

BigradedForm flat(const Derivation& x, const ContactChart& c) {
  if (x.is_zero()) return BigradedForm(c.chart());
  return contract(x, c.alpha()) * c.alpha() + contract(x, c.dalpha());
}

ContactChart ContactChart::make(ChartPtr chart, BigradedForm alpha) {
  require_same_chart(alpha, GradedPoly(chart));
  const Bidegree bd = bidegree(alpha);
  if (alpha.is_zero() || bd.form.is_mixed() || bd.form.value() != 1) {
    throw InhomogeneousInput("contact form must be a nonzero 1-form");
  }
  if (bd.internal.is_mixed()) throw InhomogeneousInput("contact form must have homogeneous internal degree");

  const auto& coords = chart->coordinates();
  BigradedForm dalpha = d(alpha);
  std::vector<std::vector<GradedPoly>> rows;
  rows.reserve(coords.size());
  auto tmp = std::make_shared<State>(State{chart, alpha, dalpha, bd.internal.value(), FlatSystem(chart, {}),
                                           ContactVerdict::indeterminate, std::nullopt});
  ContactChart probe(tmp);
  for (auto g : coords) {
    rows.push_back(one_form_coefficients(flat(Derivation::partial(chart, chart->generator(g).name), probe)));
  }
  tmp->system = FlatSystem(chart, std::move(rows));

  const FlatSystem& sys = tmp->system;
  if (sys.constant_part_invertible()) {
    try {
      for (std::size_t b = 0; b < coords.size(); ++b) {
        std::vector<GradedPoly> unit(coords.size(), GradedPoly(chart));
        unit[b] = GradedPoly::constant(chart, 1);
        sys.solve(unit);
      }
      auto values = sys.solve(one_form_coefficients(alpha));
      tmp->reeb = Derivation::from_values(chart, -tmp->n, std::move(values));
      tmp->verdict = ContactVerdict::contact;
    } catch (const NoPolynomialSolution&) {
      tmp->verdict = ContactVerdict::indeterminate;
    }
  } else if (sys.constant_kernel_vector()) {
    tmp->verdict = ContactVerdict::degenerate;
  }
  return ContactChart(std::move(tmp));
}

const Derivation& ContactChart::reeb() const {
  if (!state_->reeb) throw NotContact("chart is " + to_string(state_->verdict) + ", no Reeb field");
  return *state_->reeb;
}

ContactVerdict check_contact(const ContactChart& c) { return c.verdict(); }

Derivation reeb(const ContactChart& c) { return c.reeb(); }

Derivation hamiltonian_vf(const ContactChart& c, const GradedPoly& f) {
  const ChartPtr& chart = c.chart();
  require_same_chart(f, GradedPoly(chart));
  const int n = c.n();
  if (f.is_zero()) return Derivation(chart, -n);
  const Degree df = f.degree();
  if (df.is_mixed()) throw InhomogeneousInput("hamiltonian_vf needs a homogeneous function");
  if (!f.form_degree().is_mixed() && f.form_degree().value() != 0) {
    throw InhomogeneousInput("hamiltonian_vf needs a function, not a form");
  }
  const int deg = df.value();
  const Derivation& r = c.reeb();
  GradedPoly rf = r(f);
  rf *= Rational(sign_power(static_cast<long>(n) * (deg - 1)));
  BigradedForm df_form = d(f);
  df_form *= Rational(sign_power(deg - n));
  BigradedForm target = (f + rf) * c.alpha() - df_form;
  auto values = c.flat_system().solve(one_form_coefficients(target));
  return Derivation::from_values(chart, deg - n, std::move(values));
}

namespace {

std::map<int, GradedPoly> homogeneous_parts(const GradedPoly& f) { return f.components(); }

}  // namespace

GradedPoly jacobi_bracket(const ContactChart& c, const GradedPoly& f, const GradedPoly& g) {
  const int n = c.n();
  GradedPoly out(c.chart());
  require_same_chart(g, out);
  for (const auto& [df, fh] : homogeneous_parts(f)) {
    const Derivation xf = hamiltonian_vf(c, fh);
    const GradedPoly rf = c.reeb()(fh);
    const int s = sign_power(static_cast<long>(n) * (df + 1));
    out += xf(g);
    out -= (rf * g) * Rational(s);
  }
  return out;
}

GradedPoly cartan_bracket(const ContactChart& c, const GradedPoly& f, const GradedPoly& g) {
  GradedPoly out(c.chart());
  require_same_chart(g, out);
  for (const auto& [df, fh] : homogeneous_parts(f)) out += hamiltonian_vf(c, fh)(g);
  return out;
}

GradedPoly master_check(const ContactChart& c, const GradedPoly& s) { return jacobi_bracket(c, s, s); }

MasterCertificate certify_master(const ContactChart& c, const GradedPoly& s) {
  MasterCertificate cert{master_check(c, s), false};
  if (s.is_zero()) {
    cert.homological = true;
    return cert;
  }
  cert.homological = is_homological(hamiltonian_vf(c, s));
  return cert;
}

}  // namespace gcontact

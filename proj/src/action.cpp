#include "gcontact/models.hpp"

namespace gcontact {

ChartPtr field_chart(const ContactModel& m) {
  const Chart& src = *m.chart.chart();
  if (src.exponential()) throw InvalidChart("action needs a polynomial chart");
  std::vector<CoordinateSpec> specs;
  for (auto g : src.coordinates()) {
    const auto& name = src.generator(g).name;
    auto it = m.field_names.find(name);
    specs.push_back({it == m.field_names.end() ? "Z_" + name : it->second, src.generator(g).degree});
  }
  ChartOptions opts;
  opts.contact_degree = src.contact_degree();
  try {
    return Chart::make(specs, opts);
  } catch (const InvalidChart& e) {
    throw ValidationError(std::string("field names clash: ") + e.what());
  }
}

GradedPoly to_fields(const ContactModel& m, const ChartPtr& fields, const GradedPoly& f) {
  require_same_chart(f, GradedPoly(m.chart.chart()));
  if (fields->size() != m.chart.chart()->size()) throw ChartMismatch();
  GradedPoly out(fields);
  for (const auto& [e, c] : f.terms()) out.add_term(e, c);
  return out;
}

ActionIntegrand emit_action(const ContactModel& m, ActionVariant variant) {
  const int n = m.chart.n();
  if (n != 1 && n != 2) throw InvalidChart("actions are emitted for n = 1 or n = 2 only");
  ChartPtr fields = field_chart(m);
  GradedPoly integrand = to_fields(m, fields, m.chart.alpha());
  integrand += to_fields(m, fields, m.s) * Rational(sign_power(n + 1));
  if (variant == ActionVariant::bpv) {
    const GradedPoly theta = contract(Derivation::euler(m.chart.chart()), m.chart.alpha());
    integrand -= d(to_fields(m, fields, theta)) * Rational(1, n);
  }
  return {fields, integrand, n};
}

}  // namespace gcontact

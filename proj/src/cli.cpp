#include "gcontact/cli.hpp"

#include <algorithm>
#include <charconv>
#include <random>

#include <CLI11.hpp>

#include "gcontact/contact.hpp"
#include "gcontact/expression.hpp"
#include "gcontact/lattice.hpp"
#include "gcontact/model_file.hpp"
#include "gcontact/symplectization.hpp"

namespace gcontact {

namespace {

struct Outcome {
  bool pass = false;
  std::size_t residual_terms = 0;
};

struct Flags {
  std::string model;
  std::string f, g;
  bool cartan = false;
  std::string variant = "aksz";
  std::string grid;
  std::uint64_t seed = 1;
};

std::size_t terms(const Derivation& x) {
  std::size_t n = 0;
  for (const auto& v : x.values()) n += v.term_count();
  return n;
}

std::size_t terms(const Multivector& m) {
  std::size_t n = 0;
  for (const auto& [i, c] : m.terms()) n += c.term_count();
  return n;
}

GradedPoly expression_flag(const std::string& flag, const std::string& text, const ChartPtr& chart) {
  try {
    return parse_expression(text, chart);
  } catch (const ParseError& e) {
    throw Error(flag + ": " + e.what());
  }
}

void print_header(std::ostream& out, const LoadedModel& lm) {
  const ContactChart& c = lm.model.chart;
  out << "model: " << lm.kind << "\n";
  out << "coordinates:";
  for (auto i : c.chart()->coordinates()) {
    const auto& gen = c.chart()->generator(i);
    out << " " << gen.name << ":" << gen.degree;
  }
  out << "\n";
  out << "alpha = " << c.alpha().to_string() << "\n";
  out << "n = " << c.n() << "\n";
}

/// Failure outcome for charts that are not contact.
Outcome not_contact(std::ostream& out, const ContactChart& c) {
  out << "contact verdict: " << to_string(c.verdict()) << "\n";
  const auto& sys = c.flat_system();
  const std::size_t deficiency = sys.size() - sys.constant_part().rank();
  out << "rank deficiency of the constant flat matrix: " << deficiency << "\n";
  return {false, std::max<std::size_t>(deficiency, 1)};
}

Outcome check_contact_cmd(std::ostream& out, const LoadedModel& lm) {
  const ContactChart& c = lm.model.chart;
  out << "dalpha = " << c.dalpha().to_string() << "\n";
  if (c.verdict() != ContactVerdict::contact) return not_contact(out, c);
  out << "contact verdict: contact\n";
  return {true, 0};
}

Outcome reeb_cmd(std::ostream& out, const LoadedModel& lm) {
  const ContactChart& c = lm.model.chart;
  if (c.verdict() != ContactVerdict::contact) return not_contact(out, c);
  const Derivation& r = c.reeb();
  out << r.describe("R");
  GradedPoly r1 = contract(r, c.alpha()) - GradedPoly::constant(c.chart(), 1);
  GradedPoly r2 = contract(r, c.dalpha());
  out << "i_R alpha - 1 = " << r1.to_string() << "\n";
  out << "i_R dalpha = " << r2.to_string() << "\n";
  const std::size_t n = r1.term_count() + r2.term_count();
  return {n == 0, n};
}

Outcome hamiltonian_cmd(std::ostream& out, const LoadedModel& lm, const Flags& fl) {
  const ContactChart& c = lm.model.chart;
  if (c.verdict() != ContactVerdict::contact) return not_contact(out, c);
  GradedPoly f = expression_flag("--f", fl.f, c.chart());
  out << "f = " << f.to_string() << "\n";
  Derivation x = hamiltonian_vf(c, f);
  out << "degree " << x.degree() << "\n" << x.describe("X_f");
  GradedPoly r1 = contract(x, c.alpha()) - f;
  std::size_t n = r1.term_count();
  out << "i_X alpha - f = " << r1.to_string() << "\n";
  if (!f.is_zero()) {
    const int deg = f.degree().value();
    const int nn = c.n();
    GradedPoly want = Rational(sign_power(long(nn) * (deg - 1))) * c.reeb()(f) * c.alpha() -
                      Rational(sign_power(deg - nn)) * d(f);
    GradedPoly r2 = contract(x, c.dalpha()) - want;
    out << "i_X dalpha - (+-R(f) alpha -+ df) = " << r2.to_string() << "\n";
    n += r2.term_count();
  }
  return {n == 0, n};
}

Outcome bracket_cmd(std::ostream& out, const LoadedModel& lm, const Flags& fl) {
  const ContactChart& c = lm.model.chart;
  if (c.verdict() != ContactVerdict::contact) return not_contact(out, c);
  GradedPoly f = expression_flag("--f", fl.f, c.chart());
  GradedPoly g = expression_flag("--g", fl.g, c.chart());
  out << "f = " << f.to_string() << "\n";
  out << "g = " << g.to_string() << "\n";
  out << "{f,g}_J = " << jacobi_bracket(c, f, g).to_string() << "\n";
  if (fl.cartan) out << "{f,g}_C = " << cartan_bracket(c, f, g).to_string() << "\n";
  out << "R(f) = " << c.reeb()(f).to_string() << "\n";
  out << "R(g) = " << c.reeb()(g).to_string() << "\n";
  // X_{{f,g}_J} = [X_f, X_g] on every pair of homogeneous components
  std::size_t n = 0;
  for (const auto& [df, fi] : f.components()) {
    for (const auto& [dg, gj] : g.components()) {
      Derivation rhs = commutator(hamiltonian_vf(c, fi), hamiltonian_vf(c, gj));
      GradedPoly b = jacobi_bracket(c, fi, gj);
      std::size_t k = b.is_zero() ? terms(rhs) : terms(hamiltonian_vf(c, b) - rhs);
      if (k != 0) out << "X_{f,g} - [X_f, X_g] nonzero on degrees (" << df << ", " << dg << "): " << k << " terms\n";
      n += k;
    }
  }
  out << "X_{f,g} = [X_f, X_g]: " << (n == 0 ? "yes" : "no") << "\n";
  return {n == 0, n};
}

Outcome master_cmd(std::ostream& out, const LoadedModel& lm) {
  const ContactChart& c = lm.model.chart;
  if (c.verdict() != ContactVerdict::contact) return not_contact(out, c);
  out << "S = " << lm.model.s.to_string() << "\n";
  MasterCertificate cert = certify_master(c, lm.model.s);
  out << "{S,S}_J = " << cert.residual.to_string() << "\n";
  out << "X_S homological: " << (cert.homological ? "yes" : "no") << "\n";
  std::size_t n = cert.residual.term_count();
  bool pass = cert.residual.is_zero();
  if (lm.jacobi) {
    GradedPoly oracle = jacobi_master_via_schouten(lm.model, *lm.jacobi);
    GradedPoly diff = cert.residual - oracle;
    out << "Schouten oracle = " << oracle.to_string() << "\n";
    out << "agrees with oracle: " << (diff.is_zero() ? "yes" : "no") << "\n";
    n += diff.term_count();
    pass = pass && diff.is_zero();
  }
  return {pass, n};
}

Outcome symplectize_cmd(std::ostream& out, const LoadedModel& lm) {
  const ContactChart& c = lm.model.chart;
  if (c.verdict() != ContactVerdict::contact) return not_contact(out, c);
  Symplectization sy = symplectize(c);
  out << "symplectization coordinates:";
  for (auto i : sy.chart()->coordinates()) out << " " << sy.chart()->generator(i).name;
  out << " (" << sy.u_name() << " = e^" << sy.t_name() << ")\n";
  out << "omega = " << sy.omega().to_string() << "\n";

  std::vector<GradedPoly> probes{GradedPoly::constant(c.chart(), 1)};
  for (auto i : c.chart()->coordinates()) probes.push_back(GradedPoly::generator(c.chart(), i));
  if (!lm.model.s.is_zero()) probes.push_back(lm.model.s);

  const int n = c.n();
  const Derivation dt = Derivation::partial(sy.chart(), sy.t_name());
  std::size_t residual = 0, lifts = 0, pairs = 0;
  for (const auto& f : probes) {
    const int df = f.degree().value();
    Derivation want = sy.extend(hamiltonian_vf(c, f)) -
                      Rational(sign_power(long(n) * (df - 1))) * (sy.extend(c.reeb()(f)) * dt);
    std::size_t k = terms(sy.hamiltonian(sy.lift_function(f)) - want);
    if (k != 0) out << "hamiltonian lift fails for " << f.to_string() << "\n";
    residual += k;
    ++lifts;
    for (const auto& g : probes) {
      GradedPoly diff = sy.lift_function(jacobi_bracket(c, f, g)) -
                        sy.poisson_bracket(sy.lift_function(f), sy.lift_function(g));
      if (!diff.is_zero()) out << "bracket lift fails for (" << f.to_string() << ", " << g.to_string() << ")\n";
      residual += diff.term_count();
      ++pairs;
    }
  }
  out << "hamiltonian lifts checked: " << lifts << "\n";
  out << "bracket pairs checked: " << pairs << "\n";
  return {residual == 0, residual};
}

Outcome jacobi_cmd(std::ostream& out, const LoadedModel& lm) {
  if (!lm.jacobi) throw Error("jacobi-check needs a model of kind jacobi");
  JacobiCheck chk = check_jacobi(*lm.jacobi);
  out << "Lambda = " << lm.jacobi->lambda_field().to_string() << "\n";
  out << "E = " << lm.jacobi->e_field().to_string() << "\n";
  out << "[Lambda,Lambda] - 2 E^Lambda = " << chk.lambda_lambda.to_string() << "\n";
  out << "[Lambda,E] = " << chk.lambda_e.to_string() << "\n";
  const std::size_t n = terms(chk.lambda_lambda) + terms(chk.lambda_e);
  return {chk.ok(), n};
}

void print_cj_failures(std::ostream& out, const CourantJacobiCheck& chk) {
  constexpr std::size_t shown = 10;
  for (std::size_t i = 0; i < chk.failures.size() && i < shown; ++i) {
    const auto& f = chk.failures[i];
    out << "  axiom " << f.axiom << " fails on " << f.instance << ":";
    for (const auto& r : f.residual) out << " [" << r.to_string() << "]";
    out << "\n";
  }
  if (chk.failures.size() > shown) out << "  ... " << chk.failures.size() - shown << " more\n";
}

Outcome cj_cmd(std::ostream& out, const LoadedModel& lm) {
  if (!lm.courant_jacobi) throw Error("cj-check needs a model of kind courant-jacobi");
  const auto& data = *lm.courant_jacobi;
  CourantJacobiCheck raw = check_courant_jacobi(data, CJReading::raw);
  out << "raw reading: " << raw.instances << " instances, " << raw.failures.size() << " failures\n";
  print_cj_failures(out, raw);
  CourantJacobiCheck enc = check_courant_jacobi(data, CJReading::encoded);
  out << "encoded reading: " << enc.instances << " instances, " << enc.failures.size() << " failures\n";
  print_cj_failures(out, enc);
  out << "encoding: " << (lm.encoding == CJEncoding::calibrated ? "calibrated" : "literal") << "\n";
  out << "S = " << lm.model.s.to_string() << "\n";
  out << "{S,S}_J = " << master_check(lm.model.chart, lm.model.s).to_string() << "\n";
  return {raw.ok(), raw.residual_terms()};
}

Outcome emit_cmd(std::ostream& out, const LoadedModel& lm, const Flags& fl) {
  const ActionVariant v = fl.variant == "bpv" ? ActionVariant::bpv : ActionVariant::aksz;
  ActionIntegrand a = emit_action(lm.model, v);
  out << "variant: " << fl.variant << "\n";
  out << "fields:";
  for (auto i : a.fields->coordinates()) {
    const auto& gen = a.fields->generator(i);
    out << " " << gen.name << ":" << gen.degree;
  }
  out << "\n";
  const std::string text = a.to_string();
  out << "integrand = " << text << "\n";
  GradedPoly back = parse_expression(text, a.fields);
  GradedPoly diff = back - a.integrand;
  out << "re-parses to the same integrand: " << (diff.is_zero() ? "yes" : "no") << "\n";
  return {diff.is_zero(), diff.term_count()};
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> sizes;
  std::size_t start = 0;
  for (;;) {
    const std::size_t stop = text.find('x', start);
    const std::string part = text.substr(start, stop == std::string::npos ? std::string::npos : stop - start);
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size() || v < 1 || v > 64) {
      throw Error("--grid: expected NxM or NxMxK with sizes in [1, 64], got '" + text + "'");
    }
    sizes.push_back(v);
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  if (sizes.size() != 2 && sizes.size() != 3) throw Error("--grid: expected two or three sizes");
  return sizes;
}

Outcome lattice_cmd(std::ostream& out, const LoadedModel& lm, const Flags& fl) {
  const std::vector<int> sizes = parse_grid(fl.grid);
  const int n = lm.model.chart.n();
  if (int(sizes.size()) != n + 1) {
    throw Error("--grid: a degree-" + std::to_string(n) + " model lives on a " + std::to_string(n + 1) +
                "-dimensional torus");
  }
  TorusComplex k(sizes);
  ActionIntegrand aksz = emit_action(lm.model, ActionVariant::aksz);
  std::mt19937_64 rng(fl.seed);
  FieldConfig fields = random_fields(k, aksz, rng);
  const Rational ea = eval_action(k, lm.model, ActionVariant::aksz, fields);
  const Rational eb = eval_action(k, lm.model, ActionVariant::bpv, fields);
  const Rational diff = ea - eb;
  out << "grid: " << fl.grid << " (" << k.cell_count(k.dim()) << " top cells)\n";
  out << "seed: " << fl.seed << "\n";
  out << "AKSZ = " << format_rational(ea) << "\n";
  out << "BPV = " << format_rational(eb) << "\n";
  out << "AKSZ - BPV = " << format_rational(diff) << "\n";
  return {diff == 0, diff == 0 ? 0u : 1u};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded contact geometry verifier", "gcontact"};
  app.require_subcommand(1);
  Flags fl;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("model", fl.model, "Model description (JSON)")->required();
    return sub;
  };
  add("check-contact", "Decide whether alpha is a contact form");
  add("reeb", "Compute the Reeb vector field");
  add("hamiltonian", "Compute the contact Hamiltonian vector field of --f")
      ->add_option("--f", fl.f, "Function")
      ->required();
  CLI::App* br = add("bracket", "Jacobi bracket of --f and --g, checked against the vector-field commutator");
  br->add_option("--f", fl.f, "First function")->required();
  br->add_option("--g", fl.g, "Second function")->required();
  br->add_flag("--cartan", fl.cartan, "Also print the Cartan bracket X_f(g)");
  add("master", "Evaluate the master equation {S,S}_J");
  add("symplectize-check", "Check the symplectization lifts on coordinate probes");
  add("jacobi-check", "Check [Lambda,Lambda] = 2 E^Lambda and [Lambda,E] = 0");
  add("cj-check", "Check the Courant-Jacobi axioms");
  add("emit-action", "Print the action integrand")
      ->add_option("--variant", fl.variant, "aksz or bpv")
      ->check(CLI::IsMember({"aksz", "bpv"}));
  CLI::App* lat = add("lattice-eval", "Evaluate AKSZ and BPV actions on a random lattice configuration");
  lat->add_option("--grid", fl.grid, "Torus size NxM or NxMxK")->required();
  lat->add_option("--seed", fl.seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  Outcome o;
  try {
    LoadedModel lm = parse_model(fl.model);
    print_header(out, lm);
    if (cmd == "check-contact") {
      o = check_contact_cmd(out, lm);
    } else if (cmd == "reeb") {
      o = reeb_cmd(out, lm);
    } else if (cmd == "hamiltonian") {
      o = hamiltonian_cmd(out, lm, fl);
    } else if (cmd == "bracket") {
      o = bracket_cmd(out, lm, fl);
    } else if (cmd == "master") {
      o = master_cmd(out, lm);
    } else if (cmd == "symplectize-check") {
      o = symplectize_cmd(out, lm);
    } else if (cmd == "jacobi-check") {
      o = jacobi_cmd(out, lm);
    } else if (cmd == "cj-check") {
      o = cj_cmd(out, lm);
    } else if (cmd == "emit-action") {
      o = emit_cmd(out, lm, fl);
    } else {
      o = lattice_cmd(out, lm, fl);
    }
  } catch (const std::exception& e) {
    out.flush();
    err << "error: " << e.what() << "\n";
    return 2;
  }
  out << "VERDICT: " << (o.pass ? "pass" : "fail") << " RESIDUAL_TERMS: " << o.residual_terms << "\n";
  return o.pass ? 0 : 1;
}

}  // namespace gcontact

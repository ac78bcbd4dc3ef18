#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcontact/cartan.hpp"
#include "gcontact/flat_system.hpp"
#include "gcontact/graded_algebra.hpp"

namespace gcontact {

enum class ContactVerdict { contact, indeterminate, degenerate };

std::string to_string(ContactVerdict v);

/// Coefficients c_b with beta = sum_b c_b dz_b (coefficients on the left),
/// indexed like `chart->coordinates()`.  Throws if beta is not a 1-form.
std::vector<GradedPoly> one_form_coefficients(const BigradedForm& beta);
BigradedForm one_form(const ChartPtr& chart, const std::vector<GradedPoly>& coefficients);

/// A chart with a 1-form alpha of bidegree (1, n), together with dalpha, the
/// flat matrix and (when contact) the Reeb field, all computed once.
class ContactChart {
 public:
  /// Throws InhomogeneousInput unless alpha is a homogeneous 1-form.
  static ContactChart make(ChartPtr chart, BigradedForm alpha);

  const ChartPtr& chart() const { return state_->chart; }
  const BigradedForm& alpha() const { return state_->alpha; }
  const BigradedForm& dalpha() const { return state_->dalpha; }
  int n() const { return state_->n; }
  ContactVerdict verdict() const { return state_->verdict; }
  const FlatSystem& flat_system() const { return state_->system; }
  /// Throws NotContact when verdict() != contact.
  const Derivation& reeb() const;

 private:
  struct State {
    ChartPtr chart;
    BigradedForm alpha;
    BigradedForm dalpha;
    int n = 0;
    FlatSystem system;
    ContactVerdict verdict = ContactVerdict::indeterminate;
    std::optional<Derivation> reeb;
  };
  explicit ContactChart(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

/// flat(X) = (i_X alpha) alpha + i_X dalpha.
BigradedForm flat(const Derivation& x, const ContactChart& c);
ContactVerdict check_contact(const ContactChart& c);
Derivation reeb(const ContactChart& c);

/// The contact Hamiltonian vector field X_f:
///   i_{X_f} alpha = f,
///   i_{X_f} dalpha = (-1)^{n(|f|-1)} R(f) alpha - (-1)^{|f|-n} df.
Derivation hamiltonian_vf(const ContactChart& c, const GradedPoly& f);

/// {f,g}_J = X_f(g) - (-1)^{n(|f|+1)} R(f) g, bilinear over homogeneous components.
GradedPoly jacobi_bracket(const ContactChart& c, const GradedPoly& f, const GradedPoly& g);
/// {f,g}_C = X_f(g).
GradedPoly cartan_bracket(const ContactChart& c, const GradedPoly& f, const GradedPoly& g);

/// Residual {S,S}_J of the master equation.
GradedPoly master_check(const ContactChart& c, const GradedPoly& s);

struct MasterCertificate {
  GradedPoly residual;
  bool homological = false;  // is_homological(X_S)
  bool consistent() const { return residual.is_zero() == homological; }
};
MasterCertificate certify_master(const ContactChart& c, const GradedPoly& s);

}  // namespace gcontact

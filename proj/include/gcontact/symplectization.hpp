#pragma once

#include <memory>
#include <string>

#include "gcontact/cartan.hpp"
#include "gcontact/contact.hpp"
#include "gcontact/flat_system.hpp"

namespace gcontact {

/// The symplectization M x R of a contact chart, with omega = d(u alpha) where
/// u = e^t is the formal exponential generator.  The extended chart lists the
/// original coordinates first, then t, then u.
class Symplectization {
 public:
  /// Throws NotContact unless the chart is contact.
  static Symplectization make(const ContactChart& c);

  const ContactChart& base() const { return state_->base; }
  const ChartPtr& chart() const { return state_->chart; }
  const std::string& t_name() const { return state_->t_name; }
  const std::string& u_name() const { return state_->u_name; }
  const BigradedForm& omega() const { return state_->omega; }
  /// Z = d/dt.
  const Derivation& z() const { return state_->z; }

  /// f -> u f.
  GradedPoly lift_function(const GradedPoly& f) const;
  /// Base objects re-expressed on the extended chart (value 0 on t).
  GradedPoly extend(const GradedPoly& f) const;
  Derivation extend(const Derivation& x) const;

  /// Hamiltonian field of a homogeneous function:
  ///   i_X omega = (-1)^{|f|-n-1} d f.
  Derivation hamiltonian(const GradedPoly& f) const;
  /// {f, g}_omega = X_f(g), bilinear over homogeneous components of f.
  GradedPoly poisson_bracket(const GradedPoly& f, const GradedPoly& g) const;

  /// lambda = (1/n) i_eps omega.  Throws InvalidChart when n = 0.
  BigradedForm lambda() const;
  /// Pullback along the zero section t = 0 (u -> 1, dt -> 0).
  BigradedForm zero_section_pullback(const BigradedForm& beta) const;

 private:
  struct State {
    ContactChart base;
    ChartPtr chart;
    std::string t_name;
    std::string u_name;
    BigradedForm omega;
    Derivation z;
    FlatSystem system;  // flat matrix of dt alpha + dalpha
  };
  explicit Symplectization(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

Symplectization symplectize(const ContactChart& c);

}  // namespace gcontact

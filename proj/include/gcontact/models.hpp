#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcontact/cartan.hpp"
#include "gcontact/contact.hpp"
#include "gcontact/graded_algebra.hpp"

namespace gcontact {

// ---------------------------------------------------------------------------
// Multivector fields on an ungraded base chart, kept apart from the graded
// machinery: a k-vector is a map from sorted index sets to coefficients.

class Multivector {
 public:
  using Index = std::vector<int>;  // strictly increasing coordinate positions

  explicit Multivector(ChartPtr base);
  /// c * d/dx^{i1} ^ ... ^ d/dx^{ik}; unsorted indices are sorted with sign.
  static Multivector wedge_of(ChartPtr base, const GradedPoly& c, Index indices);
  static Multivector vector_field(ChartPtr base, const std::vector<GradedPoly>& components);
  /// sum_{i<j} L^{ij} d_i ^ d_j from an antisymmetric matrix.
  static Multivector bivector(ChartPtr base, const std::vector<std::vector<GradedPoly>>& matrix);

  const ChartPtr& base() const { return base_; }
  const std::map<Index, GradedPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GradedPoly coefficient(const Index& i) const;

  void add(const Index& indices, const GradedPoly& c);
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(const Rational& c);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(const Rational& c, Multivector a) { return a *= c; }
  friend bool operator==(const Multivector& a, const Multivector& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  ChartPtr base_;
  std::map<Index, GradedPoly> terms_;
};

Multivector wedge(const Multivector& a, const Multivector& b);
/// Schouten-Nijenhuis bracket of multivectors of positive degree:
///   [X_1^...^X_k, Y_1^...^Y_l] = -sum_{a,b} (-1)^{a+b} [X_a, Y_b] ^ (rest),
/// the overall sign chosen so that Jacobi pairs satisfy [L,L] = 2 E^L for the
/// bracket L(df,dg) + f E(g) - E(f) g.  On two vector fields it is -[X, Y].
Multivector schouten(const Multivector& a, const Multivector& b);
/// Partial derivative of a base polynomial by coordinate position.
GradedPoly base_partial(const GradedPoly& f, int i);

// ---------------------------------------------------------------------------
// Degree 1: Jacobi pairs.

struct JacobiPair {
  ChartPtr base;                               // degree-0 coordinates only
  std::vector<std::vector<GradedPoly>> lambda;  // Lambda^{ij}
  std::vector<GradedPoly> e;                    // E^i

  /// Throws ValidationError if Lambda is not antisymmetric or shapes disagree.
  void validate() const;
  Multivector lambda_field() const;
  Multivector e_field() const;
};

struct JacobiCheck {
  Multivector lambda_lambda;  // [Lambda, Lambda] - 2 E ^ Lambda
  Multivector lambda_e;       // [Lambda, E]
  bool ok() const { return lambda_lambda.is_zero() && lambda_e.is_zero(); }
};

JacobiCheck check_jacobi(const JacobiPair& j);
/// Lambda(df, dg) + f E(g) - E(f) g.
GradedPoly jacobi_fn_bracket(const JacobiPair& j, const GradedPoly& f, const GradedPoly& g);
/// The contact Jacobi pair of (R^3, dz - y dx): E = d/dz, Lambda = (d/dx + y d/dz) ^ d/dy.
JacobiPair contact_r3_pair();

/// A contact chart with a degree n+1 Hamiltonian, plus the names used for
/// its fields in the action functional.
struct ContactModel {
  std::string kind;
  ContactChart chart;
  GradedPoly s;
  std::map<std::string, std::string> field_names;  // coordinate -> field symbol
};

/// Generic field names for an arbitrary contact chart: z -> Z_z.
std::map<std::string, std::string> default_field_names(const Chart& chart);

/// Degree-1 chart (x^i: 0, p_i: 1, theta: 1), alpha = p_i dx^i + dtheta,
/// S = 1/2 Lambda^{ij} p_i p_j - E^i p_i theta.
ContactModel build_jacobi_contact(const JacobiPair& j);
/// Encodes a k-vector as a degree k polynomial in the p_i of the model chart.
GradedPoly encode_multivector(const ContactModel& m, const Multivector& v);
/// The right-hand side of {S,S}_J in terms of multivectors:
/// [Lambda,Lambda] - 2 E Lambda + 2 [E,Lambda] theta, encoded.
GradedPoly jacobi_master_via_schouten(const ContactModel& m, const JacobiPair& j);

// ---------------------------------------------------------------------------
// Degree 2: Courant-Jacobi data in a frame with constant pairing.

struct CourantJacobiData {
  ChartPtr base;                                           // degree-0 coordinates
  int rank = 0;
  std::vector<std::vector<Rational>> g;                    // g_{ab}
  std::vector<std::vector<GradedPoly>> a;                  // a[alpha][i]
  std::vector<GradedPoly> b;                               // b_alpha
  std::vector<std::vector<std::vector<GradedPoly>>> t;     // T_{abc}

  /// Throws ValidationError on bad shapes, asymmetric or singular g.
  void validate() const;
};

/// How T is turned into bracket constants C_{abc} = <[[v_a, v_b]], v_c>.
enum class CJReading {
  raw,      // C = T as given
  encoded,  // C = totally antisymmetric part of T + the part forced by (g, b)
};

struct AxiomResidual {
  int axiom = 0;
  std::string instance;
  std::vector<GradedPoly> residual;  // section components, or one function
};

struct CourantJacobiCheck {
  std::vector<AxiomResidual> failures;
  std::size_t instances = 0;
  bool ok() const { return failures.empty(); }
  bool axiom_ok(int axiom) const;
  std::size_t residual_terms() const;
};

CourantJacobiCheck check_courant_jacobi(const CourantJacobiData& data, CJReading reading = CJReading::raw);
/// The constants C_{abc} used by the given reading.
std::vector<std::vector<std::vector<GradedPoly>>> bracket_constants(const CourantJacobiData& data,
                                                                   CJReading reading);

/// Coefficient of the b_a v^a theta term in S.
enum class CJEncoding {
  calibrated,  // -1/2: {S,S}_J vanishes on the standard algebroid
  literal,     // +1
};

/// Degree-2 chart (x^i: 0, v^a: 1, p_i: 2, theta: 2) with
/// alpha = p_i dx^i + 1/2 g_ab v^a dv^b + 1/2 dtheta and
/// S = a^i_a v^a p_i + c b_a v^a theta - 1/6 T_abc v^a v^b v^c, c per encoding.
ContactModel build_cj_contact(const CourantJacobiData& data, CJEncoding encoding = CJEncoding::calibrated);

// ---------------------------------------------------------------------------
// Sections (X, f, xi, g) of (TM x R) + (T*M x R) over a base chart.

struct SectionCJ {
  Derivation x;
  GradedPoly f;
  BigradedForm xi;
  GradedPoly g;

  static SectionCJ zero(const ChartPtr& base);
  friend bool operator==(const SectionCJ& a, const SectionCJ& b);
  SectionCJ& operator+=(const SectionCJ& o);
  SectionCJ& operator-=(const SectionCJ& o);
  friend SectionCJ operator+(SectionCJ a, const SectionCJ& b) { return a += b; }
  friend SectionCJ operator-(SectionCJ a, const SectionCJ& b) { return a -= b; }
  bool is_zero() const;
  std::string to_string() const;
};

SectionCJ scale(const GradedPoly& h, const SectionCJ& s);
GradedPoly wade_pairing(const SectionCJ& s1, const SectionCJ& s2);
SectionCJ wade_bracket(const SectionCJ& s1, const SectionCJ& s2);
/// rho(s)(h) = X(h) + f h.
GradedPoly wade_anchor(const SectionCJ& s, const GradedPoly& h);
/// <D h, e> = rho(e)(h), i.e. D h = (0, 0, dh, h).
SectionCJ wade_d(const GradedPoly& h);

/// Residuals of the four axioms on the given sections and function.
struct WadeAxioms {
  SectionCJ jacobi;   // (1)
  SectionCJ leibniz;  // (2)
  SectionCJ square;   // (3) for s1
  GradedPoly invariance;  // (4)
  bool ok() const { return jacobi.is_zero() && leibniz.is_zero() && square.is_zero() && invariance.is_zero(); }
};
WadeAxioms wade_axioms(const SectionCJ& s1, const SectionCJ& s2, const SectionCJ& s3, const GradedPoly& h);

/// The standard algebroid on the base chart written in the frame
/// (d/dx^i, (0,1), dx^i, (0,0,0,1)).
CourantJacobiData wade_data(const ChartPtr& base);

// ---------------------------------------------------------------------------
// Action integrands.

enum class ActionVariant { aksz, bpv };

struct ActionIntegrand {
  ChartPtr fields;  // field symbols; a symbol's degree is its form degree on Sigma
  GradedPoly integrand;
  int n = 0;
  std::string to_string() const { return integrand.to_string(); }
};

/// AKSZ: phi*alpha + (-1)^{n+1} phi*S.  BPV additionally carries
/// -(1/n) d(phi*theta_E) with theta_E = i_eps alpha.  Throws InvalidChart
/// unless n is 1 or 2.
ActionIntegrand emit_action(const ContactModel& m, ActionVariant variant);
/// The field-chart copy of a function or form on the model chart.
GradedPoly to_fields(const ContactModel& m, const ChartPtr& fields, const GradedPoly& f);
ChartPtr field_chart(const ContactModel& m);

}  // namespace gcontact

#include "corpus.hpp"
#include "doctest.h"
#include "gcontact/flat_system.hpp"
#include "gcontact/lattice.hpp"

using namespace gcontact;
using namespace gcontact::testing;

namespace {

Cochain random_cochain(const TorusComplex& k, int degree, Rng& rng) {
  Cochain c = Cochain::zero(k, degree);
  for (auto& v : c.values) v = small_rational(rng);
  return c;
}

std::vector<TorusComplex> complexes() {
  return {TorusComplex({1, 1}), TorusComplex({2, 3}), TorusComplex({4, 4}), TorusComplex({1, 2, 1}),
          TorusComplex({2, 2, 3})};
}

FieldConfig shifted(const FieldConfig& f, const FieldConfig& dir, const Rational& h) {
  FieldConfig out = f;
  for (auto& [name, c] : out) {
    for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] += h * dir.at(name).values[i];
  }
  return out;
}

int polynomial_degree(const ActionIntegrand& a) {
  int top = 0;
  for (const auto& [m, c] : a.integrand.terms()) {
    int total = 0;
    for (int e : m) total += e;
    top = std::max(top, total);
  }
  return top;
}

/// Coefficients of s(h) = eval(f + h dir) from exact interpolation at h = 0..deg.
std::vector<Rational> action_polynomial(const TorusComplex& k, const ActionIntegrand& a, const FieldConfig& f,
                                        const FieldConfig& dir) {
  const int deg = polynomial_degree(a);
  const std::size_t n = std::size_t(deg) + 1;
  RationalMatrix v(n, n);
  std::vector<Rational> y;
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      v(i, j) = p;
      p *= Rational(long(i));
    }
    y.push_back(eval_action(k, a, shifted(f, dir, Rational(long(i)))));
  }
  auto inv = *v.inverse();
  std::vector<Rational> c(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) c[j] += inv(j, i) * y[i];
  }
  return c;
}

ContactModel wade_model() { return build_cj_contact(wade_data(Chart::make({{"x", 0}}))); }

}  // namespace

TEST_CASE("torus complex cell counts") {
  TorusComplex t2({3, 4});
  CHECK(t2.dim() == 2);
  CHECK(t2.vertex_count() == 12);
  CHECK(t2.cell_count(0) == 12);
  CHECK(t2.cell_count(1) == 36);
  CHECK(t2.cell_count(2) == 24);
  TorusComplex t3({2, 2, 2});
  CHECK(t3.cell_count(1) == 8 * 7);
  CHECK(t3.cell_count(2) == 8 * 12);
  CHECK(t3.cell_count(3) == 8 * 6);
  int pos = 0;
  for (std::size_t i = 0; i < t3.cell_count(3); ++i) pos += t3.orientation(i) > 0;
  CHECK(pos == 24);
  CHECK_THROWS_AS(TorusComplex({3}), InvalidChart);
  CHECK_THROWS_AS(TorusComplex({3, 0}), InvalidChart);

  // faces of the top cell (0; x, y) in the 3x4 grid
  const std::size_t top = t2.find(0, {1u, 2u});
  CHECK(t2.cell(1, t2.face(2, top, 0)).base == 1);
  CHECK(t2.cell(1, t2.face(2, top, 0)).masks == std::vector<unsigned>{2u});
  CHECK(t2.cell(1, t2.face(2, top, 1)).masks == std::vector<unsigned>{3u});
  CHECK(t2.cell(1, t2.face(2, top, 2)).masks == std::vector<unsigned>{1u});
  CHECK(t2.vertex(t2.cell(2, top), 2) == 4);
  CHECK(t2.orientation(top) == 1);
  CHECK(t2.orientation(t2.find(0, {2u, 1u})) == -1);
}

TEST_CASE("coboundary squares to zero and Stokes holds") {
  Rng rng(17);
  for (const auto& k : complexes()) {
    auto one = Cochain::zero(k, 0);
    for (auto& v : one.values) v = 3;
    CHECK(discrete_d(k, one) == Cochain::zero(k, 1));
    for (int deg = 0; deg + 2 <= k.dim(); ++deg) {
      auto c = random_cochain(k, deg, rng);
      CHECK(discrete_d(k, discrete_d(k, c)) == Cochain::zero(k, deg + 2));
    }
    for (int trial = 0; trial < 5; ++trial) {
      CHECK(integrate(k, discrete_d(k, random_cochain(k, k.dim() - 1, rng))) == 0);
    }
    CHECK_THROWS_AS(discrete_d(k, Cochain::zero(k, k.dim())), InvalidChart);
  }
}

TEST_CASE("cup product is a cochain-level derivation") {
  Rng rng(23);
  for (const auto& k : complexes()) {
    for (int p = 0; p < k.dim(); ++p) {
      for (int q = 0; p + q + 1 <= k.dim(); ++q) {
        auto a = random_cochain(k, p, rng), b = random_cochain(k, q, rng);
        auto lhs = discrete_d(k, cup(k, a, b));
        auto rhs = cup(k, discrete_d(k, a), b);
        auto second = cup(k, a, discrete_d(k, b));
        for (std::size_t i = 0; i < rhs.values.size(); ++i) rhs.values[i] += Rational(sign_power(p)) * second.values[i];
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("action evaluation examples") {
  TorusComplex k({3, 3});
  Rng rng(5);
  auto m = build_jacobi_contact(contact_r3_pair());
  auto a = emit_action(m, ActionVariant::aksz);
  auto f = random_fields(k, a, rng);
  auto zero = f;
  for (auto& [name, c] : zero) c = Cochain::zero(k, c.degree);
  CHECK(eval_action(k, a, zero) == 0);

  // Lambda = E = 0, eta = 0: only the exact term dTheta survives
  auto base = contact_r3_pair().base;
  JacobiPair trivial{base, std::vector<std::vector<GradedPoly>>(3, std::vector<GradedPoly>(3, GradedPoly(base))),
                     std::vector<GradedPoly>(3, GradedPoly(base))};
  auto t = emit_action(build_jacobi_contact(trivial), ActionVariant::aksz);
  auto g = random_fields(k, t, rng);
  for (std::string x : {"eta_x", "eta_y", "eta_z"}) g[x] = Cochain::zero(k, 1);
  CHECK(eval_action(k, t, g) == 0);

  // single terms against explicit cup products
  auto fc = a.fields;
  ActionIntegrand kinetic{fc, gen(fc, "eta_x") * gen(fc, "dX_x"), 1};
  // normal order puts dX_x before eta_x: eta_x dX_x = -dX_x eta_x
  CHECK(kinetic.integrand == Rational(-1) * gen(fc, "dX_x") * gen(fc, "eta_x"));
  CHECK(eval_action(k, kinetic, f) == -integrate(k, cup(k, discrete_d(k, f["X_x"]), f["eta_x"])));
  ActionIntegrand sampled{fc, Rational(3) * gen(fc, "X_y") * gen(fc, "eta_y") * gen(fc, "eta_z"), 1};
  auto product = cup(k, f["eta_y"], f["eta_z"]);
  for (std::size_t i = 0; i < product.values.size(); ++i) {
    const auto v0 = k.find(k.cell(2, i).base, {});
    product.values[i] *= 3 * f["X_y"].values[v0];
  }
  CHECK(eval_action(k, sampled, f) == integrate(k, product));
  CHECK(eval_action(k, ActionIntegrand{fc, gen(fc, "dTheta"), 1}, f) == 0);
  CHECK_THROWS_AS(eval_action(k, ActionIntegrand{fc, gen(fc, "eta_x"), 1}, f), ValidationError);

  CHECK_THROWS_AS(eval_action(TorusComplex({2, 2, 2}), a, f), InvalidChart);
  f.erase("Theta");
  CHECK_THROWS_AS(eval_action(k, a, f), ValidationError);
}

TEST_CASE("the two action variants agree on closed complexes") {
  Rng rng(41);
  std::vector<ContactModel> deg1{build_jacobi_contact(contact_r3_pair())};
  for (int j = 0; j < 3; ++j) deg1.push_back(build_jacobi_contact(random_jacobi_pair(rng, 2 + j % 2)));
  TorusComplex k2({4, 5});
  for (const auto& m : deg1) {
    auto a = emit_action(m, ActionVariant::aksz), b = emit_action(m, ActionVariant::bpv);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = random_fields(k2, a, rng);
      CHECK(eval_action(k2, a, f) == eval_action(k2, b, f));
    }
  }
  std::vector<ContactModel> deg2{wade_model(), build_cj_contact(so3_data({1, 1, 1}, 1)),
                                 build_cj_contact(valid_point_corpus().back())};
  TorusComplex k3({2, 3, 2});
  for (const auto& m : deg2) {
    auto a = emit_action(m, ActionVariant::aksz), b = emit_action(m, ActionVariant::bpv);
    for (int trial = 0; trial < 3; ++trial) {
      auto f = random_fields(k3, a, rng);
      auto sa = eval_action(k3, a, f);
      CHECK(sa == eval_action(k3, b, f));
      CHECK(sa == eval_action(k3, m, ActionVariant::aksz, f));
    }
  }
}

TEST_CASE("relabeling the cells leaves the action unchanged") {
  Rng rng(3);
  for (const auto& [m, sizes] : {std::pair{build_jacobi_contact(contact_r3_pair()), std::vector<int>{3, 4}},
                                 std::pair{wade_model(), std::vector<int>{2, 2, 3}}}) {
    TorusComplex k(sizes);
    auto p = k.permuted(rng);
    auto a = emit_action(m, ActionVariant::aksz);
    for (int trial = 0; trial < 3; ++trial) {
      auto f = random_fields(k, a, rng);
      auto moved = transport(k, p, f);
      CHECK(eval_action(p, a, moved) == eval_action(k, a, f));
      CHECK(transport(p, k, moved) == f);
    }
  }
}

TEST_CASE("equation-of-motion residual") {
  Rng rng(8);
  TorusComplex k({3, 2});
  auto a = emit_action(build_jacobi_contact(contact_r3_pair()), ActionVariant::aksz);
  auto f = random_fields(k, a, rng);
  auto zero = f;
  for (auto& [name, c] : zero) c = Cochain::zero(k, c.degree);
  CHECK(eom_residual(k, a, f, zero) == 0);

  for (int trial = 0; trial < 4; ++trial) {
    auto dir = random_fields(k, a, rng);
    auto coeffs = action_polynomial(k, a, f, dir);
    const Rational d = eom_residual(k, a, f, dir);
    CHECK(coeffs[0] == eval_action(k, a, f));
    CHECK(coeffs[1] == d);
    for (int e = 1; e <= 6; ++e) {
      Rational h(1, 1L << e);
      Rational fd = (eval_action(k, a, shifted(f, dir, h)) - coeffs[0]) / h;
      Rational tail = 0, p = 1;
      for (std::size_t j = 2; j < coeffs.size(); ++j) {
        p *= h;
        tail += coeffs[j] * p;
      }
      CHECK(fd - d == tail);
    }
  }

  // with Lambda = E = 0 the action is linear in eta
  auto base = contact_r3_pair().base;
  JacobiPair trivial{base, std::vector<std::vector<GradedPoly>>(3, std::vector<GradedPoly>(3, GradedPoly(base))),
                     std::vector<GradedPoly>(3, GradedPoly(base))};
  auto t = emit_action(build_jacobi_contact(trivial), ActionVariant::bpv);
  auto g = random_fields(k, t, rng);
  auto dir = zero;
  dir["eta_y"] = random_fields(k, t, rng)["eta_y"];
  auto coeffs = action_polynomial(k, t, g, dir);
  for (std::size_t j = 2; j < coeffs.size(); ++j) CHECK(coeffs[j] == 0);
  CHECK(eval_action(k, t, shifted(g, dir, 3)) == eval_action(k, t, g) + 3 * eom_residual(k, t, g, dir));

  dir.erase("Theta");
  CHECK_THROWS_AS(eom_residual(k, t, g, dir), ValidationError);
}

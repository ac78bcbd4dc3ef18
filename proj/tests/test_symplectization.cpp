#include "doctest.h"
#include "gcontact/symplectization.hpp"
#include "support.hpp"

using namespace gcontact;
using namespace gcontact::testing;

namespace {

Rational sgn(long k) { return Rational(sign_power(k)); }

std::vector<ContactChart> corpus_charts() {
  return {darboux1(1), darboux1(2), darboux2(1, {Rational(1)}), darboux2(2, {Rational(1), Rational(-1)}),
          standard_r3()};
}

}  // namespace

TEST_CASE("symplectic form of the n=1 Darboux chart") {
  auto c = darboux1(1);
  auto sy = symplectize(c);
  auto e = sy.chart();
  CHECK(e->size() == c.chart()->size() + 3);
  auto u = gen(e, "u");
  auto expected = u * (gen(e, "dt") * (gen(e, "p1") * gen(e, "dx1") + gen(e, "dtheta")) +
                       gen(e, "dp1") * gen(e, "dx1"));
  CHECK(sy.omega() == expected);
  CHECK(d(sy.omega()).is_zero());
  CHECK(lie(sy.z(), sy.omega()) == sy.omega());
  CHECK_THROWS_AS(symplectize(ContactChart::make(darboux1_chart(1), gen(darboux1_chart(1), "dtheta"))), NotContact);
}

TEST_CASE("fresh names avoid collisions") {
  auto ch = Chart::make({{"t", 0}, {"u", 0}, {"z", 0}});
  auto c = ContactChart::make(ch, gen(ch, "dz") - gen(ch, "u") * gen(ch, "dt"));
  REQUIRE(c.verdict() == ContactVerdict::contact);
  auto sy = symplectize(c);
  CHECK(sy.t_name() == "t_");
  CHECK(sy.u_name() == "u_");
  CHECK(d(sy.omega()).is_zero());
}

TEST_CASE("lift_function") {
  auto c = darboux1(1);
  auto sy = symplectize(c);
  auto ch = c.chart();
  auto e = sy.chart();
  CHECK(sy.lift_function(cst(ch, 1)) == gen(e, "u"));
  CHECK(sy.lift_function(gen(ch, "x1") * gen(ch, "p1")) == gen(e, "u") * gen(e, "x1") * gen(e, "p1"));
  Exponents inv(e->size(), 0);
  inv[*e->exponential()] = -1;
  auto f = gen(ch, "x1") * gen(ch, "p1"), g = gen(ch, "theta") + gen(ch, "p1");
  CHECK(sy.lift_function(f * g) == GradedPoly::monomial(e, inv) * sy.lift_function(f) * sy.lift_function(g));
}

TEST_CASE("hamiltonian lift on coordinate generators") {
  for (const auto& c : corpus_charts()) {
    auto sy = symplectize(c);
    const int n = c.n();
    auto dt = Derivation::partial(sy.chart(), sy.t_name());
    std::vector<GradedPoly> probes{cst(c.chart(), 1)};
    for (auto g : c.chart()->coordinates()) probes.push_back(GradedPoly::generator(c.chart(), g));
    for (const auto& f : probes) {
      const int df = degree_of(f).value();
      auto ft = sy.lift_function(f);
      auto xt = sy.hamiltonian(ft);
      auto rf = sy.extend(c.reeb()(f));
      auto expected = sy.extend(hamiltonian_vf(c, f)) - sgn(long(n) * (df - 1)) * (rf * dt);
      CHECK(xt == expected);
      CHECK(contract(xt, sy.omega()) == sgn(df - n - 1) * d(ft));
    }
  }
}

TEST_CASE("poisson bracket reproduces the Jacobi bracket") {
  Rng rng(31337);
  int pairs = 0;
  for (const auto& c : corpus_charts()) {
    auto sy = symplectize(c);
    auto ch = c.chart();
    const int top = ch->all_degree_zero() ? 0 : c.n() + 2;
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_poly(rng, ch, uniform_int(rng, 0, top), 0, 3);
      auto g = random_poly(rng, ch, uniform_int(rng, 0, top), 0, 3);
      CHECK(sy.lift_function(jacobi_bracket(c, f, g)) ==
            sy.poisson_bracket(sy.lift_function(f), sy.lift_function(g)));
      ++pairs;
    }
    auto u = sy.lift_function(cst(ch, 1));
    CHECK(sy.poisson_bracket(u, u).is_zero());
  }
  CHECK(pairs == 125);

  auto r3 = standard_r3();
  auto sy = symplectize(r3);
  auto rc = r3.chart();
  CHECK(sy.poisson_bracket(sy.lift_function(gen(rc, "x")), sy.lift_function(gen(rc, "y"))) ==
        sy.lift_function(jacobi_bracket(r3, gen(rc, "x"), gen(rc, "y"))));
}

TEST_CASE("lambda pulls back to alpha minus an exact term") {
  for (const auto& c : corpus_charts()) {
    auto sy = symplectize(c);
    const int n = c.n();
    if (n == 0) {
      CHECK_THROWS_AS(sy.lambda(), InvalidChart);
      continue;
    }
    auto theta = contract(Derivation::euler(c.chart()), c.alpha());
    auto lhs = sy.zero_section_pullback(sy.lambda());
    CHECK(lhs == c.alpha() - Rational(1, n) * d(theta));
  }
  auto c = darboux1(1);
  auto sy = symplectize(c);
  // Euler function of the Darboux form is theta itself
  CHECK(contract(Derivation::euler(c.chart()), c.alpha()) == gen(c.chart(), "theta"));
  CHECK(sy.zero_section_pullback(sy.lift_function(gen(c.chart(), "x1"))) == gen(c.chart(), "x1"));
}

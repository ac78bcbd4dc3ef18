#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gcontact/cli.hpp"
#include "gcontact/expression.hpp"
#include "gcontact/model_file.hpp"
#include "gcontact/symplectization.hpp"
#include "support.hpp"

using namespace gcontact;
using namespace gcontact::testing;

namespace {

const std::string models = GCONTACT_MODELS_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  const auto p = t.rfind('\n');
  return p == std::string::npos ? t : t.substr(p + 1);
}

std::string model(const std::string& name) { return models + "/" + name + ".json"; }

/// Writes `text` to a scratch file and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "gcontact_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

ChartPtr n1_chart() { return Chart::make({{"x", 0}, {"p", 1}, {"theta", 1}}); }

std::string parse_failure(const std::string& text, const ChartPtr& c, std::size_t* column = nullptr) {
  try {
    parse_expression(text, c);
  } catch (const ParseError& e) {
    if (column) *column = e.column();
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("expression parser basics") {
  auto c = n1_chart();
  auto x = gen(c, "x"), p = gen(c, "p"), th = gen(c, "theta");
  CHECK(parse_expression("2*x*p - 1/2*dtheta", c) == cst(c, 2) * x * p - cst(c, Rational(1, 2)) * gen(c, "dtheta"));
  CHECK(parse_expression("x^3", c) == x * x * x);
  CHECK(parse_expression("-(x + 1)^2", c) == -((x + cst(c, 1)) * (x + cst(c, 1))));
  CHECK(parse_expression("p*theta", c) == -(th * p));
  CHECK(parse_expression("p^2", c).is_zero());
  CHECK(parse_expression(" 3/6 ", c) == cst(c, Rational(1, 2)));
  CHECK(parse_expression("--x", c) == x);
  CHECK(parse_expression("x^0", c) == cst(c, 1));
}

TEST_CASE("expression parser rejections carry a column") {
  auto c = n1_chart();
  std::size_t col = 0;
  CHECK(parse_failure("x / p", c, &col).find("division") != std::string::npos);
  CHECK(col == 3);
  CHECK(parse_failure("x*(p+1)/2", c, &col).find("division") != std::string::npos);
  CHECK(col == 8);
  CHECK(parse_failure("x + q", c, &col).find("unknown generator 'q'") != std::string::npos);
  CHECK(col == 5);
  CHECK(parse_failure("x^-1", c, &col).find("exponential") != std::string::npos);
  CHECK(col == 1);
  CHECK(!parse_failure("1.5*x", c).empty());
  CHECK(!parse_failure("x^y", c).empty());
  CHECK(!parse_failure("sin(x)", c).empty());
  CHECK(!parse_failure("(x + p", c).empty());
  CHECK(!parse_failure("x +", c).empty());
  CHECK(!parse_failure("", c).empty());
  CHECK(!parse_failure("x p", c).empty());
  CHECK(!parse_failure("1/0", c).empty());
}

TEST_CASE("negative powers of the exponential") {
  ChartOptions opts;
  opts.exponential_of = "t";
  auto c = Chart::make({{"x", 0}, {"t", 0}}, opts);
  auto u = gen(c, "u");
  GradedPoly inv = parse_expression("u^-2", c);
  CHECK(inv * u * u == cst(c, 1));
  CHECK(parse_expression(inv.to_string(), c) == inv);
}

TEST_CASE("to_string output re-parses") {
  Rng rng(41);
  std::vector<ChartPtr> charts{
      n1_chart(),
      Chart::make({{"x", 0}, {"y", 0}, {"e", 1}, {"f", 1}, {"p", 2}, {"theta", 2}}),
      Chart::make({{"a", 3}, {"b", 2}, {"c", 1}}),
  };
  ChartOptions opts;
  opts.exponential_of = "t";
  charts.push_back(Chart::make({{"x", 0}, {"t", 0}, {"q", 1}}, opts));
  int checked = 0;
  for (const auto& c : charts) {
    for (int trial = 0; trial < 60; ++trial) {
      GradedPoly f(c);
      const int nterms = uniform_int(rng, 0, 4);
      for (int t = 0; t < nterms; ++t) {
        Exponents m(c->size(), 0);
        for (std::size_t i = 0; i < c->size(); ++i) {
          const auto& g = c->generator(i);
          if (g.kind == GeneratorKind::exponential) {
            m[i] = uniform_int(rng, -2, 2);
          } else {
            m[i] = g.odd() ? uniform_int(rng, 0, 1) : uniform_int(rng, 0, 2);
          }
        }
        f.add_term(m, small_rational(rng) * uniform_int(rng, 1, 40));
      }
      CHECK(parse_expression(f.to_string(), c) == f);
      ++checked;
    }
  }
  CHECK(checked == 240);
}

TEST_CASE("model loader: jacobi files") {
  auto lm = parse_model_text(R"({"kind": "jacobi", "base_dim": 2, "Lambda": [["0","1"],["-1","0"]], "E": ["0","0"]})");
  REQUIRE(lm.jacobi);
  CHECK(lm.kind == "jacobi");
  CHECK(check_jacobi(*lm.jacobi).ok());
  CHECK(lm.model.chart.n() == 1);

  CHECK_THROWS_WITH_AS(
      parse_model_text(R"({"kind": "jacobi", "base_dim": 2, "Lambda": [["0","1"],["1","0"]]})", "m.json"),
      doctest::Contains("m.json: Lambda"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "jacobi", "base_dim": 2, "Lambda": [["0","1"]]})"),
                       doctest::Contains("Lambda: expected 2 entries"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "jacobi", "base_dim": 1, "Lambda": [["dx"]]})"),
                       doctest::Contains("Lambda[0][0]"), ModelFileError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(R"({"kind": "jacobi", "coordinates": [{"name": "x", "degree": 1}], "Lambda": [["0"]]})"),
      doctest::Contains("coordinate 'x' has degree 1"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "jacobi", "base_dim": 1, "Lambda": [["0"]], "extra": 1})"),
                       doctest::Contains("extra: unknown key"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "jacobi", "base_dim": 1, "Lambda": [["x/2"]]})"),
                       doctest::Contains("Lambda[0][0]: column 2: division"), ModelFileError);
}

TEST_CASE("model loader: courant-jacobi point file") {
  auto lm = parse_model_text(R"({"kind": "courant-jacobi", "base_dim": 0, "rank": 2, "g": [["0","1"],["1","0"]]})");
  REQUIRE(lm.courant_jacobi);
  CHECK(lm.courant_jacobi->rank == 2);
  CHECK(lm.courant_jacobi->g[0][1] == 1);
  CHECK(check_courant_jacobi(*lm.courant_jacobi).ok());
  CHECK(lm.model.chart.n() == 2);
  CHECK_THROWS_WITH_AS(
      parse_model_text(R"({"kind": "courant-jacobi", "base_dim": 0, "rank": 2, "g": [["1","0"],["0","0"]]})"),
      doctest::Contains("g:"), ModelFileError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(R"({"kind": "courant-jacobi", "base_dim": 1, "rank": 1, "g": [["x"]]})"),
      doctest::Contains("g[0][0]: the pairing must be constant"), ModelFileError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(R"({"kind": "courant-jacobi", "base_dim": 0, "rank": 1, "g": [["1"]], "encoding": "other"})"),
      doctest::Contains("encoding"), ModelFileError);
  auto lit = parse_model_text(
      R"({"kind": "courant-jacobi", "base_dim": 0, "rank": 1, "g": [["1"]], "b": ["1"], "encoding": "literal"})");
  CHECK(lit.encoding == CJEncoding::literal);
}

TEST_CASE("model loader: contact charts and syntax errors") {
  auto lm = parse_model_text(R"({"kind": "contact-chart",
    "coordinates": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}, {"name": "z", "degree": 0}],
    "alpha": "dz - y*dx"})");
  CHECK(lm.model.chart.verdict() == ContactVerdict::contact);
  CHECK(lm.model.s.is_zero());

  CHECK_THROWS_WITH_AS(parse_model_text("{\n  \"kind\": \"jacobi\",\n  \"base_dim\" 2\n}", "bad.json"),
                       doctest::Contains("bad.json:3:14"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "contact-chart",
    "coordinates": [{"name": "x", "degree": -1}], "alpha": "dx"})"),
                       doctest::Contains("coordinates[0].degree: coordinate 'x'"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "contact-chart",
    "coordinates": [{"name": "x", "degree": 0}, {"name": "p", "degree": 1}], "alpha": "dx + p*dx"})"),
                       doctest::Contains("alpha"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "contact-chart",
    "coordinates": [{"name": "x", "degree": 0}, {"name": "p", "degree": 1}, {"name": "theta", "degree": 1}],
    "alpha": "p*dx + dtheta", "S": "p"})"),
                       doctest::Contains("S: must be homogeneous of degree 2"), ModelFileError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"kind": "poisson"})"), doctest::Contains("unknown kind"),
                       ModelFileError);
  CHECK_THROWS_AS(parse_model(models + "/does_not_exist.json"), ModelFileError);
}

TEST_CASE("shipped models load") {
  for (const auto& entry : std::filesystem::directory_iterator(models)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(parse_model(entry.path()));
  }
}

TEST_CASE("run: master on the contact R^3 Jacobi pair") {
  auto r = invoke({"master", model("jacobi_r3")});
  CHECK(r.code == 0);
  CHECK(r.out.find("{S,S}_J = 0") != std::string::npos);
  CHECK(r.out.find("agrees with oracle: yes") != std::string::npos);
  CHECK(last_line(r.out) == "VERDICT: pass RESIDUAL_TERMS: 0");

  auto bad = invoke({"master", model("not_jacobi")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("{S,S}_J = 2*z*p_x*p_y*p_z") != std::string::npos);
  CHECK(last_line(bad.out) == "VERDICT: fail RESIDUAL_TERMS: 1");
}

TEST_CASE("run: bracket with the constant function gives the Reeb derivative") {
  auto r = invoke({"bracket", model("contact_r3"), "--f", "1", "--g", "z + x*y"});
  CHECK(r.code == 0);
  CHECK(r.out.find("{f,g}_J = 1\n") != std::string::npos);
  CHECK(r.out.find("R(g) = 1\n") != std::string::npos);

  auto d1 = invoke({"bracket", model("darboux_n1"), "--f", "1", "--g", "theta + x*p_y"});
  CHECK(d1.code == 0);
  CHECK(d1.out.find("{f,g}_J = 1\n") != std::string::npos);

  auto cart = invoke({"bracket", model("darboux_n1"), "--f", "x*p_y", "--g", "theta", "--cartan"});
  CHECK(cart.code == 0);
  CHECK(cart.out.find("{f,g}_C = ") != std::string::npos);
}

TEST_CASE("run: lattice-eval totals agree") {
  for (auto [m, grid] : std::vector<std::pair<std::string, std::string>>{
           {"jacobi_r3", "8x8"}, {"darboux_n1", "5x7"}, {"cj_so3", "3x3x3"}, {"wade_r1", "4x3x2"}}) {
    CAPTURE(m);
    auto r = invoke({"lattice-eval", model(m), "--grid", grid, "--seed", "11"});
    CHECK(r.code == 0);
    CHECK(r.out.find("AKSZ - BPV = 0\n") != std::string::npos);
  }
  auto wrong = invoke({"lattice-eval", model("jacobi_r3"), "--grid", "4x4x4"});
  CHECK(wrong.code == 2);
  CHECK(invoke({"lattice-eval", model("jacobi_r3"), "--grid", "4by4"}).code == 2);
  CHECK(invoke({"lattice-eval", model("jacobi_r3"), "--grid", "0x4"}).code == 2);
}

TEST_CASE("run: every command on every shipped model") {
  const std::vector<std::string> contact_models{"contact_r3", "darboux_n1", "darboux_n2", "jacobi_r3",
                                                "poisson_plane", "cj_point_hyperbolic", "cj_so3", "wade_r1"};
  for (const auto& m : contact_models) {
    CAPTURE(m);
    for (const char* cmd : {"check-contact", "reeb", "symplectize-check"}) {
      CHECK(invoke({cmd, model(m)}).code == 0);
    }
    CHECK(invoke({"master", model(m)}).code == 0);
    const std::string f = m.rfind("cj_point", 0) == 0 || m == "cj_so3" ? "theta" : "x";
    CHECK(invoke({"hamiltonian", model(m), "--f", f}).code == 0);
  }
  CHECK(invoke({"jacobi-check", model("jacobi_r3")}).code == 0);
  CHECK(invoke({"jacobi-check", model("poisson_plane")}).code == 0);
  CHECK(invoke({"jacobi-check", model("not_jacobi")}).code == 1);
  CHECK(invoke({"cj-check", model("wade_r1")}).code == 0);
  CHECK(invoke({"cj-check", model("cj_so3")}).code == 0);
  CHECK(invoke({"jacobi-check", model("wade_r1")}).code == 2);
  CHECK(invoke({"cj-check", model("jacobi_r3")}).code == 2);
}

TEST_CASE("run: failing verdicts print residuals") {
  auto degenerate = scratch("degenerate.json", R"({"kind": "contact-chart",
    "coordinates": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}, {"name": "z", "degree": 0}],
    "alpha": "dz"})");
  auto r = invoke({"check-contact", degenerate});
  CHECK(r.code == 1);
  CHECK(r.out.find("contact verdict: degenerate") != std::string::npos);
  CHECK(last_line(r.out) == "VERDICT: fail RESIDUAL_TERMS: 2");
  CHECK(invoke({"reeb", degenerate}).code == 1);

  auto broken = scratch("broken_cj.json", R"({"kind": "courant-jacobi", "base_dim": 0, "rank": 2,
    "g": [["0","1"],["1","0"]], "b": ["1", "0"]})");
  auto c = invoke({"cj-check", broken});
  CHECK(c.code == 1);
  CHECK(c.out.find("axiom") != std::string::npos);
  CHECK(last_line(c.out).rfind("VERDICT: fail RESIDUAL_TERMS: ", 0) == 0);
}

TEST_CASE("run: emit-action output re-parses") {
  for (const char* m : {"darboux_n1", "jacobi_r3", "darboux_n2", "cj_so3", "wade_r1"}) {
    for (const char* v : {"aksz", "bpv"}) {
      CAPTURE(m);
      auto r = invoke({"emit-action", model(m), "--variant", v});
      CHECK(r.code == 0);
      auto lm = parse_model(model(m));
      auto a = emit_action(lm.model, std::string(v) == "bpv" ? ActionVariant::bpv : ActionVariant::aksz);
      const auto line = r.out.substr(r.out.find("integrand = ") + 12);
      CHECK(parse_expression(line.substr(0, line.find('\n')), a.fields) == a.integrand);
    }
  }
  CHECK(invoke({"emit-action", model("contact_r3")}).code == 2);
}

TEST_CASE("run: errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate", model("contact_r3")}).code == 2);
  CHECK(invoke({"master"}).code == 2);
  CHECK(invoke({"master", models + "/missing.json"}).code == 2);
  CHECK(invoke({"hamiltonian", model("contact_r3")}).code == 2);
  CHECK(invoke({"emit-action", model("jacobi_r3"), "--variant", "other"}).code == 2);
  auto bad = invoke({"hamiltonian", model("contact_r3"), "--f", "x/y"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--f: column 2: division") != std::string::npos);
  auto mixed = invoke({"hamiltonian", model("darboux_n1"), "--f", "x + p_x"});
  CHECK(mixed.code == 2);
  auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("lattice-eval") != std::string::npos);
}

TEST_CASE("run: reports are byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds{
      {"lattice-eval", model("wade_r1"), "--grid", "3x3x3", "--seed", "5"},
      {"cj-check", model("wade_r1")},
      {"symplectize-check", model("jacobi_r3")},
      {"bracket", model("darboux_n2"), "--f", "x*e", "--g", "f*p + theta", "--cartan"},
  };
  for (const auto& c : cmds) {
    auto a = invoke(c), b = invoke(c);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  auto s1 = invoke({"lattice-eval", model("jacobi_r3"), "--grid", "6x6", "--seed", "1"});
  auto s2 = invoke({"lattice-eval", model("jacobi_r3"), "--grid", "6x6", "--seed", "2"});
  CHECK(s1.out != s2.out);
}

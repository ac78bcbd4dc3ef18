#include "gcontact/model_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gcontact/expression.hpp"

namespace gcontact {

namespace {

using nlohmann::json;

class Loader {
 public:
  Loader(const json& doc, std::string origin) : doc_(doc), origin_(std::move(origin)) {}

  LoadedModel load() {
    if (!doc_.is_object()) fail("", "the document must be a JSON object");
    if (!doc_.contains("kind")) fail("kind", "missing");
    const json& kind = doc_["kind"];
    if (!kind.is_string()) fail("kind", "must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "contact-chart") return contact_chart();
    if (k == "jacobi") return jacobi();
    if (k == "courant-jacobi") return courant_jacobi();
    fail("kind", "unknown kind '" + k + "' (expected contact-chart, jacobi or courant-jacobi)");
  }

 private:
  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ModelFileError(origin_ + ": " + (path.empty() ? "" : path + ": ") + message);
  }

  void allow_keys(std::set<std::string> keys) const {
    keys.insert("kind");
    keys.insert("description");
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      if (!keys.count(it.key())) fail(it.key(), "unknown key");
    }
    if (doc_.contains("description") && !doc_["description"].is_string()) fail("description", "must be a string");
  }

  const json& require(const std::string& key) const {
    if (!doc_.contains(key)) fail(key, "missing");
    return doc_[key];
  }

  int integer(const json& v, const std::string& path, int lo, int hi) const {
    if (!v.is_number_integer()) fail(path, "must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return int(x);
  }

  GradedPoly expression(const json& v, const std::string& path, const ChartPtr& chart) const {
    if (v.is_number_integer()) return GradedPoly::constant(chart, Rational(v.get<long>()));
    if (!v.is_string()) fail(path, "must be an expression string");
    try {
      return parse_expression(v.get<std::string>(), chart);
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }

  /// An expression on a base chart; differentials are not allowed.
  GradedPoly function(const json& v, const std::string& path, const ChartPtr& base) const {
    GradedPoly f = expression(v, path, base);
    for (const auto& [m, c] : f.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] != 0 && base->generator(i).kind != GeneratorKind::coordinate) {
          fail(path, "coefficients must be functions of the base coordinates");
        }
      }
    }
    return f;
  }

  const json& array(const json& v, const std::string& path, std::size_t size) const {
    if (!v.is_array()) fail(path, "must be an array");
    if (v.size() != size) fail(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(v.size()));
    return v;
  }

  std::vector<CoordinateSpec> coordinate_list(bool degree_zero_only) const {
    const json& list = require("coordinates");
    if (!list.is_array()) fail("coordinates", "must be an array");
    std::vector<CoordinateSpec> specs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "coordinates[" + std::to_string(i) + "]";
      const json& c = list[i];
      if (!c.is_object()) fail(path, "must be an object {name, degree}");
      for (auto it = c.begin(); it != c.end(); ++it) {
        if (it.key() != "name" && it.key() != "degree") fail(path + "." + it.key(), "unknown key");
      }
      if (!c.contains("name") || !c["name"].is_string()) fail(path + ".name", "must be a string");
      const std::string name = c["name"].get<std::string>();
      if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') ||
          name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") !=
              std::string::npos) {
        fail(path + ".name", "'" + name + "' is not an identifier");
      }
      if (!c.contains("degree") || !c["degree"].is_number_integer()) {
        fail(path + ".degree", "coordinate '" + name + "' needs an integer degree");
      }
      const auto degree = c["degree"].get<long long>();
      if (degree < 0 || degree > 64) {
        fail(path + ".degree", "coordinate '" + name + "' has degree " + std::to_string(degree) +
                                   "; degrees must lie in [0, 64]");
      }
      if (degree_zero_only && degree != 0) {
        fail(path + ".degree", "coordinate '" + name + "' has degree " + std::to_string(degree) +
                                   "; base coordinates must have degree 0");
      }
      specs.push_back({name, int(degree)});
    }
    return specs;
  }

  ChartPtr make_chart(const std::vector<CoordinateSpec>& specs) const {
    try {
      return Chart::make(specs);
    } catch (const Error& e) {
      fail("coordinates", e.what());
    }
  }

  ChartPtr base_chart() const {
    const bool has_coords = doc_.contains("coordinates");
    const bool has_dim = doc_.contains("base_dim");
    if (has_coords == has_dim) fail("", "give exactly one of 'coordinates' and 'base_dim'");
    if (has_coords) return make_chart(coordinate_list(true));
    const int d = integer(doc_["base_dim"], "base_dim", 0, 16);
    std::vector<CoordinateSpec> specs;
    static const char* small[] = {"x", "y", "z"};
    for (int i = 0; i < d; ++i) specs.push_back({d <= 3 ? small[i] : "x" + std::to_string(i + 1), 0});
    return make_chart(specs);
  }

  LoadedModel contact_chart() const {
    allow_keys({"coordinates", "alpha", "S"});
    ChartPtr chart = make_chart(coordinate_list(false));
    GradedPoly alpha = expression(require("alpha"), "alpha", chart);
    std::optional<ContactChart> cc;
    try {
      cc = ContactChart::make(chart, alpha);
    } catch (const Error& e) {
      fail("alpha", e.what());
    }
    GradedPoly s(chart);
    if (doc_.contains("S")) {
      s = expression(doc_["S"], "S", chart);
      if (!s.is_zero()) {
        if (s.form_degree().is_mixed() || s.form_degree().value() != 0) fail("S", "must be a function, not a form");
        const int want = cc->n() + 1;
        if (s.degree().is_mixed() || s.degree().value() != want) {
          fail("S", "must be homogeneous of degree " + std::to_string(want));
        }
      }
    }
    ContactModel m{"contact-chart", *cc, s, default_field_names(*chart)};
    return LoadedModel{"contact-chart", std::move(m), std::nullopt, std::nullopt, CJEncoding::calibrated};
  }

  LoadedModel jacobi() const {
    allow_keys({"coordinates", "base_dim", "Lambda", "E"});
    JacobiPair j;
    j.base = base_chart();
    const std::size_t d = j.base->coordinates().size();
    const json& lam = array(require("Lambda"), "Lambda", d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::string row = "Lambda[" + std::to_string(i) + "]";
      const json& r = array(lam[i], row, d);
      j.lambda.emplace_back();
      for (std::size_t k = 0; k < d; ++k) {
        j.lambda.back().push_back(function(r[k], row + "[" + std::to_string(k) + "]", j.base));
      }
    }
    if (doc_.contains("E")) {
      const json& e = array(doc_["E"], "E", d);
      for (std::size_t i = 0; i < d; ++i) j.e.push_back(function(e[i], "E[" + std::to_string(i) + "]", j.base));
    } else {
      j.e.assign(d, GradedPoly(j.base));
    }
    try {
      j.validate();
    } catch (const Error& e) {
      fail("Lambda", e.what());
    }
    return LoadedModel{"jacobi", build_jacobi_contact(j), j, std::nullopt, CJEncoding::calibrated};
  }

  LoadedModel courant_jacobi() const {
    allow_keys({"coordinates", "base_dim", "rank", "g", "a", "b", "T", "encoding"});
    CourantJacobiData data;
    data.base = base_chart();
    const std::size_t dim = data.base->coordinates().size();
    data.rank = integer(require("rank"), "rank", 0, 12);
    const std::size_t r = std::size_t(data.rank);
    auto idx = [](const std::string& p, std::size_t i) { return p + "[" + std::to_string(i) + "]"; };

    const json& g = array(require("g"), "g", r);
    for (std::size_t a = 0; a < r; ++a) {
      const json& row = array(g[a], idx("g", a), r);
      data.g.emplace_back();
      for (std::size_t b = 0; b < r; ++b) {
        const std::string path = idx(idx("g", a), b);
        GradedPoly v = function(row[b], path, data.base);
        if (v.term_count() > 1 || (v.term_count() == 1 && v.constant_term() == 0)) {
          fail(path, "the pairing must be constant");
        }
        data.g.back().push_back(v.constant_term());
      }
    }

    data.a.assign(r, std::vector<GradedPoly>(dim, GradedPoly(data.base)));
    if (doc_.contains("a")) {
      const json& a = array(doc_["a"], "a", r);
      for (std::size_t k = 0; k < r; ++k) {
        const json& row = array(a[k], idx("a", k), dim);
        for (std::size_t i = 0; i < dim; ++i) data.a[k][i] = function(row[i], idx(idx("a", k), i), data.base);
      }
    }
    data.b.assign(r, GradedPoly(data.base));
    if (doc_.contains("b")) {
      const json& b = array(doc_["b"], "b", r);
      for (std::size_t k = 0; k < r; ++k) data.b[k] = function(b[k], idx("b", k), data.base);
    }
    data.t.assign(r, std::vector<std::vector<GradedPoly>>(r, std::vector<GradedPoly>(r, GradedPoly(data.base))));
    if (doc_.contains("T")) {
      const json& t = array(doc_["T"], "T", r);
      for (std::size_t a = 0; a < r; ++a) {
        const json& plane = array(t[a], idx("T", a), r);
        for (std::size_t b = 0; b < r; ++b) {
          const json& row = array(plane[b], idx(idx("T", a), b), r);
          for (std::size_t c = 0; c < r; ++c) {
            data.t[a][b][c] = function(row[c], idx(idx(idx("T", a), b), c), data.base);
          }
        }
      }
    }
    CJEncoding encoding = CJEncoding::calibrated;
    if (doc_.contains("encoding")) {
      const json& e = doc_["encoding"];
      if (e == "calibrated") {
        encoding = CJEncoding::calibrated;
      } else if (e == "literal") {
        encoding = CJEncoding::literal;
      } else {
        fail("encoding", "must be \"calibrated\" or \"literal\"");
      }
    }
    try {
      data.validate();
    } catch (const Error& e) {
      fail("g", e.what());
    }
    return LoadedModel{"courant-jacobi", build_cj_contact(data, encoding), std::nullopt, data, encoding};
  }

  const json& doc_;
  std::string origin_;
};

}  // namespace

LoadedModel parse_model_text(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto p = what.find(": "); p != std::string::npos) what = what.substr(p + 2);
    if (auto p = what.find(": "); p != std::string::npos) what = what.substr(p + 2);
    throw ModelFileError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON: " + what);
  }
  return Loader(doc, origin).load();
}

LoadedModel parse_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str(), path.string());
}

}  // namespace gcontact

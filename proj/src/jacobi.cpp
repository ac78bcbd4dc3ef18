#include <algorithm>
#include <sstream>

#include "gcontact/models.hpp"

namespace gcontact {

namespace {

/// Sorts indices in place; returns the permutation sign, or 0 on a repeat.
int sort_indices(Multivector::Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1]) return 0;
  }
  return sign;
}

void require_ungraded(const Chart& base) {
  if (!base.all_degree_zero() || base.exponential()) {
    throw ValidationError("base chart must consist of degree-0 coordinates");
  }
}

struct Factor {
  GradedPoly coef;
  int index;
};

}  // namespace

GradedPoly base_partial(const GradedPoly& f, int i) {
  const ChartPtr& chart = f.chart();
  const std::size_t g = chart->coordinates().at(static_cast<std::size_t>(i));
  GradedPoly out(chart);
  for (const auto& [m, c] : f.terms()) {
    if (m[g] == 0) continue;
    Exponents e = m;
    e[g] -= 1;
    out.add_term(e, c * m[g]);
  }
  return out;
}

Multivector::Multivector(ChartPtr base) : base_(std::move(base)) {}

Multivector Multivector::wedge_of(ChartPtr base, const GradedPoly& c, Index indices) {
  Multivector out(base);
  const int s = sort_indices(indices);
  if (s != 0) out.add(indices, c * Rational(s));
  return out;
}

Multivector Multivector::vector_field(ChartPtr base, const std::vector<GradedPoly>& components) {
  Multivector out(base);
  for (std::size_t i = 0; i < components.size(); ++i) out.add({static_cast<int>(i)}, components[i]);
  return out;
}

Multivector Multivector::bivector(ChartPtr base, const std::vector<std::vector<GradedPoly>>& matrix) {
  Multivector out(base);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix[i].size(); ++j) {
      out.add({static_cast<int>(i), static_cast<int>(j)}, matrix[i][j]);
    }
  }
  return out;
}

GradedPoly Multivector::coefficient(const Index& i) const {
  auto it = terms_.find(i);
  return it == terms_.end() ? GradedPoly(base_) : it->second;
}

void Multivector::add(const Index& indices, const GradedPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(indices, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Multivector& Multivector::operator+=(const Multivector& o) {
  for (const auto& [i, c] : o.terms_) add(i, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  for (const auto& [i, c] : o.terms_) add(i, -c);
  return *this;
}

Multivector& Multivector::operator*=(const Rational& c) {
  if (c == 0) terms_.clear();
  for (auto& [i, coef] : terms_) coef *= c;
  return *this;
}

std::string Multivector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i : idx) os << "*d_" << base_->generator(base_->coordinates()[static_cast<std::size_t>(i)]).name;
  }
  return os.str();
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  Multivector out(a.base());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      Multivector::Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      const int s = sort_indices(idx);
      if (s != 0) out.add(idx, ca * cb * Rational(s));
    }
  }
  return out;
}

Multivector schouten(const Multivector& a, const Multivector& b) {
  const ChartPtr& base = a.base();
  Multivector out(base);
  const GradedPoly one = GradedPoly::constant(base, 1);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      if (ia.empty() || ib.empty()) throw InvalidChart("schouten bracket is implemented for positive degrees");
      // decomposable factors: the coefficient rides on the first vector
      std::vector<Factor> xs, ys;
      for (std::size_t k = 0; k < ia.size(); ++k) xs.push_back({k == 0 ? ca : one, ia[k]});
      for (std::size_t k = 0; k < ib.size(); ++k) ys.push_back({k == 0 ? cb : one, ib[k]});
      for (std::size_t p = 0; p < xs.size(); ++p) {
        for (std::size_t q = 0; q < ys.size(); ++q) {
          // [f d_i, g d_j] = f (d_i g) d_j - g (d_j f) d_i
          std::vector<Factor> lie;
          lie.push_back({xs[p].coef * base_partial(ys[q].coef, xs[p].index), ys[q].index});
          lie.push_back({-(ys[q].coef * base_partial(xs[p].coef, ys[q].index)), xs[p].index});
          GradedPoly rest = one;
          Multivector::Index tail;
          for (std::size_t k = 0; k < xs.size(); ++k) {
            if (k == p) continue;
            rest = rest * xs[k].coef;
            tail.push_back(xs[k].index);
          }
          for (std::size_t k = 0; k < ys.size(); ++k) {
            if (k == q) continue;
            rest = rest * ys[k].coef;
            tail.push_back(ys[k].index);
          }
          const Rational s(-sign_power(static_cast<long>(p + q)));
          for (const auto& l : lie) {
            if (l.coef.is_zero()) continue;
            Multivector::Index idx{l.index};
            idx.insert(idx.end(), tail.begin(), tail.end());
            out += Multivector::wedge_of(base, l.coef * rest * s, idx);
          }
        }
      }
    }
  }
  return out;
}

void JacobiPair::validate() const {
  if (!base) throw ValidationError("Jacobi pair has no base chart");
  require_ungraded(*base);
  const std::size_t d = base->coordinates().size();
  if (lambda.size() != d || e.size() != d) throw ValidationError("Lambda and E must have base dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (lambda[i].size() != d) throw ValidationError("Lambda must be square");
    for (std::size_t j = 0; j < d; ++j) {
      if (!(lambda[i][j] + lambda[j][i]).is_zero()) {
        throw ValidationError("Lambda is not antisymmetric at (" + std::to_string(i) + ", " + std::to_string(j) +
                              ")");
      }
    }
  }
}

Multivector JacobiPair::lambda_field() const { return Multivector::bivector(base, lambda); }

Multivector JacobiPair::e_field() const { return Multivector::vector_field(base, e); }

JacobiCheck check_jacobi(const JacobiPair& j) {
  j.validate();
  const Multivector l = j.lambda_field();
  const Multivector e = j.e_field();
  Multivector ll = schouten(l, l);
  ll -= Rational(2) * wedge(e, l);
  return {ll, schouten(l, e)};
}

GradedPoly jacobi_fn_bracket(const JacobiPair& j, const GradedPoly& f, const GradedPoly& g) {
  j.validate();
  const std::size_t d = j.e.size();
  GradedPoly out(j.base);
  std::vector<GradedPoly> df, dg;
  for (std::size_t i = 0; i < d; ++i) {
    df.push_back(base_partial(f, static_cast<int>(i)));
    dg.push_back(base_partial(g, static_cast<int>(i)));
  }
  GradedPoly ef(j.base), eg(j.base);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) out += j.lambda[i][k] * df[i] * dg[k];
    ef += j.e[i] * df[i];
    eg += j.e[i] * dg[i];
  }
  return out + f * eg - ef * g;
}

JacobiPair contact_r3_pair() {
  auto base = Chart::make({{"x", 0}, {"y", 0}, {"z", 0}});
  const GradedPoly zero(base);
  const GradedPoly one = GradedPoly::constant(base, 1);
  const GradedPoly y = GradedPoly::generator(base, "y");
  JacobiPair j{base, std::vector<std::vector<GradedPoly>>(3, std::vector<GradedPoly>(3, zero)), {zero, zero, one}};
  j.lambda[0][1] = one;
  j.lambda[1][0] = -one;
  j.lambda[2][1] = y;
  j.lambda[1][2] = -y;
  return j;
}

std::map<std::string, std::string> default_field_names(const Chart& chart) {
  std::map<std::string, std::string> out;
  for (auto g : chart.coordinates()) {
    const auto& name = chart.generator(g).name;
    out[name] = "Z_" + name;
  }
  return out;
}

ContactModel build_jacobi_contact(const JacobiPair& j) {
  j.validate();
  const auto& base = *j.base;
  std::vector<CoordinateSpec> specs;
  std::map<std::string, std::string> fields;
  std::vector<std::string> xs;
  for (auto g : base.coordinates()) xs.push_back(base.generator(g).name);
  for (const auto& x : xs) {
    specs.push_back({x, 0});
    fields[x] = "X_" + x;
  }
  for (const auto& x : xs) {
    specs.push_back({"p_" + x, 1});
    fields["p_" + x] = "eta_" + x;
  }
  specs.push_back({"theta", 1});
  fields["theta"] = "Theta";
  ChartOptions opts;
  opts.contact_degree = 1;
  ChartPtr chart;
  try {
    chart = Chart::make(specs, opts);
  } catch (const InvalidChart& e) {
    throw ValidationError(std::string("cannot build the degree-1 chart: ") + e.what());
  }

  auto gen = [&](const std::string& name) { return GradedPoly::generator(chart, name); };
  GradedPoly alpha = gen("dtheta");
  for (const auto& x : xs) alpha += gen("p_" + x) * gen("d" + x);

  GradedPoly s(chart);
  const std::size_t d = xs.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = i + 1; k < d; ++k) {
      s += transport(j.lambda[i][k], chart) * gen("p_" + xs[i]) * gen("p_" + xs[k]);
    }
    s -= transport(j.e[i], chart) * gen("p_" + xs[i]) * gen("theta");
  }
  return {"jacobi", ContactChart::make(chart, alpha), s, fields};
}

GradedPoly encode_multivector(const ContactModel& m, const Multivector& v) {
  const ChartPtr& chart = m.chart.chart();
  const Chart& base = *v.base();
  GradedPoly out(chart);
  for (const auto& [idx, c] : v.terms()) {
    GradedPoly term = transport(c, chart);
    for (int i : idx) {
      term = term * GradedPoly::generator(chart, "p_" + base.generator(base.coordinates()[std::size_t(i)]).name);
    }
    out += term;
  }
  return out;
}

GradedPoly jacobi_master_via_schouten(const ContactModel& m, const JacobiPair& j) {
  const Multivector l = j.lambda_field();
  const Multivector e = j.e_field();
  const GradedPoly theta = GradedPoly::generator(m.chart.chart(), "theta");
  GradedPoly out = encode_multivector(m, schouten(l, l));
  out -= encode_multivector(m, wedge(e, l)) * Rational(2);
  out += encode_multivector(m, schouten(e, l)) * theta * Rational(2);
  return out;
}

}  // namespace gcontact

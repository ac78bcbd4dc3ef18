#include <sstream>

#include "gcontact/flat_system.hpp"
#include "gcontact/models.hpp"

namespace gcontact {

namespace {

using Section = std::vector<GradedPoly>;  // components in the frame v_a
using Constants = std::vector<std::vector<std::vector<GradedPoly>>>;

/// The algebroid reconstructed from frame data: pairing, anchor, D and the
/// bracket extended from frame values by axioms (2) and polarized (3).
class FrameAlgebroid {
 public:
  FrameAlgebroid(const CourantJacobiData& data, Constants c) : data_(data), r_(std::size_t(data.rank)) {
    RationalMatrix g(r_, r_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < r_; ++j) g(i, j) = data.g[i][j];
    }
    ginv_ = *g.inverse();
    d_ = data.base->coordinates().size();
    upper_.assign(r_, std::vector<Section>(r_, Section(r_, zero())));
    for (std::size_t a = 0; a < r_; ++a) {
      for (std::size_t b = 0; b < r_; ++b) {
        for (std::size_t e = 0; e < r_; ++e) {
          for (std::size_t k = 0; k < r_; ++k) {
            if (ginv_(k, e) != 0) upper_[a][b][e] += c[a][b][k] * ginv_(k, e);
          }
        }
      }
    }
  }

  GradedPoly zero() const { return GradedPoly(data_.base); }
  std::size_t rank() const { return r_; }

  Section frame(std::size_t a, const GradedPoly& h) const {
    Section s(r_, zero());
    s[a] = h;
    return s;
  }

  GradedPoly pairing(const Section& e1, const Section& e2) const {
    GradedPoly out = zero();
    for (std::size_t a = 0; a < r_; ++a) {
      if (e1[a].is_zero()) continue;
      for (std::size_t b = 0; b < r_; ++b) {
        if (data_.g[a][b] != 0 && !e2[b].is_zero()) out += e1[a] * e2[b] * data_.g[a][b];
      }
    }
    return out;
  }

  GradedPoly anchor_hat(const Section& e, const GradedPoly& h) const {
    GradedPoly out = zero();
    for (std::size_t i = 0; i < d_; ++i) {
      const GradedPoly dh = base_partial(h, int(i));
      if (dh.is_zero()) continue;
      for (std::size_t a = 0; a < r_; ++a) {
        if (!e[a].is_zero() && !data_.a[a][i].is_zero()) out += e[a] * data_.a[a][i] * dh;
      }
    }
    return out;
  }

  GradedPoly anchor(const Section& e, const GradedPoly& h) const {
    GradedPoly out = anchor_hat(e, h);
    for (std::size_t a = 0; a < r_; ++a) {
      if (!e[a].is_zero() && !data_.b[a].is_zero()) out += e[a] * data_.b[a] * h;
    }
    return out;
  }

  Section raise(const std::vector<GradedPoly>& lower) const {
    Section out(r_, zero());
    for (std::size_t k = 0; k < r_; ++k) {
      if (lower[k].is_zero()) continue;
      for (std::size_t e = 0; e < r_; ++e) {
        if (ginv_(k, e) != 0) out[e] += lower[k] * ginv_(k, e);
      }
    }
    return out;
  }

  Section big_d(const GradedPoly& h) const {
    std::vector<GradedPoly> lower;
    for (std::size_t k = 0; k < r_; ++k) lower.push_back(anchor(frame(k, one()), h));
    return raise(lower);
  }

  Section big_d_hat(const GradedPoly& h) const {
    std::vector<GradedPoly> lower;
    for (std::size_t k = 0; k < r_; ++k) lower.push_back(anchor_hat(frame(k, one()), h));
    return raise(lower);
  }

  Section bracket(const Section& e1, const Section& e2) const {
    Section out(r_, zero());
    for (std::size_t a = 0; a < r_; ++a) {
      if (e1[a].is_zero()) continue;
      for (std::size_t b = 0; b < r_; ++b) {
        if (e2[b].is_zero()) continue;
        const GradedPoly coef = e1[a] * e2[b];
        for (std::size_t e = 0; e < r_; ++e) {
          if (!upper_[a][b][e].is_zero()) out[e] += coef * upper_[a][b][e];
        }
      }
    }
    for (std::size_t e = 0; e < r_; ++e) {
      out[e] += anchor_hat(e1, e2[e]);
      out[e] -= anchor_hat(e2, e1[e]);
    }
    for (std::size_t a = 0; a < r_; ++a) {
      if (e1[a].is_zero()) continue;
      const GradedPoly pa = pairing(frame(a, one()), e2);
      if (pa.is_zero()) continue;
      const Section dh = big_d_hat(e1[a]);
      for (std::size_t e = 0; e < r_; ++e) out[e] += pa * dh[e];
    }
    return out;
  }

  GradedPoly one() const { return GradedPoly::constant(data_.base, 1); }

 private:
  const CourantJacobiData& data_;
  std::size_t r_;
  std::size_t d_ = 0;
  RationalMatrix ginv_;
  std::vector<std::vector<Section>> upper_;  // [[v_a, v_b]] in the frame
};

Section sub(Section a, const Section& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Section mul(const GradedPoly& h, Section a) {
  for (auto& c : a) c = h * c;
  return a;
}

struct Labelled {
  Section s;
  std::string label;
};

}  // namespace

void CourantJacobiData::validate() const {
  if (!base) throw ValidationError("Courant-Jacobi data has no base chart");
  if (!base->all_degree_zero() || base->exponential()) {
    throw ValidationError("base chart must consist of degree-0 coordinates");
  }
  const std::size_t r = std::size_t(rank);
  const std::size_t d = base->coordinates().size();
  if (rank < 0 || g.size() != r || a.size() != r || b.size() != r || t.size() != r) {
    throw ValidationError("g, a, b and T must have rank " + std::to_string(rank) + " rows");
  }
  RationalMatrix gm(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (g[i].size() != r) throw ValidationError("g must be square");
    if (a[i].size() != d) throw ValidationError("a must have base_dim columns");
    if (t[i].size() != r) throw ValidationError("T must be rank x rank x rank");
    for (std::size_t j = 0; j < r; ++j) {
      if (t[i][j].size() != r) throw ValidationError("T must be rank x rank x rank");
      if (g[i][j] != g[j][i]) throw ValidationError("g is not symmetric");
      gm(i, j) = g[i][j];
    }
  }
  if (!gm.inverse()) throw ValidationError("g is singular");
}

std::vector<std::vector<std::vector<GradedPoly>>> bracket_constants(const CourantJacobiData& data,
                                                                   CJReading reading) {
  data.validate();
  if (reading == CJReading::raw) return data.t;
  const std::size_t r = std::size_t(data.rank);
  Constants c(r, std::vector<std::vector<GradedPoly>>(r, std::vector<GradedPoly>(r, GradedPoly(data.base))));
  for (std::size_t x = 0; x < r; ++x) {
    for (std::size_t y = 0; y < r; ++y) {
      for (std::size_t z = 0; z < r; ++z) {
        const auto& t = data.t;
        GradedPoly anti = t[x][y][z] + t[y][z][x] + t[z][x][y] - t[y][x][z] - t[x][z][y] - t[z][y][x];
        anti *= Rational(1, 6);
        GradedPoly forced = data.b[z] * data.g[x][y] - data.b[y] * data.g[x][z] + data.b[x] * data.g[y][z];
        forced *= Rational(1, 2);
        c[x][y][z] = anti + forced;
      }
    }
  }
  return c;
}

bool CourantJacobiCheck::axiom_ok(int axiom) const {
  for (const auto& f : failures) {
    if (f.axiom == axiom) return false;
  }
  return true;
}

std::size_t CourantJacobiCheck::residual_terms() const {
  std::size_t n = 0;
  for (const auto& f : failures) {
    for (const auto& c : f.residual) n += c.term_count();
  }
  return n;
}

CourantJacobiCheck check_courant_jacobi(const CourantJacobiData& data, CJReading reading) {
  const FrameAlgebroid alg(data, bracket_constants(data, reading));
  const std::size_t r = alg.rank();
  const auto& coords = data.base->coordinates();
  CourantJacobiCheck out;
  auto record = [&](int axiom, const std::string& label, std::vector<GradedPoly> residual) {
    ++out.instances;
    for (const auto& c : residual) {
      if (!c.is_zero()) {
        out.failures.push_back({axiom, label, std::move(residual)});
        return;
      }
    }
  };

  std::vector<Labelled> frames;
  for (std::size_t a = 0; a < r; ++a) frames.push_back({alg.frame(a, alg.one()), "v" + std::to_string(a + 1)});
  std::vector<Labelled> scaled;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& name = data.base->generator(coords[i]).name;
    for (std::size_t a = 0; a < r; ++a) {
      scaled.push_back({alg.frame(a, GradedPoly::generator(data.base, coords[i])), name + "*v" + std::to_string(a + 1)});
    }
  }

  // triples of frame sections, and triples with one slot multiplied by a coordinate
  auto for_triples = [&](const auto& fn) {
    for (const auto& e1 : frames) {
      for (const auto& e2 : frames) {
        for (const auto& e3 : frames) fn(e1, e2, e3);
        for (const auto& e3 : scaled) fn(e1, e2, e3);
      }
      for (const auto& e2 : scaled) {
        for (const auto& e3 : frames) fn(e1, e2, e3);
      }
    }
    for (const auto& e1 : scaled) {
      for (const auto& e2 : frames) {
        for (const auto& e3 : frames) fn(e1, e2, e3);
      }
    }
  };

  for_triples([&](const Labelled& e1, const Labelled& e2, const Labelled& e3) {
    Section lhs = alg.bracket(e1.s, alg.bracket(e2.s, e3.s));
    Section rhs1 = alg.bracket(alg.bracket(e1.s, e2.s), e3.s);
    Section rhs2 = alg.bracket(e2.s, alg.bracket(e1.s, e3.s));
    record(1, "(" + e1.label + ", " + e2.label + ", " + e3.label + ")", sub(sub(lhs, rhs1), rhs2));
  });

  std::vector<std::pair<GradedPoly, std::string>> functions{{alg.one(), "1"}};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const GradedPoly xi = GradedPoly::generator(data.base, coords[i]);
    const auto& ni = data.base->generator(coords[i]).name;
    functions.push_back({xi, ni});
    for (std::size_t j = i; j < coords.size(); ++j) {
      functions.push_back({xi * GradedPoly::generator(data.base, coords[j]),
                           ni + "*" + data.base->generator(coords[j]).name});
    }
  }
  for (const auto& e1 : frames) {
    for (const auto& e2 : frames) {
      for (const auto& [h, hl] : functions) {
        Section lhs = alg.bracket(e1.s, mul(h, e2.s));
        Section rhs = mul(h, alg.bracket(e1.s, e2.s));
        Section extra = mul(alg.anchor_hat(e1.s, h), e2.s);
        record(2, "(" + e1.label + ", " + hl + " " + e2.label + ")", sub(sub(lhs, rhs), extra));
      }
    }
  }

  std::vector<Labelled> squares = frames;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      Section s = frames[a].s;
      s[b] = alg.one();
      squares.push_back({s, frames[a].label + "+" + frames[b].label});
    }
  }
  squares.insert(squares.end(), scaled.begin(), scaled.end());
  for (const auto& e : squares) {
    Section lhs = alg.bracket(e.s, e.s);
    Section rhs = mul(GradedPoly::constant(data.base, Rational(1, 2)), alg.big_d(alg.pairing(e.s, e.s)));
    record(3, "(" + e.label + ")", sub(lhs, rhs));
  }

  for_triples([&](const Labelled& e1, const Labelled& e2, const Labelled& e3) {
    GradedPoly res = alg.anchor(e1.s, alg.pairing(e2.s, e3.s));
    res -= alg.pairing(alg.bracket(e1.s, e2.s), e3.s);
    res -= alg.pairing(e2.s, alg.bracket(e1.s, e3.s));
    record(4, "(" + e1.label + ", " + e2.label + ", " + e3.label + ")", {res});
  });
  return out;
}

ContactModel build_cj_contact(const CourantJacobiData& data, CJEncoding encoding) {
  data.validate();
  const auto& base = *data.base;
  const std::size_t r = std::size_t(data.rank);
  std::vector<CoordinateSpec> specs;
  std::map<std::string, std::string> fields;
  std::vector<std::string> xs, vs;
  for (auto g : base.coordinates()) xs.push_back(base.generator(g).name);
  for (const auto& x : xs) {
    specs.push_back({x, 0});
    fields[x] = "X_" + x;
  }
  for (std::size_t a = 1; a <= r; ++a) {
    vs.push_back("v" + std::to_string(a));
    specs.push_back({vs.back(), 1});
    fields[vs.back()] = "eta" + std::to_string(a);
  }
  for (const auto& x : xs) {
    specs.push_back({"p_" + x, 2});
    fields["p_" + x] = "P_" + x;
  }
  specs.push_back({"theta", 2});
  fields["theta"] = "Theta";
  ChartOptions opts;
  opts.contact_degree = 2;
  ChartPtr chart;
  try {
    chart = Chart::make(specs, opts);
  } catch (const InvalidChart& e) {
    throw ValidationError(std::string("cannot build the degree-2 chart: ") + e.what());
  }
  auto gen = [&](const std::string& name) { return GradedPoly::generator(chart, name); };

  GradedPoly alpha = gen("dtheta") * Rational(1, 2);
  for (const auto& x : xs) alpha += gen("p_" + x) * gen("d" + x);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      if (data.g[a][b] != 0) alpha += gen(vs[a]) * gen("d" + vs[b]) * (data.g[a][b] / 2);
    }
  }

  const Rational theta_coef = encoding == CJEncoding::calibrated ? Rational(-1, 2) : Rational(1);
  GradedPoly s(chart);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s += transport(data.a[a][i], chart) * gen(vs[a]) * gen("p_" + xs[i]);
    }
    s += transport(data.b[a], chart) * gen(vs[a]) * gen("theta") * theta_coef;
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t c = 0; c < r; ++c) {
        if (data.t[a][b][c].is_zero()) continue;
        s -= transport(data.t[a][b][c], chart) * gen(vs[a]) * gen(vs[b]) * gen(vs[c]) * Rational(1, 6);
      }
    }
  }
  return {"courant-jacobi", ContactChart::make(chart, alpha), s, fields};
}

// --- the standard algebroid -------------------------------------------------

SectionCJ SectionCJ::zero(const ChartPtr& base) {
  return {Derivation(base, 0), GradedPoly(base), BigradedForm(base), GradedPoly(base)};
}

bool operator==(const SectionCJ& a, const SectionCJ& b) {
  return a.x == b.x && a.f == b.f && a.xi == b.xi && a.g == b.g;
}

SectionCJ& SectionCJ::operator+=(const SectionCJ& o) {
  x += o.x;
  f += o.f;
  xi += o.xi;
  g += o.g;
  return *this;
}

SectionCJ& SectionCJ::operator-=(const SectionCJ& o) {
  x -= o.x;
  f -= o.f;
  xi -= o.xi;
  g -= o.g;
  return *this;
}

bool SectionCJ::is_zero() const { return x.is_zero() && f.is_zero() && xi.is_zero() && g.is_zero(); }

std::string SectionCJ::to_string() const {
  std::ostringstream os;
  os << "X: ";
  const Chart& c = *f.chart();
  bool first = true;
  for (std::size_t k = 0; k < c.coordinates().size(); ++k) {
    if (x.value(k).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << x.value(k).to_string() << ")*d/d" << c.generator(c.coordinates()[k]).name;
  }
  if (first) os << "0";
  os << "; f: " << f.to_string() << "; xi: " << xi.to_string() << "; g: " << g.to_string();
  return os.str();
}

SectionCJ scale(const GradedPoly& h, const SectionCJ& s) { return {h * s.x, h * s.f, h * s.xi, h * s.g}; }

GradedPoly wade_pairing(const SectionCJ& s1, const SectionCJ& s2) {
  return contract(s1.x, s2.xi) + contract(s2.x, s1.xi) + s1.f * s2.g + s2.f * s1.g;
}

SectionCJ wade_bracket(const SectionCJ& s1, const SectionCJ& s2) {
  SectionCJ out = SectionCJ::zero(s1.f.chart());
  out.x = commutator(s1.x, s2.x);
  out.f = s1.x(s2.f) - s2.x(s1.f);
  out.xi = lie(s1.x, s2.xi) - contract(s2.x, d(s1.xi)) + s1.f * s2.xi - s2.f * s1.xi + s2.f * d(s1.g) +
           s2.g * d(s1.f);
  out.g = s1.x(s2.g) - s2.x(s1.g) + contract(s2.x, s1.xi) + s1.f * s2.g;
  return out;
}

GradedPoly wade_anchor(const SectionCJ& s, const GradedPoly& h) { return s.x(h) + s.f * h; }

SectionCJ wade_d(const GradedPoly& h) {
  SectionCJ out = SectionCJ::zero(h.chart());
  out.xi = d(h);
  out.g = h;
  return out;
}

WadeAxioms wade_axioms(const SectionCJ& s1, const SectionCJ& s2, const SectionCJ& s3, const GradedPoly& h) {
  WadeAxioms out{SectionCJ::zero(h.chart()), SectionCJ::zero(h.chart()), SectionCJ::zero(h.chart()),
                 GradedPoly(h.chart())};
  out.jacobi = wade_bracket(s1, wade_bracket(s2, s3)) - wade_bracket(wade_bracket(s1, s2), s3) -
               wade_bracket(s2, wade_bracket(s1, s3));
  out.leibniz = wade_bracket(s1, scale(h, s2)) - scale(h, wade_bracket(s1, s2)) - scale(s1.x(h), s2);
  out.square = wade_bracket(s1, s1) -
               scale(GradedPoly::constant(h.chart(), Rational(1, 2)), wade_d(wade_pairing(s1, s1)));
  out.invariance = wade_anchor(s1, wade_pairing(s2, s3)) - wade_pairing(wade_bracket(s1, s2), s3) -
                   wade_pairing(s2, wade_bracket(s1, s3));
  return out;
}

CourantJacobiData wade_data(const ChartPtr& base) {
  const auto& coords = base->coordinates();
  const std::size_t d = coords.size();
  std::vector<SectionCJ> frame;
  for (std::size_t i = 0; i < d; ++i) {
    SectionCJ s = SectionCJ::zero(base);
    s.x = Derivation::partial(base, base->generator(coords[i]).name);
    frame.push_back(s);
  }
  {
    SectionCJ s = SectionCJ::zero(base);
    s.f = GradedPoly::constant(base, 1);
    frame.push_back(s);
  }
  for (std::size_t i = 0; i < d; ++i) {
    SectionCJ s = SectionCJ::zero(base);
    s.xi = GradedPoly::generator(base, base->differential_of(coords[i]));
    frame.push_back(s);
  }
  {
    SectionCJ s = SectionCJ::zero(base);
    s.g = GradedPoly::constant(base, 1);
    frame.push_back(s);
  }
  const std::size_t r = frame.size();
  CourantJacobiData out;
  out.base = base;
  out.rank = int(r);
  out.g.assign(r, std::vector<Rational>(r, 0));
  out.a.assign(r, std::vector<GradedPoly>(d, GradedPoly(base)));
  out.b.assign(r, GradedPoly(base));
  out.t.assign(r, std::vector<std::vector<GradedPoly>>(r, std::vector<GradedPoly>(r, GradedPoly(base))));
  const GradedPoly one = GradedPoly::constant(base, 1);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      const GradedPoly p = wade_pairing(frame[a], frame[b]);
      if (p.degree().is_mixed() || p.total_degree() > 0) throw ValidationError("frame pairing is not constant");
      out.g[a][b] = p.constant_term();
      const SectionCJ br = wade_bracket(frame[a], frame[b]);
      for (std::size_t c = 0; c < r; ++c) out.t[a][b][c] = wade_pairing(br, frame[c]);
    }
    for (std::size_t i = 0; i < d; ++i) out.a[a][i] = frame[a].x(GradedPoly::generator(base, coords[i]));
    out.b[a] = wade_anchor(frame[a], one);
  }
  return out;
}

}  // namespace gcontact

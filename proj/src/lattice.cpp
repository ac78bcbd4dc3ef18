#include "gcontact/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcontact {

namespace {

struct Dual {
  Rational a, b;
  Dual() = default;
  Dual(Rational x, Rational y = 0) : a(std::move(x)), b(std::move(y)) {}  // NOLINT(google-explicit-constructor)
  Dual& operator+=(const Dual& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
};

template <class S>
std::vector<S> coboundary(const TorusComplex& k, int degree, const std::vector<S>& c) {
  if (degree >= k.dim()) throw InvalidChart("coboundary of a top-degree cochain");
  std::vector<S> out(k.cell_count(degree + 1));
  for (std::size_t i = 0; i < out.size(); ++i) {
    S acc{};
    for (std::size_t j = 0; j <= std::size_t(degree) + 1; ++j) {
      const S& v = c[k.face(degree + 1, i, j)];
      if (j % 2 == 0) {
        acc += v;
      } else {
        acc -= v;
      }
    }
    out[i] = acc;
  }
  return out;
}

struct Factor {
  std::size_t field;  // coordinate position in the field chart
  bool differential;
  int degree;
};

struct Term {
  Rational coef;
  std::vector<std::size_t> scalars;
  std::vector<Factor> forms;
};

std::vector<Term> compile(const ActionIntegrand& a, int dim) {
  const Chart& chart = *a.fields;
  std::vector<long> position(chart.size(), -1), differential_of(chart.size(), -1);
  for (std::size_t p = 0; p < chart.coordinates().size(); ++p) {
    const std::size_t g = chart.coordinates()[p];
    position[g] = long(p);
    differential_of[chart.differential_of(g)] = long(p);
  }
  std::vector<Term> out;
  for (const auto& [m, c] : a.integrand.terms()) {
    Term t{c, {}, {}};
    int total = 0;
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (m[g] == 0) continue;
      if (m[g] < 0) throw ValidationError("negative exponent in an action integrand");
      for (int e = 0; e < m[g]; ++e) {
        if (position[g] >= 0) {
          const int deg = chart.generator(g).degree;
          if (deg == 0) {
            t.scalars.push_back(std::size_t(position[g]));
          } else {
            t.forms.push_back({std::size_t(position[g]), false, deg});
            total += deg;
          }
        } else if (differential_of[g] >= 0) {
          const int deg = chart.generator(g).degree + 1;
          t.forms.push_back({std::size_t(differential_of[g]), true, deg});
          total += deg;
        } else {
          throw ValidationError("unexpected generator in an action integrand");
        }
      }
    }
    if (total != dim) {
      throw ValidationError("integrand term of form degree " + std::to_string(total) + " on a " +
                            std::to_string(dim) + "-dimensional complex");
    }
    out.push_back(std::move(t));
  }
  return out;
}

template <class S>
S evaluate(const TorusComplex& k, const ActionIntegrand& a, const std::vector<std::vector<S>>& values) {
  const int dim = k.dim();
  const auto terms = compile(a, dim);
  const Chart& chart = *a.fields;
  const auto& coords = chart.coordinates();

  std::vector<std::vector<S>> diffs(coords.size());
  for (const auto& t : terms) {
    for (const auto& f : t.forms) {
      if (f.differential && diffs[f.field].empty()) {
        diffs[f.field] = coboundary(k, chart.generator(coords[f.field]).degree, values[f.field]);
      }
    }
  }

  const std::size_t top = k.cell_count(dim);
  const std::size_t nv = std::size_t(dim) + 1;
  S total{};
  std::vector<std::size_t> sub(nv * nv);
  for (std::size_t i = 0; i < top; ++i) {
    for (std::size_t x = 0; x < nv; ++x) {
      for (std::size_t y = x; y < nv; ++y) sub[x * nv + y] = k.sub_cell(dim, i, x, y);
    }
    S cell{};
    for (const auto& t : terms) {
      S v(t.coef);
      for (auto s : t.scalars) v = v * values[s][sub[0]];
      std::size_t at = 0;
      for (const auto& f : t.forms) {
        const std::size_t idx = sub[at * nv + at + std::size_t(f.degree)];
        v = v * (f.differential ? diffs[f.field][idx] : values[f.field][idx]);
        at += std::size_t(f.degree);
      }
      cell += v;
    }
    if (k.orientation(i) > 0) {
      total += cell;
    } else {
      total -= cell;
    }
  }
  return total;
}

const Cochain& field_value(const TorusComplex& k, const Chart& chart, std::size_t g, const FieldConfig& fields) {
  const auto& name = chart.generator(g).name;
  auto it = fields.find(name);
  if (it == fields.end()) throw ValidationError("no values for field '" + name + "'");
  const int deg = chart.generator(g).degree;
  if (it->second.degree != deg || deg > k.dim() || it->second.values.size() != k.cell_count(deg)) {
    throw ValidationError("field '" + name + "' must be a " + std::to_string(deg) + "-cochain on the complex");
  }
  return it->second;
}

void check_dimension(const TorusComplex& k, const ActionIntegrand& a) {
  if (a.n + 1 != k.dim()) {
    throw InvalidChart("an n = " + std::to_string(a.n) + " action lives on a " + std::to_string(a.n + 1) +
                       "-dimensional complex, not " + std::to_string(k.dim()));
  }
}

}  // namespace

TorusComplex::TorusComplex(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2 || sizes_.size() > 3) throw InvalidChart("torus complexes have dimension 2 or 3");
  vertices_ = 1;
  for (int s : sizes_) {
    if (s < 1 || s > 64) throw InvalidChart("torus sizes must lie in 1..64");
    vertices_ *= std::size_t(s);
  }
  const unsigned full = (1u << sizes_.size()) - 1;
  cells_.assign(sizes_.size() + 1, {});
  for (std::size_t base = 0; base < vertices_; ++base) {
    std::vector<unsigned> masks;
    auto rec = [&](auto&& self, unsigned used) -> void {
      cells_[masks.size()].push_back({base, masks});
      for (unsigned m = 1; m <= full; ++m) {
        if ((m & used) != 0) continue;
        masks.push_back(m);
        self(self, used | m);
        masks.pop_back();
      }
    };
    rec(rec, 0u);
  }
  index();
}

void TorusComplex::index() {
  lookup_.assign(cells_.size(), {});
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    for (std::size_t i = 0; i < cells_[k].size(); ++i) lookup_[k][key(cells_[k][i].base, cells_[k][i].masks)] = i;
  }
}

std::uint64_t TorusComplex::key(std::size_t base, const std::vector<unsigned>& masks) const {
  std::uint64_t packed = 0;
  for (std::size_t j = 0; j < masks.size(); ++j) packed |= std::uint64_t(masks[j]) << (3 * j);
  return (std::uint64_t(base) << 16) | (std::uint64_t(masks.size()) << 12) | packed;
}

std::size_t TorusComplex::shift(std::size_t v, unsigned mask) const {
  std::size_t out = 0, stride = 1, rest = v;
  for (std::size_t axis = 0; axis < sizes_.size(); ++axis) {
    const std::size_t n = std::size_t(sizes_[axis]);
    std::size_t c = rest % n;
    rest /= n;
    if ((mask >> axis) & 1u) c = (c + 1) % n;
    out += c * stride;
    stride *= n;
  }
  return out;
}

std::size_t TorusComplex::find(std::size_t base, const std::vector<unsigned>& masks) const {
  const auto& table = lookup_.at(masks.size());
  auto it = table.find(key(base, masks));
  if (it == table.end()) throw std::out_of_range("no such cell");
  return it->second;
}

std::size_t TorusComplex::vertex(const Cell& c, std::size_t j) const {
  std::size_t v = c.base;
  for (std::size_t m = 0; m < j; ++m) v = shift(v, c.masks[m]);
  return v;
}

std::size_t TorusComplex::face(int k, std::size_t i, std::size_t j) const {
  const Cell& c = cell(k, i);
  const std::size_t kk = std::size_t(k);
  if (j == 0) return find(shift(c.base, c.masks[0]), {c.masks.begin() + 1, c.masks.end()});
  if (j == kk) return find(c.base, {c.masks.begin(), c.masks.end() - 1});
  std::vector<unsigned> m;
  for (std::size_t q = 0; q < kk; ++q) {
    if (q == j - 1) {
      m.push_back(c.masks[q] | c.masks[q + 1]);
      ++q;
    } else {
      m.push_back(c.masks[q]);
    }
  }
  return find(c.base, m);
}

std::size_t TorusComplex::sub_cell(int k, std::size_t i, std::size_t a, std::size_t b) const {
  const Cell& c = cell(k, i);
  return find(vertex(c, a), {c.masks.begin() + std::ptrdiff_t(a), c.masks.begin() + std::ptrdiff_t(b)});
}

int TorusComplex::orientation(std::size_t top) const {
  const Cell& c = cell(dim(), top);
  std::vector<int> axes;
  for (unsigned m : c.masks) axes.push_back(__builtin_ctz(m));
  int sign = 1;
  for (std::size_t x = 0; x < axes.size(); ++x) {
    for (std::size_t y = x + 1; y < axes.size(); ++y) {
      if (axes[x] > axes[y]) sign = -sign;
    }
  }
  return sign;
}

TorusComplex TorusComplex::permuted(std::mt19937_64& rng) const {
  TorusComplex out = *this;
  for (auto& level : out.cells_) std::shuffle(level.begin(), level.end(), rng);
  out.index();
  return out;
}

Cochain Cochain::zero(const TorusComplex& k, int degree) {
  return {degree, std::vector<Rational>(k.cell_count(degree), 0)};
}

Cochain discrete_d(const TorusComplex& k, const Cochain& c) {
  return {c.degree + 1, coboundary(k, c.degree, c.values)};
}

Cochain cup(const TorusComplex& k, const Cochain& a, const Cochain& b) {
  const int deg = a.degree + b.degree;
  if (deg > k.dim()) throw InvalidChart("cup product above the top degree");
  Cochain out = Cochain::zero(k, deg);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = a.values[k.sub_cell(deg, i, 0, std::size_t(a.degree))] *
                    b.values[k.sub_cell(deg, i, std::size_t(a.degree), std::size_t(deg))];
  }
  return out;
}

Rational integrate(const TorusComplex& k, const Cochain& top) {
  if (top.degree != k.dim()) throw InvalidChart("only top-degree cochains integrate");
  Rational out = 0;
  for (std::size_t i = 0; i < top.values.size(); ++i) {
    if (k.orientation(i) > 0) {
      out += top.values[i];
    } else {
      out -= top.values[i];
    }
  }
  return out;
}

Cochain transport(const TorusComplex& from, const TorusComplex& to, const Cochain& c) {
  if (from.sizes() != to.sizes()) throw InvalidChart("complexes differ");
  Cochain out = Cochain::zero(to, c.degree);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto& cell = to.cell(c.degree, i);
    out.values[i] = c.values[from.find(cell.base, cell.masks)];
  }
  return out;
}

FieldConfig transport(const TorusComplex& from, const TorusComplex& to, const FieldConfig& f) {
  FieldConfig out;
  for (const auto& [name, c] : f) out[name] = transport(from, to, c);
  return out;
}

Rational eval_action(const TorusComplex& k, const ActionIntegrand& a, const FieldConfig& fields) {
  check_dimension(k, a);
  const Chart& chart = *a.fields;
  std::vector<std::vector<Rational>> values;
  for (auto g : chart.coordinates()) values.push_back(field_value(k, chart, g, fields).values);
  return evaluate(k, a, values);
}

Rational eval_action(const TorusComplex& k, const ContactModel& m, ActionVariant v, const FieldConfig& fields) {
  return eval_action(k, emit_action(m, v), fields);
}

Rational eom_residual(const TorusComplex& k, const ActionIntegrand& a, const FieldConfig& fields,
                      const FieldConfig& direction) {
  check_dimension(k, a);
  const Chart& chart = *a.fields;
  if (direction.size() != fields.size()) throw ValidationError("direction and fields have different shapes");
  std::vector<std::vector<Dual>> values;
  for (auto g : chart.coordinates()) {
    const Cochain& f = field_value(k, chart, g, fields);
    const Cochain& h = field_value(k, chart, g, direction);
    std::vector<Dual> v;
    v.reserve(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) v.emplace_back(f.values[i], h.values[i]);
    values.push_back(std::move(v));
  }
  return evaluate(k, a, values).b;
}

FieldConfig random_fields(const TorusComplex& k, const ActionIntegrand& a, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 3);
  FieldConfig out;
  const Chart& chart = *a.fields;
  for (auto g : chart.coordinates()) {
    const int deg = chart.generator(g).degree;
    if (deg > k.dim()) throw InvalidChart("field degree exceeds the complex dimension");
    Cochain c = Cochain::zero(k, deg);
    for (auto& v : c.values) {
      v = Rational(num(rng), den(rng));
      v.canonicalize();
    }
    out[chart.generator(g).name] = std::move(c);
  }
  return out;
}

}  // namespace gcontact

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcontact/graded_algebra.hpp"
#include "gcontact/models.hpp"

namespace gcontact {

/// Kuhn triangulation of the N1 x ... x Nd torus (d = 2 or 3) as a
/// Delta-complex.  A k-cell is a base vertex followed by an ordered list of
/// k disjoint nonempty axis masks; its vertices are the partial sums
///   v_0 = base, v_j = v_{j-1} + mask_j  (mod N).
/// Each unit cube carries d! top cells, one per axis permutation, oriented
/// by the sign of the permutation.
class TorusComplex {
 public:
  struct Cell {
    std::size_t base = 0;
    std::vector<unsigned> masks;
  };

  explicit TorusComplex(std::vector<int> sizes);

  int dim() const { return int(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t vertex_count() const { return vertices_; }
  std::size_t cell_count(int k) const { return cells_.at(std::size_t(k)).size(); }
  const Cell& cell(int k, std::size_t i) const { return cells_.at(std::size_t(k))[i]; }

  /// Index of the cell with the given base and masks; throws std::out_of_range.
  std::size_t find(std::size_t base, const std::vector<unsigned>& masks) const;
  /// Vertex v_j of a cell.
  std::size_t vertex(const Cell& c, std::size_t j) const;
  /// The j-th face (vertex j dropped) of cell i in degree k.
  std::size_t face(int k, std::size_t i, std::size_t j) const;
  /// The sub-simplex on vertices a..b of cell i in degree k.
  std::size_t sub_cell(int k, std::size_t i, std::size_t a, std::size_t b) const;
  /// +1 or -1 for top cells.
  int orientation(std::size_t top) const;

  /// The same complex with the cells of every degree listed in a random order.
  TorusComplex permuted(std::mt19937_64& rng) const;

 private:
  std::uint64_t key(std::size_t base, const std::vector<unsigned>& masks) const;
  std::size_t shift(std::size_t v, unsigned mask) const;
  void index();

  std::vector<int> sizes_;
  std::size_t vertices_ = 0;
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> lookup_;
};

struct Cochain {
  int degree = 0;
  std::vector<Rational> values;

  static Cochain zero(const TorusComplex& k, int degree);
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// Coboundary (dc)(s) = sum_j (-1)^j c(face_j s).  Throws InvalidChart when
/// the degree is already the dimension.
Cochain discrete_d(const TorusComplex& k, const Cochain& c);
/// Front-face / back-face cup product.
Cochain cup(const TorusComplex& k, const Cochain& a, const Cochain& b);
/// Sum over oriented top cells.
Rational integrate(const TorusComplex& k, const Cochain& top);
/// The cochain on `to` holding the values `c` assigns to the same cells of `from`.
Cochain transport(const TorusComplex& from, const TorusComplex& to, const Cochain& c);

/// Field symbol -> cochain whose degree is the symbol's form degree.
using FieldConfig = std::map<std::string, Cochain>;

/// Sum over oriented top cells of the integrand.  Degree-0 fields are sampled
/// at the first vertex of each cell; the remaining factors of a term are
/// cup-multiplied in the chart's normal order.  Throws InvalidChart on a
/// dimension mismatch and ValidationError on missing or malformed fields.
Rational eval_action(const TorusComplex& k, const ActionIntegrand& a, const FieldConfig& fields);
Rational eval_action(const TorusComplex& k, const ContactModel& m, ActionVariant v, const FieldConfig& fields);
/// d/ds eval_action(fields + s direction) at s = 0, computed exactly.
Rational eom_residual(const TorusComplex& k, const ActionIntegrand& a, const FieldConfig& fields,
                      const FieldConfig& direction);

/// Random rational values (numerators in [-bound, bound], denominators 1..3)
/// for every field symbol of the integrand.
FieldConfig random_fields(const TorusComplex& k, const ActionIntegrand& a, std::mt19937_64& rng, int bound = 5);
FieldConfig transport(const TorusComplex& from, const TorusComplex& to, const FieldConfig& f);

}  // namespace gcontact

#include "preord/fgabelian.hpp"

#include <sstream>

namespace preord {

namespace {

IntMatrix normalized_relations(std::size_t rank, const IntMatrix& relations) {
  if (relations.rows() == 0) return IntMatrix(0, rank);
  if (relations.cols() != rank) {
    throw DimensionError("relation matrix has " + std::to_string(relations.cols()) +
                         " columns for a group of rank " + std::to_string(rank));
  }
  return relations;
}

IntMatrix nonzero_rows(const IntMatrix& m) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_zero(m.row(i))) keep.push_back(i);
  return m.select_rows(keep);
}

IntMatrix inverse_unimodular(const IntMatrix& v) {
  IntMatrix inv(v.rows(), v.cols());
  for (std::size_t i = 0; i < v.rows(); ++i) {
    auto r = solve_integer(v, unit_vec(v.cols(), i));
    if (!r) throw std::logic_error("matrix is not unimodular");
    inv.set_row(i, *r);
  }
  return inv;
}

// The subgroup Lambda / L_G of G, where `lattice_gens` together with the rows
// of L_G span Lambda. The result is re-presented in Smith coordinates.
Subobject present_sublattice(const FgAbGroup& g, const IntMatrix& lattice_gens) {
  const std::size_t n = g.rank();
  HermiteForm hf = hermite_normal_form(lattice_gens.vstack(g.relations()));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < hf.rank(); ++i) idx.push_back(i);
  IntMatrix basis = hf.h.select_rows(idx);
  const std::size_t k = basis.rows();

  IntMatrix rel(g.relations().rows(), k);
  for (std::size_t i = 0; i < g.relations().rows(); ++i) {
    auto c = solve_integer(basis, g.relations().row(i));
    if (!c) throw std::logic_error("relation outside the sublattice");
    rel.set_row(i, *c);
  }

  SmithForm sf = smith_normal_form(rel);
  std::vector<Int> diag = sf.diagonal();
  IntMatrix new_basis = inverse_unimodular(sf.v) * basis;

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < k; ++j) {
    Int d = j < diag.size() ? diag[j] : Int(0);
    if (d != 1) kept.push_back(j);
  }
  const std::size_t rank = kept.size();
  std::vector<IntVec> rel_rows;
  for (std::size_t pos = 0; pos < rank; ++pos) {
    std::size_t j = kept[pos];
    Int d = j < diag.size() ? diag[j] : Int(0);
    if (d == 0) continue;
    IntVec r(rank);
    r[pos] = d;
    rel_rows.push_back(std::move(r));
  }
  FgAbGroup sub(rank, IntMatrix::from_rows(rel_rows, rank));
  IntMatrix incl = new_basis.select_rows(kept);
  if (incl.rows() == 0) incl = IntMatrix(0, n);
  return Subobject{sub, AbMorphism(sub, g, incl)};
}

}  // namespace

// ---------------------------------------------------------------------------

FgAbGroup::FgAbGroup(std::size_t rank, IntMatrix relations)
    : rank_(rank), relations_(normalized_relations(rank, relations)) {
  quotient_ = LatticeQuotient(relations_.row_list(), rank_);
}

bool FgAbGroup::is_zero(const IntVec& x) const {
  if (x.size() != rank_) {
    throw DimensionError("element of length " + std::to_string(x.size()) +
                         " in a group of rank " + std::to_string(rank_));
  }
  return quotient_.is_zero(x);
}

bool FgAbGroup::element_eq(const IntVec& x, const IntVec& y) const {
  if (x.size() != rank_ || y.size() != rank_) {
    throw DimensionError("element length does not match group rank " +
                         std::to_string(rank_));
  }
  return lattice_membership(relations_.row_list(), x - y);
}

std::vector<Int> FgAbGroup::invariants() const { return quotient_.moduli(); }

FgAbGroup make_group(std::size_t rank, const IntMatrix& relations) {
  return FgAbGroup(rank, relations);
}

bool element_eq(const FgAbGroup& g, const IntVec& x, const IntVec& y) {
  return g.element_eq(x, y);
}

std::string describe(const FgAbGroup& g) {
  auto inv = g.invariants();
  if (inv.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) os << " + ";
    if (inv[i] == 0)
      os << "Z";
    else
      os << "Z/" << inv[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------

AbMorphism::AbMorphism(FgAbGroup dom, FgAbGroup cod, IntMatrix matrix)
    : dom_(std::move(dom)), cod_(std::move(cod)), matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 && dom_.rank() == 0) matrix_ = IntMatrix(0, cod_.rank());
  if (matrix_.cols() == 0 && cod_.rank() == 0) matrix_ = IntMatrix(dom_.rank(), 0);
  if (matrix_.rows() != dom_.rank() || matrix_.cols() != cod_.rank()) {
    throw DimensionError("morphism matrix is " + std::to_string(matrix_.rows()) +
                         "x" + std::to_string(matrix_.cols()) + ", expected " +
                         std::to_string(dom_.rank()) + "x" +
                         std::to_string(cod_.rank()));
  }
  for (std::size_t i = 0; i < dom_.relations().rows(); ++i) {
    IntVec r = dom_.relations().row(i);
    if (!cod_.is_zero(apply(r))) {
      throw IllDefinedMorphism("relation " + to_string(r) + " maps to " +
                               to_string(apply(r)) + ", which is nonzero");
    }
  }
}

AbMorphism AbMorphism::identity(const FgAbGroup& g) {
  return AbMorphism(g, g, IntMatrix::identity(g.rank()));
}

AbMorphism AbMorphism::zero(const FgAbGroup& dom, const FgAbGroup& cod) {
  return AbMorphism(dom, cod, IntMatrix(dom.rank(), cod.rank()));
}

bool AbMorphism::is_zero() const {
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    if (!cod_.is_zero(matrix_.row(i))) return false;
  return true;
}

AbMorphism compose(const AbMorphism& first, const AbMorphism& second) {
  if (!(first.cod() == second.dom()))
    throw ObjectMismatch("compose: codomain of the first map is not the domain of the second");
  return AbMorphism(first.dom(), second.cod(), first.matrix() * second.matrix());
}

bool morphism_eq(const AbMorphism& f, const AbMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) return false;
  for (std::size_t i = 0; i < f.matrix().rows(); ++i)
    if (!f.cod().is_zero(f.matrix().row(i) - g.matrix().row(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------

Subobject kernel(const AbMorphism& f) {
  const std::size_t n = f.dom().rank();
  IntMatrix stacked = f.matrix().vstack(f.cod().relations());
  if (stacked.rows() == 0) stacked = IntMatrix(0, f.cod().rank());
  IntMatrix lk = left_kernel(stacked);
  IntMatrix gens(lk.rows(), n);
  for (std::size_t i = 0; i < lk.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) gens(i, j) = lk(i, j);
  return present_sublattice(f.dom(), gens);
}

Quotient cokernel(const AbMorphism& f) {
  const FgAbGroup& h = f.cod();
  IntMatrix rel = h.relations().vstack(nonzero_rows(f.matrix()));
  FgAbGroup q(h.rank(), rel);
  return Quotient{q, AbMorphism(h, q, IntMatrix::identity(h.rank()))};
}

Subobject subgroup_generated(const FgAbGroup& g, std::span<const IntVec> gens) {
  for (const auto& x : gens)
    if (x.size() != g.rank())
      throw DimensionError("generator " + to_string(x) + " has wrong length for rank " +
                           std::to_string(g.rank()));
  return present_sublattice(g, IntMatrix::from_rows(gens, g.rank()));
}

Quotient quotient_by_subgroup(const FgAbGroup& g, const AbMorphism& incl) {
  if (!(incl.cod() == g)) throw ObjectMismatch("inclusion does not land in the group");
  return cokernel(incl);
}

DirectSum direct_sum(const FgAbGroup& g, const FgAbGroup& h) {
  const std::size_t n = g.rank(), m = h.rank();
  IntMatrix rel(g.relations().rows() + h.relations().rows(), n + m);
  for (std::size_t i = 0; i < g.relations().rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) rel(i, j) = g.relations()(i, j);
  for (std::size_t i = 0; i < h.relations().rows(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      rel(g.relations().rows() + i, n + j) = h.relations()(i, j);
  FgAbGroup sum(n + m, rel);
  IntMatrix i1(n, n + m), i2(m, n + m), p1(n + m, n), p2(n + m, m);
  for (std::size_t i = 0; i < n; ++i) i1(i, i) = p1(i, i) = 1;
  for (std::size_t i = 0; i < m; ++i) i2(i, n + i) = p2(n + i, i) = 1;
  return DirectSum{sum, AbMorphism(g, sum, i1), AbMorphism(h, sum, i2),
                   AbMorphism(sum, g, p1), AbMorphism(sum, h, p2)};
}

bool is_injective(const AbMorphism& f) { return kernel(f).group.is_trivial(); }
bool is_surjective(const AbMorphism& f) { return cokernel(f).group.is_trivial(); }
bool is_isomorphism(const AbMorphism& f) { return is_injective(f) && is_surjective(f); }

std::optional<IntVec> preimage(const AbMorphism& f, const IntVec& y) {
  IntMatrix stacked = f.matrix().vstack(f.cod().relations());
  if (stacked.rows() == 0) {
    if (f.cod().is_zero(y)) return IntVec(f.dom().rank());
    return std::nullopt;
  }
  auto sol = solve_integer(stacked, y);
  if (!sol) return std::nullopt;
  return IntVec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(f.dom().rank()));
}

bool hom_is_zero(const FgAbGroup& x, const FgAbGroup& y) {
  if (y.is_trivial()) return true;
  auto ix = x.invariants();
  auto iy = y.invariants();
  for (const Int& d : ix) {
    if (d == 0) return false;  // Hom(Z, y) = y != 0
    for (const Int& e : iy) {
      if (e == 0) continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
      if (g != 1) return false;
    }
  }
  return true;
}

namespace {

// Finds an integer matrix phi (p x s) with
//   left * phi * right == target   (rowwise modulo the rows of `target_lattice`)
//   dom_rel * phi == 0              (rowwise modulo the rows of `cod_lattice`)
std::optional<IntMatrix> solve_matrix_equation(std::size_t p, std::size_t s,
                                               const IntMatrix& left,
                                               const IntMatrix& right,
                                               const IntMatrix& target,
                                               const IntMatrix& target_lattice,
                                               const IntMatrix& dom_rel,
                                               const IntMatrix& cod_lattice) {
  const std::size_t h = left.rows(), c = right.cols();
  const std::size_t nt = target_lattice.rows(), nd = dom_rel.rows(),
                    nw = cod_lattice.rows();
  const std::size_t nvars = p * s + h * nt + nd * nw;
  const std::size_t neqs = h * c + nd * s;
  if (neqs == 0) return IntMatrix(p, s);
  IntMatrix m(nvars, neqs);
  IntVec rhs(neqs);
  auto phi = [&](std::size_t j, std::size_t k) { return j * s + k; };
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t col = 0; col < c; ++col) {
      std::size_t eq = i * c + col;
      rhs[eq] = target(i, col);
      for (std::size_t j = 0; j < p; ++j) {
        if (left(i, j) == 0) continue;
        for (std::size_t k = 0; k < s; ++k) m(phi(j, k), eq) += left(i, j) * right(k, col);
      }
      for (std::size_t l = 0; l < nt; ++l) m(p * s + i * nt + l, eq) = target_lattice(l, col);
    }
  for (std::size_t e = 0; e < nd; ++e)
    for (std::size_t k = 0; k < s; ++k) {
      std::size_t eq = h * c + e * s + k;
      for (std::size_t j = 0; j < p; ++j) m(phi(j, k), eq) = dom_rel(e, j);
      for (std::size_t l = 0; l < nw; ++l)
        m(p * s + h * nt + e * nw + l, eq) = cod_lattice(l, k);
    }
  if (nvars == 0) {
    if (is_zero(rhs)) return IntMatrix(p, s);
    return std::nullopt;
  }
  auto sol = solve_integer(m, rhs);
  if (!sol) return std::nullopt;
  IntMatrix out(p, s);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < s; ++k) out(j, k) = (*sol)[phi(j, k)];
  return out;
}

}  // namespace

std::optional<HomSolution> factor_through(const AbMorphism& k, const AbMorphism& alpha) {
  if (!(k.cod() == alpha.cod()))
    throw ObjectMismatch("factor_through: maps have different codomains");
  const FgAbGroup& x = alpha.dom();
  const FgAbGroup& kd = k.dom();
  auto phi = solve_matrix_equation(x.rank(), kd.rank(), IntMatrix::identity(x.rank()),
                                   k.matrix(), alpha.matrix(), k.cod().relations(),
                                   x.relations(), kd.relations());
  if (!phi) return std::nullopt;
  AbMorphism map(x, kd, *phi);
  return HomSolution{map, hom_is_zero(x, kernel(k).group)};
}

std::optional<HomSolution> factor_from(const AbMorphism& q, const AbMorphism& beta) {
  if (!(q.dom() == beta.dom()))
    throw ObjectMismatch("factor_from: maps have different domains");
  const FgAbGroup& qc = q.cod();
  const FgAbGroup& y = beta.cod();
  auto psi = solve_matrix_equation(qc.rank(), y.rank(), q.matrix(),
                                   IntMatrix::identity(y.rank()), beta.matrix(),
                                   y.relations(), qc.relations(), y.relations());
  if (!psi) return std::nullopt;
  AbMorphism map(qc, y, *psi);
  return HomSolution{map, hom_is_zero(cokernel(q).group, y)};
}

}  // namespace preord

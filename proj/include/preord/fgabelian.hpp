#pragma once

// Finitely generated abelian groups Z^n / rowspan(R) and their morphisms.

#include "preord/intmat.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace preord {

class ObjectMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A morphism whose matrix does not respect the domain relations.
class IllDefinedMorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}
  FgAbGroup(std::size_t rank, IntMatrix relations);

  static FgAbGroup free(std::size_t rank) { return {rank, IntMatrix(0, rank)}; }
  static FgAbGroup cyclic(long order) { return {1, IntMatrix{{order}}}; }

  std::size_t rank() const { return rank_; }
  const IntMatrix& relations() const { return relations_; }
  const LatticeQuotient& quotient() const { return quotient_; }

  bool is_zero(const IntVec& x) const;
  bool element_eq(const IntVec& x, const IntVec& y) const;
  /// Smith invariants of the group: torsion orders > 1, then 0 for each free
  /// summand.
  std::vector<Int> invariants() const;
  bool is_trivial() const { return quotient_.moduli().empty(); }

  /// Structural equality of presentations.
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.rank_ == b.rank_ && a.relations_ == b.relations_;
  }

 private:
  std::size_t rank_;
  IntMatrix relations_;
  LatticeQuotient quotient_;
};

FgAbGroup make_group(std::size_t rank, const IntMatrix& relations);
bool element_eq(const FgAbGroup& g, const IntVec& x, const IntVec& y);

/// Group morphism given by a dom.rank x cod.rank matrix acting on rows.
class AbMorphism {
 public:
  /// Validates that every domain relation maps to zero.
  AbMorphism(FgAbGroup dom, FgAbGroup cod, IntMatrix matrix);

  static AbMorphism identity(const FgAbGroup& g);
  static AbMorphism zero(const FgAbGroup& dom, const FgAbGroup& cod);

  const FgAbGroup& dom() const { return dom_; }
  const FgAbGroup& cod() const { return cod_; }
  const IntMatrix& matrix() const { return matrix_; }
  IntVec apply(const IntVec& x) const { return row_times(x, matrix_); }
  bool is_zero() const;

 private:
  FgAbGroup dom_;
  FgAbGroup cod_;
  IntMatrix matrix_;
};

/// `second` after `first`; requires first.cod() == second.dom().
AbMorphism compose(const AbMorphism& first, const AbMorphism& second);
/// Equality of underlying maps modulo codomain relations.
bool morphism_eq(const AbMorphism& f, const AbMorphism& g);

struct Subobject {
  FgAbGroup group;
  AbMorphism incl;
};

struct Quotient {
  FgAbGroup group;
  AbMorphism proj;
};

Subobject kernel(const AbMorphism& f);
Quotient cokernel(const AbMorphism& f);
Subobject subgroup_generated(const FgAbGroup& g, std::span<const IntVec> gens);
Quotient quotient_by_subgroup(const FgAbGroup& g, const AbMorphism& incl);

struct DirectSum {
  FgAbGroup sum;
  AbMorphism inj1, inj2, proj1, proj2;
};
DirectSum direct_sum(const FgAbGroup& g, const FgAbGroup& h);

bool is_injective(const AbMorphism& f);
bool is_surjective(const AbMorphism& f);
bool is_isomorphism(const AbMorphism& f);

/// Some x with f(x) == y, if y is in the image.
std::optional<IntVec> preimage(const AbMorphism& f, const IntVec& y);

/// Whether Hom(x, y) is the zero group, decided from Smith invariants.
bool hom_is_zero(const FgAbGroup& x, const FgAbGroup& y);

/// All group morphisms phi with k . phi == alpha, described as one solution
/// plus whether that solution is the only one.
struct HomSolution {
  AbMorphism map;
  bool unique;
};
std::optional<HomSolution> factor_through(const AbMorphism& k,
                                          const AbMorphism& alpha);
/// All psi with psi . q == beta.
std::optional<HomSolution> factor_from(const AbMorphism& q,
                                       const AbMorphism& beta);

std::string describe(const FgAbGroup& g);

}  // namespace preord

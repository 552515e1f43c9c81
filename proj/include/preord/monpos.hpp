#pragma once

// Monoids embeddable in a group with the two-sided Ore condition, realized
// as submonoids of an ambient group. A morphism is stored as its unique
// extension between group completions.

#include "preord/preordgrp.hpp"

#include <memory>
#include <mutex>
#include <tuple>
#include <variant>

namespace preord {

/// grp(M) as a preordered group with cone M, and its embedding in the ambient.
struct Completion {
  PreOrdObj object;
  std::variant<AbMorphism, FinMorphism> embedding;
};

class ConeMonoid {
 public:
  static ConeMonoid abelian(FgAbGroup ambient, std::vector<IntVec> gens);
  /// Stores the generated submonoid (a subgroup, by finiteness).
  static ConeMonoid finite(FiniteGroup ambient, std::span<const Elem> gens);

  Universe universe() const { return universe_; }
  const FgAbGroup& ab_ambient() const;
  const std::vector<IntVec>& ab_gens() const;
  const FiniteGroup& fin_ambient() const;
  const ElemSet& members() const;

  bool contains(const IntVec& x) const;
  bool contains(Elem x) const;

  /// Computed once and shared between copies.
  const Completion& completion() const;

 private:
  ConeMonoid() = default;
  struct Cache {
    std::once_flag once;
    std::optional<Completion> value;
  };
  Universe universe_ = Universe::abelian;
  std::variant<AbelianCone, FiniteCone> data_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Same ambient and each generating set lies in the other monoid.
bool same_submonoid(const ConeMonoid& a, const ConeMonoid& b);

class MonMorphism {
 public:
  /// `ext` must go between the completion objects of dom and cod.
  MonMorphism(ConeMonoid dom, ConeMonoid cod, PreOrdMor ext);
  const ConeMonoid& dom() const { return dom_; }
  const ConeMonoid& cod() const { return cod_; }
  const PreOrdMor& ext() const { return ext_; }

 private:
  ConeMonoid dom_;
  ConeMonoid cod_;
  PreOrdMor ext_;
};

/// Builds the morphism induced by a group map grp(dom) -> ambient(cod).
MonMorphism mon_from_completion_map(const ConeMonoid& dom, const ConeMonoid& cod,
                                    const std::variant<AbMorphism, FinMorphism>& g);
/// Builds the morphism induced by a group map ambient(dom) -> ambient(cod).
MonMorphism mon_from_ambient_map(const ConeMonoid& dom, const ConeMonoid& cod,
                                 const std::variant<AbMorphism, FinMorphism>& f);

MonMorphism mon_identity(const ConeMonoid& m);
MonMorphism mon_zero(const ConeMonoid& dom, const ConeMonoid& cod);
MonMorphism mon_compose(const MonMorphism& first, const MonMorphism& second);
bool mon_eq(const MonMorphism& f, const MonMorphism& g);
bool mon_is_zero(const MonMorphism& f);
/// Two-sided inverse, if f is an isomorphism in the monoid category.
std::optional<MonMorphism> mon_inverse(const MonMorphism& f);

struct MonFactorization {
  std::optional<MonMorphism> map;
  bool unique = false;
  std::string witness;
};
MonFactorization mon_factor_through(const MonMorphism& k, const MonMorphism& alpha);
MonFactorization mon_factor_from(const MonMorphism& q, const MonMorphism& beta);

/// {x in dom : f(x) = 0} as a submonoid of dom's ambient.
ConeMonoid mon_kernel(const MonMorphism& f);

ConeMonoid positive_cone(const PreOrdObj& x);
MonMorphism positive_cone_mor(const PreOrdMor& m);

const Completion& group_completion(const ConeMonoid& m);

struct OreWitness {
  std::string a, b, x, y;
};
struct OreResult {
  bool ok = true;
  std::vector<OreWitness> witnesses;  // or the failing pair when !ok
};
OreResult ore_check(const ConeMonoid& m);

struct Units {
  ConeMonoid group;
  MonMorphism kappa;
};
/// Invertible elements, from supports of Hilbert-basis zero combinations.
Units units(const ConeMonoid& m);

bool is_reduced(const ConeMonoid& m);
bool is_group(const ConeMonoid& m);

struct ReducedQuotient {
  ConeMonoid quotient;
  MonMorphism eta;
};
/// M/U(M) inside grp(M)/U(M).
ReducedQuotient quotient_by_units(const ConeMonoid& m);

struct TorsionSes {
  MonMorphism kappa;
  MonMorphism eta;
  bool left_is_group = false;
  bool right_is_reduced = false;
  bool kernel_matches = false;  // U(M) equals the kernel of eta
  bool composite_zero = false;
};
TorsionSes torsion_ses(const ConeMonoid& m);

/// Whether f sends every generator to zero; expects a group-object domain and
/// a reduced codomain.
bool hom_group_to_reduced_is_zero(const MonMorphism& f);

struct StableComparison {
  PreOrdMor alpha;         // (grp(M), M) -> (G, M)
  PreOrdMor q;             // (G, M) -> (G / grp(M), 0)
  bool mono = false;
  bool normal = false;     // grp(M) conjugation-stable in G
  bool short_exact = false;
};
StableComparison comparison_morphism(const PreOrdObj& x);

struct FhatConsistency {
  MonMorphism forward;     // P(grp(M), M) -> M
  std::optional<MonMorphism> inverse;
  bool iso = false;
};
FhatConsistency fhat_consistency(const ConeMonoid& m);

struct SpecialSes {
  PreOrdMor incl;          // (H, P) -> (G, P)
  PreOrdMor q;             // (G, P) -> (G / H, 0)
  bool source_exact = false;
  bool image_exact = false;
};
/// H given by generators (abelian) or members (finite); throws
/// ValidationError when H misses a cone element and NotNormal when H is not
/// normal.
SpecialSes special_ses_preservation(const PreOrdObj& x, const std::vector<IntVec>& h);
SpecialSes special_ses_preservation(const PreOrdObj& x, const ElemSet& h);

/// P applied to the canonical sequence of x, compared with the torsion
/// sequence of P(x).
struct CanonicalImage {
  bool torsion_matches = false;       // x torsion iff P(x) a group
  bool torsion_free_matches = false;  // x torsion-free iff P(x) reduced
  bool units_match = false;           // U(P(x)) = N as submonoids
  std::optional<MonMorphism> quotient_iso;  // M/U(M) -> P(G/N, image of P)
};
CanonicalImage canonical_sequence_image(const PreOrdObj& x);

std::string describe(const ConeMonoid& m);

}  // namespace preord

#pragma once

// Preordered groups (G, P) over two universes: finitely generated abelian
// groups, where P is given by monoid generators, and finite groups, where P
// is stored as its full (normal subgroup) member set.

#include "preord/fgabelian.hpp"
#include "preord/finitegroup.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace preord {

enum class Universe { abelian, finite };

std::string to_string(Universe u);

/// Invalid object or morphism data; `witness` names the offending element.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, std::string witness)
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct AbelianCone {
  FgAbGroup group;
  std::vector<IntVec> cone;  // monoid generators
};

struct FiniteCone {
  FiniteGroup group;
  ElemSet cone;  // all members, a normal subgroup
};

class PreOrdObj {
 public:
  /// Checks generator lengths.
  static PreOrdObj abelian(FgAbGroup group, std::vector<IntVec> cone);
  /// Closes `cone` to a submonoid and rejects it unless conjugation-closed.
  static PreOrdObj finite(FiniteGroup group, std::span<const Elem> cone);

  Universe universe() const;
  bool is_abelian() const { return universe() == Universe::abelian; }
  const AbelianCone& ab() const;
  const FiniteCone& fin() const;

  /// Membership certificate for x in the cone (abelian universe).
  std::optional<NonnegSolution> cone_certificate(const IntVec& x) const;
  bool cone_contains(const IntVec& x) const { return cone_certificate(x).has_value(); }
  bool cone_contains(Elem x) const;

  /// Structural equality of group presentation and cone data.
  friend bool operator==(const PreOrdObj& a, const PreOrdObj& b);

 private:
  explicit PreOrdObj(std::variant<AbelianCone, FiniteCone> d) : data_(std::move(d)) {}
  std::variant<AbelianCone, FiniteCone> data_;
};

class PreOrdMor {
 public:
  /// Validates object agreement and cone preservation, storing certificates.
  PreOrdMor(PreOrdObj dom, PreOrdObj cod, AbMorphism map);
  PreOrdMor(PreOrdObj dom, PreOrdObj cod, FinMorphism map);

  const PreOrdObj& dom() const { return dom_; }
  const PreOrdObj& cod() const { return cod_; }
  Universe universe() const { return dom_.universe(); }
  const AbMorphism& ab() const;
  const FinMorphism& fin() const;
  /// One certificate per domain cone generator (abelian universe only).
  const std::vector<NonnegSolution>& certificates() const { return certs_; }

 private:
  PreOrdObj dom_;
  PreOrdObj cod_;
  std::variant<AbMorphism, FinMorphism> map_;
  std::vector<NonnegSolution> certs_;
};

PreOrdObj make_object(const FgAbGroup& g, std::vector<IntVec> cone);
PreOrdObj make_object(const FiniteGroup& g, std::span<const Elem> cone);
PreOrdMor make_morphism(const PreOrdObj& dom, const PreOrdObj& cod, const IntMatrix& matrix);
PreOrdMor make_morphism(const PreOrdObj& dom, const PreOrdObj& cod, std::vector<Elem> map);

PreOrdMor identity(const PreOrdObj& x);
PreOrdMor zero_morphism(const PreOrdObj& dom, const PreOrdObj& cod);
/// `second` after `first`.
PreOrdMor compose(const PreOrdMor& first, const PreOrdMor& second);
/// Equality of underlying group maps.
bool morphism_eq(const PreOrdMor& f, const PreOrdMor& g);

struct MorphismKind {
  bool mono = false;
  bool epi = false;
  bool regular_epi = false;
};
MorphismKind classify_morphism(const PreOrdMor& m);
/// Bijective and cone-surjective, i.e. an isomorphism of preordered groups.
bool is_isomorphism(const PreOrdMor& m);

/// Whether the image of the domain cone generates every codomain cone
/// generator as a monoid.
bool cone_image_covers(const PreOrdMor& m);

bool is_z_trivial(const PreOrdObj& x);
bool is_z_trivial(const PreOrdMor& m);

struct ObjectArrow {
  PreOrdObj obj;
  PreOrdMor mor;
};

ObjectArrow kernel(const PreOrdMor& m);
ObjectArrow cokernel(const PreOrdMor& m);
/// (G, P_G ∩ Ker f) with identity underlying map.
ObjectArrow z_kernel(const PreOrdMor& m);
/// (H/S, q(P_H)) with S the normal closure of f(P_G).
ObjectArrow z_cokernel(const PreOrdMor& m);

/// (G, N) with N the largest subgroup inside the cone.
PreOrdObj symmetric_part(const PreOrdObj& x);

struct ZExactSeq {
  PreOrdMor left;
  PreOrdMor right;
};
/// (G, N) -> (G, P) -> (G/N, image of P).
ZExactSeq canonical_sequence(const PreOrdObj& x);

struct ObjectKind {
  bool torsion = false;
  bool torsion_free = false;
  bool z_trivial = false;
};
ObjectKind classify_object(const PreOrdObj& x);

PreOrdObj functor_D(const PreOrdObj& x);
PreOrdMor functor_D(const PreOrdMor& m);
/// (G, 0) -> (G, P) with identity underlying map.
PreOrdMor counit_iota(const PreOrdObj& x);
/// Inclusion of Z-trivial objects; throws ValidationError otherwise.
PreOrdObj functor_E(const PreOrdObj& x);
/// (G / M, 0) with M the normal closure of the cone.
PreOrdObj functor_C(const PreOrdObj& x);
PreOrdMor unit_pi(const PreOrdObj& x);

/// Direct sum with cone generated by both cones (abelian universe).
struct ObjectSum {
  PreOrdObj sum;
  PreOrdMor inj1, inj2, proj1, proj2;
};
ObjectSum direct_sum(const PreOrdObj& a, const PreOrdObj& b);

/// Pullback of f: A -> C and g: B -> C, with cone the pairs of positives.
struct Pullback {
  PreOrdObj apex;
  PreOrdMor p1, p2;
};
Pullback pullback(const PreOrdMor& f, const PreOrdMor& g);

struct PullbackSquare {
  Pullback pb;         // of m and the counit of its codomain
  ObjectArrow zk;      // Z-kernel of m
  PreOrdMor comparison;  // zk.obj -> pb.apex
  bool commutes = false;
  bool comparison_iso = false;
};
PullbackSquare pullback_with_counit(const PreOrdMor& m);

struct PushoutSquare {
  PreOrdObj apex;        // pushout of m along the unit of its domain
  PreOrdMor i1, i2;      // from m.cod() and from C(m.dom())
  ObjectArrow zc;        // Z-cokernel of m
  PreOrdMor comparison;  // apex -> zc.obj
  bool commutes = false;
  bool comparison_iso = false;
};
/// Abelian universe only; UnsupportedOperation otherwise.
PushoutSquare pushout_with_unit(const PreOrdMor& m);

/// Solutions phi of k . phi = alpha (or psi . q = beta for factor_from).
struct Factorization {
  std::optional<PreOrdMor> map;  // a cone-preserving solution
  bool group_solution = false;   // some group-level solution exists
  bool unique = false;           // the group-level solution is unique
  std::string witness;           // why no cone-preserving solution was found
};
Factorization factor_through(const PreOrdMor& k, const PreOrdMor& alpha);
Factorization factor_from(const PreOrdMor& q, const PreOrdMor& beta);

std::string describe(const PreOrdObj& x);
std::string describe(const PreOrdMor& m);

}  // namespace preord

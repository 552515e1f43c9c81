#pragma once

// Finite groups given by Cayley tables. Element 0 is the identity; elements
// are plain indices.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace preord {

using Elem = std::uint32_t;
/// Sorted, duplicate-free list of elements.
using ElemSet = std::vector<Elem>;

inline constexpr std::size_t kDefaultOrderCap = 512;

class GroupAxiomError : public std::invalid_argument {
 public:
  enum class Kind { shape, latin_square, identity, inverse, associativity, order_cap };
  GroupAxiomError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class HomomorphismError : public std::invalid_argument {
 public:
  HomomorphismError(Elem x, Elem y, const std::string& what)
      : std::invalid_argument(what), x_(x), y_(y) {}
  Elem x() const { return x_; }
  Elem y() const { return y_; }

 private:
  Elem x_, y_;
};

class NotNormal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteGroup {
 public:
  /// Trivial group.
  FiniteGroup() : order_(1), table_{0}, inverse_{0} {}

  /// Exhaustively checks the group axioms.
  static FiniteGroup validate(const std::vector<std::vector<Elem>>& table,
                              std::size_t order_cap = kDefaultOrderCap);

  static FiniteGroup cyclic(std::size_t n);
  /// Symmetric group on three points; 0 = e, 1 = (12), 2 = (13), 3 = (23),
  /// 4 = (123), 5 = (132).
  static FiniteGroup symmetric3();
  static FiniteGroup symmetric4();
  /// Dihedral group of order 2n: r^i is element i, s r^i is element n + i.
  static FiniteGroup dihedral(std::size_t n);

  std::size_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem conj(Elem h, Elem x) const { return mul(mul(h, x), inv(h)); }
  std::size_t element_order(Elem a) const;
  std::vector<std::vector<Elem>> table() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
};

ElemSet submonoid_closure(const FiniteGroup& g, std::span<const Elem> elems);
ElemSet normal_closure(const FiniteGroup& g, std::span<const Elem> elems);
bool is_normal(const FiniteGroup& g, const ElemSet& s);
bool contains(const ElemSet& s, Elem x);
/// A small generating set, found greedily.
std::vector<Elem> generators(const FiniteGroup& g);

class FinMorphism {
 public:
  /// Verifies the homomorphism property exhaustively.
  FinMorphism(FiniteGroup dom, FiniteGroup cod, std::vector<Elem> map);

  static FinMorphism identity(const FiniteGroup& g);
  static FinMorphism trivial(const FiniteGroup& dom, const FiniteGroup& cod);

  const FiniteGroup& dom() const { return dom_; }
  const FiniteGroup& cod() const { return cod_; }
  const std::vector<Elem>& map() const { return map_; }
  Elem apply(Elem x) const { return map_[x]; }
  ElemSet image() const;
  ElemSet kernel() const;
  bool is_trivial() const;

  friend bool operator==(const FinMorphism&, const FinMorphism&) = default;

 private:
  FiniteGroup dom_;
  FiniteGroup cod_;
  std::vector<Elem> map_;
};

FinMorphism hom_verify(const FiniteGroup& dom, const FiniteGroup& cod,
                       const std::vector<Elem>& map);
FinMorphism compose(const FinMorphism& first, const FinMorphism& second);
bool is_injective(const FinMorphism& f);
bool is_surjective(const FinMorphism& f);

struct FinSubgroup {
  FiniteGroup group;
  FinMorphism incl;
};
/// The subgroup on `s` (which must be closed), elements relabelled in
/// increasing order.
FinSubgroup subgroup(const FiniteGroup& g, const ElemSet& s);

struct FinQuotient {
  FiniteGroup group;
  FinMorphism proj;
};
/// Coset group G/N; cosets ordered by smallest representative.
FinQuotient quotient(const FiniteGroup& g, const ElemSet& n);

/// Extends an assignment on generators to a homomorphism, if consistent.
std::optional<FinMorphism> extend_hom(const FiniteGroup& dom, const FiniteGroup& cod,
                                      std::span<const Elem> gens,
                                      std::span<const Elem> images);

/// Enumerates homomorphisms dom -> cod whose generator images are drawn from
/// the given candidate lists, stopping after `limit` accepted ones.
std::vector<FinMorphism> enumerate_homs(
    const FiniteGroup& dom, const FiniteGroup& cod, std::span<const Elem> gens,
    const std::vector<std::vector<Elem>>& candidates,
    const std::function<bool(const FinMorphism&)>& accept, std::size_t limit);

}  // namespace preord

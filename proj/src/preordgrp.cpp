#include "preord/preordgrp.hpp"

#include <algorithm>
#include <sstream>

namespace preord {

namespace {

std::string list_to_string(const std::vector<IntVec>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + to_string(vs[i]);
  return s + "}";
}

std::string list_to_string(const ElemSet& es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + std::to_string(es[i]);
  return s + "}";
}

std::vector<IntVec> images(const AbMorphism& f, const std::vector<IntVec>& xs) {
  std::vector<IntVec> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(f.apply(x));
  return out;
}

ElemSet image_set(const FinMorphism& f, const ElemSet& s) {
  ElemSet out;
  for (Elem x : s) out.push_back(f.apply(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElemSet intersect(const ElemSet& a, const ElemSet& b) {
  ElemSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Elements sum c_i gens_i for generators c of {c >= 0 : f(sum c_i gens_i) == 0}.
std::vector<IntVec> cone_in_kernel(const AbMorphism& f, const std::vector<IntVec>& gens) {
  std::vector<IntVec> imgs = images(f, gens);
  std::vector<IntVec> out;
  for (const auto& c : nonneg_zero_combinations(imgs, f.cod().quotient())) {
    IntVec x = zero_vec(f.dom().rank());
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (c[i] != 0) x = x + c[i] * gens[i];
    out.push_back(std::move(x));
  }
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hconcat: row counts differ");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

IntMatrix negated(IntMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return m;
}

// Relabels members of `s` lying in the sorted subgroup `sub` by their position.
ElemSet relabel(const ElemSet& sub, const ElemSet& s) {
  ElemSet out;
  for (Elem x : s) {
    auto it = std::lower_bound(sub.begin(), sub.end(), x);
    if (it != sub.end() && *it == x) out.push_back(static_cast<Elem>(it - sub.begin()));
  }
  return out;
}

// x modulo the subgroup generated by `gens`, keeping the image cone or not.
ObjectArrow quotient_abelian(const PreOrdObj& x, std::span<const IntVec> gens, bool keep_cone) {
  const auto& g = x.ab().group;
  auto s = subgroup_generated(g, gens);
  auto q = quotient_by_subgroup(g, s.incl);
  auto obj = PreOrdObj::abelian(q.group, keep_cone ? images(q.proj, x.ab().cone)
                                                   : std::vector<IntVec>{});
  return {obj, PreOrdMor(x, obj, q.proj)};
}

// x modulo the normal closure of `gens`.
ObjectArrow quotient_finite(const PreOrdObj& x, std::span<const Elem> gens, bool keep_cone) {
  const auto& g = x.fin().group;
  auto q = quotient(g, normal_closure(g, gens));
  ElemSet cone = keep_cone ? image_set(q.proj, x.fin().cone) : ElemSet{};
  auto obj = PreOrdObj::finite(q.group, cone);
  return {obj, PreOrdMor(x, obj, q.proj)};
}

void require_same(const PreOrdObj& a, const PreOrdObj& b, const char* what) {
  if (!(a == b)) throw ObjectMismatch(what);
}

}  // namespace

std::string to_string(Universe u) { return u == Universe::abelian ? "abelian" : "finite"; }

// ---------------------------------------------------------------------------
// objects

PreOrdObj PreOrdObj::abelian(FgAbGroup group, std::vector<IntVec> cone) {
  for (std::size_t i = 0; i < cone.size(); ++i)
    if (cone[i].size() != group.rank())
      throw DimensionError("cone generator " + std::to_string(i) + " has length " +
                           std::to_string(cone[i].size()) + ", expected " +
                           std::to_string(group.rank()));
  return PreOrdObj(AbelianCone{std::move(group), std::move(cone)});
}

PreOrdObj PreOrdObj::finite(FiniteGroup group, std::span<const Elem> cone) {
  for (Elem x : cone)
    if (x >= group.order())
      throw ValidationError("cone element out of range", std::to_string(x));
  ElemSet members = submonoid_closure(group, cone);
  for (Elem h = 0; h < group.order(); ++h)
    for (Elem p : members) {
      Elem c = group.conj(h, p);
      if (!contains(members, c))
        throw ValidationError("cone is not closed under conjugation",
                              std::to_string(h) + " * " + std::to_string(p) + " * " +
                                  std::to_string(group.inv(h)) + " = " + std::to_string(c) +
                                  " is outside " + list_to_string(members));
    }
  return PreOrdObj(FiniteCone{std::move(group), std::move(members)});
}

Universe PreOrdObj::universe() const {
  return std::holds_alternative<AbelianCone>(data_) ? Universe::abelian : Universe::finite;
}

const AbelianCone& PreOrdObj::ab() const {
  if (auto* p = std::get_if<AbelianCone>(&data_)) return *p;
  throw UnsupportedOperation("object is not in the abelian universe");
}

const FiniteCone& PreOrdObj::fin() const {
  if (auto* p = std::get_if<FiniteCone>(&data_)) return *p;
  throw UnsupportedOperation("object is not in the finite universe");
}

std::optional<NonnegSolution> PreOrdObj::cone_certificate(const IntVec& x) const {
  const auto& a = ab();
  if (x.size() != a.group.rank()) throw DimensionError("element length mismatch");
  return nonneg_feasible(a.cone, a.group.quotient(), x);
}

bool PreOrdObj::cone_contains(Elem x) const { return contains(fin().cone, x); }

bool operator==(const PreOrdObj& a, const PreOrdObj& b) {
  if (a.universe() != b.universe()) return false;
  if (a.is_abelian()) return a.ab().group == b.ab().group && a.ab().cone == b.ab().cone;
  return a.fin().group == b.fin().group && a.fin().cone == b.fin().cone;
}

PreOrdObj make_object(const FgAbGroup& g, std::vector<IntVec> cone) {
  return PreOrdObj::abelian(g, std::move(cone));
}

PreOrdObj make_object(const FiniteGroup& g, std::span<const Elem> cone) {
  return PreOrdObj::finite(g, cone);
}

// ---------------------------------------------------------------------------
// morphisms

PreOrdMor::PreOrdMor(PreOrdObj dom, PreOrdObj cod, AbMorphism map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  const auto& f = std::get<AbMorphism>(map_);
  if (!(f.dom() == dom_.ab().group) || !(f.cod() == cod_.ab().group))
    throw ObjectMismatch("morphism groups do not match its objects");
  const auto& gens = dom_.ab().cone;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    IntVec y = f.apply(gens[i]);
    auto cert = cod_.cone_certificate(y);
    if (!cert)
      throw ValidationError("image of a cone generator leaves the codomain cone",
                            "generator " + to_string(gens[i]) + " maps to " + to_string(y));
    certs_.push_back(std::move(*cert));
  }
}

PreOrdMor::PreOrdMor(PreOrdObj dom, PreOrdObj cod, FinMorphism map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  const auto& f = std::get<FinMorphism>(map_);
  if (!(f.dom() == dom_.fin().group) || !(f.cod() == cod_.fin().group))
    throw ObjectMismatch("morphism groups do not match its objects");
  for (Elem x : dom_.fin().cone) {
    Elem y = f.apply(x);
    if (!cod_.cone_contains(y))
      throw ValidationError("image of a cone element leaves the codomain cone",
                            "element " + std::to_string(x) + " maps to " + std::to_string(y));
  }
}

const AbMorphism& PreOrdMor::ab() const {
  if (auto* p = std::get_if<AbMorphism>(&map_)) return *p;
  throw UnsupportedOperation("morphism is not in the abelian universe");
}

const FinMorphism& PreOrdMor::fin() const {
  if (auto* p = std::get_if<FinMorphism>(&map_)) return *p;
  throw UnsupportedOperation("morphism is not in the finite universe");
}

PreOrdMor make_morphism(const PreOrdObj& dom, const PreOrdObj& cod, const IntMatrix& matrix) {
  return PreOrdMor(dom, cod, AbMorphism(dom.ab().group, cod.ab().group, matrix));
}

PreOrdMor make_morphism(const PreOrdObj& dom, const PreOrdObj& cod, std::vector<Elem> map) {
  return PreOrdMor(dom, cod, hom_verify(dom.fin().group, cod.fin().group, map));
}

PreOrdMor identity(const PreOrdObj& x) {
  if (x.is_abelian()) return PreOrdMor(x, x, AbMorphism::identity(x.ab().group));
  return PreOrdMor(x, x, FinMorphism::identity(x.fin().group));
}

PreOrdMor zero_morphism(const PreOrdObj& dom, const PreOrdObj& cod) {
  if (dom.universe() != cod.universe()) throw ObjectMismatch("objects in different universes");
  if (dom.is_abelian()) return PreOrdMor(dom, cod, AbMorphism::zero(dom.ab().group, cod.ab().group));
  return PreOrdMor(dom, cod, FinMorphism::trivial(dom.fin().group, cod.fin().group));
}

PreOrdMor compose(const PreOrdMor& first, const PreOrdMor& second) {
  require_same(first.cod(), second.dom(), "compose: codomain and domain differ");
  if (first.universe() == Universe::abelian)
    return PreOrdMor(first.dom(), second.cod(), compose(first.ab(), second.ab()));
  return PreOrdMor(first.dom(), second.cod(), compose(first.fin(), second.fin()));
}

bool morphism_eq(const PreOrdMor& f, const PreOrdMor& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) return false;
  if (f.universe() == Universe::abelian) return morphism_eq(f.ab(), g.ab());
  return f.fin().map() == g.fin().map();
}

bool cone_image_covers(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian) {
    std::vector<IntVec> imgs = images(m.ab(), m.dom().ab().cone);
    const auto& cod = m.cod().ab();
    for (const auto& h : cod.cone)
      if (!nonneg_feasible(imgs, cod.group.quotient(), h)) return false;
    return true;
  }
  ElemSet img = image_set(m.fin(), m.dom().fin().cone);
  ElemSet closure = submonoid_closure(m.cod().fin().group, img);
  return std::includes(closure.begin(), closure.end(), m.cod().fin().cone.begin(),
                       m.cod().fin().cone.end());
}

MorphismKind classify_morphism(const PreOrdMor& m) {
  MorphismKind k;
  if (m.universe() == Universe::abelian) {
    k.mono = is_injective(m.ab());
    k.epi = is_surjective(m.ab());
  } else {
    k.mono = is_injective(m.fin());
    k.epi = is_surjective(m.fin());
  }
  k.regular_epi = k.epi && cone_image_covers(m);
  return k;
}

bool is_isomorphism(const PreOrdMor& m) {
  auto k = classify_morphism(m);
  return k.mono && k.regular_epi;
}

bool is_z_trivial(const PreOrdObj& x) {
  if (x.is_abelian()) {
    const auto& a = x.ab();
    return std::all_of(a.cone.begin(), a.cone.end(),
                       [&](const IntVec& g) { return a.group.is_zero(g); });
  }
  return x.fin().cone.size() == 1;
}

bool is_z_trivial(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian) {
    const auto& cod = m.cod().ab().group;
    for (const auto& g : m.dom().ab().cone)
      if (!cod.is_zero(m.ab().apply(g))) return false;
    return true;
  }
  for (Elem x : m.dom().fin().cone)
    if (m.fin().apply(x) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// kernels and cokernels

ObjectArrow kernel(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian) {
    auto k = kernel(m.ab());
    std::vector<IntVec> cone;
    for (const auto& x : cone_in_kernel(m.ab(), m.dom().ab().cone)) {
      auto y = preimage(k.incl, x);
      if (!y) throw std::logic_error("kernel: cone element outside the kernel");
      cone.push_back(std::move(*y));
    }
    auto obj = PreOrdObj::abelian(k.group, std::move(cone));
    return {obj, PreOrdMor(obj, m.dom(), k.incl)};
  }
  ElemSet ker = m.fin().kernel();
  auto sub = subgroup(m.dom().fin().group, ker);
  auto obj = PreOrdObj::finite(sub.group, relabel(ker, m.dom().fin().cone));
  return {obj, PreOrdMor(obj, m.dom(), sub.incl)};
}

ObjectArrow cokernel(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian) {
    auto q = cokernel(m.ab());
    auto obj = PreOrdObj::abelian(q.group, images(q.proj, m.cod().ab().cone));
    return {obj, PreOrdMor(m.cod(), obj, q.proj)};
  }
  ElemSet img = m.fin().image();
  return quotient_finite(m.cod(), img, true);
}

ObjectArrow z_kernel(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian) {
    auto obj = PreOrdObj::abelian(m.dom().ab().group, cone_in_kernel(m.ab(), m.dom().ab().cone));
    return {obj, PreOrdMor(obj, m.dom(), AbMorphism::identity(obj.ab().group))};
  }
  auto obj = PreOrdObj::finite(m.dom().fin().group, intersect(m.dom().fin().cone, m.fin().kernel()));
  return {obj, PreOrdMor(obj, m.dom(), FinMorphism::identity(obj.fin().group))};
}

ObjectArrow z_cokernel(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian)
    return quotient_abelian(m.cod(), images(m.ab(), m.dom().ab().cone), true);
  return quotient_finite(m.cod(), image_set(m.fin(), m.dom().fin().cone), true);
}

// ---------------------------------------------------------------------------
// canonical sequence and classification

PreOrdObj symmetric_part(const PreOrdObj& x) {
  if (!x.is_abelian()) return x;  // finite cones are subgroups
  const auto& a = x.ab();
  std::vector<IntVec> units;
  auto add = [&](const IntVec& v) {
    if (std::find(units.begin(), units.end(), v) == units.end()) units.push_back(v);
  };
  for (const auto& g : a.cone) {
    if (x.cone_contains(-g)) {
      add(g);
      add(-g);
    }
  }
  return PreOrdObj::abelian(a.group, std::move(units));
}

ZExactSeq canonical_sequence(const PreOrdObj& x) {
  PreOrdObj n = symmetric_part(x);
  PreOrdMor left = x.is_abelian() ? PreOrdMor(n, x, AbMorphism::identity(x.ab().group))
                                  : PreOrdMor(n, x, FinMorphism::identity(x.fin().group));
  ObjectArrow right = x.is_abelian() ? quotient_abelian(x, n.ab().cone, true)
                                     : quotient_finite(x, n.fin().cone, true);
  return {left, right.mor};
}

ObjectKind classify_object(const PreOrdObj& x) {
  ObjectKind k;
  k.z_trivial = is_z_trivial(x);
  if (x.is_abelian()) {
    const auto& a = x.ab();
    k.torsion = true;
    k.torsion_free = true;
    for (const auto& g : a.cone) {
      bool unit = x.cone_contains(-g);
      if (!unit) k.torsion = false;
      if (unit && !a.group.is_zero(g)) k.torsion_free = false;
    }
  } else {
    k.torsion = true;
    k.torsion_free = k.z_trivial;
  }
  return k;
}

// ---------------------------------------------------------------------------
// adjoint functors

PreOrdObj functor_D(const PreOrdObj& x) {
  if (x.is_abelian()) return PreOrdObj::abelian(x.ab().group, {});
  return PreOrdObj::finite(x.fin().group, std::vector<Elem>{});
}

PreOrdMor functor_D(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian)
    return PreOrdMor(functor_D(m.dom()), functor_D(m.cod()), m.ab());
  return PreOrdMor(functor_D(m.dom()), functor_D(m.cod()), m.fin());
}

PreOrdMor counit_iota(const PreOrdObj& x) {
  if (x.is_abelian()) return PreOrdMor(functor_D(x), x, AbMorphism::identity(x.ab().group));
  return PreOrdMor(functor_D(x), x, FinMorphism::identity(x.fin().group));
}

PreOrdObj functor_E(const PreOrdObj& x) {
  if (!is_z_trivial(x))
    throw ValidationError("object has a nontrivial cone", describe(x));
  return x;
}

PreOrdObj functor_C(const PreOrdObj& x) { return unit_pi(x).cod(); }

PreOrdMor unit_pi(const PreOrdObj& x) {
  if (x.is_abelian()) return quotient_abelian(x, x.ab().cone, false).mor;
  return quotient_finite(x, x.fin().cone, false).mor;
}

// ---------------------------------------------------------------------------
// sums, pullbacks, pushouts

ObjectSum direct_sum(const PreOrdObj& a, const PreOrdObj& b) {
  if (!a.is_abelian() || !b.is_abelian())
    throw UnsupportedOperation("direct sums are built in the abelian universe only");
  auto ds = direct_sum(a.ab().group, b.ab().group);
  std::vector<IntVec> cone = images(ds.inj1, a.ab().cone);
  for (auto& v : images(ds.inj2, b.ab().cone)) cone.push_back(std::move(v));
  auto sum = PreOrdObj::abelian(ds.sum, std::move(cone));
  return {sum, PreOrdMor(a, sum, ds.inj1), PreOrdMor(b, sum, ds.inj2),
          PreOrdMor(sum, a, ds.proj1), PreOrdMor(sum, b, ds.proj2)};
}

Pullback pullback(const PreOrdMor& f, const PreOrdMor& g) {
  require_same(f.cod(), g.cod(), "pullback: codomains differ");
  const PreOrdObj& a = f.dom();
  const PreOrdObj& b = g.dom();
  if (f.universe() == Universe::abelian) {
    auto s = direct_sum(a, b);
    // difference map (x, y) |-> f(x) - g(y)
    AbMorphism d(s.sum.ab().group, f.cod().ab().group,
                 f.ab().matrix().vstack(negated(g.ab().matrix())));
    auto k = kernel(d);
    std::vector<IntVec> cone;
    for (const auto& x : cone_in_kernel(d, s.sum.ab().cone)) cone.push_back(*preimage(k.incl, x));
    auto apex = PreOrdObj::abelian(k.group, std::move(cone));
    return {apex, PreOrdMor(apex, a, compose(k.incl, s.proj1.ab())),
            PreOrdMor(apex, b, compose(k.incl, s.proj2.ab()))};
  }
  const auto& ga = a.fin().group;
  const auto& gb = b.fin().group;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < ga.order(); ++x)
    for (Elem y = 0; y < gb.order(); ++y)
      if (f.fin().apply(x) == g.fin().apply(y)) pairs.emplace_back(x, y);
  auto index = [&](Elem x, Elem y) {
    return static_cast<Elem>(std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(x, y)) -
                             pairs.begin());
  };
  std::vector<std::vector<Elem>> table(pairs.size(), std::vector<Elem>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j)
      table[i][j] = index(ga.mul(pairs[i].first, pairs[j].first),
                          gb.mul(pairs[i].second, pairs[j].second));
  auto group = FiniteGroup::validate(table, std::max(kDefaultOrderCap, pairs.size()));
  std::vector<Elem> cone, m1, m2;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (a.cone_contains(pairs[i].first) && b.cone_contains(pairs[i].second))
      cone.push_back(static_cast<Elem>(i));
    m1.push_back(pairs[i].first);
    m2.push_back(pairs[i].second);
  }
  auto apex = PreOrdObj::finite(group, cone);
  return {apex, PreOrdMor(apex, a, FinMorphism(group, ga, m1)),
          PreOrdMor(apex, b, FinMorphism(group, gb, m2))};
}

PullbackSquare pullback_with_counit(const PreOrdMor& m) {
  PreOrdMor iota = counit_iota(m.cod());
  Pullback pb = pullback(m, iota);
  ObjectArrow zk = z_kernel(m);
  std::optional<PreOrdMor> cmp;
  if (m.universe() == Universe::abelian) {
    // a |-> (a, f(a)) through the pair of projections
    const auto& ga = m.dom().ab().group;
    auto s = direct_sum(ga, m.cod().ab().group);
    AbMorphism pair_incl(pb.apex.ab().group, s.sum,
                         hconcat(pb.p1.ab().matrix(), pb.p2.ab().matrix()));
    AbMorphism target(ga, s.sum, hconcat(IntMatrix::identity(ga.rank()), m.ab().matrix()));
    auto sol = factor_through(pair_incl, target);
    if (!sol) throw std::logic_error("pullback comparison has no group-level solution");
    cmp = PreOrdMor(zk.obj, pb.apex, sol->map);
  } else {
    const auto& apex = pb.apex.fin().group;
    std::vector<Elem> map(zk.obj.fin().group.order());
    for (Elem x = 0; x < map.size(); ++x) {
      Elem y = m.fin().apply(x);
      Elem e = 0;
      while (e < apex.order() && !(pb.p1.fin().apply(e) == x && pb.p2.fin().apply(e) == y)) ++e;
      if (e == apex.order()) throw std::logic_error("pullback comparison misses a pair");
      map[x] = e;
    }
    cmp = PreOrdMor(zk.obj, pb.apex, FinMorphism(zk.obj.fin().group, apex, map));
  }
  PullbackSquare sq{pb, zk, *cmp};
  sq.commutes = morphism_eq(compose(pb.p1, m), compose(pb.p2, iota)) &&
                morphism_eq(compose(*cmp, pb.p1), zk.mor);
  sq.comparison_iso = is_isomorphism(*cmp);
  return sq;
}

PushoutSquare pushout_with_unit(const PreOrdMor& m) {
  if (m.universe() != Universe::abelian)
    throw UnsupportedOperation("pushouts are built in the abelian universe only");
  PreOrdMor pi = unit_pi(m.dom());
  auto s = direct_sum(m.cod(), pi.cod());
  // relations (f(a), -pi(a)) over the ambient basis of the domain
  AbMorphism graph(m.dom().ab().group, s.sum.ab().group,
                   hconcat(m.ab().matrix(), negated(pi.ab().matrix())));
  auto q = cokernel(graph);
  auto apex = PreOrdObj::abelian(q.group, images(q.proj, s.sum.ab().cone));
  PreOrdMor i1(m.cod(), apex, compose(s.inj1.ab(), q.proj));
  PreOrdMor i2(pi.cod(), apex, compose(s.inj2.ab(), q.proj));
  ObjectArrow zc = z_cokernel(m);
  auto psi = factor_from(pi.ab(), compose(m.ab(), zc.mor.ab()));
  if (!psi) throw std::logic_error("pushout comparison has no group-level solution");
  AbMorphism cmp_map(q.group, zc.obj.ab().group, zc.mor.ab().matrix().vstack(psi->map.matrix()));
  PreOrdMor cmp(apex, zc.obj, cmp_map);
  PushoutSquare sq{apex, i1, i2, zc, cmp};
  sq.commutes = morphism_eq(compose(m, i1), compose(pi, i2)) &&
                morphism_eq(compose(i1, cmp), zc.mor);
  sq.comparison_iso = is_isomorphism(cmp);
  return sq;
}

// ---------------------------------------------------------------------------
// factorizations

namespace {

Factorization finish(const PreOrdObj& dom, const PreOrdObj& cod, const AbMorphism& map,
                     bool unique) {
  Factorization out;
  out.group_solution = true;
  out.unique = unique;
  try {
    out.map = PreOrdMor(dom, cod, map);
  } catch (const ValidationError& e) {
    out.witness = std::string(e.what()) + ": " + e.witness();
  }
  return out;
}

// Homomorphisms dom -> cod matching `ok`, with generator candidates.
Factorization finite_search(const PreOrdObj& dom, const PreOrdObj& cod,
                            const std::vector<std::vector<Elem>>& candidates,
                            const std::vector<Elem>& gens,
                            const std::function<bool(const FinMorphism&)>& ok) {
  Factorization out;
  const auto& g = dom.fin().group;
  const auto& h = cod.fin().group;
  auto group_sols = enumerate_homs(g, h, gens, candidates, ok, 2);
  out.group_solution = !group_sols.empty();
  out.unique = group_sols.size() == 1;
  auto cone_ok = [&](const FinMorphism& f) {
    if (!ok(f)) return false;
    for (Elem x : dom.fin().cone)
      if (!cod.cone_contains(f.apply(x))) return false;
    return true;
  };
  auto sols = group_sols.size() == 1 ? group_sols : enumerate_homs(g, h, gens, candidates, cone_ok, 1);
  if (!sols.empty() && cone_ok(sols.front())) {
    out.map = PreOrdMor(dom, cod, sols.front());
  } else if (out.group_solution) {
    out.witness = "every group-level solution moves a cone element outside the target cone";
  } else {
    out.witness = "no group homomorphism solves the equation";
  }
  return out;
}

}  // namespace

Factorization factor_through(const PreOrdMor& k, const PreOrdMor& alpha) {
  require_same(k.cod(), alpha.cod(), "factor_through: codomains differ");
  if (k.universe() == Universe::abelian) {
    auto sol = factor_through(k.ab(), alpha.ab());
    if (!sol) {
      Factorization out;
      out.witness = "no group homomorphism solves the equation";
      return out;
    }
    return finish(alpha.dom(), k.dom(), sol->map, sol->unique);
  }
  const auto& x = alpha.dom().fin().group;
  const auto& kd = k.dom().fin().group;
  std::vector<Elem> gens = generators(x);
  std::vector<std::vector<Elem>> cand;
  for (Elem g : gens) {
    cand.emplace_back();
    for (Elem y = 0; y < kd.order(); ++y)
      if (k.fin().apply(y) == alpha.fin().apply(g)) cand.back().push_back(y);
  }
  return finite_search(alpha.dom(), k.dom(), cand, gens, [&](const FinMorphism& phi) {
    for (Elem z = 0; z < x.order(); ++z)
      if (k.fin().apply(phi.apply(z)) != alpha.fin().apply(z)) return false;
    return true;
  });
}

Factorization factor_from(const PreOrdMor& q, const PreOrdMor& beta) {
  require_same(q.dom(), beta.dom(), "factor_from: domains differ");
  if (q.universe() == Universe::abelian) {
    auto sol = factor_from(q.ab(), beta.ab());
    if (!sol) {
      Factorization out;
      out.witness = "no group homomorphism solves the equation";
      return out;
    }
    return finish(q.cod(), beta.cod(), sol->map, sol->unique);
  }
  const auto& src = q.dom().fin().group;
  const auto& qc = q.cod().fin().group;
  std::vector<Elem> gens = generators(qc);
  std::vector<std::vector<Elem>> cand;
  for (Elem c : gens) {
    ElemSet vals;
    for (Elem x = 0; x < src.order(); ++x)
      if (q.fin().apply(x) == c) vals.push_back(beta.fin().apply(x));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.empty())  // outside the image of q: unconstrained
      for (Elem y = 0; y < beta.cod().fin().group.order(); ++y) vals.push_back(y);
    cand.push_back(vals);
  }
  return finite_search(q.cod(), beta.cod(), cand, gens, [&](const FinMorphism& psi) {
    for (Elem x = 0; x < src.order(); ++x)
      if (psi.apply(q.fin().apply(x)) != beta.fin().apply(x)) return false;
    return true;
  });
}

// ---------------------------------------------------------------------------

std::string describe(const PreOrdObj& x) {
  if (x.is_abelian())
    return "(" + describe(x.ab().group) + ", cone " + list_to_string(x.ab().cone) + ")";
  return "(order " + std::to_string(x.fin().group.order()) + " group, cone " +
         list_to_string(x.fin().cone) + ")";
}

std::string describe(const PreOrdMor& m) {
  std::ostringstream os;
  os << describe(m.dom()) << " -> " << describe(m.cod()) << " via ";
  if (m.universe() == Universe::abelian) {
    os << to_string(m.ab().matrix());
  } else {
    os << "[";
    for (std::size_t i = 0; i < m.fin().map().size(); ++i) os << (i ? " " : "") << m.fin().map()[i];
    os << "]";
  }
  return os.str();
}

}  // namespace preord

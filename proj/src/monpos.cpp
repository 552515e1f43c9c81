#include "preord/monpos.hpp"

#include <algorithm>

namespace preord {

namespace {

std::vector<IntVec> images(const AbMorphism& f, const std::vector<IntVec>& xs) {
  std::vector<IntVec> out;
  for (const auto& x : xs) out.push_back(f.apply(x));
  return out;
}

void push_unique(std::vector<IntVec>& v, const IntVec& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

std::vector<Elem> all_elements(const FiniteGroup& g) {
  std::vector<Elem> out(g.order());
  for (Elem i = 0; i < g.order(); ++i) out[i] = i;
  return out;
}

std::variant<AbMorphism, FinMorphism> underlying(const PreOrdMor& m) {
  if (m.universe() == Universe::abelian) return m.ab();
  return m.fin();
}

MonFactorization wrap(const Factorization& f, const ConeMonoid& dom, const ConeMonoid& cod) {
  MonFactorization out;
  out.unique = f.unique;
  out.witness = f.witness;
  if (f.map) out.map = MonMorphism(dom, cod, *f.map);
  return out;
}

// Both legs of (H, P) -> (G, P) -> (G/H, 0) and their images under P.
SpecialSes check_special(const PreOrdMor& incl, const PreOrdMor& q) {
  SpecialSes out{incl, q};
  auto ker = factor_through(kernel(q).mor, incl);
  auto cok = factor_from(cokernel(incl).mor, q);
  out.source_exact = is_z_trivial(q.cod()) && ker.map && ker.unique && is_isomorphism(*ker.map) &&
                     cok.map && cok.unique && is_isomorphism(*cok.map);
  MonMorphism pi = positive_cone_mor(incl);
  MonMorphism pq = positive_cone_mor(q);
  const ConeMonoid& right = pq.cod();
  out.image_exact = mon_inverse(pi).has_value() && is_reduced(right) && is_group(right) &&
                    same_submonoid(mon_kernel(pq), pq.dom()) &&
                    mon_is_zero(mon_compose(pi, pq));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConeMonoid

ConeMonoid ConeMonoid::abelian(FgAbGroup ambient, std::vector<IntVec> gens) {
  for (const auto& g : gens)
    if (g.size() != ambient.rank()) throw DimensionError("monoid generator length mismatch");
  ConeMonoid m;
  m.universe_ = Universe::abelian;
  m.data_ = AbelianCone{std::move(ambient), std::move(gens)};
  return m;
}

ConeMonoid ConeMonoid::finite(FiniteGroup ambient, std::span<const Elem> gens) {
  for (Elem x : gens)
    if (x >= ambient.order()) throw ValidationError("monoid element out of range", std::to_string(x));
  ConeMonoid m;
  m.universe_ = Universe::finite;
  ElemSet members = submonoid_closure(ambient, gens);
  m.data_ = FiniteCone{std::move(ambient), std::move(members)};
  return m;
}

const FgAbGroup& ConeMonoid::ab_ambient() const { return std::get<AbelianCone>(data_).group; }
const std::vector<IntVec>& ConeMonoid::ab_gens() const { return std::get<AbelianCone>(data_).cone; }
const FiniteGroup& ConeMonoid::fin_ambient() const { return std::get<FiniteCone>(data_).group; }
const ElemSet& ConeMonoid::members() const { return std::get<FiniteCone>(data_).cone; }

bool ConeMonoid::contains(const IntVec& x) const {
  return nonneg_feasible(ab_gens(), ab_ambient().quotient(), x).has_value();
}

bool ConeMonoid::contains(Elem x) const { return preord::contains(members(), x); }

const Completion& ConeMonoid::completion() const {
  std::call_once(cache_->once, [this] {
    if (universe_ == Universe::abelian) {
      auto s = subgroup_generated(ab_ambient(), ab_gens());
      std::vector<IntVec> cone;
      for (const auto& g : ab_gens()) cone.push_back(*preimage(s.incl, g));
      cache_->value = Completion{PreOrdObj::abelian(s.group, std::move(cone)), s.incl};
    } else {
      auto sub = subgroup(fin_ambient(), members());
      auto all = all_elements(sub.group);
      cache_->value = Completion{PreOrdObj::finite(sub.group, all), sub.incl};
    }
  });
  return *cache_->value;
}

bool same_submonoid(const ConeMonoid& a, const ConeMonoid& b) {
  if (a.universe() != b.universe()) return false;
  if (a.universe() == Universe::finite)
    return a.fin_ambient() == b.fin_ambient() && a.members() == b.members();
  if (!(a.ab_ambient() == b.ab_ambient())) return false;
  for (const auto& g : a.ab_gens())
    if (!b.contains(g)) return false;
  for (const auto& g : b.ab_gens())
    if (!a.contains(g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// morphisms

MonMorphism::MonMorphism(ConeMonoid dom, ConeMonoid cod, PreOrdMor ext)
    : dom_(std::move(dom)), cod_(std::move(cod)), ext_(std::move(ext)) {
  if (!(ext_.dom() == dom_.completion().object) || !(ext_.cod() == cod_.completion().object))
    throw ObjectMismatch("monoid morphism does not match the group completions");
}

MonMorphism mon_from_completion_map(const ConeMonoid& dom, const ConeMonoid& cod,
                                    const std::variant<AbMorphism, FinMorphism>& g) {
  const Completion& cd = dom.completion();
  const Completion& cc = cod.completion();
  if (dom.universe() == Universe::abelian) {
    const auto& emb = std::get<AbMorphism>(cc.embedding);
    auto sol = factor_through(emb, std::get<AbMorphism>(g));
    if (!sol) throw ValidationError("map leaves the group completion of the codomain", "");
    return MonMorphism(dom, cod, PreOrdMor(cd.object, cc.object, sol->map));
  }
  const auto& gf = std::get<FinMorphism>(g);
  const ElemSet& mem = cod.members();
  std::vector<Elem> map;
  for (Elem x = 0; x < gf.dom().order(); ++x) {
    Elem y = gf.apply(x);
    auto it = std::lower_bound(mem.begin(), mem.end(), y);
    if (it == mem.end() || *it != y)
      throw ValidationError("map leaves the codomain monoid",
                            std::to_string(x) + " maps to " + std::to_string(y));
    map.push_back(static_cast<Elem>(it - mem.begin()));
  }
  return MonMorphism(dom, cod,
                     PreOrdMor(cd.object, cc.object,
                               FinMorphism(cd.object.fin().group, cc.object.fin().group, map)));
}

MonMorphism mon_from_ambient_map(const ConeMonoid& dom, const ConeMonoid& cod,
                                 const std::variant<AbMorphism, FinMorphism>& f) {
  const Completion& cd = dom.completion();
  if (dom.universe() == Universe::abelian)
    return mon_from_completion_map(
        dom, cod, compose(std::get<AbMorphism>(cd.embedding), std::get<AbMorphism>(f)));
  return mon_from_completion_map(
      dom, cod, compose(std::get<FinMorphism>(cd.embedding), std::get<FinMorphism>(f)));
}

MonMorphism mon_identity(const ConeMonoid& m) {
  return MonMorphism(m, m, identity(m.completion().object));
}

MonMorphism mon_zero(const ConeMonoid& dom, const ConeMonoid& cod) {
  return MonMorphism(dom, cod, zero_morphism(dom.completion().object, cod.completion().object));
}

MonMorphism mon_compose(const MonMorphism& first, const MonMorphism& second) {
  return MonMorphism(first.dom(), second.cod(), compose(first.ext(), second.ext()));
}

bool mon_eq(const MonMorphism& f, const MonMorphism& g) { return morphism_eq(f.ext(), g.ext()); }

bool mon_is_zero(const MonMorphism& f) {
  if (f.ext().universe() == Universe::abelian) return f.ext().ab().is_zero();
  return f.ext().fin().is_trivial();
}

std::optional<MonMorphism> mon_inverse(const MonMorphism& f) {
  if (!is_isomorphism(f.ext())) return std::nullopt;
  const PreOrdObj& a = f.ext().dom();
  const PreOrdObj& b = f.ext().cod();
  std::optional<PreOrdMor> inv;
  try {
    if (f.ext().universe() == Universe::abelian) {
      auto sol = factor_through(f.ext().ab(), AbMorphism::identity(b.ab().group));
      if (!sol) return std::nullopt;
      inv = PreOrdMor(b, a, sol->map);
    } else {
      std::vector<Elem> map(b.fin().group.order());
      for (Elem x = 0; x < a.fin().group.order(); ++x) map[f.ext().fin().apply(x)] = x;
      inv = PreOrdMor(b, a, FinMorphism(b.fin().group, a.fin().group, map));
    }
  } catch (const ValidationError&) {
    return std::nullopt;
  }
  MonMorphism g(f.cod(), f.dom(), *inv);
  if (!mon_eq(mon_compose(f, g), mon_identity(f.dom())) ||
      !mon_eq(mon_compose(g, f), mon_identity(f.cod())))
    return std::nullopt;
  return g;
}

MonFactorization mon_factor_through(const MonMorphism& k, const MonMorphism& alpha) {
  return wrap(factor_through(k.ext(), alpha.ext()), alpha.dom(), k.dom());
}

MonFactorization mon_factor_from(const MonMorphism& q, const MonMorphism& beta) {
  return wrap(factor_from(q.ext(), beta.ext()), q.cod(), beta.cod());
}

ConeMonoid mon_kernel(const MonMorphism& f) {
  const ConeMonoid& m = f.dom();
  const Completion& c = m.completion();
  if (m.universe() == Universe::abelian) {
    auto zk = z_kernel(f.ext());
    return ConeMonoid::abelian(m.ab_ambient(),
                               images(std::get<AbMorphism>(c.embedding), zk.obj.ab().cone));
  }
  const auto& emb = std::get<FinMorphism>(c.embedding);
  std::vector<Elem> ker;
  for (Elem x = 0; x < emb.dom().order(); ++x)
    if (f.ext().fin().apply(x) == 0) ker.push_back(emb.apply(x));
  return ConeMonoid::finite(m.fin_ambient(), ker);
}

// ---------------------------------------------------------------------------
// positive cone functor and completion

ConeMonoid positive_cone(const PreOrdObj& x) {
  if (x.is_abelian()) return ConeMonoid::abelian(x.ab().group, x.ab().cone);
  return ConeMonoid::finite(x.fin().group, x.fin().cone);
}

MonMorphism positive_cone_mor(const PreOrdMor& m) {
  return mon_from_ambient_map(positive_cone(m.dom()), positive_cone(m.cod()), underlying(m));
}

const Completion& group_completion(const ConeMonoid& m) { return m.completion(); }

OreResult ore_check(const ConeMonoid& m) {
  OreResult out;
  if (m.universe() == Universe::abelian) {
    for (const auto& a : m.ab_gens())
      for (const auto& b : m.ab_gens())
        out.witnesses.push_back({to_string(a), to_string(b), to_string(a), to_string(a)});
    return out;
  }
  const auto& g = m.fin_ambient();
  for (Elem a : m.members())
    for (Elem b : m.members()) {
      Elem x = g.mul(g.mul(g.inv(b), a), b);
      Elem y = g.mul(g.mul(a, b), g.inv(a));
      Elem ab = g.mul(a, b);
      OreWitness w{std::to_string(a), std::to_string(b), std::to_string(x), std::to_string(y)};
      if (ab != g.mul(b, x) || ab != g.mul(y, a) || !m.contains(x) || !m.contains(y)) {
        out.ok = false;
        out.witnesses = {w};
        return out;
      }
      out.witnesses.push_back(w);
    }
  return out;
}

// ---------------------------------------------------------------------------
// units and the reduced quotient

Units units(const ConeMonoid& m) {
  if (m.universe() == Universe::finite) {
    ConeMonoid u = ConeMonoid::finite(m.fin_ambient(), m.members());
    return {u, mon_from_ambient_map(u, m, FinMorphism::identity(m.fin_ambient()))};
  }
  const auto& gens = m.ab_gens();
  std::vector<bool> support(gens.size(), false);
  for (const auto& c : nonneg_zero_combinations(gens, m.ab_ambient().quotient()))
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (c[i] != 0) support[i] = true;
  std::vector<IntVec> u;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (support[i]) {
      push_unique(u, gens[i]);
      push_unique(u, -gens[i]);
    }
  ConeMonoid ug = ConeMonoid::abelian(m.ab_ambient(), std::move(u));
  return {ug, mon_from_ambient_map(ug, m, AbMorphism::identity(m.ab_ambient()))};
}

bool is_reduced(const ConeMonoid& m) {
  if (m.universe() == Universe::finite) return m.members().size() == 1;
  Units u = units(m);
  return std::all_of(u.group.ab_gens().begin(), u.group.ab_gens().end(),
                     [&](const IntVec& x) { return m.ab_ambient().is_zero(x); });
}

bool is_group(const ConeMonoid& m) {
  if (m.universe() == Universe::finite) return true;
  return std::all_of(m.ab_gens().begin(), m.ab_gens().end(),
                     [&](const IntVec& g) { return m.contains(-g); });
}

ReducedQuotient quotient_by_units(const ConeMonoid& m) {
  const Completion& c = m.completion();
  if (m.universe() == Universe::finite) {
    const auto& grp = c.object.fin().group;
    auto q = quotient(grp, c.object.fin().cone);
    ConeMonoid n = ConeMonoid::finite(q.group, std::vector<Elem>{});
    return {n, mon_from_completion_map(m, n, q.proj)};
  }
  const auto& emb = std::get<AbMorphism>(c.embedding);
  const FgAbGroup& s = c.object.ab().group;
  std::vector<IntVec> u_s;
  Units um = units(m);
  for (const auto& u : um.group.ab_gens()) u_s.push_back(*preimage(emb, u));
  auto sub = subgroup_generated(s, u_s);
  auto q = quotient_by_subgroup(s, sub.incl);
  ConeMonoid n = ConeMonoid::abelian(q.group, images(q.proj, c.object.ab().cone));
  return {n, mon_from_completion_map(m, n, q.proj)};
}

TorsionSes torsion_ses(const ConeMonoid& m) {
  Units u = units(m);
  ReducedQuotient r = quotient_by_units(m);
  TorsionSes out{u.kappa, r.eta};
  out.left_is_group = is_group(u.group);
  out.right_is_reduced = is_reduced(r.quotient);
  out.kernel_matches = same_submonoid(mon_kernel(r.eta), u.group);
  out.composite_zero = mon_is_zero(mon_compose(u.kappa, r.eta));
  return out;
}

bool hom_group_to_reduced_is_zero(const MonMorphism& f) { return mon_is_zero(f); }

// ---------------------------------------------------------------------------
// stable-category instances

StableComparison comparison_morphism(const PreOrdObj& x) {
  ConeMonoid m = positive_cone(x);
  const Completion& c = m.completion();
  PreOrdMor alpha = x.is_abelian() ? PreOrdMor(c.object, x, std::get<AbMorphism>(c.embedding))
                                   : PreOrdMor(c.object, x, std::get<FinMorphism>(c.embedding));
  ObjectArrow ck = cokernel(alpha);
  StableComparison out{alpha, ck.mor};
  out.mono = classify_morphism(alpha).mono;
  out.normal = x.is_abelian() || is_normal(x.fin().group, std::get<FinMorphism>(c.embedding).image());
  auto ker = factor_through(kernel(ck.mor).mor, alpha);
  out.short_exact = is_z_trivial(ck.obj) && is_z_trivial(compose(alpha, ck.mor)) && ker.map &&
                    ker.unique && is_isomorphism(*ker.map);
  return out;
}

FhatConsistency fhat_consistency(const ConeMonoid& m) {
  const Completion& c = m.completion();
  ConeMonoid pm = positive_cone(c.object);
  MonMorphism fwd = mon_from_ambient_map(pm, m, c.embedding);
  FhatConsistency out{fwd, mon_inverse(fwd)};
  out.iso = out.inverse.has_value();
  return out;
}

SpecialSes special_ses_preservation(const PreOrdObj& x, const std::vector<IntVec>& h) {
  const auto& g = x.ab().group;
  auto s = subgroup_generated(g, h);
  std::vector<IntVec> cone;
  for (const auto& p : x.ab().cone) {
    auto y = preimage(s.incl, p);
    if (!y) throw ValidationError("subgroup does not contain the cone", to_string(p));
    cone.push_back(*y);
  }
  PreOrdMor incl(PreOrdObj::abelian(s.group, std::move(cone)), x, s.incl);
  auto q = quotient_by_subgroup(g, s.incl);
  PreOrdMor qm(x, PreOrdObj::abelian(q.group, images(q.proj, x.ab().cone)), q.proj);
  return check_special(incl, qm);
}

SpecialSes special_ses_preservation(const PreOrdObj& x, const ElemSet& h) {
  const auto& g = x.fin().group;
  ElemSet closure = submonoid_closure(g, h);
  if (!is_normal(g, closure)) throw NotNormal("subgroup is not normal");
  std::vector<Elem> cone;
  for (Elem p : x.fin().cone) {
    auto it = std::lower_bound(closure.begin(), closure.end(), p);
    if (it == closure.end() || *it != p)
      throw ValidationError("subgroup does not contain the cone", std::to_string(p));
    cone.push_back(static_cast<Elem>(it - closure.begin()));
  }
  auto sub = subgroup(g, closure);
  PreOrdMor incl(PreOrdObj::finite(sub.group, cone), x, sub.incl);
  auto q = quotient(g, closure);
  ElemSet qcone;
  for (Elem p : x.fin().cone) qcone.push_back(q.proj.apply(p));
  PreOrdMor qm(x, PreOrdObj::finite(q.group, qcone), q.proj);
  return check_special(incl, qm);
}

CanonicalImage canonical_sequence_image(const PreOrdObj& x) {
  ConeMonoid m = positive_cone(x);
  ObjectKind kind = classify_object(x);
  CanonicalImage out;
  out.torsion_matches = kind.torsion == is_group(m);
  out.torsion_free_matches = kind.torsion_free == is_reduced(m);
  out.units_match = same_submonoid(units(m).group, positive_cone(symmetric_part(x)));
  ZExactSeq seq = canonical_sequence(x);
  ReducedQuotient r = quotient_by_units(m);
  auto psi = mon_factor_from(r.eta, positive_cone_mor(seq.right));
  if (psi.map && psi.unique && mon_inverse(*psi.map)) out.quotient_iso = psi.map;
  return out;
}

std::string describe(const ConeMonoid& m) {
  if (m.universe() == Universe::abelian)
    return describe(PreOrdObj::abelian(m.ab_ambient(), m.ab_gens()));
  std::string s = "(order " + std::to_string(m.fin_ambient().order()) + " group, monoid {";
  for (std::size_t i = 0; i < m.members().size(); ++i)
    s += (i ? ", " : "") + std::to_string(m.members()[i]);
  return s + "})";
}

}  // namespace preord

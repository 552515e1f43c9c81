#include "doctest.h"
#include "oracles.hpp"

#include "preord/monpos.hpp"

#include <random>
#include <thread>

using namespace preord;
using namespace preord::testing;

namespace {

FgAbGroup Zg() { return FgAbGroup::free(1); }
ConeMonoid Zm(std::initializer_list<long> gens) {
  std::vector<IntVec> c;
  for (long g : gens) c.push_back(make_vec({g}));
  return ConeMonoid::abelian(Zg(), c);
}
PreOrdObj Zc(std::initializer_list<long> gens) {
  std::vector<IntVec> c;
  for (long g : gens) c.push_back(make_vec({g}));
  return make_object(Zg(), c);
}
PreOrdObj fin(const FiniteGroup& g, std::vector<Elem> cone) { return make_object(g, cone); }

const ElemSet kA3{0, 4, 5};

PreOrdObj half_plane() {
  return make_object(FgAbGroup::free(2),
                     {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1})});
}

std::vector<PreOrdObj> probes() {
  auto z2 = FgAbGroup::free(2);
  auto s3 = FiniteGroup::symmetric3();
  auto z4 = FiniteGroup::cyclic(4);
  return {Zc({}),
          Zc({1}),
          Zc({2}),
          Zc({1, -1}),
          Zc({2, 3, -5}),
          make_object(FgAbGroup::cyclic(2), {}),
          make_object(FgAbGroup::cyclic(2), {make_vec({1})}),
          make_object(FgAbGroup::cyclic(4), {make_vec({2})}),
          half_plane(),
          make_object(z2, {make_vec({1, 0}), make_vec({0, 1})}),
          make_object(z2, {make_vec({2, 0}), make_vec({0, 3})}),
          make_object(z2, {make_vec({1, 1}), make_vec({-1, -1}), make_vec({1, 0})}),
          fin(FiniteGroup::cyclic(2), {}),
          fin(FiniteGroup::cyclic(2), {1}),
          fin(z4, {2}),
          fin(s3, {}),
          fin(s3, {4}),
          fin(s3, {1, 4}),
          fin(FiniteGroup::dihedral(4), {2})};
}

IntVec v1(long a) { return make_vec({a}); }

}  // namespace

TEST_CASE("positive_cone examples") {
  auto n = positive_cone(Zc({1}));
  CHECK(n.contains(v1(5)));
  CHECK_FALSE(n.contains(v1(-1)));

  auto zero = positive_cone(Zc({}));
  CHECK(is_reduced(zero));
  CHECK(is_group(zero));

  // A Z-trivial morphism becomes the zero monoid map.
  auto f = make_morphism(Zc({}), Zc({1}), IntMatrix{{3}});
  REQUIRE(is_z_trivial(f));
  CHECK(mon_is_zero(positive_cone_mor(f)));
}

TEST_CASE("positive_cone_mor preserves identities and composition") {
  std::mt19937_64 rng(11);
  auto objs = probes();
  for (const auto& x : objs)
    CHECK(mon_eq(positive_cone_mor(identity(x)), mon_identity(positive_cone(x))));
  int composed = 0;
  for (int t = 0; t < 300; ++t) {
    std::uniform_int_distribution<std::size_t> pick(0, 11);
    const auto& a = objs[pick(rng)];
    const auto& b = objs[pick(rng)];
    const auto& c = objs[pick(rng)];
    try {
      auto f = make_morphism(a, b, random_matrix(rng, a.ab().group.rank(), b.ab().group.rank(), -2, 2));
      auto g = make_morphism(b, c, random_matrix(rng, b.ab().group.rank(), c.ab().group.rank(), -2, 2));
      auto lhs = positive_cone_mor(compose(f, g));
      auto rhs = mon_compose(positive_cone_mor(f), positive_cone_mor(g));
      CHECK(mon_eq(lhs, rhs));
      ++composed;
    } catch (const ValidationError&) {
    } catch (const IllDefinedMorphism&) {
    }
  }
  CHECK(composed > 20);
}

TEST_CASE("group_completion examples") {
  auto nm = Zm({1});
  const auto& n = group_completion(nm);
  CHECK(n.object.ab().group.invariants() == Zg().invariants());

  auto m2 = Zm({2});
  const auto& c2 = group_completion(m2);
  const auto& emb = std::get<AbMorphism>(c2.embedding);
  CHECK(c2.object.ab().group.rank() - c2.object.ab().group.relations().rows() <= 1);
  CHECK(is_injective(emb));
  // Image of the embedding is 2Z.
  CHECK(preimage(emb, v1(2)).has_value());
  CHECK_FALSE(preimage(emb, v1(1)).has_value());

  auto m23 = ConeMonoid::abelian(FgAbGroup::free(2), {make_vec({2, 0}), make_vec({0, 3})});
  const auto& c23 = group_completion(m23);
  const auto& e23 = std::get<AbMorphism>(c23.embedding);
  CHECK(is_injective(e23));
  CHECK(c23.object.ab().group.invariants() == FgAbGroup::free(2).invariants());
  CHECK(preimage(e23, make_vec({2, 3})).has_value());
  CHECK_FALSE(preimage(e23, make_vec({1, 0})).has_value());
  CHECK_FALSE(preimage(e23, make_vec({0, 1})).has_value());
}

TEST_CASE("completion is computed once and shared across copies and threads") {
  auto m = ConeMonoid::abelian(FgAbGroup::free(2), {make_vec({2, 0}), make_vec({0, 3})});
  auto copy = m;
  std::vector<const Completion*> seen(8);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&, i] { seen[i] = &(i % 2 ? copy : m).completion(); });
  for (auto& t : ts) t.join();
  for (auto* p : seen) CHECK(p == seen[0]);
}

TEST_CASE("ore_check examples") {
  auto m = Zm({2, 3});
  auto r = ore_check(m);
  CHECK(r.ok);
  for (const auto& w : r.witnesses) {
    CHECK(w.x == w.a);
    CHECK(w.y == w.a);
  }
  auto a3 = ConeMonoid::finite(FiniteGroup::symmetric3(), kA3);
  auto ra3 = ore_check(a3);
  CHECK(ra3.ok);
  CHECK(ra3.witnesses.size() == 9);
}

TEST_CASE("ore_check passes on every conjugation-closed finite cone") {
  // Every normal subgroup of S4 (orders 1, 4, 12, 24) and of D4.
  auto s4 = FiniteGroup::symmetric4();
  auto d4 = FiniteGroup::dihedral(4);
  for (const auto* g : {&s4, &d4})
    for (Elem a = 0; a < g->order(); ++a) {
      ElemSet n = normal_closure(*g, std::vector<Elem>{a});
      auto m = ConeMonoid::finite(*g, n);
      auto r = ore_check(m);
      REQUIRE(r.ok);
      CHECK(r.witnesses.size() == n.size() * n.size());
      // Witnesses follow x = b^-1 a b and y = a b a^-1.
      for (const auto& w : r.witnesses) {
        Elem wa = std::stoul(w.a), wb = std::stoul(w.b);
        CHECK(std::stoul(w.x) == g->mul(g->mul(g->inv(wb), wa), wb));
        CHECK(std::stoul(w.y) == g->mul(g->mul(wa, wb), g->inv(wa)));
      }
    }
}

TEST_CASE("units examples") {
  auto n = units(Zm({1}));
  CHECK(is_reduced(Zm({1})));
  for (const auto& u : n.group.ab_gens()) CHECK(is_zero(u));

  auto z = units(Zm({1, -1}));
  CHECK(z.group.contains(v1(1)));
  CHECK(z.group.contains(v1(-1)));

  // <2, 3, -5>: brute-force membership of +-x for |x| <= 5 shows every integer is a unit.
  auto m = Zm({2, 3, -5});
  auto u = units(m);
  auto exact = [](const IntVec& r) { return is_zero(r); };
  for (long x = -5; x <= 5; ++x) {
    bool plus = brute_nonneg_member(m.ab_gens(), v1(x), 10, exact);
    bool minus = brute_nonneg_member(m.ab_gens(), v1(-x), 10, exact);
    CHECK((plus && minus));
    CHECK(u.group.contains(v1(x)));
  }
}

TEST_CASE("units agree with brute-force two-sided membership") {
  // Sample small cones in Z^2 and compare units against brute force on a box.
  std::mt19937_64 rng(5);
  auto exact = [](const IntVec& r) { return is_zero(r); };
  for (int t = 0; t < 25; ++t) {
    auto gm = random_matrix(rng, 3, 2, -2, 2);
    auto m = ConeMonoid::abelian(FgAbGroup::free(2), gm.row_list());
    auto u = units(m);
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b) {
        IntVec x = make_vec({a, b});
        bool brute = brute_nonneg_member(m.ab_gens(), x, 8, exact) &&
                     brute_nonneg_member(m.ab_gens(), -x, 8, exact);
        bool fast = u.group.contains(x);
        // The brute search is bounded, so a hit is conclusive and a miss is rechecked exactly.
        if (brute) CHECK(fast);
        if (fast) CHECK((m.contains(x) && m.contains(-x)));
        if (!fast) CHECK_FALSE((m.contains(x) && m.contains(-x)));
      }
  }
}

TEST_CASE("units are groups and quotients are reduced") {
  for (const auto& x : probes()) {
    auto m = positive_cone(x);
    auto u = units(m);
    CHECK(is_group(u.group));
    if (m.universe() == Universe::abelian)
      for (const auto& g : u.group.ab_gens()) CHECK(m.contains(-g));
    auto r = quotient_by_units(m);
    CHECK(is_reduced(r.quotient));
    CHECK(is_reduced(units(r.quotient).group) == is_group(units(r.quotient).group));
  }
}

TEST_CASE("quotient_by_units examples") {
  auto n = Zm({1});
  auto rn = quotient_by_units(n);
  CHECK(rn.quotient.ab_ambient().invariants() == Zg().invariants());
  REQUIRE(mon_inverse(rn.eta).has_value());

  auto rz = quotient_by_units(Zm({1, -1}));
  CHECK(rz.quotient.ab_ambient().is_trivial());
  CHECK(is_group(rz.quotient));

  auto hp = positive_cone(half_plane());
  auto rh = quotient_by_units(hp);
  CHECK(rh.quotient.ab_ambient().invariants() == Zg().invariants());
  CHECK(is_reduced(rh.quotient));
  CHECK_FALSE(is_group(rh.quotient));
  // Isomorphic to N inside Z: some map to (Z, N) is invertible.
  auto target = Zm({1});
  bool found = false;
  const auto& qa = rh.quotient.ab_ambient();
  for_each_box_point(qa.rank(), 2, [&](const IntVec& p) {
    IntMatrix mat(qa.rank(), 1);
    for (std::size_t i = 0; i < qa.rank(); ++i) mat(i, 0) = p[i] - 1;
    try {
      auto f = mon_from_ambient_map(rh.quotient, target, AbMorphism(qa, Zg(), mat));
      if (mon_inverse(f)) found = true;
    } catch (const std::invalid_argument&) {
    }
  });
  CHECK(found);
}

TEST_CASE("is_reduced and is_group examples") {
  CHECK(is_reduced(Zm({1})));
  CHECK_FALSE(is_group(Zm({1})));
  CHECK(is_group(Zm({1, -1})));
  CHECK_FALSE(is_reduced(Zm({1, -1})));
  CHECK(is_group(Zm({})));
  CHECK(is_reduced(Zm({})));
  auto a3 = ConeMonoid::finite(FiniteGroup::symmetric3(), kA3);
  CHECK(is_group(a3));
  CHECK_FALSE(is_reduced(a3));
}

TEST_CASE("torsion_ses legs on probes") {
  for (const auto& x : probes()) {
    auto t = torsion_ses(positive_cone(x));
    CHECK(t.left_is_group);
    CHECK(t.right_is_reduced);
    CHECK(t.kernel_matches);
    CHECK(t.composite_zero);
  }
}

TEST_CASE("group objects map to reduced objects only by zero") {
  auto z = Zm({1, -1});
  auto n = Zm({1});
  // The only cone-compatible map Z -> Z sending +-1 into N is zero.
  for (long s = -3; s <= 3; ++s) {
    bool ok = true;
    try {
      auto f = mon_from_ambient_map(z, n, AbMorphism(Zg(), Zg(), IntMatrix{{s}}));
      CHECK(hom_group_to_reduced_is_zero(f));
    } catch (const ValidationError&) {
      ok = false;
    }
    CHECK(ok == (s == 0));
  }
  CHECK(hom_group_to_reduced_is_zero(mon_zero(z, n)));

  // Every hom from a finite group object into a reduced finite monoid that
  // respects the monoids is zero.
  auto s3 = FiniteGroup::symmetric3();
  auto z2 = FiniteGroup::cyclic(2);
  for (const auto& gm : {ConeMonoid::finite(s3, std::vector<Elem>{1, 4}),
                         ConeMonoid::finite(s3, kA3), ConeMonoid::finite(z2, std::vector<Elem>{1})}) {
    REQUIRE(is_group(gm));
    for (const auto& cod : {z2, s3}) {
      auto red = ConeMonoid::finite(cod, std::vector<Elem>{});
      REQUIRE(is_reduced(red));
      const auto& amb = gm.fin_ambient();
      auto gens = generators(amb);
      std::vector<std::vector<Elem>> cands(gens.size());
      for (auto& c : cands)
        for (Elem e = 0; e < cod.order(); ++e) c.push_back(e);
      auto homs = enumerate_homs(amb, cod, gens, cands, [](const FinMorphism&) { return true; },
                                 1000);
      int built = 0;
      for (const auto& h : homs) {
        try {
          auto f = mon_from_ambient_map(gm, red, h);
          CHECK(hom_group_to_reduced_is_zero(f));
          ++built;
        } catch (const ValidationError&) {
        }
      }
      CHECK(built >= 1);
    }
  }
}

TEST_CASE("units of the positive cone equal the symmetric part") {
  for (const auto& x : probes()) {
    auto c = canonical_sequence_image(x);
    CHECK(c.units_match);
    CHECK(c.torsion_matches);
    CHECK(c.torsion_free_matches);
    CHECK(c.quotient_iso.has_value());
  }
}

TEST_CASE("comparison_morphism examples") {
  auto n = comparison_morphism(Zc({1}));
  CHECK(n.mono);
  CHECK(is_isomorphism(n.alpha));
  CHECK(n.short_exact);

  auto two = comparison_morphism(Zc({2}));
  CHECK(two.mono);
  CHECK_FALSE(is_isomorphism(two.alpha));
  CHECK(two.q.cod().ab().group.invariants() == FgAbGroup::cyclic(2).invariants());
  CHECK(is_z_trivial(two.q.cod()));
  CHECK(two.short_exact);

  auto a3 = comparison_morphism(fin(FiniteGroup::symmetric3(), {4}));
  CHECK(a3.mono);
  CHECK(a3.normal);
  CHECK(a3.alpha.fin().image() == kA3);
  CHECK(a3.q.cod().fin().group.order() == 2);
  CHECK(a3.q.cod().fin().cone == ElemSet{0});
  CHECK(a3.short_exact);
}

TEST_CASE("comparison morphisms are normal monos with short exact quotients on probes") {
  for (const auto& x : probes()) {
    auto c = comparison_morphism(x);
    CHECK(c.mono);
    CHECK(c.normal);
    CHECK(c.short_exact);
  }
}

TEST_CASE("fhat_consistency examples and probes") {
  CHECK(fhat_consistency(Zm({1})).iso);
  auto two = fhat_consistency(Zm({2}));
  CHECK(two.iso);
  CHECK(is_isomorphism(two.forward.ext()));
  CHECK(fhat_consistency(ConeMonoid::finite(FiniteGroup::symmetric3(), kA3)).iso);
  for (const auto& x : probes()) CHECK(fhat_consistency(positive_cone(x)).iso);
}

TEST_CASE("special_ses_preservation examples") {
  auto two = special_ses_preservation(Zc({2}), std::vector<IntVec>{v1(2)});
  CHECK(two.source_exact);
  CHECK(two.image_exact);

  auto deg = special_ses_preservation(Zc({}), std::vector<IntVec>{});
  CHECK(deg.source_exact);
  CHECK(deg.image_exact);

  auto a3 = special_ses_preservation(fin(FiniteGroup::symmetric3(), {4}), kA3);
  CHECK(a3.source_exact);
  CHECK(a3.image_exact);

  CHECK_THROWS_AS(special_ses_preservation(Zc({1}), std::vector<IntVec>{v1(2)}), ValidationError);
  CHECK_THROWS_AS(special_ses_preservation(fin(FiniteGroup::symmetric3(), {}), ElemSet{0, 1}),
                  NotNormal);
  CHECK_THROWS_AS(special_ses_preservation(fin(FiniteGroup::symmetric3(), {4}), ElemSet{0}),
                  ValidationError);
}

TEST_CASE("monoid morphism construction rejects maps leaving the codomain") {
  auto n = Zm({1});
  CHECK_THROWS_AS(mon_from_ambient_map(n, n, AbMorphism(Zg(), Zg(), IntMatrix{{-1}})),
                  ValidationError);
  auto two = Zm({2});
  // 1 -> 1 leaves grp(<2>) = 2Z.
  CHECK_THROWS_AS(mon_from_ambient_map(n, two, AbMorphism(Zg(), Zg(), IntMatrix{{1}})),
                  ValidationError);
  auto s3 = FiniteGroup::symmetric3();
  auto a3 = ConeMonoid::finite(s3, kA3);
  auto full = ConeMonoid::finite(s3, std::vector<Elem>{1, 4});
  CHECK_THROWS_AS(mon_from_ambient_map(full, a3, FinMorphism::identity(s3)), ValidationError);
  CHECK_NOTHROW(mon_from_ambient_map(a3, full, FinMorphism::identity(s3)));
}

TEST_CASE("monoid kernels and factorizations") {
  auto hp = positive_cone(half_plane());
  auto r = quotient_by_units(hp);
  auto k = mon_kernel(r.eta);
  CHECK(k.contains(make_vec({1, 0})));
  CHECK(k.contains(make_vec({-1, 0})));
  CHECK_FALSE(k.contains(make_vec({0, 1})));

  auto u = units(hp);
  auto fact = mon_factor_through(u.kappa, u.kappa);
  REQUIRE(fact.map.has_value());
  CHECK(fact.unique);
  CHECK(mon_eq(*fact.map, mon_identity(u.group)));

  auto back = mon_factor_from(r.eta, r.eta);
  REQUIRE(back.map.has_value());
  CHECK(back.unique);
  CHECK(mon_eq(*back.map, mon_identity(r.quotient)));
}

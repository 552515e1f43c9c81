#include "doctest.h"

#include "preord/verify.hpp"

#include <set>

using namespace preord;

namespace {

PreOrdObj Zc(std::initializer_list<long> gens) {
  std::vector<IntVec> c;
  for (long g : gens) c.push_back(make_vec({g}));
  return make_object(FgAbGroup::free(1), c);
}

PreOrdObj zsq_std() {
  return make_object(FgAbGroup::free(2), {make_vec({1, 0}), make_vec({0, 1})});
}

const ProbeSuite& suite() {
  static const ProbeSuite s = default_suite(7, 20);
  return s;
}

}  // namespace

TEST_CASE("splitmix64 matches the reference stream") {
  // Reference outputs of splitmix64 seeded with 0.
  SplitMix64 r(0);
  CHECK(r.next() == 0xe220a8397b1dcdafULL);
  CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(r.next() == 0x06c45d188009454fULL);
}

TEST_CASE("splitmix64 ranges and splits") {
  SplitMix64 r(42);
  std::set<long> seen;
  for (int i = 0; i < 2000; ++i) {
    long v = r.range(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);

  SplitMix64 base(9);
  SplitMix64 a = base.split(1), b = base.split(1), c = base.split(2);
  std::uint64_t xa = a.next(), xb = b.next(), xc = c.next();
  CHECK(xa == xb);
  CHECK(xa != xc);
  // Splitting does not advance the parent.
  SplitMix64 fresh(9);
  CHECK(base.next() == fresh.next());
}

TEST_CASE("probe suites regenerate bit-identically") {
  auto a = default_suite(3, 10);
  auto b = default_suite(3, 10);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK(describe(a.samples[i].mor) == describe(b.samples[i].mor));
  auto c = default_suite(4, 10);
  bool differs = c.samples.size() != a.samples.size();
  for (std::size_t i = 0; !differs && i < a.samples.size(); ++i)
    differs = describe(a.samples[i].mor) != describe(c.samples[i].mor);
  CHECK(differs);
}

TEST_CASE("probe library honours the order cap") {
  auto all = default_probes();
  auto small = default_probes(6);
  CHECK(small.size() < all.size());
  for (const auto& o : small)
    if (!o.obj.is_abelian()) CHECK(o.obj.fin().group.order() <= 6);
}

TEST_CASE("samples are cone-preserving and ordered by pair") {
  const auto& s = suite();
  CHECK(s.samples.size() > 500);
  for (std::size_t i = 1; i < s.samples.size(); ++i) {
    auto prev = std::make_pair(s.samples[i - 1].dom, s.samples[i - 1].cod);
    auto cur = std::make_pair(s.samples[i].dom, s.samples[i].cod);
    CHECK(prev <= cur);
  }
  for (const auto& smp : s.samples) {
    CHECK(smp.mor.dom() == s.objects[smp.dom].obj);
    CHECK(smp.mor.cod() == s.objects[smp.cod].obj);
  }
}

TEST_CASE("random objects stay within their bounds") {
  SplitMix64 r(5);
  for (int i = 0; i < 100; ++i) {
    auto a = random_abelian_object(r, 3);
    CHECK(a.ab().group.rank() <= 3);
    auto f = random_finite_object(r, 24);
    CHECK(f.fin().group.order() <= 24);
    CHECK(is_normal(f.fin().group, f.fin().cone));
  }
}

TEST_CASE("certificate bookkeeping and format") {
  Certificate c("demo");
  c.record(true, [] { return std::string("first"); });
  CHECK(c.pass);
  c.record(false, [] { return std::string("bad"); });
  c.record(true, [] { return std::string("later"); });
  CHECK_FALSE(c.pass);
  CHECK(c.attempted == 3);
  CHECK(c.passed == 2);
  REQUIRE(c.witnesses.size() == 1);
  CHECK(c.witnesses[0] == "counterexample: bad");
  CHECK(format(c) ==
        "claim demo\nstatus fail\nstats attempted 3 passed 2\nwitness counterexample: bad\nend\n");

  Certificate ok("fine");
  ok.record(true, [] { return std::string("x"); });
  CHECK(exit_code({ok}) == 0);
  CHECK(exit_code({ok, c}) == 3);

  Certificate merged("merged");
  merged.absorb(ok);
  merged.absorb(c);
  CHECK_FALSE(merged.pass);
  CHECK(merged.attempted == 4);
  CHECK(merged.witnesses == c.witnesses);
}

TEST_CASE("Z-kernel universal property examples") {
  auto id = identity(Zc({1}));
  CHECK(verify_z_kernel_up(id, suite()).pass);

  auto proj = make_morphism(zsq_std(), Zc({1}), IntMatrix{{1}, {0}});
  auto c = verify_z_kernel_up(proj, suite());
  CHECK(c.pass);
  CHECK(c.attempted > 10);

  // Candidate with (1, 0) added to its cone.
  Builders b = Builders::library();
  b.z_kernel = [](const PreOrdMor& m) {
    auto ref = z_kernel(m);
    auto cone = ref.obj.ab().cone;
    cone.push_back(make_vec({1, 0}));
    auto obj = make_object(m.dom().ab().group, cone);
    return ObjectArrow{obj, PreOrdMor(obj, m.dom(), AbMorphism::identity(obj.ab().group))};
  };
  auto bad = verify_z_kernel_up(proj, suite(), b);
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.witnesses.empty());
  CHECK(bad.witnesses[0].rfind("counterexample: ", 0) == 0);
}

TEST_CASE("Z-cokernel universal property examples") {
  CHECK(verify_z_cokernel_up(identity(Zc({1})), suite()).pass);

  auto s3 = FiniteGroup::symmetric3();
  auto sub = subgroup(s3, ElemSet{0, 4, 5});
  auto a3 = make_object(sub.group, std::vector<Elem>{0, 1, 2});
  auto incl = PreOrdMor(a3, make_object(s3, std::vector<Elem>{4}), sub.incl);
  CHECK(verify_z_cokernel_up(incl, suite()).pass);

  // Quotient that skips the first generator of the subgroup.
  Builders b = Builders::library();
  b.z_cokernel = [](const PreOrdMor& m) {
    std::vector<IntVec> gens;
    for (const auto& g : m.dom().ab().cone) gens.push_back(m.ab().apply(g));
    gens.erase(gens.begin());
    const auto& g = m.cod().ab().group;
    auto s = subgroup_generated(g, gens);
    auto q = quotient_by_subgroup(g, s.incl);
    std::vector<IntVec> cone;
    for (const auto& p : m.cod().ab().cone) cone.push_back(q.proj.apply(p));
    auto obj = make_object(q.group, cone);
    return ObjectArrow{obj, PreOrdMor(m.cod(), obj, q.proj)};
  };
  CHECK_FALSE(verify_z_cokernel_up(identity(zsq_std()), suite(), b).pass);
}

TEST_CASE("pretorsion axioms on the default suite and a mislabelled probe") {
  auto c = verify_pretorsion_axioms(suite());
  CHECK(c.pass);
  CHECK(suite().find(make_object(FgAbGroup::free(2),
                                 {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1})}))
            .has_value());

  Builders b = Builders::library();
  b.classify = [](const PreOrdObj& x) {
    auto k = classify_object(x);
    if (x == Zc({2})) k.torsion = true;
    return k;
  };
  CHECK_FALSE(verify_pretorsion_axioms(suite(), b).pass);
}

TEST_CASE("trivial morphisms agree with factorization through a coneless image") {
  std::vector<PreOrdMor> ms;
  for (const auto& s : suite().samples) ms.push_back(s.mor);
  auto c = verify_trivial_morphisms(ms);
  CHECK(c.pass);
  CHECK(c.attempted == ms.size());
}

TEST_CASE("adjunctions") {
  CHECK(verify_adjunctions(suite()).pass);

  std::vector<NamedObject> zero_only;
  for (const auto& o : default_probes(24))
    if (is_z_trivial(o.obj)) zero_only.push_back(o);
  auto zs = ProbeSuite::generate(zero_only, 1, 5);
  CHECK(verify_adjunctions(zs).pass);

  // C that forgets one generator of the cone it divides by.
  Builders b = Builders::library();
  b.unit = [](const PreOrdObj& x) {
    if (!x.is_abelian() || x.ab().cone.empty()) return unit_pi(x);
    std::vector<IntVec> gens(x.ab().cone.begin() + 1, x.ab().cone.end());
    auto s = subgroup_generated(x.ab().group, gens);
    auto q = quotient_by_subgroup(x.ab().group, s.incl);
    std::vector<IntVec> cone;
    for (const auto& p : x.ab().cone) cone.push_back(q.proj.apply(p));
    auto obj = make_object(q.group, cone);
    return PreOrdMor(x, obj, q.proj);
  };
  CHECK_FALSE(verify_adjunctions(suite(), b).pass);
}

TEST_CASE("Z-kernels and Z-cokernels as pullbacks and pushouts") {
  std::vector<PreOrdMor> ms;
  for (std::size_t i = 0; i < suite().samples.size(); i += 7) ms.push_back(suite().samples[i].mor);
  CHECK(verify_kernel_squares(ms).pass);
}

TEST_CASE("positive cone functor and stable category checks") {
  CHECK(verify_monpos_torsion_theory(suite()).pass);
  CHECK(verify_p_torsion_theory_functor(suite()).pass);
  CHECK(verify_stable_universal_property(suite()).pass);

  Builders b = Builders::library();
  b.symmetric = [](const PreOrdObj& x) { return functor_D(x); };
  CHECK_FALSE(verify_p_torsion_theory_functor(suite(), b).pass);
}

TEST_CASE("cone-containing subgroups contain the cone") {
  for (const auto& o : suite().objects) {
    if (o.obj.is_abelian()) {
      for (const auto& h : cone_containing_subgroups(o.obj)) {
        auto s = subgroup_generated(o.obj.ab().group, h);
        for (const auto& g : o.obj.ab().cone) CHECK(preimage(s.incl, g).has_value());
      }
    } else {
      for (const auto& h : cone_containing_normal_subgroups(o.obj)) {
        CHECK(is_normal(o.obj.fin().group, h));
        CHECK(std::includes(h.begin(), h.end(), o.obj.fin().cone.begin(), o.obj.fin().cone.end()));
      }
    }
  }
}

TEST_CASE("every documented mutation is detected") {
  auto c = verify_mutation_sensitivity(suite());
  CHECK(c.pass);
  CHECK(c.attempted == 9);
}

TEST_CASE("claims run deterministically and in parallel") {
  auto small = default_suite(11, 6, 24);
  auto a = run_all(small);
  auto b = run_all(small);
  REQUIRE(a.size() == claim_ids().size());
  CHECK(format(a, 11) == format(b, 11));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].claim == claim_ids()[i]);
    CHECK(format(a[i]) == format(run_claim(claim_ids()[i], small)));
    CHECK(a[i].pass);
  }
  CHECK(exit_code(a) == 0);
  CHECK_THROWS_AS(run_claim("no-such-claim", small), std::invalid_argument);
}

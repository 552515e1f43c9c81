#pragma once

// Property harness: seeded probe suites, universal-property checks and
// pass/fail certificates with replayable counterexamples.

#include "preord/monpos.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace preord {

/// Counter-based splitmix64. `split(k)` derives an independent stream from
/// the current seed and k without advancing this one.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n), by rejection.
  std::uint64_t below(std::uint64_t n);
  long range(long lo, long hi);  // inclusive
  SplitMix64 split(std::uint64_t stream) const;

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Stable 64-bit hash of a string (FNV-1a), for deriving per-input streams.
std::uint64_t stable_hash(const std::string& s);

struct NamedObject {
  std::string name;
  PreOrdObj obj;
};

struct Sample {
  std::size_t dom;  // indices into ProbeSuite::objects
  std::size_t cod;
  PreOrdMor mor;
};

struct ProbeSuite {
  std::uint64_t seed = 1;
  std::size_t samples_per_pair = 50;
  std::vector<NamedObject> objects;
  std::vector<Sample> samples;  // ordered by (dom, cod, draw)

  /// Draws `samples_per_pair` candidate maps for every same-universe pair and
  /// keeps the cone-preserving ones.
  static ProbeSuite generate(std::vector<NamedObject> objects, std::uint64_t seed,
                             std::size_t samples_per_pair);
  /// Samples with the given codomain (or domain) index.
  std::vector<const Sample*> into(std::size_t cod) const;
  std::vector<const Sample*> out_of(std::size_t dom) const;
  /// Index of an object structurally equal to x, if any.
  std::optional<std::size_t> find(const PreOrdObj& x) const;
};

/// The fixed probe library; finite groups above `order_cap` are left out.
std::vector<NamedObject> default_probes(std::size_t order_cap = kDefaultOrderCap);
ProbeSuite default_suite(std::uint64_t seed = 1, std::size_t samples_per_pair = 50,
                         std::size_t order_cap = kDefaultOrderCap);

/// Random generation used by the suite and the acceptance runs.
std::optional<PreOrdMor> random_morphism(SplitMix64& rng, const PreOrdObj& dom,
                                         const PreOrdObj& cod);
PreOrdObj random_abelian_object(SplitMix64& rng, std::size_t max_rank);
PreOrdObj random_finite_object(SplitMix64& rng, std::size_t max_order);

struct Certificate {
  explicit Certificate(std::string id = {}) : claim(std::move(id)) {}
  std::string claim;
  bool pass = true;
  std::size_t attempted = 0;
  std::size_t passed = 0;
  std::vector<std::string> witnesses;

  /// Counts one check; the witness is rendered only when it will be kept.
  void record(bool ok, const std::function<std::string()>& witness);
  void absorb(const Certificate& other);
};

std::string format(const Certificate& c);
std::string format(const std::vector<Certificate>& cs, std::uint64_t seed);
/// 0 when every certificate passes, 3 otherwise.
int exit_code(const std::vector<Certificate>& cs);

/// Constructions under test. Defaults are the library ones; the mutation
/// checks swap in deliberately broken variants.
struct Builders {
  std::function<ObjectArrow(const PreOrdMor&)> z_kernel;
  std::function<ObjectArrow(const PreOrdMor&)> z_cokernel;
  std::function<ObjectKind(const PreOrdObj&)> classify;
  std::function<PreOrdMor(const PreOrdObj&)> unit;
  std::function<PreOrdMor(const PreOrdObj&)> counit;
  std::function<PreOrdObj(const PreOrdObj&)> symmetric;
  std::function<Units(const ConeMonoid&)> units;
  std::function<PreOrdMor(const PreOrdObj&)> comparison;

  static Builders library();
};

Certificate verify_z_kernel_up(const PreOrdMor& m, const ProbeSuite& suite,
                               const Builders& b = Builders::library());
Certificate verify_z_cokernel_up(const PreOrdMor& m, const ProbeSuite& suite,
                                 const Builders& b = Builders::library());
Certificate verify_pretorsion_axioms(const ProbeSuite& suite,
                                     const Builders& b = Builders::library());
/// is_z_trivial against an explicit factorization through (image, empty cone).
Certificate verify_trivial_morphisms(const std::vector<PreOrdMor>& ms);
Certificate verify_adjunctions(const ProbeSuite& suite, const Builders& b = Builders::library());
Certificate verify_kernel_squares(const std::vector<PreOrdMor>& ms,
                                         const Builders& b = Builders::library());
Certificate verify_monpos_torsion_theory(const ProbeSuite& suite,
                                         const Builders& b = Builders::library());
Certificate verify_p_torsion_theory_functor(const ProbeSuite& suite,
                                            const Builders& b = Builders::library());
Certificate verify_stable_universal_property(const ProbeSuite& suite,
                                             const Builders& b = Builders::library());
/// Each documented broken construction must make its verifier fail.
Certificate verify_mutation_sensitivity(const ProbeSuite& suite);

/// Subgroups H containing the cone of x (normal in the finite universe),
/// generated deterministically.
std::vector<std::vector<IntVec>> cone_containing_subgroups(const PreOrdObj& x);
std::vector<ElemSet> cone_containing_normal_subgroups(const PreOrdObj& x);

const std::vector<std::string>& claim_ids();
/// Throws std::invalid_argument for an unknown id.
Certificate run_claim(const std::string& id, const ProbeSuite& suite);
std::vector<Certificate> run_all(const ProbeSuite& suite);

}  // namespace preord

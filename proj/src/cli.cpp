#include "preord/cli.hpp"

#include "preord/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace preord {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Context {
  const std::vector<std::string>& args;
  const CliOptions& opts;
  std::optional<Workspace> ws;
  std::ostringstream out;

  const Workspace& workspace() {
    if (!ws) {
      if (!opts.workspace) throw UsageError("this command needs --workspace");
      ws = load_workspace(*opts.workspace, opts.order_cap);
    }
    return *ws;
  }
  const std::string& arg(std::size_t n) {
    if (args.size() != n + 1)
      throw UsageError("expected " + std::to_string(n + 1) + " argument(s), got " +
                       std::to_string(args.size()));
    return args[n];
  }
  const PreOrdObj& obj(const std::string& name) { return workspace().object(name); }
  const NamedMorphism& mor(const std::string& name) { return workspace().morphism(name); }
  bool is_morphism(const std::string& name) { return workspace().has_morphism(name); }

  void put(const std::string& name, const PreOrdObj& x) { out << print_object(name, x) << "\n"; }
  void put(const std::string& name, const std::string& d, const std::string& c, const PreOrdMor& m) {
    out << print_morphism(name, d, c, m) << "\n";
  }
};

using Handler = std::function<int(Context&)>;

// Same group, identity map; valid when a's cone lies in b's.
PreOrdMor identity_between(const PreOrdObj& a, const PreOrdObj& b) {
  if (a.is_abelian()) return PreOrdMor(a, b, AbMorphism::identity(a.ab().group));
  return PreOrdMor(a, b, FinMorphism::identity(a.fin().group));
}

void put_arrow(Context& cx, const std::string& obj_name, const std::string& mor_name,
               const ObjectArrow& a, const std::string& other, bool into) {
  cx.put(obj_name, a.obj);
  if (into)
    cx.put(mor_name, obj_name, other, a.mor);
  else
    cx.put(mor_name, other, obj_name, a.mor);
}

PreOrdMor functor_C_mor(const PreOrdMor& f) {
  PreOrdMor ud = unit_pi(f.dom());
  PreOrdMor uc = unit_pi(f.cod());
  auto s = factor_from(ud, compose(f, uc));
  if (!s.map) throw std::logic_error("C(f) does not exist: " + s.witness);
  return *s.map;
}

void put_monoid_note(Context& cx, const ConeMonoid& m) {
  cx.out << "# group " << yes_no(is_group(m)) << ", reduced " << yes_no(is_reduced(m)) << "\n";
}

int cmd_kernel(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  put_arrow(cx, m.name + "_ker", m.name + "_ker_incl", kernel(m.mor), m.dom, true);
  return kExitOk;
}

int cmd_cokernel(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  put_arrow(cx, m.name + "_coker", m.name + "_coker_proj", cokernel(m.mor), m.cod, false);
  return kExitOk;
}

int cmd_zkernel(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  put_arrow(cx, m.name + "_zker", m.name + "_zker_incl", z_kernel(m.mor), m.dom, true);
  return kExitOk;
}

int cmd_zcokernel(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  put_arrow(cx, m.name + "_zcoker", m.name + "_zcoker_proj", z_cokernel(m.mor), m.cod, false);
  return kExitOk;
}

int cmd_canonical(Context& cx) {
  const std::string& n = cx.arg(0);
  auto seq = canonical_sequence(cx.obj(n));
  cx.put(n + "_sym", seq.left.dom());
  cx.put(n + "_red", seq.right.cod());
  cx.put(n + "_sym_incl", n + "_sym", n, seq.left);
  cx.put(n + "_red_proj", n, n + "_red", seq.right);
  return kExitOk;
}

int cmd_classify(Context& cx) {
  const std::string& n = cx.arg(0);
  auto k = classify_object(cx.obj(n));
  cx.out << "object " << n << "\ntorsion " << yes_no(k.torsion) << "\ntorsion-free "
         << yes_no(k.torsion_free) << "\nz-trivial " << yes_no(k.z_trivial) << "\n";
  return kExitOk;
}

int cmd_classify_mor(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  auto k = classify_morphism(m.mor);
  cx.out << "morphism " << m.name << "\nmono " << yes_no(k.mono) << "\nepi " << yes_no(k.epi)
         << "\nregular-epi " << yes_no(k.regular_epi) << "\nisomorphism "
         << yes_no(is_isomorphism(m.mor)) << "\nz-trivial " << yes_no(is_z_trivial(m.mor)) << "\n";
  return kExitOk;
}

int cmd_functor_d(Context& cx) {
  const std::string& n = cx.arg(0);
  if (cx.is_morphism(n)) {
    const auto& m = cx.mor(n);
    cx.put(m.dom + "_D", functor_D(m.mor.dom()));
    cx.put(m.cod + "_D", functor_D(m.mor.cod()));
    cx.put(n + "_D", m.dom + "_D", m.cod + "_D", functor_D(m.mor));
    return kExitOk;
  }
  const auto& x = cx.obj(n);
  cx.put(n + "_D", functor_D(x));
  cx.put(n + "_counit", n + "_D", n, counit_iota(x));
  return kExitOk;
}

int cmd_functor_c(Context& cx) {
  const std::string& n = cx.arg(0);
  if (cx.is_morphism(n)) {
    const auto& m = cx.mor(n);
    PreOrdMor c = functor_C_mor(m.mor);
    cx.put(m.dom + "_C", c.dom());
    cx.put(m.cod + "_C", c.cod());
    cx.put(n + "_C", m.dom + "_C", m.cod + "_C", c);
    return kExitOk;
  }
  const auto& x = cx.obj(n);
  PreOrdMor u = unit_pi(x);
  cx.put(n + "_C", u.cod());
  cx.put(n + "_unit", n, n + "_C", u);
  return kExitOk;
}

int cmd_stable(Context& cx) {
  const std::string& n = cx.arg(0);
  if (cx.is_morphism(n)) {
    const auto& m = cx.mor(n);
    MonMorphism p = positive_cone_mor(m.mor);
    // P(f) is stored as its extension between group completions.
    cx.out << "# zero " << yes_no(mon_is_zero(p)) << "\n";
    cx.put(m.dom + "_grp", p.ext().dom());
    cx.put(m.cod + "_grp", p.ext().cod());
    cx.put(n + "_P", m.dom + "_grp", m.cod + "_grp", p.ext());
    return kExitOk;
  }
  const PreOrdObj& x = cx.obj(n);
  put_monoid_note(cx, positive_cone(x));
  cx.put(n + "_P", x);
  return kExitOk;
}

int cmd_grpcompletion(Context& cx) {
  const std::string& n = cx.arg(0);
  auto c = comparison_morphism(cx.obj(n));
  cx.put(n + "_grp", c.alpha.dom());
  cx.put(n + "_grp_emb", n + "_grp", n, c.alpha);
  return kExitOk;
}

int cmd_units(Context& cx) {
  const std::string& n = cx.arg(0);
  const PreOrdObj& x = cx.obj(n);
  Units u = units(positive_cone(x));
  PreOrdObj ux = x.is_abelian() ? make_object(x.ab().group, u.group.ab_gens())
                                : make_object(x.fin().group, u.group.members());
  put_monoid_note(cx, u.group);
  cx.put(n + "_units", ux);
  cx.put(n + "_units_incl", n + "_units", n, identity_between(ux, x));
  return kExitOk;
}

int cmd_reduce(Context& cx) {
  const std::string& n = cx.arg(0);
  ReducedQuotient r = quotient_by_units(positive_cone(cx.obj(n)));
  put_monoid_note(cx, r.quotient);
  cx.put(n + "_grp", r.eta.ext().dom());
  cx.put(n + "_reduced", r.eta.ext().cod());
  cx.put(n + "_reduced_proj", n + "_grp", n + "_reduced", r.eta.ext());
  return kExitOk;
}

int cmd_compare(Context& cx) {
  const std::string& n = cx.arg(0);
  StableComparison c = comparison_morphism(cx.obj(n));
  cx.out << "# mono " << yes_no(c.mono) << ", normal " << yes_no(c.normal) << ", short exact "
         << yes_no(c.short_exact) << "\n";
  cx.put(n + "_grp", c.alpha.dom());
  cx.put(n + "_stable_quo", c.q.cod());
  cx.put(n + "_cmp", n + "_grp", n, c.alpha);
  cx.put(n + "_cmp_quo", n, n + "_stable_quo", c.q);
  return kExitOk;
}

int cmd_pullback(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  PullbackSquare sq = pullback_with_counit(m.mor);
  cx.out << "# commutes " << yes_no(sq.commutes) << ", comparison iso " << yes_no(sq.comparison_iso)
         << "\n";
  const std::string p = m.name + "_pb";
  cx.put(p, sq.pb.apex);
  cx.put(m.cod + "_D", functor_D(m.mor.cod()));
  cx.put(p + "_p1", p, m.dom, sq.pb.p1);
  cx.put(p + "_p2", p, m.cod + "_D", sq.pb.p2);
  return kExitOk;
}

int cmd_pushout(Context& cx) {
  const auto& m = cx.mor(cx.arg(0));
  PushoutSquare sq = pushout_with_unit(m.mor);
  cx.out << "# commutes " << yes_no(sq.commutes) << ", comparison iso " << yes_no(sq.comparison_iso)
         << "\n";
  const std::string p = m.name + "_po";
  cx.put(p, sq.apex);
  cx.put(m.dom + "_C", sq.i2.dom());
  cx.put(p + "_i1", m.cod, p, sq.i1);
  cx.put(p + "_i2", m.dom + "_C", p, sq.i2);
  return kExitOk;
}

ProbeSuite cli_suite(Context& cx) {
  auto objs = default_probes(cx.opts.order_cap);
  if (cx.opts.workspace)
    for (const auto& [n, x] : cx.workspace().objects())
      if (!std::any_of(objs.begin(), objs.end(), [&](const NamedObject& o) { return o.obj == x; }))
        objs.push_back({n, x});
  return ProbeSuite::generate(std::move(objs), cx.opts.seed, cx.opts.samples);
}

int cmd_check(Context& cx) {
  if (!cx.args.empty()) throw UsageError("check takes no arguments");
  auto certs = run_all(cli_suite(cx));
  cx.out << format(certs, cx.opts.seed);
  return exit_code(certs) == 0 ? kExitOk : kExitVerification;
}

int cmd_check_one(Context& cx) {
  const std::string& id = cx.arg(0);
  const auto& ids = claim_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown claim: " + id);
  std::vector<Certificate> certs = {run_claim(id, cli_suite(cx))};
  cx.out << format(certs, cx.opts.seed);
  return exit_code(certs) == 0 ? kExitOk : kExitVerification;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"kernel", cmd_kernel},
      {"cokernel", cmd_cokernel},
      {"zkernel", cmd_zkernel},
      {"zcokernel", cmd_zcokernel},
      {"canonical-seq", cmd_canonical},
      {"classify", cmd_classify},
      {"classify-mor", cmd_classify_mor},
      {"functor-d", cmd_functor_d},
      {"functor-c", cmd_functor_c},
      {"stable", cmd_stable},
      {"grpcompletion", cmd_grpcompletion},
      {"units", cmd_units},
      {"reduce", cmd_reduce},
      {"compare", cmd_compare},
      {"pullback", cmd_pullback},
      {"pushout", cmd_pushout},
      {"check", cmd_check},
      {"check-one", cmd_check_one},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

CliResult run_command(const std::string& command, const std::vector<std::string>& args,
                      const CliOptions& opts) {
  CliResult r;
  Context cx{args, opts, std::nullopt, {}};
  auto fail = [&](int code, const std::string& msg) {
    r.code = code;
    r.err = "error: " + msg + "\n";
  };
  try {
    auto it = handlers().find(command);
    if (it == handlers().end()) throw UsageError("unknown command: " + command);
    r.code = it->second(cx);
    r.out = cx.out.str();
  } catch (const UsageError& e) {
    fail(kExitUsage, e.what());
  } catch (const ParseError& e) {
    fail(kExitUsage, e.what());
  } catch (const UnknownName& e) {
    fail(kExitUsage, e.what());
  } catch (const LoadError& e) {
    fail(kExitValidation, std::string(e.what()) + (e.witness().empty() ? "" : " [" + e.witness() + "]"));
  } catch (const ValidationError& e) {
    fail(kExitValidation, std::string(e.what()) + (e.witness().empty() ? "" : " [" + e.witness() + "]"));
  } catch (const UnsupportedOperation& e) {
    fail(kExitValidation, std::string("unsupported: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(kExitValidation, e.what());
  } catch (const std::runtime_error& e) {
    fail(kExitUsage, e.what());
  } catch (const std::exception& e) {
    fail(kExitValidation, e.what());
  }
  return r;
}

}  // namespace preord

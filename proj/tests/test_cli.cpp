#include "doctest.h"

#include "preord/cli.hpp"

#include <algorithm>
#include <fstream>

using namespace preord;

namespace {

std::string example(const std::string& name) {
  return std::string(PREORD_EXAMPLES_DIR) + "/" + name;
}

CliResult run(const std::string& cmd, std::vector<std::string> args, const std::string& ws = "",
              std::uint64_t seed = 1) {
  CliOptions o;
  o.seed = seed;
  if (!ws.empty()) o.workspace = example(ws);
  return run_command(cmd, args, o);
}

// Output names objects from the input file, so reload it on top of that file.
Workspace reload(const std::string& ws, const std::string& out) {
  std::ifstream in(example(ws));
  std::string src((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_workspace(src + "\n" + out);
}

}  // namespace

TEST_CASE("zcokernel of A3 in S3 is Z/2 with the trivial cone") {
  auto r = run("zcokernel", {"f"}, "a3_in_s3.ws");
  REQUIRE(r.code == kExitOk);
  auto ws = reload("a3_in_s3.ws", r.out);
  const auto& q = ws.object("f_zcoker");
  REQUIRE_FALSE(q.is_abelian());
  CHECK(q.fin().group.order() == 2);
  CHECK(q.fin().cone == ElemSet{0});
  CHECK(ws.morphism("f_zcoker_proj").cod == "f_zcoker");
}

TEST_CASE("canonical sequence of the half-plane") {
  auto r = run("canonical-seq", {"halfplane"}, "halfplane.ws");
  REQUIRE(r.code == kExitOk);
  auto ws = reload("halfplane.ws", r.out);
  const auto& sym = ws.object("halfplane_sym");
  CHECK(sym.ab().cone == std::vector<IntVec>{make_vec({1, 0}), make_vec({-1, 0})});
  CHECK(classify_object(sym).torsion);
  CHECK(classify_object(ws.object("halfplane_red")).torsion_free);
  CHECK(r.out.find("morphism halfplane_sym_incl : halfplane_sym -> halfplane") != std::string::npos);
  CHECK(r.out.find("morphism halfplane_red_proj : halfplane -> halfplane_red") != std::string::npos);
}

TEST_CASE("every command runs on the examples") {
  for (const auto& [cmd, arg] : std::vector<std::pair<std::string, std::string>>{
           {"kernel", "second"},       {"cokernel", "second"},     {"zkernel", "second"},
           {"zcokernel", "second"},    {"classify", "halfplane"},  {"classify-mor", "second"},
           {"functor-d", "halfplane"}, {"functor-d", "second"},    {"functor-c", "halfplane"},
           {"functor-c", "second"},    {"stable", "halfplane"},    {"stable", "second"},
           {"grpcompletion", "z"},     {"units", "halfplane"},     {"reduce", "halfplane"},
           {"compare", "halfplane"},   {"pullback", "second"},     {"pushout", "second"}}) {
    CAPTURE(cmd);
    auto r = run(cmd, {arg}, "halfplane.ws");
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    CHECK_FALSE(r.out.empty());
    if (cmd.rfind("classify", 0) != 0) CHECK_NOTHROW(reload("halfplane.ws", r.out));
  }
}

TEST_CASE("units and classification of the half-plane") {
  auto u = run("units", {"halfplane"}, "halfplane.ws");
  REQUIRE(u.code == kExitOk);
  CHECK(u.out.find("# group yes, reduced no") != std::string::npos);
  auto c = run("classify", {"halfplane"}, "halfplane.ws");
  CHECK(c.out == "object halfplane\ntorsion no\ntorsion-free no\nz-trivial no\n");
}

TEST_CASE("check with seed 7 passes every claim") {
  auto r = run("check", {}, "", 7);
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("seed 7\n", 0) == 0);
  CHECK(r.out.find("status fail") == std::string::npos);
  CHECK(r.out.find("summary 10/10 claims pass") != std::string::npos);
  CHECK(run("check", {}, "", 7).out == r.out);
}

TEST_CASE("check-one runs a single claim with workspace objects added") {
  auto r = run("check-one", {"zkernel-up"}, "a3_in_s3.ws", 2);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("claim zkernel-up") != std::string::npos);
  CHECK(r.out.find("summary 1/1 claims pass") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("nope", {}).code == kExitUsage);
  CHECK(run("classify", {}, "halfplane.ws").code == kExitUsage);
  CHECK(run("classify", {"a", "b"}, "halfplane.ws").code == kExitUsage);
  CHECK(run("classify", {"halfplane"}).code == kExitUsage);
  CHECK(run("classify", {"missing"}, "halfplane.ws").code == kExitUsage);
  CHECK(run("kernel", {"halfplane"}, "halfplane.ws").code == kExitUsage);
  CHECK(run("check-one", {"no-such-claim"}).code == kExitUsage);
  CHECK(run("check", {"extra"}).code == kExitUsage);
  CHECK(run("classify", {"z"}, "does_not_exist.ws").code == kExitUsage);

  auto len = run("classify", {"z"}, "bad_length.ws");
  CHECK(len.code == kExitValidation);
  CHECK(len.err.find("line 4") != std::string::npos);
  auto conj = run("classify", {"s3"}, "bad_s3_transposition.ws");
  CHECK(conj.code == kExitValidation);
  CHECK(conj.err.find("conjugation") != std::string::npos);

  auto po = run("pushout", {"f"}, "a3_in_s3.ws");
  CHECK(po.code == kExitValidation);
  CHECK(po.err.find("unsupported") != std::string::npos);
}

TEST_CASE("command list") {
  const auto& names = command_names();
  for (const char* c : {"kernel", "cokernel", "zkernel", "zcokernel", "canonical-seq", "classify",
                        "classify-mor", "functor-d", "functor-c", "stable", "grpcompletion", "units",
                        "reduce", "compare", "check", "check-one"})
    CHECK(std::find(names.begin(), names.end(), c) != names.end());
}

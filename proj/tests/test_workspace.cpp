#include "doctest.h"

#include "preord/verify.hpp"
#include "preord/workspace.hpp"

#include <fstream>

using namespace preord;

namespace {

const char* kS3Table =
    "table\n"
    "0 1 2 3 4 5\n"
    "1 0 5 4 3 2\n"
    "2 4 0 5 1 3\n"
    "3 5 4 0 2 1\n"
    "4 2 3 1 5 0\n"
    "5 3 1 2 0 4\n";

template <class E>
E capture(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const E& e) {
    return e;
  }
  FAIL("expected an exception");
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("integers with their identity load as two entities") {
  auto ws = parse_workspace(
      "# comment line\n"
      "object z\nuniverse abelian\nrank 1\ncone 1   # trailing comment\n\n"
      "morphism id : z -> z\nmatrix\n1\n");
  REQUIRE(ws.objects().size() == 1);
  REQUIRE(ws.morphisms().size() == 1);
  const auto& z = ws.object("z");
  CHECK(z == make_object(FgAbGroup::free(1), {make_vec({1})}));
  CHECK(morphism_eq(ws.morphism("id").mor, identity(z)));
  CHECK(ws.morphism("id").dom == "z");
}

TEST_CASE("a cone generator of the wrong length is a dimension error at its line") {
  auto e = capture<LoadError>("object z\nuniverse abelian\nrank 1\ncone 1 0\n");
  CHECK(e.line() == 4);
  CHECK(std::string(e.what()).find("dimension") != std::string::npos);
}

TEST_CASE("a transposition alone is rejected with a conjugation witness") {
  auto e = capture<LoadError>(std::string("object s3\nuniverse finite\norder 6\n") + kS3Table +
                              "cone 1\n");
  CHECK(e.line() == 11);
  CHECK(std::string(e.what()).find("conjugation") != std::string::npos);
  CHECK_FALSE(e.witness().empty());
}

TEST_CASE("syntax errors and unresolved references carry line numbers") {
  CHECK(capture<ParseError>("object z\nuniverse abelian\nrank x\n").line() == 3);
  CHECK(capture<ParseError>("object z\nuniverse weird\n").line() == 2);
  CHECK(capture<ParseError>("widget z\n").line() == 1);
  CHECK(capture<ParseError>("object z\nuniverse abelian\nrank 1\nmorphism f : z -> w\nmatrix\n1\n")
            .line() == 4);
  CHECK(capture<ParseError>("object z\nuniverse abelian\nrank 1\nobject z\nuniverse abelian\nrank 1\n")
            .line() == 4);
  CHECK(capture<ParseError>("object z\nuniverse abelian\n").line() == 2);
}

TEST_CASE("validation errors from the data") {
  // Universe mismatch.
  CHECK(capture<LoadError>("object z\nuniverse abelian\nrank 1\n"
                           "object t\nuniverse finite\norder 1\ntable\n0\n"
                           "morphism f : z -> t\nmap 0\n")
            .line() == 9);
  // Not a group table.
  capture<LoadError>("object t\nuniverse finite\norder 2\ntable\n0 1\n0 1\n");
  // Cone not preserved.
  capture<LoadError>("object z\nuniverse abelian\nrank 1\ncone 1\n"
                     "morphism neg : z -> z\nmatrix\n-1\n");
  // Map length.
  capture<LoadError>("object t\nuniverse finite\norder 2\ntable\n0 1\n1 0\n"
                     "morphism f : t -> t\nmap 0\n");
  // Order cap.
  CHECK_THROWS_AS(parse_workspace("object t\nuniverse finite\norder 2\ntable\n0 1\n1 0\n", 1),
                  LoadError);
}

TEST_CASE("zero-rank codomains take an empty matrix block") {
  auto ws = parse_workspace(
      "object z\nuniverse abelian\nrank 1\ncone 1\n"
      "object o\nuniverse abelian\nrank 0\n"
      "morphism f : z -> o\nmatrix\n");
  CHECK(is_z_trivial(ws.morphism("f").mor));
  CHECK(ws.object("o").ab().group.rank() == 0);
}

TEST_CASE("printed workspaces reload to equal objects and morphisms") {
  auto suite = default_suite(5, 3);
  Workspace ws;
  for (const auto& o : suite.objects) ws.add_object(o.name, o.obj);
  for (std::size_t i = 0; i < suite.samples.size(); i += 11) {
    const auto& s = suite.samples[i];
    ws.add_morphism("m" + std::to_string(i), suite.objects[s.dom].name, suite.objects[s.cod].name,
                    s.mor);
  }
  std::string text = print_workspace(ws);
  auto back = parse_workspace(text);
  REQUIRE(back.objects().size() == ws.objects().size());
  REQUIRE(back.morphisms().size() == ws.morphisms().size());
  for (const auto& [n, x] : ws.objects()) CHECK(back.object(n) == x);
  for (const auto& m : ws.morphisms()) {
    const auto& r = back.morphism(m.name);
    CHECK(r.dom == m.dom);
    CHECK(r.cod == m.cod);
    CHECK(morphism_eq(r.mor, m.mor));
  }
  CHECK(print_workspace(back) == text);
}

TEST_CASE("random objects round-trip through the printer") {
  SplitMix64 r(17);
  for (int i = 0; i < 60; ++i) {
    auto a = random_abelian_object(r, 3);
    CHECK(parse_workspace(print_object("a", a)).object("a") == a);
    auto f = random_finite_object(r, 24);
    CHECK(parse_workspace(print_object("f", f)).object("f") == f);
  }
}

TEST_CASE("duplicate names and missing files") {
  Workspace ws;
  ws.add_object("x", make_object(FgAbGroup::free(1), {}));
  CHECK_THROWS_AS(ws.add_object("x", make_object(FgAbGroup::free(1), {})), std::invalid_argument);
  CHECK_THROWS_AS(ws.object("y"), UnknownName);
  CHECK_THROWS_AS(ws.morphism("x"), UnknownName);
  CHECK_THROWS_AS(load_workspace("/nonexistent/file.ws"), std::runtime_error);
}

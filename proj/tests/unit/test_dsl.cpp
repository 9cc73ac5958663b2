#include "doctest.h"

#include "../support/generators.hpp"
#include "rfm/dsl.hpp"
#include "rfm/presets.hpp"

using namespace rfm;

TEST_CASE("milnor-family descriptor parses") {
  ParsedFile f = parse(
      "roundfold { m=7; n=4; trivial=smooth; events=[ birth(c1:S(3)), "
      "split(c1 -> c2:S(3), c3:S(3)) ]; }");
  REQUIRE(f.ok());
  const Descriptor& d = *f.descriptor();
  CHECK(d.m == 7);
  CHECK(d.l() == 2);
  CHECK(d.triviality == Triviality::Smooth);
  CHECK(f.item_spans.size() == 2);
}

TEST_CASE("manifold block") {
  ParsedFile f = parse("manifold csum(bundle(S(3) over 2), bundle(S(3) over 2))");
  REQUIRE(f.ok());
  CHECK(f.manifold()->kind() == ManifoldKind::ConnectedSum);
  CHECK(parse_manifold("S(2) * S(2)") == Manifold::product({Manifold::sphere(2), Manifold::sphere(2)}));
  CHECK_THROWS_AS(parse_manifold("S(2) *"), Error);
}

TEST_CASE("validation diagnostics carry event spans") {
  ParsedFile f = parse("roundfold { m=5; n=2;\n  events=[ split(c1 -> c2:S(3), c3:S(3)) ]; }");
  CHECK_FALSE(f.ok());
  REQUIRE(f.diagnostics.size() >= 1);
  const Diagnostic& d = f.diagnostics[0];
  CHECK(d.message.find("Split on absent component c1") != std::string::npos);
  CHECK(d.span.line == 2);
  CHECK(d.span.col == 12);
  CHECK_FALSE(d.hint.empty());
}

TEST_CASE("syntax errors never throw") {
  for (const char* text : {"", "roundfold", "roundfold {", "roundfold { m = ; }", "roundfold { q = 1; }",
                           "roundfold { m = 1; m = 2; }", "roundfold { m=5; n=2; events=[ jump(a) ]; }",
                           "manifold S(2", "manifold \"open", "manifold Q(2)", "trace { }",
                           "roundfold { m=5; n=2; events=[]; } extra", "@", "manifold S(99999999999999999999)"}) {
    CAPTURE(text);
    ParsedFile f = parse(text);
    CHECK_FALSE(f.ok());
    REQUIRE_FALSE(f.diagnostics.empty());
    CHECK(f.diagnostics[0].span.line >= 1);
  }
  ParsedFile dup = parse("roundfold { m=5; n=2; events=[ birth(a:S(3)), birth(a:S(3)) ]; }");
  CHECK_FALSE(dup.ok());
}

TEST_CASE("comments and trailing commas") {
  ParsedFile f = parse("# header\nroundfold { # c\n m=5; n=2; events=[ birth(a:S(3)), ]; }\n");
  CHECK(f.ok());
}

TEST_CASE("trace blocks") {
  ParsedFile f = parse("trace { boundary = [b1 : S(3), b2 : S(3)]; actions = [ merge(b1, b2 -> c1 : S(3)), death(c1) ]; }");
  REQUIRE(f.ok());
  CHECK(f.trace()->actions.size() == 2);
  ParsedFile open = parse("trace { boundary = [b1 : S(3)]; actions = []; }");
  CHECK_FALSE(open.ok());
}

TEST_CASE("print then parse is the identity") {
  gen::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Descriptor d = gen::descriptor(rng);
    const std::string text = print(d);
    ParsedFile f = parse(text);
    CAPTURE(text);
    REQUIRE(f.descriptor());
    CHECK(*f.descriptor() == d);
    CHECK(print(*f.descriptor()) == text);

    Manifold e = gen::manifold(rng, gen::uniform(rng, 1, 8), 3);
    ParsedFile g = parse(print(e));
    REQUIRE(g.manifold());
    CHECK(*g.manifold() == e);
  }
}

TEST_CASE("presets print and reparse cleanly") {
  for (const auto& p : all_presets()) {
    ParsedFile f = parse(print(p.descriptor));
    CAPTURE(p.name);
    CHECK(f.ok());
    CHECK(*f.descriptor() == p.descriptor);
  }
}

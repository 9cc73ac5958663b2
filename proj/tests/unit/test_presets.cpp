#include "doctest.h"

#include "rfm/classify.hpp"
#include "rfm/presets.hpp"
#include "rfm/reeb.hpp"

using namespace rfm;

TEST_CASE("every preset classifies to its expected source") {
  for (const auto& p : all_presets()) {
    CAPTURE(p.name);
    CHECK(validate(p.descriptor).ok());
    ClassificationResult r = classify(p.descriptor);
    REQUIRE(r.classified());
    CHECK(*r.manifold == p.expected);
    CHECK(euler_of_expr(*r.manifold) == euler_characteristic(p.descriptor));
    CHECK_NOTHROW(build_reeb(p.descriptor).complex.check());
  }
}

TEST_CASE("preset arguments") {
  CHECK(preset("special_generic(7,2)").descriptor.l() == 1);
  CHECK(*classify(preset("special_generic(6,3)").descriptor).manifold == Manifold::sphere(6));
  CHECK(euler_characteristic(preset("cp3_over_s4").descriptor) == 4);
  CHECK(preset("thm5(3)").descriptor.l() == 4);
  CHECK(preset("milnor_sphere(\"g\")").expected == Manifold::bundle(Manifold::sphere(3), 4, "g"));
  try {
    preset("bott3(0,3)");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Hypothesis);
  }
  try {
    preset("nope");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownPreset);
  }
  CHECK_THROWS_AS(preset("thm5(x)"), Error);
}

TEST_CASE("example 5 uses the mixed fiber rule") {
  ClassificationResult r = classify(preset("example5").descriptor);
  bool mixed = false;
  for (const auto& a : r.chain) mixed = mixed || a.rule == "mixed_fiber_sum";
  CHECK(mixed);
}

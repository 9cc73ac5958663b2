#include "doctest.h"

#include "rfm/constructions.hpp"
#include "rfm/reeb.hpp"

using namespace rfm;

namespace {

Manifold S(int d) { return Manifold::sphere(d); }

}  // namespace

TEST_CASE("disc trace spins to a special generic map") {
  MorseTrace t;
  t.boundary = {{"b", S(4)}};
  t.actions = {FoldEvent::death("b")};
  Descriptor d = trivial_spinning(t, 3);
  CHECK(d.m == 7);
  CHECK(d.l() == 1);
  CHECK(d.events[0].kind == EventKind::Birth);
  CHECK(d.triviality == Triviality::Smooth);
}

TEST_CASE("trace that never closes") {
  MorseTrace t;
  t.boundary = {{"b", S(4)}};
  try {
    trivial_spinning(t, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("trace does not terminate at empty fiber") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(trivial_spinning(default_cylinder_trace(S(2)), 0), Error);
}

TEST_CASE("sphere bundles use the two-fold descriptor") {
  Descriptor d = from_bundle(S(3), 4, "tau");
  CHECK(d.m == 7);
  CHECK(d.l() == 2);
  CHECK(core_fiber(d).size() == 2);
  CHECK(bundle_twist(d) == "tau");
  REQUIRE(d.axis);
  CHECK(d.axis->kind == AxisKind::Cylinder);
  CHECK(bundle_twist(from_bundle(S(3), 2, "")) == kTrivialTwist);
}

TEST_CASE("product of two spheres gets the cell-by-cell trace") {
  Manifold f = Manifold::product({S(2), S(2)});
  Descriptor d = from_bundle(f, 2, "");
  CHECK(d.l() == 4);
  auto core = core_fiber(d);
  REQUIRE(core.size() == 2);
  CHECK(normalize(core[0].label) == normalize(f));
  CHECK(euler_characteristic(d) == 8);
  for (int n = 1; n <= 4; ++n) {
    Descriptor e = from_bundle(Manifold::product({S(1), S(3)}), n, "x");
    CHECK(euler_characteristic(e) == 0);
    Descriptor g = from_bundle(f, n, "x");
    CHECK(euler_characteristic(g) == 4 * euler_of_expr(S(n)));
  }
}

TEST_CASE("bundle builder errors") {
  CHECK_THROWS_AS(from_bundle(S(0), 2, ""), Error);
  try {
    from_bundle(Manifold::named("K3", 4), 2, "");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TraceRequired);
  }
  MorseTrace wrong = default_cylinder_trace(S(2));
  try {
    from_bundle(S(3), 2, "", wrong);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Mismatch);
  }
}

TEST_CASE("iterated spinning") {
  CHECK_THROWS_AS(iterated_bundle_spin({S(3), S(2)}, 4, {"a"}, false), Error);
  Descriptor d = iterated_bundle_spin({S(3), S(2)}, 4, {"so"}, true);
  CHECK(d.m == 9);
  CHECK(d.restriction_trivial);
  CHECK(iterated_bundle_spin({S(3)}, 4, {"t"}, false) == from_bundle(S(3), 4, "t"));
}

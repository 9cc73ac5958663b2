#include "doctest.h"

#include "rfm/descriptor.hpp"

using namespace rfm;

namespace {

Manifold S(int d) { return Manifold::sphere(d); }

Descriptor example2(int m, int n) {
  Descriptor d;
  d.m = m;
  d.n = n;
  d.events = {FoldEvent::birth("c1", S(m - n)),
              FoldEvent::split("c1", {"c2", S(m - n)}, {"c3", S(m - n)})};
  return d;
}

}  // namespace

TEST_CASE("special generic descriptor") {
  Descriptor d{7, 2, {FoldEvent::birth("c1", S(5))}};
  ValidationReport r = validate(d);
  REQUIRE(r.ok());
  REQUIRE(r.fibers.size() == 2);
  CHECK(r.fibers[0].empty());
  CHECK(r.fibers[1].size() == 1);

  ComponentForest f = component_forest(d);
  CHECK(f.edges.size() == 1);
  CHECK(f.free_leaves.size() == 1);
  CHECK(f.capped_leaves.size() == 1);
  CHECK(f.is_tree());
}

TEST_CASE("split on an absent component") {
  Descriptor d{5, 2, {FoldEvent::split("c1", {"c2", S(3)}, {"c3", S(3)})}};
  ValidationReport r = validate(d);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].message == "Split on absent component c1");
  CHECK(r.violations[0].event == 0u);
  CHECK_THROWS_AS(regular_fibers(d), Error);
}

TEST_CASE("example two forest is a Y") {
  Descriptor d = example2(6, 2);
  auto fibers = regular_fibers(d);
  REQUIRE(fibers.size() == 3);
  CHECK(fibers[2].size() == 2);
  ComponentForest f = component_forest(d);
  CHECK(f.free_leaves.size() == 1);
  CHECK(f.capped_leaves.size() == 2);
  CHECK(f.is_tree());
  int deg3 = 0;
  for (std::size_t v = 0; v < f.vertices.size(); ++v) deg3 += f.degree(v) == 3;
  CHECK(deg3 == 1);
}

TEST_CASE("split then merge back closes a loop") {
  Descriptor d{5, 2,
               {FoldEvent::birth("a", S(3)), FoldEvent::split("a", {"b", S(3)}, {"c", S(3)}),
                FoldEvent::merge("b", "c", {"d", S(3)}), FoldEvent::death("d")}};
  ComponentForest f = component_forest(d);
  CHECK(f.cycle_count == 1);
  CHECK(f.capped_leaves.empty());
  CHECK(f.connected());
}

TEST_CASE("index bound and birth labels") {
  Descriptor d{5, 2, {FoldEvent::birth("c1", Manifold::product({S(1), S(2)}))}};
  CHECK_FALSE(validate(d).ok());
  Descriptor g = example2(5, 2);
  g.events.push_back(FoldEvent::generic(3, "c2", S(3), S(3), 1));
  CHECK_FALSE(validate(g).ok());
}

TEST_CASE("cylinder axis needs two copies in the core") {
  Descriptor d = example2(7, 4);
  d.axis = AxisFiber::cylinder(S(3));
  CHECK(validate(d).ok());
  d.axis = AxisFiber::cylinder(Manifold::almost_sphere(3, "x"));
  CHECK_FALSE(validate(d).ok());
}

TEST_CASE("canonical ids follow first appearance") {
  Descriptor d{5, 2,
               {FoldEvent::birth("x", S(3)), FoldEvent::split("x", {"z", S(3)}, {"y", S(3)})}};
  Descriptor c = canonicalize_ids(d);
  CHECK(c.events[1].produced[0].id == "c2");
  CHECK(c.events[1].produced[1].id == "c3");
  CHECK(c == canonicalize_ids(c));
}

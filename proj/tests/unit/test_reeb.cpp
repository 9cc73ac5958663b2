#include "doctest.h"

#include "rfm/reeb.hpp"

using namespace rfm;

namespace {

Manifold S(int d) { return Manifold::sphere(d); }

IntMatrix matrix(std::vector<std::vector<int>> rows) {
  IntMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) a.at(i, j) = rows[i][j];
  }
  return a;
}

std::vector<BigInt> big(std::vector<int> xs) { return {xs.begin(), xs.end()}; }

Descriptor two_sphere_map(int m, int n) {
  return Descriptor{m, n,
                    {FoldEvent::birth("c1", S(m - n)),
                     FoldEvent::split("c1", {"c2", S(m - n)}, {"c3", S(m - n)})}};
}

}  // namespace

TEST_CASE("smith normal form on small matrices") {
  SmithForm id = smith_normal_form(matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(id.factors == big({1, 1, 1}));
  CHECK(id.rank == 3);

  SmithForm zero = smith_normal_form(matrix({{0, 0}, {0, 0}}));
  CHECK(zero.factors.empty());
  CHECK(zero.rank == 0);

  CHECK(smith_normal_form(matrix({{2, 4}, {6, 8}})).factors == big({2, 4}));
  CHECK(smith_normal_form(matrix({{2, 0}, {0, 3}})).factors == big({1, 6}));
  CHECK(smith_normal_form(IntMatrix(0, 4)).rank == 0);
}

TEST_CASE("minimal sphere complex") {
  ChainComplex c;
  c.cells = {1, 0, 0, 1};
  c.boundary = {IntMatrix(0, 1), IntMatrix(1, 0), IntMatrix(0, 0), IntMatrix(0, 1)};
  HomologyProfile h = homology(c);
  CHECK(rank_in(h, 0) == 1);
  CHECK(rank_in(h, 3) == 1);
  CHECK(rank_in(h, 1) == 0);
}

TEST_CASE("projective plane has torsion") {
  ChainComplex c;
  c.cells = {1, 1, 1};
  c.boundary = {IntMatrix(0, 1), matrix({{0}}), matrix({{2}})};
  HomologyProfile h = homology(c);
  CHECK(rank_in(h, 1) == 0);
  CHECK(h[1].torsion == big({2}));
  CHECK(rank_in(h, 2) == 0);
}

TEST_CASE("nonzero composite is rejected") {
  ChainComplex c;
  c.cells = {1, 1, 1};
  c.boundary = {IntMatrix(0, 1), matrix({{1}}), matrix({{1}})};
  CHECK_THROWS_AS(homology(c), Error);
}

TEST_CASE("special generic Reeb space is a disc") {
  for (int n = 1; n <= 4; ++n) {
    Descriptor d{n + 3, n, {FoldEvent::birth("c1", S(3))}};
    if (n == 1) d.half_trace = true;
    ReebComplex r = build_reeb(d);
    HomologyProfile h = homology(r.complex);
    CHECK(rank_in(h, 0) == 1);
    for (int k = 1; k <= n; ++k) CHECK(rank_in(h, k) == 0);
    CHECK(r.cap_count() == 1);
  }
}

TEST_CASE("example two Reeb space is one sphere") {
  for (int n = 2; n <= 4; ++n) {
    HomologyProfile h = homology(build_reeb(two_sphere_map(2 * n + 1, n)).complex);
    CHECK(rank_in(h, 0) == 1);
    CHECK(rank_in(h, n) == 1);
    for (int k = 1; k < n; ++k) CHECK(rank_in(h, k) == 0);
    CHECK(torsion_free(h));
  }
}

TEST_CASE("a loop in L gives a torus factor") {
  Descriptor d{5, 3,
               {FoldEvent::birth("a", S(2)), FoldEvent::split("a", {"b", S(2)}, {"c", S(2)}),
                FoldEvent::merge("b", "c", {"d", S(2)}), FoldEvent::death("d")}};
  HomologyProfile h = homology(build_reeb(d).complex);
  CHECK(rank_in(h, 1) == 1);
  CHECK(rank_in(h, 2) == 1);
  CHECK(rank_in(h, 3) == 1);
}

TEST_CASE("euler characteristic by strata") {
  CHECK(euler_characteristic(two_sphere_map(4, 2)) == 4);
  CHECK(euler_characteristic(two_sphere_map(6, 3)) == 0);
  CHECK(euler_characteristic(two_sphere_map(6, 2)) == 4);
  CHECK(euler_characteristic(two_sphere_map(5, 2)) == 0);
  Descriptor sg{6, 2, {FoldEvent::birth("c1", S(4))}};
  CHECK(euler_characteristic(sg) == 2);
  Descriptor half{3, 1, {FoldEvent::birth("c1", S(2))}, Triviality::None, std::nullopt, true};
  CHECK(euler_characteristic(half) == 0);
  Descriptor half4{4, 1, {FoldEvent::birth("c1", S(3))}, Triviality::None, std::nullopt, true};
  CHECK(euler_characteristic(half4) == 2);
}

TEST_CASE("prop1 ranks") {
  Prop1Report a = prop1_report(two_sphere_map(5, 2));
  CHECK(a.applies);
  CHECK(a.second_clause);
  CHECK(a.hn_rank == 1u);
  CHECK(a.cross_check == true);

  Prop1Report b = prop1_report(two_sphere_map(4, 2));
  CHECK(b.second_clause);
  CHECK(b.hn_rank == 2u);

  Prop1Report milnor = prop1_report(two_sphere_map(7, 4));
  CHECK(milnor.applies);
  CHECK_FALSE(milnor.second_clause);
  CHECK(milnor.hn_rank == 1u);
  CHECK(milnor.hn_source == "W_f");

  Descriptor g = two_sphere_map(9, 2);
  g.events.push_back(FoldEvent::generic(2, "c2", S(7), S(7), 1));
  Prop1Report c = prop1_report(g);
  CHECK_FALSE(c.applies);
  CHECK_FALSE(c.hn_rank);
}

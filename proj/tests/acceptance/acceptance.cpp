// Acceptance criteria AC1..AC10. One line per criterion; exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "rfm/classify.hpp"
#include "rfm/cli.hpp"
#include "rfm/constructions.hpp"
#include "rfm/dsl.hpp"
#include "rfm/presets.hpp"
#include "rfm/reeb.hpp"
#include "rfm/surgery.hpp"

using namespace rfm;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Manifold S(int d) { return Manifold::sphere(d); }

std::int64_t rank_at(const RankList& r, int degree) {
  for (const auto& [d, v] : r) {
    if (d == degree) return v;
  }
  return 0;
}

/// chi of an expression built from spheres and products only.
std::int64_t product_euler(const Manifold& e) {
  if (e.kind() == ManifoldKind::Product) {
    std::int64_t acc = 1;
    for (const auto& f : e.children()) acc *= product_euler(f);
    return acc;
  }
  return oracle::sphere_euler(e.dim());
}

Outcome ac1() {
  Outcome o;
  gen::Rng rng(1001);
  for (int t = 0; t < 200 && o.ok; ++t) {
    const int n = gen::uniform(rng, 2, 4);
    const int m = gen::uniform(rng, 2 * n, 12);
    const int l = gen::uniform(rng, 1, 20);
    const Descriptor d = gen::prop1_descriptor(rng, m, n, l);
    const ReebComplex r = build_reeb(d);
    const HomologyProfile h = homology(r.complex);
    const auto q = oracle::betti(r.complex, oracle::kLargePrime);
    const auto b2 = oracle::betti(r.complex, 2);
    const auto b3 = oracle::betti(r.complex, 3);
    const std::string tag = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " l=" + std::to_string(l);
    if (rank_in(h, n) != static_cast<std::size_t>(l - 1)) o.fail(tag + ": H_n rank " + std::to_string(rank_in(h, n)));
    if (!torsion_free(h)) o.fail(tag + ": torsion");
    for (int k = 1; k < n; ++k) {
      if (rank_in(h, k) != 0) o.fail(tag + ": H_" + std::to_string(k) + " nonzero");
    }
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k].rank != q[k] || q[k] != b2[k] || q[k] != b3[k]) o.fail(tag + ": disagrees with mod-p oracle");
    }
  }
  o.detail = o.ok ? "200 descriptors, H_n = Z^(l-1), torsion free, mod-p oracle agrees" : o.detail;
  return o;
}

Outcome ac2() {
  Outcome o;
  int count = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int m = 2 * n; m <= 12; ++m) {
      const Descriptor d = preset("example2(" + std::to_string(m) + "," + std::to_string(n) + ")").descriptor;
      const HomologyProfile h = homology(build_reeb(d).complex);
      for (const auto& g : h) {
        const std::size_t want = (g.degree == 0 || g.degree == n) ? 1 : 0;
        if (g.rank != want || !g.torsion.empty()) {
          o.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + " H_" + std::to_string(g.degree));
        }
      }
      ++count;
    }
  }
  if (o.ok) o.detail = std::to_string(count) + " grid points, W_f has the homology of S^n";
  return o;
}

Outcome ac3() {
  Outcome o;
  gen::Rng rng(1003);
  for (int t = 0; t < 100 && o.ok; ++t) {
    const int n = gen::uniform(rng, 2, 4);
    const int m = gen::uniform(rng, 2 * n, 12);
    const Descriptor f1 = gen::prop1_descriptor(rng, m, n, gen::uniform(rng, 1, 8));
    const Descriptor f2 = gen::prop1_descriptor(rng, m, n, gen::uniform(rng, 1, 8));
    const auto core = core_fiber(f1);
    const std::string site = core[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(core.size()) - 1))].id;
    const Descriptor f = combine(f1, site, f2).descriptor;
    if (f.l() != f1.l() + f2.l() - 1) o.fail("l mismatch");
    const DecomposeResult back = decompose(f, f1.l(), site);
    if (!isomorphic(back.f1, f1) || !isomorphic(back.f2, f2)) o.fail("decompose does not invert combine");
  }
  for (int t = 0; t < 100 && o.ok; ++t) {
    const int n = gen::uniform(rng, 2, 4);
    const int m = gen::uniform(rng, 2 * n, 12);
    const Descriptor f = gen::prop1_descriptor(rng, m, n, gen::uniform(rng, 2, 12));
    const auto fibers = regular_fibers(f);
    const std::size_t r = static_cast<std::size_t>(gen::uniform(rng, 1, static_cast<int>(f.l())));
    const std::string c = fibers[r][static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(fibers[r].size()) - 1))].id;
    const DecomposeResult parts = decompose(f, r, c);
    const Descriptor again = combine(parts.f1, c, parts.f2).descriptor;
    if (!structurally_equivalent(again, f)) o.fail("decompose then combine changed the descriptor");
  }
  if (o.ok) o.detail = "100 combine/decompose pairs, 100 decompose/combine roundtrips";
  return o;
}

Outcome ac4() {
  Outcome o;
  std::vector<Manifold> fibers;
  for (int q = 1; q <= 6; ++q) {
    fibers.push_back(S(q));
    fibers.push_back(Manifold::almost_sphere(q, "g"));
  }
  for (int a = 1; a <= 3; ++a) {
    for (int b = a; b <= 4; ++b) fibers.push_back(Manifold::product({S(a), S(b)}));
  }
  int checks = 0;
  for (const auto& f : fibers) {
    for (int n = 1; n <= 4; ++n) {
      const Descriptor d = from_bundle(f, n, "t");
      const std::int64_t want = product_euler(f) * oracle::sphere_euler(n);
      if (euler_characteristic(d) != want) o.fail("from_bundle(" + to_text(f) + ", " + std::to_string(n) + ")");
      ++checks;
    }
  }
  gen::Rng rng(1004);
  for (int t = 0; t < 200; ++t) {
    const int n = gen::uniform(rng, 2, 4);
    const int m = gen::uniform(rng, 2 * n, 12);
    const Descriptor f1 = gen::prop1_descriptor(rng, m, n, gen::uniform(rng, 1, 10));
    const Descriptor f2 = gen::prop1_descriptor(rng, m, n, gen::uniform(rng, 1, 10));
    const Descriptor f = combine(f1, core_fiber(f1).front().id, f2).descriptor;
    const std::int64_t chi = euler_characteristic(f);
    if (chi != euler_characteristic(f1) + euler_characteristic(f2) - oracle::sphere_euler(m)) o.fail("combine euler");
    if (m % 2 == 1 && chi != 0) o.fail("odd m with nonzero euler");
    if (n == 2 && m % 2 == 0 && chi % 2 != 0) o.fail("n=2 even m with odd euler");
    checks += 3;
  }
  for (int t = 0; t < 200; ++t) {
    const Descriptor d = gen::descriptor(rng);
    if (!validate(d).ok()) continue;
    std::int64_t chi = 0;
    try {
      chi = euler_characteristic(d);
    } catch (const Error&) {
      continue;
    }
    if (d.m % 2 == 1 && chi != 0) o.fail("odd m with nonzero euler");
    ++checks;
  }
  if (o.ok) o.detail = std::to_string(checks) + " euler identities";
  return o;
}

Outcome ac5() {
  Outcome o;
  gen::Rng rng(1005);
  for (int t = 0; t < 150 && o.ok; ++t) {
    const int n = gen::uniform(rng, 2, 4);
    const int m = gen::uniform(rng, 2 * n, 12);
    const int k = gen::uniform(rng, 1, 9);
    std::vector<Manifold> parts;
    for (int i = 0; i < k; ++i) {
      parts.push_back(Manifold::bundle(S(m - n), n, gen::coin(rng, 1, 3) ? "" : "t" + std::to_string(gen::uniform(rng, 0, 5))));
    }
    const Manifold e = k == 1 ? parts[0] : Manifold::connected_sum(parts);
    const Descriptor d = synthesize(e);
    const std::string tag = to_text(e);
    if (d.l() != static_cast<std::size_t>(k + 1)) o.fail(tag + ": l != k + 1");
    const ClassificationResult c = classify(d);
    if (!c.manifold || !(*c.manifold == normalize(e))) {
      o.fail(tag + ": classified as " + (c.manifold ? to_text(*c.manifold) : std::string("nothing")));
      continue;
    }
    const std::int64_t want = m > 2 * n ? k : 2 * k;
    const Prop1Report p = prop1_report(d);
    if (!p.hn_rank || static_cast<std::int64_t>(*p.hn_rank) != want) o.fail(tag + ": prop1 rank");
    if (rank_at(homology_ranks_of_expr(*c.manifold), n) != want) o.fail(tag + ": expression rank");
  }
  if (o.ok) o.detail = "150 sums of up to 9 sphere bundles roundtrip; ranks agree";
  return o;
}

Outcome ac6() {
  Outcome o;
  gen::Rng rng(1006);
  for (int t = 0; t < 60; ++t) {
    const int k = gen::uniform(rng, 1, 9);
    std::vector<Manifold> parts;
    for (int i = 0; i < k; ++i) {
      parts.push_back(Manifold::bundle(S(3), 2, gen::coin(rng) ? "" : "nontrivial"));
    }
    const Manifold e = k == 1 ? parts[0] : Manifold::connected_sum(parts);
    const Dim5Result r = dim5_recognize(e);
    if (r.verdict != Dim5Verdict::Admits || !r.witness) {
      o.fail(to_text(e) + " not admitted");
      continue;
    }
    if (r.witness->l() != static_cast<std::size_t>(k + 1)) o.fail("witness l != k + 1");
    if (!validate(*r.witness).ok() || !in_prop1_class(*r.witness)) o.fail("witness outside the class");
  }
  for (int t = 0; t < 40; ++t) {
    NamedInfo info;
    info.torsion_h2 = true;
    info.connectivity = 1;
    Manifold bad = Manifold::named("X" + std::to_string(t), 5, info);
    Manifold e = gen::coin(rng) ? bad : Manifold::connected_sum({bad, Manifold::bundle(S(3), 2, "t")});
    const Dim5Result r = dim5_recognize(e);
    if (r.verdict != Dim5Verdict::DoesNotAdmit || r.reference != "Proposition 3") o.fail(to_text(e) + " not rejected");
  }
  if (o.ok) o.detail = "60 admitted with witnesses, 40 torsion inputs rejected citing Proposition 3";
  return o;
}

Outcome ac7() {
  Outcome o;
  gen::Rng rng(1007);
  for (int t = 0; t < 500 && o.ok; ++t) {
    const std::size_t rows = static_cast<std::size_t>(gen::uniform(rng, 1, 8));
    const std::size_t cols = static_cast<std::size_t>(gen::uniform(rng, 1, 8));
    oracle::Small a(rows, std::vector<std::int64_t>(cols));
    IntMatrix m(rows, cols);
    const int density = gen::uniform(rng, 1, 4);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        a[i][j] = gen::uniform(rng, 1, 4) <= density ? gen::uniform(rng, -9, 9) : 0;
        m.at(i, j) = a[i][j];
      }
    }
    const SmithForm s = smith_normal_form(m);
    const auto want = oracle::invariant_factors(a);
    std::vector<std::int64_t> got;
    for (const auto& f : s.factors) got.push_back(static_cast<std::int64_t>(f));
    if (got != want) o.fail("invariant factors differ on a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    if (s.rank != want.size() || s.rank != oracle::rank_mod(m, oracle::kLargePrime)) o.fail("rank differs");
  }
  if (o.ok) o.detail = "500 matrices match determinantal divisors and rational rank";
  return o;
}

Outcome ac8() {
  Outcome o;
  int count = 0;
  auto check = [&](const Descriptor& d, const std::string& what) {
    const ReebComplex r = build_reeb(d);
    if (!oracle::boundary_squares_to_zero(r.complex)) o.fail(what);
    try {
      r.complex.check();
    } catch (const Error& e) {
      o.fail(what + ": " + e.what());
    }
    ++count;
  };
  gen::Rng rng(1008);
  for (int t = 0; t < 200; ++t) {
    const int n = gen::uniform(rng, 1, 4);
    const int m = gen::uniform(rng, n + 1, 12);
    check(gen::prop1_descriptor(rng, m, n, gen::uniform(rng, 1, 20)), "prop1 generator");
  }
  for (int t = 0; t < 300; ++t) {
    const Descriptor d = gen::descriptor(rng);
    if (validate(d).ok()) check(d, "general generator");
  }
  for (const auto& p : all_presets()) check(p.descriptor, p.name);
  for (int n = 1; n <= 4; ++n) check(from_bundle(Manifold::product({S(2), S(3)}), n, "x"), "product bundle");
  if (o.ok) o.detail = std::to_string(count) + " Reeb complexes with d o d = 0";
  return o;
}

Outcome ac9() {
  Outcome o;
  gen::Rng rng(1009);
  for (int t = 0; t < 1000 && o.ok; ++t) {
    const int pick = gen::uniform(rng, 0, 2);
    FileValue v;
    if (pick == 0) {
      v = gen::descriptor(rng);
    } else if (pick == 1) {
      v = gen::manifold(rng, gen::uniform(rng, 1, 9), 3);
    } else {
      MorseTrace tr;
      const int q = gen::uniform(rng, 1, 5);
      tr.boundary = {{"b1", gen::manifold(rng, q, 1)}, {"b2", S(q)}};
      tr.actions = {FoldEvent::merge("b1", "b2", {"c1", S(q)}), FoldEvent::death("c1")};
      if (gen::coin(rng)) tr.source_label = AxisFiber::cylinder(S(q));
      v = tr;
    }
    const std::string text = print(v);
    const ParsedFile f = parse(text);
    if (f.value != v || print(f.value) != text) o.fail("roundtrip failed on:\n" + text);
  }
  for (const Preset& p : all_presets()) {
    const ParsedFile f = parse(print(p.descriptor));
    if (!f.ok() || !f.diagnostics.empty() || !validate(*f.descriptor()).ok()) o.fail(p.name + " has diagnostics");
    if (!classify(*f.descriptor()).classified()) o.fail(p.name + " unclassified");
  }
  for (const auto& entry : preset_catalog()) {
    const std::string name = entry.signature.substr(0, entry.signature.find('('));
    for (const char* cmd : {"validate", "reeb", "homology", "euler", "prop1", "classify"}) {
      std::ostringstream out1, out2, err;
      const std::vector<std::string> args{cmd, "preset:" + name, "--json"};
      const int c1 = run_cli(args, out1, err);
      const int c2 = run_cli(args, out2, err);
      if (c1 != 0 || c2 != 0 || out1.str() != out2.str()) o.fail(std::string(cmd) + " on " + name + " not reproducible");
    }
  }
  if (o.ok) o.detail = "1000 fuzzed files roundtrip; presets clean; JSON byte-identical";
  return o;
}

Outcome ac10() {
  Outcome o;
  const ClassificationResult milnor = classify(preset("milnor_sphere").descriptor);
  if (!milnor.manifold || !(*milnor.manifold == Manifold::bundle(S(3), 4, "tau")) ||
      milnor.confidence != Confidence::Diffeomorphism) {
    o.fail("milnor_sphere");
  }
  for (int m = 4; m <= 12; ++m) {
    for (int n = std::max(1, m - 3); n < m; ++n) {
      const Preset p = preset("special_generic(" + std::to_string(m) + "," + std::to_string(n) + ")");
      const ClassificationResult r = classify(p.descriptor);
      if (!r.manifold || !(*r.manifold == S(m))) o.fail(p.name);
    }
  }
  const ClassificationResult ex5 = classify(preset("example5").descriptor);
  bool mixed = false;
  for (const auto& a : ex5.chain) mixed = mixed || a.rule == "mixed_fiber_sum";
  const Manifold want = normalize(Manifold::connected_sum(
      {Manifold::bundle(S(4), 2, "tau"), Manifold::bundle(Manifold::product({S(2), S(2)}), 2, "bott3(0,2)")}));
  if (!mixed || !ex5.manifold || !(*ex5.manifold == want)) o.fail("example5");
  if (o.ok) o.detail = "milnor_sphere, special_generic grid and example5 match the catalog";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", 5, ac1}, {"AC2", 1, ac2}, {"AC3", 5, ac3},  {"AC4", 2, ac4}, {"AC5", 5, ac5},
      {"AC6", 1, ac6}, {"AC7", 10, ac7}, {"AC8", 0, ac8}, {"AC9", 10, ac9}, {"AC10", 1, ac10}};
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.fail("took " + std::to_string(secs) + " s");
    }
    if (!o.ok) ++failures;
    std::printf("%-4s %s %.3fs", c.id, o.ok ? "PASS" : "FAIL", secs);
    if (c.limit_s > 0) std::printf(" (limit %.0fs)", c.limit_s);
    std::printf(" %s\n", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}

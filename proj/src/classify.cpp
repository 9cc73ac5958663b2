#include "rfm/classify.hpp"

#include <algorithm>
#include <variant>

#include "rfm/constructions.hpp"
#include "rfm/surgery.hpp"

namespace rfm {

std::string_view to_string(Confidence c) {
  switch (c) {
    case Confidence::Unclassified: return "unclassified";
    case Confidence::Homeomorphism: return "homeomorphism";
    case Confidence::PL: return "PL";
    case Confidence::Diffeomorphism: return "diffeomorphism";
  }
  return "?";
}

Confidence confidence_for(Triviality t) {
  switch (t) {
    case Triviality::None: return Confidence::Unclassified;
    case Triviality::Topological: return Confidence::Homeomorphism;
    case Triviality::PL: return Confidence::PL;
    case Triviality::Smooth: return Confidence::Diffeomorphism;
  }
  return Confidence::Unclassified;
}

std::string theta_label(int m, int n) {
  return "theta(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

namespace {

HypothesisCheck check(std::string name, bool holds, std::string detail = {}) {
  return HypothesisCheck{std::move(name), holds, std::move(detail)};
}

std::string twist_of(const std::optional<std::string>& tag) {
  if (!tag) return "unspecified";
  if (*tag == kTrivialTwist) return {};
  return *tag;
}

Manifold bundle_total(const Manifold& fiber, int n, const std::optional<std::string>& tag) {
  return normalize(Manifold::bundle(fiber, n, twist_of(tag)));
}

struct Piece {
  Manifold manifold;
  RuleApplication rule;
  bool exotic_fiber = false;
  bool almost_sphere_rule = false;
};

struct PieceFailure {
  std::vector<HypothesisCheck> failed;
};

/// Birth, any number of Generic moves on the same component, then the
/// Split that produces the two core copies.
bool is_basic(const Descriptor& p) {
  const auto& ev = p.events;
  if (ev.size() < 2 || ev.front().kind != EventKind::Birth) return false;
  if (ev.back().kind != EventKind::Split) return false;
  for (std::size_t k = 1; k + 1 < ev.size(); ++k) {
    if (ev[k].kind != EventKind::Generic) return false;
  }
  return true;
}

std::variant<Piece, PieceFailure> classify_piece(const Descriptor& p, int& theta_count) {
  const int m = p.m;
  const int n = p.n;
  const FoldEvent& birth = p.events.front();
  const FoldEvent& split = p.events.back();
  const Manifold x = normalize(birth.produced[0].label);
  const Manifold a = normalize(split.produced[0].label);
  const Manifold b = normalize(split.produced[1].label);
  const std::string piece_text = to_text(a) + " and " + to_text(b) + " born from " + to_text(x);

  if (p.events.size() > 2) {
    if (!(a == b) || !x.is_standard_sphere()) {
      return PieceFailure{{check("piece ends in two copies of one fiber born from a sphere",
                                 false, piece_text)}};
    }
    const auto conn = known_connectivity(a);
    const bool connected = conn && *conn >= n - 1;
    RuleApplication rule{"mixed_fiber_sum",
                         "Theorem 10",
                         "",
                         {check("fiber is (n-1)-connected", connected,
                                to_text(a) + " connectivity " +
                                    (conn ? std::to_string(*conn) : std::string("unknown"))),
                          check("piece is a two-fold bundle map", true, piece_text)}};
    if (!connected) return PieceFailure{rule.hypotheses};
    Manifold out = bundle_total(a, n, split.twist);
    rule.conclusion = to_text(out);
    return Piece{out, rule, false, false};
  }

  if (!x.is_sphere_like() || !a.is_sphere_like() || !b.is_sphere_like()) {
    return PieceFailure{{check("two-component piece has almost-sphere fibers", false, piece_text)}};
  }
  if (a == b && a.is_standard_sphere() && x.is_standard_sphere()) {
    Manifold out = bundle_total(a, n, split.twist);
    RuleApplication rule{"sphere_bundle_sum", "Theorem 9", to_text(out),
                         {check("fibers are standard spheres", true, piece_text),
                          check("core has two components", true)}};
    return Piece{out, rule, false, false};
  }
  if (a == b && x == a) {
    Manifold theta = Manifold::homotopy_sphere(
        m, theta_label(m, n) + (theta_count > 0 ? "_" + std::to_string(theta_count + 1) : ""));
    ++theta_count;
    Manifold bundle = bundle_total(a, n, split.twist);
    Manifold out = normalize(Manifold::connected_sum({theta, bundle}));
    RuleApplication rule{"almost_sphere_pair",
                         "Theorem 8 with Theorem 7",
                         to_text(out),
                         {check("fibers are one almost-sphere", true, piece_text),
                          check("core has two components", true),
                          check("homotopy sphere summand lies in the round special generic class",
                                true, to_text(theta))}};
    return Piece{out, rule, true, false};
  }
  if (x.is_standard_sphere() && (a == b || a.is_standard_sphere() || b.is_standard_sphere())) {
    const Manifold& sigma = a.is_standard_sphere() ? b : a;
    Manifold out = bundle_total(sigma, n, split.twist);
    RuleApplication rule{"almost_sphere_bound",
                         "Theorem 12",
                         to_text(out),
                         {check("non-core fibers are standard spheres", true, to_text(x)),
                          check("core fibers are PL homeomorphic almost-spheres", true,
                                piece_text)}};
    return Piece{out, rule, true, true};
  }
  return PieceFailure{{check("core fibers of the piece agree", false, piece_text)}};
}

/// Greedy cut into basic pieces, innermost site first.
std::optional<std::vector<Descriptor>> split_pieces(const Descriptor& f) {
  if (is_basic(f)) return std::vector<Descriptor>{f};
  const auto fibers = regular_fibers(f);
  const std::size_t l = f.l();
  std::optional<DecomposeResult> fallback;
  for (std::size_t r = l - 1; r >= 1; --r) {
    for (const auto& c : fibers[r]) {
      if (!normalize(c.label).is_standard_sphere()) continue;
      DecomposeResult cut;
      try {
        cut = decompose(f, r, c.id, true);
      } catch (const Error&) {
        continue;
      }
      if (cut.f1.l() < 2 || cut.f2.l() < 2) continue;
      if (is_basic(cut.f2)) {
        auto rest = split_pieces(cut.f1);
        if (!rest) return std::nullopt;
        rest->push_back(cut.f2);
        return rest;
      }
      if (!fallback) fallback = std::move(cut);
    }
  }
  if (!fallback) return std::nullopt;
  auto left = split_pieces(fallback->f1);
  auto right = split_pieces(fallback->f2);
  if (!left || !right) return std::nullopt;
  left->insert(left->end(), right->begin(), right->end());
  return left;
}

void classify_special_generic(const Descriptor& d, ClassificationResult& out) {
  const int m = d.m;
  const int n = d.n;
  const bool standard = m > 3 && m - n >= 1 && m - n <= 3;
  Manifold result = standard ? Manifold::sphere(m) : Manifold::homotopy_sphere(m, theta_label(m, n));
  out.manifold = result;
  out.confidence = Confidence::Diffeomorphism;
  out.chain.push_back({"connected_singular_set",
                       "Example 1 (3)",
                       to_text(result),
                       {check("singular set is connected", true),
                        check("m > 3", m > 3, "m = " + std::to_string(m)),
                        check("1 <= m - n <= 3", m - n >= 1 && m - n <= 3,
                              "m - n = " + std::to_string(m - n))}});
  out.notes.push_back("maps with connected singular set are smoothly trivial");
  if (!standard) {
    out.notes.push_back(to_text(result) + " is an unidentified homotopy sphere admitting a "
                                          "special generic map into R^" + std::to_string(n));
  }
  if (m == 7 && n == 3) {
    out.notes.push_back(std::to_string(kTheta7NoSpecialGenericIntoR3) + " of the " +
                        std::to_string(kTheta7Order) +
                        " classes of 7-dimensional homotopy spheres admit no special generic "
                        "map into R^3");
  }
}

bool classify_bundle_axis(const Descriptor& d, ClassificationResult& out) {
  if (!d.axis || d.axis->kind != AxisKind::Cylinder || !d.axis->fiber) return false;
  if (d.triviality < Triviality::Topological) return false;
  const Manifold fiber = normalize(*d.axis->fiber);
  const Manifold result = bundle_total(fiber, d.n, bundle_twist(d));
  out.manifold = result;
  out.confidence = confidence_for(d.triviality);
  out.chain.push_back({"bundle_axis",
                       "Theorem 1 (2)",
                       to_text(result),
                       {check("preimage of an axis is a cylinder", true, to_text(fiber)),
                        check("map is trivial", true, std::string(to_string(d.triviality)))}});
  if (!bundle_twist(d)) out.notes.push_back("no twist tag recorded; bundle left unspecified");

  if (d.n == 2 && d.triviality < Triviality::Smooth) {
    const auto conn = known_connectivity(fiber);
    const bool big = d.m >= 7 && conn && *conn >= 1;
    const bool small = (d.m == 3 || d.m == 4) && fiber.is_standard_sphere();
    if (big || small) {
      out.confidence = Confidence::Diffeomorphism;
      out.chain.push_back(
          {"pseudoisotopy_upgrade",
           "Theorem 3",
           "map is smoothly trivial",
           {check("n = 2", true),
            big ? check("m >= 7 and fiber simply connected", true, to_text(fiber))
                : check("m in {3, 4} and fiber a standard sphere", true, to_text(fiber))}});
    }
  }
  return true;
}

}  // namespace

ClassificationResult classify(const Descriptor& d) {
  ClassificationResult out;
  const ValidationReport report = validate(d);
  if (!report.ok()) {
    out.failed.push_back(check("descriptor validates", false, report.summary()));
    return out;
  }
  if (classify_bundle_axis(d, out)) return out;
  if (d.l() == 1) {
    classify_special_generic(d, out);
    return out;
  }

  std::vector<HypothesisCheck> gate{
      check("m >= 2n", d.m >= 2 * d.n,
            "m = " + std::to_string(d.m) + ", n = " + std::to_string(d.n)),
      check("map is at least topologically trivial", d.triviality >= Triviality::Topological,
            std::string(to_string(d.triviality)))};
  if (d.axis && d.axis->kind == AxisKind::Cylinder) {
    out.failed.push_back(check("axis cylinder with a triviality flag", false,
                               std::string(to_string(d.triviality))));
  }
  if (!gate[0].holds || !gate[1].holds) {
    for (auto& g : gate) {
      if (!g.holds) out.failed.push_back(g);
    }
    return out;
  }

  const auto pieces = split_pieces(d);
  if (!pieces) {
    out.failed.push_back(check("decomposes into two-component pieces", false,
                               "no separable standard-sphere site yields basic pieces"));
    return out;
  }

  int theta_count = 0;
  std::vector<Piece> classified;
  for (const auto& p : *pieces) {
    auto r = classify_piece(p, theta_count);
    if (auto* f = std::get_if<PieceFailure>(&r)) {
      out.failed = f->failed;
      return out;
    }
    classified.push_back(std::get<Piece>(std::move(r)));
  }

  const std::size_t l = d.l();
  const bool uses_bound =
      std::any_of(classified.begin(), classified.end(), [](const Piece& p) { return p.almost_sphere_rule; });
  if (uses_bound) {
    const std::size_t exotic = static_cast<std::size_t>(std::count_if(
        classified.begin(), classified.end(), [](const Piece& p) { return p.exotic_fiber; }));
    const std::size_t bound = l - 1 - l / 2;
    if (exotic < bound) {
      out.failed.push_back(check("non-standard fiber count at least l - 1 - floor(l/2)", false,
                                 std::to_string(exotic) + " < " + std::to_string(bound)));
      return out;
    }
  }

  std::vector<Manifold> summands;
  summands.reserve(classified.size());
  for (const auto& p : classified) summands.push_back(p.manifold);
  const Manifold result = normalize(Manifold::connected_sum(summands));
  out.manifold = result;
  out.confidence = confidence_for(d.triviality);
  if (classified.size() > 1) {
    out.chain.push_back({"connected_sum_split",
                         "Theorem 6",
                         std::to_string(classified.size()) + " summands",
                         {gate[0], gate[1],
                          check("cut sites are separable standard spheres", true)}});
  }
  for (auto& p : classified) out.chain.push_back(std::move(p.rule));
  if (uses_bound) {
    const std::size_t exotic = static_cast<std::size_t>(std::count_if(
        classified.begin(), classified.end(), [](const Piece& p) { return p.exotic_fiber; }));
    out.notes.push_back(std::to_string(exotic) + " summands have non-standard fibers");
  }
  return out;
}

namespace {

[[noreturn]] void no_construction(const std::string& why) {
  throw Error(ErrorKind::NoConstruction, why);
}

struct Summand {
  Manifold fiber;
  std::string twist;
  Manifold original;
};

/// Reads a summand as an F-bundle over S^n.
std::optional<Summand> as_bundle(const Manifold& s, int n) {
  if (s.kind() == ManifoldKind::Bundle) {
    if (s.base_dim() != n) return std::nullopt;
    return Summand{s.fiber(), s.label(), s};
  }
  if (s.kind() == ManifoldKind::Product) {
    const auto& fs = s.children();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!(fs[i] == Manifold::sphere(n))) continue;
      std::vector<Manifold> rest;
      for (std::size_t j = 0; j < fs.size(); ++j) {
        if (j != i) rest.push_back(fs[j]);
      }
      Manifold fiber = rest.size() == 1 ? rest[0] : normalize(Manifold::product(rest));
      return Summand{fiber, "", s};
    }
  }
  return std::nullopt;
}

std::optional<int> infer_base(const std::vector<Manifold>& summands) {
  for (const auto& s : summands) {
    if (s.kind() == ManifoldKind::Bundle) return s.base_dim();
  }
  std::optional<int> best;
  for (const auto& s : summands) {
    if (s.kind() != ManifoldKind::Product) continue;
    for (const auto& f : s.children()) {
      if (f.is_standard_sphere() && 2 * f.dim() <= s.dim()) {
        best = best ? std::min(*best, f.dim()) : f.dim();
      }
    }
  }
  return best;
}

std::string standard_core_site(const Descriptor& d) {
  for (const auto& c : core_fiber(d)) {
    if (normalize(c.label).is_standard_sphere()) return c.id;
  }
  return {};
}

}  // namespace

Descriptor synthesize(const Manifold& e, std::optional<int> n_opt) {
  const Manifold ne = normalize(e);
  const int m = ne.dim();
  std::vector<Manifold> summands =
      ne.kind() == ManifoldKind::ConnectedSum ? ne.children() : std::vector<Manifold>{ne};
  const std::optional<int> n = n_opt ? n_opt : infer_base(summands);

  if (ne.kind() == ManifoldKind::Sphere) {
    if (!n) no_construction(to_text(ne) + " needs the base dimension n");
    if (*n < 1 || *n >= m) no_construction(to_text(ne) + " needs 1 <= n < m");
    Descriptor d;
    d.m = m;
    d.n = *n;
    d.events = {FoldEvent::birth("c1", Manifold::sphere(m - *n))};
    d.triviality = Triviality::Smooth;
    d.half_trace = *n == 1;
    require_valid(validate(d));
    return d;
  }
  if (!n) no_construction("cannot infer the base dimension of " + to_text(ne));

  std::vector<Summand> spheres;
  std::vector<Summand> others;
  for (const auto& s : summands) {
    auto b = as_bundle(s, *n);
    if (!b) no_construction("summand " + to_text(s) + " is not a bundle over S^" + std::to_string(*n));
    const Manifold fiber = normalize(b->fiber);
    if (fiber.is_standard_sphere()) {
      spheres.push_back(*b);
    } else if (fiber.is_sphere_like()) {
      if (summands.size() > 1) {
        no_construction("summand " + to_text(s) +
                        " has an exotic fiber and cannot be glued into a connected sum");
      }
      others.push_back(*b);
    } else {
      const auto conn = known_connectivity(fiber);
      if (summands.size() > 1 && (!conn || *conn < *n - 1)) {
        no_construction("summand " + to_text(s) + " has a fiber that is not known to be (n-1)-connected");
      }
      others.push_back(*b);
    }
  }
  if (summands.size() > 1 && m < 2 * *n) {
    no_construction("connected sums need m >= 2n, got m = " + std::to_string(m) +
                    ", n = " + std::to_string(*n));
  }
  if (summands.size() > 1 && others.size() > spheres.size() + 1) {
    no_construction("summand " + to_text(others.back().original) +
                    " needs a sphere site; add more sphere-bundle summands");
  }

  auto build = [&](const Summand& s) {
    try {
      return from_bundle(s.fiber, *n, s.twist);
    } catch (const Error& err) {
      no_construction("summand " + to_text(s.original) + ": " + err.what());
    }
  };

  std::vector<Summand> order = spheres;
  order.insert(order.end(), others.begin(), others.end());
  Descriptor acc = build(order.front());
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::string site = standard_core_site(acc);
    if (site.empty()) no_construction("summand " + to_text(order[k].original) + " has no sphere site");
    try {
      acc = combine(acc, site, build(order[k])).descriptor;
    } catch (const Error& err) {
      no_construction("summand " + to_text(order[k].original) + ": " + err.what());
    }
  }
  return acc;
}

std::string_view to_string(Dim5Verdict v) {
  switch (v) {
    case Dim5Verdict::Admits: return "admits";
    case Dim5Verdict::DoesNotAdmit: return "does_not_admit";
    case Dim5Verdict::Open: return "open";
    case Dim5Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

enum class SummandVerdict { Admits, Torsion, RationalSphere, Unknown };

SummandVerdict dim5_summand(const Manifold& s) {
  if (s.kind() == ManifoldKind::Named) {
    if (s.named_info().torsion_h2) return SummandVerdict::Torsion;
    if (s.named_info().rational_homology_sphere) return SummandVerdict::RationalSphere;
    return SummandVerdict::Unknown;
  }
  if (s.is_sphere_like()) return SummandVerdict::Admits;
  auto b = as_bundle(s, 2);
  if (b && normalize(b->fiber).is_sphere_like()) return SummandVerdict::Admits;
  return SummandVerdict::Unknown;
}

}  // namespace

Dim5Result dim5_recognize(const Manifold& e) {
  if (e.dim() != 5) {
    throw Error(ErrorKind::Scope, "the recognizer covers 5-manifolds mapped into the plane, got "
                                  "dimension " + std::to_string(e.dim()));
  }
  const Manifold ne = normalize(e);
  const std::vector<Manifold> summands =
      ne.kind() == ManifoldKind::ConnectedSum ? ne.children() : std::vector<Manifold>{ne};
  Dim5Result out;
  out.reference = "Theorem 5";
  bool open = false;
  for (const auto& s : summands) {
    switch (dim5_summand(s)) {
      case SummandVerdict::Torsion:
        out.verdict = Dim5Verdict::DoesNotAdmit;
        out.reference = "Proposition 3";
        out.reason = "H_2 of " + to_text(s) +
                     " has torsion, while such a map forces pi_2(M) = H_2(M; Z) to be free";
        return out;
      case SummandVerdict::RationalSphere:
        open = true;
        out.reason = "open per Remark 4: " + to_text(s) + " is a rational homology sphere";
        break;
      case SummandVerdict::Unknown:
        if (!open) {
          out.verdict = Dim5Verdict::Undetermined;
          out.reason = "no bundle decomposition known for " + to_text(s);
        }
        break;
      case SummandVerdict::Admits:
        break;
    }
  }
  if (open) {
    out.verdict = Dim5Verdict::Open;
    out.reference = "Remark 4";
    return out;
  }
  if (out.verdict == Dim5Verdict::Undetermined && !out.reason.empty()) return out;
  try {
    out.witness = synthesize(ne, 2);
  } catch (const Error& err) {
    out.verdict = Dim5Verdict::Undetermined;
    out.reason = err.what();
    return out;
  }
  out.verdict = Dim5Verdict::Admits;
  out.reason = "connected sum of S^3-bundles over S^2";
  return out;
}

Dim5Result dim5_recognize(const Descriptor& d) {
  if (d.m != 5 || d.n != 2) {
    throw Error(ErrorKind::Scope, "the recognizer covers m = 5, n = 2, got m = " +
                                      std::to_string(d.m) + ", n = " + std::to_string(d.n));
  }
  require_valid(validate(d));
  Dim5Result out;
  out.reference = "Theorem 5";
  if (!in_prop1_class(d)) {
    out.reason = "fibers are not all almost-spheres or some fold index exceeds 1";
    return out;
  }
  if (simply_connected(d) != true) {
    out.reason = "source is not known to be simply connected";
    return out;
  }
  out.verdict = Dim5Verdict::Admits;
  out.witness = d;
  out.reason = "the descriptor itself is a witness";
  const ClassificationResult c = classify(d);
  if (c.manifold) out.reason += "; source " + to_text(*c.manifold);
  return out;
}

}  // namespace rfm

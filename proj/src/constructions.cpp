#include "rfm/constructions.hpp"

#include <algorithm>

namespace rfm {

std::optional<int> trace_fiber_dim(const MorseTrace& t) {
  if (!t.boundary.empty()) return t.boundary.front().label.dim();
  for (const auto& a : t.actions) {
    if (!a.produced.empty()) return a.produced.front().label.dim();
    if (a.before) return a.before->dim();
  }
  return std::nullopt;
}

ValidationReport validate_trace(const MorseTrace& t) {
  ValidationReport report;
  const auto dim = trace_fiber_dim(t);
  if (!dim) {
    report.violations.push_back({std::nullopt, "trace has no labelled level set"});
    return report;
  }
  for (std::size_t i = 0; i < t.boundary.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (t.boundary[i].id == t.boundary[j].id) {
        report.violations.push_back({std::nullopt, "duplicate boundary id " + t.boundary[i].id});
      }
    }
    if (t.boundary[i].label.dim() != *dim) {
      report.violations.push_back({std::nullopt, "boundary component " + t.boundary[i].id +
                                                     " has the wrong dimension"});
    }
  }
  report.fibers = replay_events(t.actions, t.boundary, *dim, (*dim + 1) / 2,
                                /*sphere_births=*/true, report.violations);
  if (report.ok() && !report.fibers.back().empty()) {
    report.violations.push_back({std::nullopt, "trace does not terminate at empty fiber"});
  }
  if (!report.ok()) report.fibers.clear();
  return report;
}

namespace {

const Manifold& label_in(const FiberConfiguration& cfg, const std::string& id) {
  for (const auto& c : cfg) {
    if (c.id == id) return c.label;
  }
  throw Error(ErrorKind::Structural, "component " + id + " missing from trace level");
}

FoldEvent invert(const FoldEvent& a, const FiberConfiguration& before) {
  FoldEvent e;
  switch (a.kind) {
    case EventKind::Death:
      e = FoldEvent::birth(a.consumed[0], label_in(before, a.consumed[0]));
      break;
    case EventKind::Birth:
      e = FoldEvent::death(a.produced[0].id);
      break;
    case EventKind::Merge:
      e = FoldEvent::split(a.produced[0].id,
                           {a.consumed[0], label_in(before, a.consumed[0])},
                           {a.consumed[1], label_in(before, a.consumed[1])});
      break;
    case EventKind::Split:
      e = FoldEvent::merge(a.produced[0].id, a.produced[1].id,
                           {a.consumed[0], label_in(before, a.consumed[0])});
      break;
    case EventKind::Generic:
      e = FoldEvent::generic(a.index, a.produced[0].id, a.produced[0].label, *a.before,
                             *a.singular_euler);
      break;
  }
  e.twist = a.twist;
  return e;
}

bool is_birth_sphere(const Manifold& f) {
  return f.kind() == ManifoldKind::Sphere || f.kind() == ManifoldKind::AlmostSphere;
}

}  // namespace

Descriptor trivial_spinning(const MorseTrace& t, int n) {
  if (n < 1) throw Error(ErrorKind::Argument, "target dimension n must be >= 1");
  const ValidationReport tr = validate_trace(t);
  if (!tr.ok()) throw Error(ErrorKind::Validation, tr.summary());

  Descriptor d;
  d.n = n;
  d.m = *trace_fiber_dim(t) + n;
  for (std::size_t j = t.actions.size(); j-- > 0;) {
    d.events.push_back(invert(t.actions[j], tr.fibers[j]));
  }
  d.triviality = Triviality::Smooth;
  d.axis = t.source_label;
  d.half_trace = n == 1;
  require_valid(validate(d));
  return d;
}

MorseTrace default_cylinder_trace(const Manifold& f) {
  const Manifold fn = normalize(f);
  MorseTrace t;
  t.boundary = {{"b1", fn}, {"b2", fn}};
  if (is_birth_sphere(fn)) {
    t.actions = {FoldEvent::merge("b1", "b2", {"c1", fn}), FoldEvent::death("c1")};
    return t;
  }
  const auto& ch = fn.children();
  if (fn.kind() == ManifoldKind::Product && ch.size() == 2 && ch[0].is_standard_sphere() &&
      ch[1].is_standard_sphere() && ch[0].dim() >= 1 && ch[1].dim() >= 1) {
    const int a = ch[0].dim();
    const int b = ch[1].dim();
    const int k = a + b;
    const Manifold doubled = normalize(Manifold::connected_sum({fn, fn}));
    const Manifold top = Manifold::sphere(k);
    auto chi = [](const Manifold& x) { return euler_of_expr(x); };
    t.actions = {
        FoldEvent::merge("b1", "b2", {"c1", doubled}),
        FoldEvent::generic(std::min(a + 1, b), "c1", doubled, fn,
                           chi(doubled) - chi(Manifold::sphere(a)) + 1),
        FoldEvent::generic(std::min(b + 1, a), "c1", fn, top,
                           chi(fn) - chi(Manifold::sphere(b)) + 1),
        FoldEvent::death("c1"),
    };
    return t;
  }
  throw Error(ErrorKind::TraceRequired,
              "trace required: no default Morse function on " + to_text(fn) + " x [0,1]");
}

Descriptor from_bundle(const Manifold& f, int n, const std::string& twist,
                       const std::optional<MorseTrace>& trace) {
  if (f.dim() < 1) {
    throw Error(ErrorKind::Argument, "fiber " + to_text(f) + " must have dimension >= 1");
  }
  if (n < 1) throw Error(ErrorKind::Argument, "target dimension n must be >= 1");
  const Manifold fn = normalize(f);
  const std::string tag = twist.empty() ? kTrivialTwist : twist;

  Descriptor d;
  if (trace) {
    const auto& bd = trace->boundary;
    const bool two_copies = bd.size() == 2 && normalize(bd[0].label) == fn &&
                            normalize(bd[1].label) == fn;
    if (!two_copies) {
      throw Error(ErrorKind::Mismatch,
                  "trace boundary is not two copies of " + to_text(fn));
    }
    d = trivial_spinning(*trace, n);
  } else if (is_birth_sphere(fn)) {
    d.m = fn.dim() + n;
    d.n = n;
    d.events = {FoldEvent::birth("c1", fn),
                FoldEvent::split("c1", {"c2", fn}, {"c3", fn})};
    d.half_trace = n == 1;
  } else {
    d = trivial_spinning(default_cylinder_trace(fn), n);
  }
  d.events.back().twist = tag;
  d.axis = AxisFiber::cylinder(fn);
  d.triviality = Triviality::Smooth;
  d = canonicalize_ids(d);
  require_valid(validate(d));
  return d;
}

Descriptor iterated_bundle_spin(const std::vector<Manifold>& fibers, int n,
                                const std::vector<std::string>& twists,
                                bool restriction_trivial,
                                const std::optional<MorseTrace>& trace) {
  if (fibers.empty()) throw Error(ErrorKind::Argument, "iterated bundle needs at least one fiber");
  std::string joined;
  for (const auto& t : twists) {
    if (t.empty()) continue;
    if (!joined.empty()) joined += ";";
    joined += t;
  }
  if (fibers.size() == 1) return from_bundle(fibers[0], n, joined, trace);
  if (!restriction_trivial) {
    throw Error(ErrorKind::Hypothesis,
                "iterated bundle spinning needs the assertion that each stage restricts "
                "trivially to the previous fiber");
  }
  Descriptor d = from_bundle(Manifold::product(fibers), n, joined, trace);
  d.restriction_trivial = true;
  return d;
}

std::optional<std::string> bundle_twist(const Descriptor& d) {
  for (auto it = d.events.rbegin(); it != d.events.rend(); ++it) {
    if (it->twist) return it->twist;
  }
  return std::nullopt;
}

}  // namespace rfm

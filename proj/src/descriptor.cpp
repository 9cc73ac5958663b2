#include "rfm/descriptor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rfm {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Birth: return "Birth";
    case EventKind::Death: return "Death";
    case EventKind::Split: return "Split";
    case EventKind::Merge: return "Merge";
    case EventKind::Generic: return "Generic";
  }
  return "?";
}

std::string_view to_string(Triviality t) {
  switch (t) {
    case Triviality::None: return "none";
    case Triviality::Topological: return "top";
    case Triviality::PL: return "pl";
    case Triviality::Smooth: return "smooth";
  }
  return "none";
}

std::optional<Triviality> triviality_from_string(std::string_view s) {
  if (s == "none") return Triviality::None;
  if (s == "top") return Triviality::Topological;
  if (s == "pl") return Triviality::PL;
  if (s == "smooth") return Triviality::Smooth;
  return std::nullopt;
}

FoldEvent FoldEvent::birth(std::string id, Manifold label) {
  FoldEvent e;
  e.kind = EventKind::Birth;
  e.index = 0;
  e.produced.push_back({std::move(id), std::move(label)});
  return e;
}

FoldEvent FoldEvent::death(std::string id) {
  FoldEvent e;
  e.kind = EventKind::Death;
  e.index = 0;
  e.consumed.push_back(std::move(id));
  return e;
}

FoldEvent FoldEvent::split(std::string from, Component a, Component b) {
  FoldEvent e;
  e.kind = EventKind::Split;
  e.index = 1;
  e.consumed.push_back(std::move(from));
  e.produced.push_back(std::move(a));
  e.produced.push_back(std::move(b));
  return e;
}

FoldEvent FoldEvent::merge(std::string a, std::string b, Component into) {
  FoldEvent e;
  e.kind = EventKind::Merge;
  e.index = 1;
  e.consumed.push_back(std::move(a));
  e.consumed.push_back(std::move(b));
  e.produced.push_back(std::move(into));
  return e;
}

FoldEvent FoldEvent::generic(int index, std::string id, Manifold before, Manifold after,
                             std::int64_t singular_euler) {
  FoldEvent e;
  e.kind = EventKind::Generic;
  e.index = index;
  e.consumed.push_back(id);
  e.produced.push_back({std::move(id), std::move(after)});
  e.before = std::move(before);
  e.singular_euler = singular_euler;
  return e;
}

FoldEvent FoldEvent::with_twist(std::string label) const {
  FoldEvent e = *this;
  e.twist = std::move(label);
  return e;
}

AxisFiber AxisFiber::cylinder(Manifold f) {
  AxisFiber a;
  a.kind = AxisKind::Cylinder;
  a.fiber = std::move(f);
  return a;
}

AxisFiber AxisFiber::punctured(Manifold f, int holes) {
  AxisFiber a;
  a.kind = AxisKind::PuncturedCylinder;
  a.fiber = std::move(f);
  a.holes = holes;
  return a;
}

AxisFiber AxisFiber::with_boundary(std::string name, std::vector<Manifold> boundary) {
  AxisFiber a;
  a.kind = AxisKind::NamedWithBoundary;
  a.name = std::move(name);
  a.boundary = std::move(boundary);
  return a;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : violations) {
    if (!first) os << "; ";
    first = false;
    if (v.event) os << "event " << (*v.event + 1) << ": ";
    os << v.message;
  }
  return os.str();
}

int max_fold_index(int m, int n) { return (m - n + 1) / 2; }

namespace {

std::size_t expected_consumed(EventKind k) {
  switch (k) {
    case EventKind::Birth: return 0;
    case EventKind::Merge: return 2;
    default: return 1;
  }
}

std::size_t expected_produced(EventKind k) {
  switch (k) {
    case EventKind::Death: return 0;
    case EventKind::Split: return 2;
    default: return 1;
  }
}

auto find_component(FiberConfiguration& cfg, const std::string& id) {
  return std::find_if(cfg.begin(), cfg.end(), [&](const Component& c) { return c.id == id; });
}

}  // namespace

std::vector<FiberConfiguration> replay_events(const std::vector<FoldEvent>& events,
                                              const FiberConfiguration& initial,
                                              int fiber_dim, int max_index,
                                              bool sphere_births,
                                              std::vector<Violation>& violations) {
  std::vector<FiberConfiguration> states;
  states.reserve(events.size() + 1);
  states.push_back(initial);
  std::set<std::string> used;
  for (const auto& c : initial) used.insert(c.id);

  for (std::size_t k = 0; k < events.size(); ++k) {
    const FoldEvent& ev = events[k];
    FiberConfiguration cfg = states.back();
    auto fail = [&](const std::string& msg) { violations.push_back({k, msg}); };
    const std::string kind_name{to_string(ev.kind)};

    if (ev.consumed.size() != expected_consumed(ev.kind) ||
        ev.produced.size() != expected_produced(ev.kind)) {
      fail(kind_name + " has the wrong number of components");
      states.push_back(std::move(cfg));
      continue;
    }
    switch (ev.kind) {
      case EventKind::Birth:
      case EventKind::Death:
        if (ev.index != 0) fail(kind_name + " must have index 0");
        break;
      case EventKind::Split:
      case EventKind::Merge:
        if (ev.index != 1) fail(kind_name + " must have index 1");
        break;
      case EventKind::Generic:
        if (ev.index < 1) fail("Generic fold must have index >= 1");
        if (!ev.before || !ev.singular_euler) {
          fail("Generic fold must declare its before label and singular fiber Euler number");
        }
        break;
    }
    if (ev.index > max_index) {
      fail("fold index " + std::to_string(ev.index) + " exceeds the bound " +
           std::to_string(max_index));
    }

    bool absent = false;
    for (const auto& id : ev.consumed) {
      if (find_component(cfg, id) == cfg.end()) {
        fail(kind_name + " on absent component " + id);
        absent = true;
      }
    }
    if (ev.kind == EventKind::Merge && ev.consumed[0] == ev.consumed[1]) {
      fail("Merge of component " + ev.consumed[0] + " with itself");
      absent = true;
    }
    if (absent) {
      states.push_back(std::move(cfg));
      continue;
    }
    if (ev.kind == EventKind::Generic) {
      auto it = find_component(cfg, ev.consumed[0]);
      if (ev.before && normalize(*ev.before) != normalize(it->label)) {
        fail("Generic before-label " + to_text(*ev.before) + " does not match component " +
             it->id + " = " + to_text(it->label));
      }
    }

    for (const auto& p : ev.produced) {
      const bool reuse = ev.kind == EventKind::Generic && p.id == ev.consumed[0];
      if (!reuse && used.count(p.id)) fail("duplicate component id " + p.id);
      if (p.label.dim() != fiber_dim) {
        fail("component " + p.id + " has dimension " + std::to_string(p.label.dim()) +
             ", expected " + std::to_string(fiber_dim));
      }
      used.insert(p.id);
    }
    if (ev.kind == EventKind::Birth && sphere_births) {
      const Manifold& lbl = ev.produced[0].label;
      if (lbl.kind() != ManifoldKind::Sphere && lbl.kind() != ManifoldKind::AlmostSphere) {
        fail("Birth component " + ev.produced[0].id + " must be a sphere or almost-sphere, got " +
             to_text(lbl));
      }
    }

    // Replace in place to keep creation order stable.
    std::size_t pos = cfg.size();
    for (const auto& id : ev.consumed) {
      auto it = find_component(cfg, id);
      pos = std::min<std::size_t>(pos, static_cast<std::size_t>(it - cfg.begin()));
      cfg.erase(it);
    }
    pos = std::min(pos, cfg.size());
    cfg.insert(cfg.begin() + static_cast<std::ptrdiff_t>(pos), ev.produced.begin(),
               ev.produced.end());
    states.push_back(std::move(cfg));
  }
  return states;
}

ValidationReport validate(const Descriptor& d) {
  ValidationReport report;
  auto& v = report.violations;
  if (d.n < 1) v.push_back({std::nullopt, "target dimension n must be >= 1"});
  if (d.m < d.n) v.push_back({std::nullopt, "source dimension m must be >= n"});
  if (d.events.empty()) v.push_back({std::nullopt, "descriptor has no fold events"});
  if (d.half_trace && d.n != 1) v.push_back({std::nullopt, "half-trace form requires n = 1"});
  if (!v.empty()) return report;

  report.fibers = replay_events(d.events, {}, d.fiber_dim(), max_fold_index(d.m, d.n),
                                /*sphere_births=*/true, v);

  if (d.axis && v.empty()) {
    const FiberConfiguration& core = report.fibers.back();
    const AxisFiber& ax = *d.axis;
    if (ax.fiber && ax.fiber->dim() != d.fiber_dim()) {
      v.push_back({std::nullopt, "axis fiber " + to_text(*ax.fiber) + " has the wrong dimension"});
    } else if (ax.kind == AxisKind::Cylinder) {
      const Manifold f = normalize(*ax.fiber);
      const auto copies = std::count_if(core.begin(), core.end(), [&](const Component& c) {
        return normalize(c.label) == f;
      });
      if (copies < 2) {
        v.push_back({std::nullopt, "axis is a cylinder on " + to_text(f) +
                                       " but the proper core fiber lacks two copies of it"});
      }
    } else if (ax.kind == AxisKind::PuncturedCylinder && ax.holes < 1) {
      v.push_back({std::nullopt, "punctured cylinder needs a positive number of holes"});
    }
  }
  if (!v.empty()) report.fibers.clear();
  return report;
}

const ValidationReport& require_valid(const ValidationReport& report) {
  if (!report.ok()) throw Error(ErrorKind::Validation, report.summary());
  return report;
}

std::vector<FiberConfiguration> regular_fibers(const Descriptor& d) {
  ValidationReport r = validate(d);
  require_valid(r);
  return std::move(r.fibers);
}

FiberConfiguration core_fiber(const Descriptor& d) { return regular_fibers(d).back(); }

std::size_t ComponentForest::degree(std::size_t vertex) const {
  std::size_t deg = 0;
  for (const auto& e : edges) {
    if (e.outer == vertex) ++deg;
    if (e.inner == vertex) ++deg;
  }
  return deg;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool contains(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool produces(const FoldEvent& ev, const std::string& id) {
  return std::any_of(ev.produced.begin(), ev.produced.end(),
                     [&](const Component& c) { return c.id == id; });
}

}  // namespace

ComponentForest component_forest(const Descriptor& d) {
  const auto fibers = regular_fibers(d);
  const std::size_t l = d.l();
  ComponentForest forest;

  for (std::size_t k = 0; k < l; ++k) forest.vertices.push_back({VertexKind::Event, k, {}});
  std::map<std::pair<std::size_t, std::string>, std::size_t> passive;
  auto boundary_vertex = [&](std::size_t k, const std::string& id) -> std::size_t {
    // Vertex on fold k (0-based) where the component `id` crosses it.
    const FoldEvent& ev = d.events[k];
    if (contains(ev.consumed, id) || produces(ev, id)) return k;
    auto key = std::make_pair(k, id);
    auto it = passive.find(key);
    if (it != passive.end()) return it->second;
    forest.vertices.push_back({VertexKind::Passive, k, id});
    passive.emplace(key, forest.vertices.size() - 1);
    return forest.vertices.size() - 1;
  };

  for (std::size_t r = 1; r <= l; ++r) {
    for (const auto& c : fibers[r]) {
      ForestEdge e;
      e.region = r;
      e.component = c.id;
      e.outer = boundary_vertex(r - 1, c.id);
      if (r < l) {
        e.inner = boundary_vertex(r, c.id);
      } else {
        forest.vertices.push_back({VertexKind::Cap, l, c.id});
        e.inner = forest.vertices.size() - 1;
        forest.capped_leaves.push_back(e.inner);
      }
      forest.edges.push_back(std::move(e));
    }
  }
  for (std::size_t k = 0; k < l; ++k) {
    if (d.events[k].kind == EventKind::Birth || d.events[k].kind == EventKind::Death) {
      forest.free_leaves.push_back(k);
    }
  }

  DisjointSets sets(forest.vertices.size());
  for (const auto& e : forest.edges) sets.unite(e.outer, e.inner);
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < forest.vertices.size(); ++v) roots.insert(sets.find(v));
  forest.connected_components = roots.size();
  forest.cycle_count =
      forest.edges.size() + forest.connected_components - forest.vertices.size();
  return forest;
}

Descriptor canonicalize_ids(const Descriptor& d) {
  std::map<std::string, std::string> rename;
  auto name = [&](const std::string& id) -> const std::string& {
    auto it = rename.find(id);
    if (it == rename.end()) {
      it = rename.emplace(id, "c" + std::to_string(rename.size() + 1)).first;
    }
    return it->second;
  };
  Descriptor out = d;
  for (auto& ev : out.events) {
    for (auto& id : ev.consumed) id = name(id);
    for (auto& p : ev.produced) p.id = name(p.id);
  }
  return out;
}

}  // namespace rfm

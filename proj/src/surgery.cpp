#include "rfm/surgery.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rfm/reeb.hpp"

namespace rfm {

namespace {

std::set<std::string> all_ids(const Descriptor& d) {
  std::set<std::string> ids;
  for (const auto& ev : d.events) {
    for (const auto& id : ev.consumed) ids.insert(id);
    for (const auto& p : ev.produced) ids.insert(p.id);
  }
  return ids;
}

std::string fresh_id(std::set<std::string>& taken) {
  for (std::size_t k = taken.size() + 1;; ++k) {
    std::string id = "c" + std::to_string(k);
    if (taken.insert(id).second) return id;
  }
}

void require_surgery_dims(const Descriptor& f, const char* what) {
  if (f.m < 2 * f.n) {
    throw Error(ErrorKind::Hypothesis, std::string(what) + " needs m >= 2n, got m = " +
                                           std::to_string(f.m) + ", n = " + std::to_string(f.n));
  }
}

bool all_fibers_sphere_like(const Descriptor& d) {
  for (const auto& cfg : regular_fibers(d)) {
    for (const auto& c : cfg) {
      if (!normalize(c.label).is_sphere_like()) return false;
    }
  }
  return true;
}

/// How pi_{n-1}(M2) = 0 is known for f2, if it is.
std::optional<std::string> null_homotopy_reason(const Descriptor& f2) {
  if (in_prop1_class(f2) && simply_connected(f2) == true) {
    return "null-homotopy derived: f2 has almost-sphere fibers, indices 0 and 1, and a "
           "simply connected source";
  }
  if (f2.axis && f2.axis->kind == AxisKind::Cylinder && f2.triviality >= Triviality::Topological) {
    const auto conn = known_connectivity(*f2.axis->fiber);
    if (conn && *conn >= f2.n - 1) {
      return "null-homotopy derived: f2 is a bundle over S^n whose fiber " +
             to_text(*f2.axis->fiber) + " is (n-1)-connected";
    }
  }
  if (f2.n == 2 && f2.simply_connected == true) {
    return "null-homotopy derived: f2 has a declared simply connected source and n = 2";
  }
  return std::nullopt;
}

}  // namespace

SurgeryResult combine(const Descriptor& f1, const std::string& component, const Descriptor& f2,
                      bool assume_null_homotopic) {
  if (f1.m != f2.m || f1.n != f2.n) {
    throw Error(ErrorKind::Argument, "combined maps must share (m, n)");
  }
  require_surgery_dims(f1, "combining");
  const FiberConfiguration core1 = core_fiber(f1);
  require_valid(validate(f2));

  auto site = std::find_if(core1.begin(), core1.end(),
                           [&](const Component& c) { return c.id == component; });
  if (site == core1.end()) {
    throw Error(ErrorKind::Site, "component " + component + " is not in the proper core of f1");
  }
  if (!normalize(site->label).is_standard_sphere()) {
    throw Error(ErrorKind::Site, "core component " + component + " is " + to_text(site->label) +
                                     ", not a standard sphere");
  }

  SurgeryResult out;
  const FoldEvent& first = f2.events.front();
  if (first.kind != EventKind::Birth) {
    throw Error(ErrorKind::Hypothesis, "f2's outermost fold is not a Birth");
  }
  if (!normalize(first.produced[0].label).is_standard_sphere()) {
    if (!assume_null_homotopic) {
      throw Error(ErrorKind::Hypothesis, "f2's outermost fold births " +
                                             to_text(first.produced[0].label) +
                                             ", not a standard sphere");
    }
    out.provenance.push_back("outermost almost-sphere of f2 accepted by caller assertion");
  }
  if (auto reason = null_homotopy_reason(f2)) {
    out.provenance.push_back(*reason);
  } else if (assume_null_homotopic) {
    out.provenance.push_back("null-homotopy asserted by caller");
  } else {
    throw Error(ErrorKind::Hypothesis,
                "cannot derive the null-homotopy hypothesis for f2; pass "
                "--assume-null-homotopic to assert it");
  }

  std::set<std::string> taken = all_ids(f1);
  std::map<std::string, std::string> rename;
  rename[first.produced[0].id] = component;
  auto mapped = [&](const std::string& id) {
    auto it = rename.find(id);
    if (it != rename.end()) return it->second;
    std::string to = taken.count(id) ? fresh_id(taken) : id;
    taken.insert(to);
    rename[id] = to;
    return to;
  };

  Descriptor& d = out.descriptor;
  d.m = f1.m;
  d.n = f1.n;
  d.events = f1.events;
  for (std::size_t k = 1; k < f2.events.size(); ++k) {
    FoldEvent ev = f2.events[k];
    for (auto& id : ev.consumed) id = mapped(id);
    for (auto& p : ev.produced) p.id = mapped(p.id);
    d.events.push_back(std::move(ev));
  }
  d.triviality = std::min(f1.triviality, f2.triviality);
  d.half_trace = f1.half_trace;
  d.restriction_trivial = f1.restriction_trivial || f2.restriction_trivial;
  if (f1.simply_connected && f2.simply_connected) {
    d.simply_connected = *f1.simply_connected && *f2.simply_connected;
  }

  const FiberConfiguration core2 = core_fiber(f2);
  if (!f1.axis) {
    if (core1.size() == 1) d.axis = f2.axis;
  } else if (f1.axis->kind != AxisKind::NamedWithBoundary && all_fibers_sphere_like(f2)) {
    const int holes = (f1.axis->kind == AxisKind::PuncturedCylinder ? f1.axis->holes : 0) +
                      static_cast<int>(core2.size()) - 1;
    d.axis = holes > 0 ? AxisFiber::punctured(*f1.axis->fiber, holes) : f1.axis;
  } else {
    std::vector<Manifold> boundary;
    for (const auto& c : core_fiber(d)) boundary.push_back(normalize(c.label));
    d.axis = AxisFiber::with_boundary("combined", std::move(boundary));
  }
  require_valid(validate(d));
  out.provenance.insert(out.provenance.begin(), "M = M1 # M2 (combined at core component " +
                                                    component + ")");
  return out;
}

SurgeryResult combine_iterated(const Descriptor& f1, std::vector<std::string> sites,
                               const std::vector<Descriptor>& maps, bool assume_null_homotopic) {
  const FiberConfiguration core = core_fiber(f1);
  std::vector<std::string> spheres;
  for (const auto& c : core) {
    if (normalize(c.label).is_standard_sphere()) spheres.push_back(c.id);
  }
  if (spheres.size() < maps.size()) {
    throw Error(ErrorKind::SiteExhaustion,
                "f1 has " + std::to_string(spheres.size()) +
                    " standard-sphere core components but " + std::to_string(maps.size()) +
                    " maps were given");
  }
  if (sites.empty()) {
    sites.assign(spheres.begin(), spheres.begin() + static_cast<std::ptrdiff_t>(maps.size()));
  }
  if (sites.size() != maps.size()) {
    throw Error(ErrorKind::Argument, "one site is needed per combined map");
  }
  SurgeryResult out{f1, {}};
  for (std::size_t j = 0; j < maps.size(); ++j) {
    SurgeryResult step = combine(out.descriptor, sites[j], maps[j], assume_null_homotopic);
    out.descriptor = std::move(step.descriptor);
    for (auto& p : step.provenance) out.provenance.push_back(std::move(p));
  }
  return out;
}

DecomposeResult decompose(const Descriptor& f, std::size_t region, const std::string& component,
                          bool assume_null_homotopic) {
  require_surgery_dims(f, "decomposing");
  const auto fibers = regular_fibers(f);
  const std::size_t l = f.l();
  if (region < 1 || region > l) {
    throw Error(ErrorKind::Site, "region " + std::to_string(region) + " is outside 1.." +
                                     std::to_string(l));
  }
  const auto& cfg = fibers[region];
  auto site = std::find_if(cfg.begin(), cfg.end(),
                           [&](const Component& c) { return c.id == component; });
  if (site == cfg.end()) {
    throw Error(ErrorKind::Site, "component " + component + " is not alive in region " +
                                     std::to_string(region));
  }
  if (!normalize(site->label).is_standard_sphere()) {
    throw Error(ErrorKind::Site, "fiber component " + component + " is " +
                                     to_text(site->label) + ", not a standard sphere");
  }

  DecomposeResult out;
  if (in_prop1_class(f) && simply_connected(f) == true) {
    out.provenance.push_back("null-homotopy derived: almost-sphere fibers, indices 0 and 1, "
                             "simply connected source");
  } else if (assume_null_homotopic) {
    out.provenance.push_back("null-homotopy asserted by caller");
  } else {
    throw Error(ErrorKind::Hypothesis,
                "cannot derive the null-homotopy hypothesis; pass --assume-null-homotopic to "
                "assert it");
  }

  std::set<std::string> piece{component};
  std::vector<bool> in_piece(l, false);
  for (std::size_t k = region; k < l; ++k) {
    const FoldEvent& ev = f.events[k];
    const auto hits = std::count_if(ev.consumed.begin(), ev.consumed.end(),
                                    [&](const std::string& id) { return piece.count(id) > 0; });
    if (hits == 0) continue;
    if (hits != static_cast<long>(ev.consumed.size())) {
      throw Error(ErrorKind::NotSeparable,
                  "not separable at this site: event " + std::to_string(k + 1) +
                      " merges the piece with a component outside it");
    }
    in_piece[k] = true;
    for (const auto& p : ev.produced) piece.insert(p.id);
  }

  const bool empty_piece = std::none_of(in_piece.begin(), in_piece.end(), [](bool b) { return b; });
  auto shell = [&]() {
    Descriptor d;
    d.m = f.m;
    d.n = f.n;
    d.triviality = f.triviality;
    d.half_trace = f.half_trace;
    d.restriction_trivial = f.restriction_trivial;
    return d;
  };
  out.f1 = shell();
  out.f2 = shell();
  out.f2.events.push_back(FoldEvent::birth(component, Manifold::sphere(f.fiber_dim())));
  for (std::size_t k = 0; k < l; ++k) {
    (in_piece[k] ? out.f2 : out.f1).events.push_back(f.events[k]);
  }
  if (empty_piece) {
    out.f1.axis = f.axis;
    out.f1.simply_connected = f.simply_connected;
  }
  require_valid(validate(out.f1));
  require_valid(validate(out.f2));
  out.provenance.insert(out.provenance.begin(),
                        "M = M1 # M2 (decomposed at component " + component + " of region " +
                            std::to_string(region) + ")");
  return out;
}

bool isomorphic(const Descriptor& a, const Descriptor& b) {
  return a.m == b.m && a.n == b.n && canonicalize_ids(a).events == canonicalize_ids(b).events;
}

namespace {

std::string event_head(const FoldEvent& ev) {
  std::string s{to_string(ev.kind)};
  s += "/" + std::to_string(ev.index);
  if (ev.twist) s += "/t:" + *ev.twist;
  if (ev.before) s += "/" + to_text(normalize(*ev.before));
  if (ev.singular_euler) s += "/x" + std::to_string(*ev.singular_euler);
  return s;
}

// Canonical text of the event tree hanging below `k`.
struct ForestPrinter {
  const Descriptor& d;
  std::vector<std::map<std::string, std::size_t>> consumer;  // per event: produced id -> consumer

  std::string print(std::size_t k) const {
    const FoldEvent& ev = d.events[k];
    std::vector<std::string> children;
    for (const auto& p : ev.produced) {
      std::string child = to_text(normalize(p.label)) + "->";
      auto it = consumer[k].find(p.id);
      child += it == consumer[k].end() ? std::string("core") : print(it->second);
      children.push_back(std::move(child));
    }
    std::sort(children.begin(), children.end());
    std::string s = event_head(ev) + "[";
    for (const auto& c : children) s += c + ",";
    return s + "]";
  }
};

std::optional<std::vector<std::string>> forest_key(const Descriptor& d) {
  ForestPrinter pr{d, std::vector<std::map<std::string, std::size_t>>(d.l())};
  std::map<std::string, std::size_t> producer;
  std::vector<std::string> roots;
  for (std::size_t k = 0; k < d.l(); ++k) {
    const FoldEvent& ev = d.events[k];
    if (ev.kind == EventKind::Merge) return std::nullopt;
    for (const auto& id : ev.consumed) pr.consumer[producer.at(id)][id] = k;
    for (const auto& p : ev.produced) producer[p.id] = k;
  }
  for (std::size_t k = 0; k < d.l(); ++k) {
    if (d.events[k].kind == EventKind::Birth) roots.push_back(pr.print(k));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

bool structurally_equivalent(const Descriptor& a, const Descriptor& b) {
  if (a.m != b.m || a.n != b.n) return false;
  require_valid(validate(a));
  require_valid(validate(b));
  const auto ka = forest_key(a);
  const auto kb = forest_key(b);
  if (!ka || !kb) return isomorphic(a, b);
  return *ka == *kb;
}

}  // namespace rfm

#pragma once

// Combinatorial normal form of a round fold map.
//
// Events sit on the concentric singular value spheres and are stored
// outermost first; event k (1-based) separates region k-1 from region k.
// Region 0 is the unbounded region (empty fiber) and region l is the proper
// core. Radii are never stored, only their order.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rfm/manifold.hpp"

namespace rfm {

enum class EventKind { Birth, Death, Split, Merge, Generic };

std::string_view to_string(EventKind kind);

/// Triviality tier of the surrounding bundle, ordered by strength.
enum class Triviality { None = 0, Topological = 1, PL = 2, Smooth = 3 };

std::string_view to_string(Triviality t);
std::optional<Triviality> triviality_from_string(std::string_view s);

struct Component {
  std::string id;
  Manifold label;

  friend bool operator==(const Component&, const Component&) = default;
};

/// One fold crossed inward. `consumed` lists components present just
/// outside the fold, `produced` those created just inside it.
struct FoldEvent {
  EventKind kind = EventKind::Birth;
  int index = 0;
  std::vector<std::string> consumed;
  std::vector<Component> produced;
  /// Generic events: label of the component before the fold.
  std::optional<Manifold> before;
  /// Generic events: declared Euler characteristic of the singular fiber.
  std::optional<std::int64_t> singular_euler;
  /// Marks the event closing a bundle piece, with its clutching label
  /// ("trivial" for the product bundle).
  std::optional<std::string> twist;

  static FoldEvent birth(std::string id, Manifold label);
  static FoldEvent death(std::string id);
  static FoldEvent split(std::string from, Component a, Component b);
  static FoldEvent merge(std::string a, std::string b, Component into);
  static FoldEvent generic(int index, std::string id, Manifold before, Manifold after,
                           std::int64_t singular_euler);

  FoldEvent with_twist(std::string label) const;

  friend bool operator==(const FoldEvent&, const FoldEvent&) = default;
};

enum class AxisKind { Cylinder, PuncturedCylinder, NamedWithBoundary };

/// Compact manifold with boundary describing the inverse image of an axis.
struct AxisFiber {
  AxisKind kind = AxisKind::Cylinder;
  std::optional<Manifold> fiber;  // Cylinder, PuncturedCylinder
  int holes = 0;                  // PuncturedCylinder
  std::string name;               // NamedWithBoundary
  std::vector<Manifold> boundary; // NamedWithBoundary

  static AxisFiber cylinder(Manifold f);
  static AxisFiber punctured(Manifold f, int holes);
  static AxisFiber with_boundary(std::string name, std::vector<Manifold> boundary);

  friend bool operator==(const AxisFiber&, const AxisFiber&) = default;
};

struct Descriptor {
  int m = 0;
  int n = 0;
  std::vector<FoldEvent> events;
  Triviality triviality = Triviality::None;
  std::optional<AxisFiber> axis;
  /// n = 1 descriptors store the inward half of a symmetric function.
  bool half_trace = false;
  /// Declared simple connectivity of the source, when known.
  std::optional<bool> simply_connected;
  /// Caller assertion that every iterated bundle stage restricts trivially.
  bool restriction_trivial = false;

  std::size_t l() const noexcept { return events.size(); }
  int fiber_dim() const noexcept { return m - n; }
  /// Number of singular spheres (n >= 2) or singular points (n = 1).
  std::size_t singular_component_count() const noexcept {
    return half_trace ? 2 * events.size() : events.size();
  }

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

/// Components alive in one region, in creation order.
using FiberConfiguration = std::vector<Component>;

struct Violation {
  std::optional<std::size_t> event;  // 0-based event position
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Region fibers, outermost (empty) first; l+1 entries when ok().
  std::vector<FiberConfiguration> fibers;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

/// Replays the events once and checks every descriptor invariant.
ValidationReport validate(const Descriptor& d);

/// Throws Validation with the report summary if `d` is invalid.
const ValidationReport& require_valid(const ValidationReport& report);

std::vector<FiberConfiguration> regular_fibers(const Descriptor& d);
FiberConfiguration core_fiber(const Descriptor& d);

/// Replays `events` from `initial`; shared with Morse traces. Returns the
/// configurations after each event (events.size()+1 entries).
std::vector<FiberConfiguration> replay_events(const std::vector<FoldEvent>& events,
                                              const FiberConfiguration& initial,
                                              int fiber_dim, int max_index,
                                              bool sphere_births,
                                              std::vector<Violation>& violations);

enum class VertexKind { Event, Passive, Cap };

struct ForestVertex {
  VertexKind kind = VertexKind::Event;
  /// 0-based event position (Event, Passive); l for caps.
  std::size_t event = 0;
  /// Passive and cap vertices name the component passing through.
  std::string component;
};

/// Edge of L: one component alive in one region.
struct ForestEdge {
  std::size_t region = 0;  // 1..l
  std::string component;
  std::size_t outer = 0;   // vertex index
  std::size_t inner = 0;   // vertex index
};

/// The radial component graph L. Vertices are fold events, passive
/// crossings and caps over the proper core; edges are (region, component).
struct ComponentForest {
  std::vector<ForestVertex> vertices;
  std::vector<ForestEdge> edges;
  std::vector<std::size_t> capped_leaves;
  std::vector<std::size_t> free_leaves;
  std::size_t connected_components = 0;
  std::size_t cycle_count = 0;

  bool connected() const noexcept { return connected_components == 1; }
  bool is_tree() const noexcept { return connected() && cycle_count == 0; }
  std::size_t degree(std::size_t vertex) const;
};

ComponentForest component_forest(const Descriptor& d);

/// Renames component ids to c1, c2, ... in order of first appearance.
Descriptor canonicalize_ids(const Descriptor& d);

/// Fold index bound floor((m-n+1)/2).
int max_fold_index(int m, int n);

}  // namespace rfm

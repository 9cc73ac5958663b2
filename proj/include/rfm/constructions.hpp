#pragma once

// Builders for round fold maps obtained by spinning Morse functions.

#include <optional>
#include <string>
#include <vector>

#include "rfm/descriptor.hpp"

namespace rfm {

/// Skeleton of a Morse function on a compact manifold whose minimum level is
/// its boundary. Actions are listed in increasing critical value and use the
/// same event vocabulary as descriptors (index = fold index).
struct MorseTrace {
  std::vector<Component> boundary;
  std::vector<FoldEvent> actions;
  std::optional<AxisFiber> source_label;

  friend bool operator==(const MorseTrace&, const MorseTrace&) = default;
};

/// Dimension of the level sets, or nullopt when the trace carries no label.
std::optional<int> trace_fiber_dim(const MorseTrace& t);

/// Replays the actions from the boundary; the last level must be empty.
ValidationReport validate_trace(const MorseTrace& t);

/// Revolves the trace around S^{n-1}. The outermost fold carries the
/// maximum, the proper core carries the boundary.
Descriptor trivial_spinning(const MorseTrace& t, int n);

/// Two-copy boundary trace on F x [0,1] with one critical point per cell of
/// the product of two spheres (or the two-point trace for a sphere). Throws
/// TraceRequired for any other F.
MorseTrace default_cylinder_trace(const Manifold& f);

/// Round fold map on the total space of an F-bundle over S^n. `twist`
/// empty means the product bundle.
Descriptor from_bundle(const Manifold& f, int n, const std::string& twist,
                       const std::optional<MorseTrace>& trace = std::nullopt);

/// Iterated bundles whose fiber is the product of `fibers`. Needs the
/// caller's restriction-triviality assertion when more than one fiber.
Descriptor iterated_bundle_spin(const std::vector<Manifold>& fibers, int n,
                                const std::vector<std::string>& twists,
                                bool restriction_trivial,
                                const std::optional<MorseTrace>& trace = std::nullopt);

/// Twist label recorded on a descriptor built by from_bundle, if any.
std::optional<std::string> bundle_twist(const Descriptor& d);

/// Label used on descriptors for the product bundle.
inline constexpr const char* kTrivialTwist = "trivial";

}  // namespace rfm

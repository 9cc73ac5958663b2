#pragma once

// Combining and decomposing surgery on round fold maps. Both realize a
// connected sum of the source manifolds.

#include <string>
#include <vector>

#include "rfm/descriptor.hpp"

namespace rfm {

struct SurgeryResult {
  Descriptor descriptor;
  /// Human-readable bookkeeping, e.g. "M = M1 # M2" and how each
  /// hypothesis was discharged.
  std::vector<std::string> provenance;
};

/// Glues f2 into the proper-core sphere `component` of f1. The
/// null-homotopy hypothesis on f2 is derived when possible, otherwise
/// `assume_null_homotopic` must be set.
SurgeryResult combine(const Descriptor& f1, const std::string& component, const Descriptor& f2,
                      bool assume_null_homotopic = false);

/// Left fold of combine. Empty `sites` picks the standard-sphere core
/// components of f1 in core order.
SurgeryResult combine_iterated(const Descriptor& f1, std::vector<std::string> sites,
                               const std::vector<Descriptor>& maps,
                               bool assume_null_homotopic = false);

struct DecomposeResult {
  Descriptor f1;
  Descriptor f2;
  std::vector<std::string> provenance;
};

/// Cuts f at the standard-sphere component `component` of region `region`
/// (1 = outermost annulus, l = proper core). f2 receives the events that
/// descend from the component, capped by a fresh outermost Birth.
DecomposeResult decompose(const Descriptor& f, std::size_t region, const std::string& component,
                          bool assume_null_homotopic = false);

/// Same (m, n) and the same event sequence up to component renaming.
bool isomorphic(const Descriptor& a, const Descriptor& b);

/// Same (m, n) and the same event forest up to renaming and reordering of
/// independent events. Descriptors containing merges must be isomorphic.
bool structurally_equivalent(const Descriptor& a, const Descriptor& b);

}  // namespace rfm

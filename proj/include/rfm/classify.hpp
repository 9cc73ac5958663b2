#pragma once

// Recognition of source manifolds from descriptors and the converse
// synthesis of descriptors from connected sums of bundles.

#include <optional>
#include <string>
#include <vector>

#include "rfm/descriptor.hpp"
#include "rfm/reeb.hpp"

namespace rfm {

/// How strongly the source is identified with the reported expression.
enum class Confidence { Unclassified = 0, Homeomorphism = 1, PL = 2, Diffeomorphism = 3 };

std::string_view to_string(Confidence c);
Confidence confidence_for(Triviality t);

struct RuleApplication {
  std::string rule;       // e.g. "bundle_axis"
  std::string reference;  // citation label, reported as data
  std::string conclusion;
  std::vector<HypothesisCheck> hypotheses;
};

struct ClassificationResult {
  std::optional<Manifold> manifold;
  Confidence confidence = Confidence::Unclassified;
  std::vector<RuleApplication> chain;
  /// Hypotheses of the nearest rules that did not fire (unclassified only).
  std::vector<HypothesisCheck> failed;
  std::vector<std::string> notes;

  bool classified() const noexcept { return manifold.has_value(); }
};

/// Label given to the unspecified element of the round special generic
/// group of (m, n).
std::string theta_label(int m, int n);

ClassificationResult classify(const Descriptor& d);

/// Builds a descriptor whose source is `e`. `n` is inferred from bundle
/// summands when omitted. Throws NoConstruction naming the blocking summand.
Descriptor synthesize(const Manifold& e, std::optional<int> n = std::nullopt);

enum class Dim5Verdict { Admits, DoesNotAdmit, Open, Undetermined };

std::string_view to_string(Dim5Verdict v);

struct Dim5Result {
  Dim5Verdict verdict = Dim5Verdict::Undetermined;
  std::string reason;
  std::string reference;
  std::optional<Descriptor> witness;
};

/// Decides whether a simply connected 5-manifold admits a round fold map
/// into the plane with almost-sphere fibers and indices 0 and 1. Throws
/// Scope outside m = 5, n = 2.
Dim5Result dim5_recognize(const Manifold& e);
Dim5Result dim5_recognize(const Descriptor& d);

}  // namespace rfm

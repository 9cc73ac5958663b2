#pragma once

// Built-in catalog of round fold maps with their expected sources.

#include <string>
#include <vector>

#include "rfm/descriptor.hpp"

namespace rfm {

struct Preset {
  std::string name;  // canonical call form, e.g. "special_generic(7,2)"
  std::string description;
  Descriptor descriptor;
  /// What classify() must return for the descriptor.
  Manifold expected = Manifold::sphere(1);
  /// Conventional name of the source, empty when it is just the expression.
  std::string known_as;
};

struct PresetEntry {
  std::string signature;  // e.g. "special_generic(m=7,n=2)"
  std::string description;
};

const std::vector<PresetEntry>& preset_catalog();

/// Builds a preset from `name` or `name(arg, ...)`. Throws UnknownPreset
/// or Argument.
Preset preset(const std::string& call);

std::string bott_label(int b, int c);

/// Default-argument instance of every catalog entry.
std::vector<Preset> all_presets();

}  // namespace rfm

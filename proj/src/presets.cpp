#include "rfm/presets.hpp"

#include <cctype>
#include <charconv>

#include "rfm/classify.hpp"
#include "rfm/constructions.hpp"
#include "rfm/surgery.hpp"

namespace rfm {

namespace {

Manifold S(int d) { return Manifold::sphere(d); }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

struct Call {
  std::string name;
  std::vector<std::string> args;
};

Call parse_call(const std::string& text) {
  Call c;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    c.name = trim(text);
    return c;
  }
  if (text.back() != ')') throw Error(ErrorKind::Argument, "malformed preset call: " + text);
  c.name = trim(std::string_view(text).substr(0, open));
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  if (trim(inner).empty()) return c;
  std::size_t start = 0;
  for (;;) {
    const auto comma = inner.find(',', start);
    c.args.push_back(trim(std::string_view(inner).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return c;
}

int int_arg(const Call& c, std::size_t i, int fallback) {
  if (i >= c.args.size()) return fallback;
  const std::string& s = c.args[i];
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorKind::Argument, c.name + ": argument " + std::to_string(i + 1) +
                                         " must be an integer, got '" + s + "'");
  }
  return v;
}

std::string str_arg(const Call& c, std::size_t i, const std::string& fallback) {
  return i < c.args.size() ? c.args[i] : fallback;
}

void arity(const Call& c, std::size_t max) {
  if (c.args.size() > max) {
    throw Error(ErrorKind::Argument, c.name + " takes at most " + std::to_string(max) +
                                         " arguments");
  }
}

Descriptor special_generic_map(int m, int n) {
  if (n < 1 || m <= n) {
    throw Error(ErrorKind::Argument, "special_generic needs m > n >= 1");
  }
  Descriptor d;
  d.m = m;
  d.n = n;
  d.events = {FoldEvent::birth("c1", S(m - n))};
  d.triviality = Triviality::Smooth;
  d.half_trace = n == 1;
  require_valid(validate(d));
  return d;
}

Descriptor bott3_map(int b, int c) {
  if (c % 2 != 0) {
    throw Error(ErrorKind::Hypothesis, "bott3 needs an even inner Chern datum c, got " +
                                           std::to_string(c));
  }
  return iterated_bundle_spin({S(2), S(2)}, 2, {bott_label(b, c)}, true);
}

}  // namespace

std::string bott_label(int b, int c) {
  return "bott3(" + std::to_string(b) + "," + std::to_string(c) + ")";
}

const std::vector<PresetEntry>& preset_catalog() {
  static const std::vector<PresetEntry> catalog{
      {"special_generic(m=7,n=2)", "connected singular set; source is a homotopy sphere"},
      {"milnor_sphere(twist=tau)", "S^3-bundle over S^4; exotic 7-spheres for suitable twists"},
      {"so5_mod_so2", "SO(5)/SO(2) as an (S^3 x S^2)-bundle over S^4"},
      {"cp3_over_s4", "CP^3 as an S^2-bundle over S^4"},
      {"bott3(b=0,c=2)", "3-stage Bott manifold, (S^2 x S^2)-bundle over S^2; c even"},
      {"example2(m=6,n=2)", "almost-sphere bundle over S^n"},
      {"example5", "S^4-bundle over S^2 # (S^2 x S^2)-bundle over S^2"},
      {"thm5(k=2)", "connected sum of k copies of S^3 x S^2"},
  };
  return catalog;
}

Preset preset(const std::string& call) {
  const Call c = parse_call(call);
  Preset p;
  if (c.name == "special_generic") {
    arity(c, 2);
    const int m = int_arg(c, 0, 7);
    const int n = int_arg(c, 1, 2);
    p.name = "special_generic(" + std::to_string(m) + "," + std::to_string(n) + ")";
    p.description = "special generic map with connected singular set";
    p.descriptor = special_generic_map(m, n);
    const bool standard = m > 3 && m - n >= 1 && m - n <= 3;
    p.expected = standard ? S(m) : Manifold::homotopy_sphere(m, theta_label(m, n));
  } else if (c.name == "milnor_sphere") {
    arity(c, 1);
    const std::string twist = str_arg(c, 0, "tau");
    p.name = "milnor_sphere(" + twist + ")";
    p.description = "S^3-bundle over S^4";
    p.descriptor = from_bundle(S(3), 4, twist);
    p.expected = normalize(Manifold::bundle(S(3), 4, twist == kTrivialTwist ? "" : twist));
  } else if (c.name == "so5_mod_so2") {
    arity(c, 0);
    p.name = c.name;
    p.description = "SO(5)/SO(2) via iterated bundle spinning";
    p.descriptor = iterated_bundle_spin({S(3), S(2)}, 4, {"SO(5)/SO(2)"}, true);
    p.expected = normalize(Manifold::bundle(Manifold::product({S(3), S(2)}), 4, "SO(5)/SO(2)"));
    p.known_as = "SO(5)/SO(2)";
  } else if (c.name == "cp3_over_s4") {
    arity(c, 0);
    p.name = c.name;
    p.description = "twistor fibration of CP^3 over S^4";
    p.descriptor = from_bundle(S(2), 4, "CP^3");
    p.expected = Manifold::bundle(S(2), 4, "CP^3");
    p.known_as = "CP^3";
  } else if (c.name == "bott3") {
    arity(c, 2);
    const int b = int_arg(c, 0, 0);
    const int cc = int_arg(c, 1, 2);
    p.name = bott_label(b, cc);
    p.description = "3-stage Bott manifold";
    p.descriptor = bott3_map(b, cc);
    p.expected = normalize(Manifold::bundle(Manifold::product({S(2), S(2)}), 2, p.name));
    p.known_as = "M_2";
  } else if (c.name == "example2") {
    arity(c, 2);
    const int m = int_arg(c, 0, 6);
    const int n = int_arg(c, 1, 2);
    if (n < 1 || m <= n) throw Error(ErrorKind::Argument, "example2 needs m > n >= 1");
    p.name = "example2(" + std::to_string(m) + "," + std::to_string(n) + ")";
    p.description = "almost-sphere bundle over S^n";
    const Manifold sigma = Manifold::almost_sphere(m - n, "sigma");
    p.descriptor = from_bundle(sigma, n, "example2");
    p.expected = normalize(Manifold::bundle(sigma, n, "example2"));
  } else if (c.name == "example5") {
    arity(c, 0);
    p.name = c.name;
    p.description = "S^4-bundle # Bott manifold over S^2";
    p.descriptor = combine(from_bundle(S(4), 2, "tau"), "c2", bott3_map(0, 2)).descriptor;
    p.expected = normalize(Manifold::connected_sum(
        {Manifold::bundle(S(4), 2, "tau"),
         Manifold::bundle(Manifold::product({S(2), S(2)}), 2, bott_label(0, 2))}));
  } else if (c.name == "thm5") {
    arity(c, 1);
    const int k = int_arg(c, 0, 2);
    if (k < 1) throw Error(ErrorKind::Argument, "thm5 needs k >= 1");
    p.name = "thm5(" + std::to_string(k) + ")";
    p.description = "connected sum of S^3 x S^2 copies";
    std::vector<Manifold> parts(static_cast<std::size_t>(k), Manifold::product({S(3), S(2)}));
    p.expected = normalize(k == 1 ? parts[0] : Manifold::connected_sum(parts));
    p.descriptor = synthesize(p.expected, 2);
  } else {
    throw Error(ErrorKind::UnknownPreset, "unknown preset: " + c.name);
  }
  return p;
}

std::vector<Preset> all_presets() {
  std::vector<Preset> out;
  for (const char* name : {"special_generic", "milnor_sphere", "so5_mod_so2", "cp3_over_s4",
                           "bott3", "example2", "example5", "thm5"}) {
    out.push_back(preset(name));
  }
  return out;
}

}  // namespace rfm

#pragma once

// Text format for descriptors, Morse traces and manifold expressions.
//
//   roundfold { m = 7; n = 4; trivial = smooth; axis = S(3);
//               events = [ birth(c1 : S(3)), split(c1 -> c2 : S(3), c3 : S(3)) twist "tau" ]; }
//   trace { boundary = [ b1 : S(3), b2 : S(3) ]; actions = [ merge(b1, b2 -> c1 : S(3)), death(c1) ]; }
//   manifold csum(bundle(S(3) over 2), bundle(S(3) over 2))

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rfm/constructions.hpp"
#include "rfm/descriptor.hpp"

namespace rfm {

struct Span {
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity { Error, Warning };

std::string_view to_string(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  Span span;
  std::string hint;
};

/// "3:5-3:18: error: message (hint: ...)"
std::string format_diagnostic(const Diagnostic& d, std::string_view path = {});

using FileValue = std::variant<std::monostate, Descriptor, MorseTrace, Manifold>;

struct ParsedFile {
  FileValue value;
  std::vector<Diagnostic> diagnostics;
  /// Span of each event (descriptor) or action (trace), in order.
  std::vector<Span> item_spans;

  bool ok() const;
  const Descriptor* descriptor() const { return std::get_if<Descriptor>(&value); }
  const MorseTrace* trace() const { return std::get_if<MorseTrace>(&value); }
  const Manifold* manifold() const { return std::get_if<Manifold>(&value); }
};

/// Never throws. Syntax errors stop the parse; descriptors and traces that
/// parse are also validated, with violations mapped onto event spans.
ParsedFile parse(std::string_view text);

/// Bare expression or a `manifold` block. Throws Parse.
Manifold parse_manifold(std::string_view text);

std::string print(const Descriptor& d);
std::string print(const MorseTrace& t);
std::string print(const Manifold& e);
std::string print(const FileValue& v);

}  // namespace rfm

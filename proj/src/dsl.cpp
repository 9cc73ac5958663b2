#include "rfm/dsl.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace rfm {

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::string format_diagnostic(const Diagnostic& d, std::string_view path) {
  std::ostringstream os;
  if (!path.empty()) os << path << ":";
  if (d.span.line > 0) {
    os << d.span.line << ":" << d.span.col << "-" << d.span.end_line << ":" << d.span.end_col << ":";
  }
  if (os.tellp() > 0) os << " ";
  os << to_string(d.severity) << ": " << d.message;
  if (!d.hint.empty()) os << " (hint: " << d.hint << ")";
  return os.str();
}

bool ParsedFile::ok() const {
  if (std::holds_alternative<std::monostate>(value)) return false;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return false;
  }
  return true;
}

namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

struct Failure {
  std::string message;
  Span span;
  std::string hint;
};

Span join(const Span& a, const Span& b) { return Span{a.line, a.col, b.end_line, b.end_col}; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&]() {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Token t;
    t.span.line = line;
    t.span.col = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Tok::Ident;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
               (ch == '-' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      t.kind = Tok::Int;
      t.text += ch;
      advance();
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t.text += src[i];
        advance();
      }
    } else if (ch == '"') {
      t.kind = Tok::String;
      advance();
      bool closed = false;
      while (i < src.size()) {
        if (src[i] == '"') {
          advance();
          closed = true;
          break;
        }
        if (src[i] == '\n') break;
        if (src[i] == '\\' && i + 1 < src.size()) advance();
        t.text += src[i];
        advance();
      }
      if (!closed) {
        throw Failure{"unterminated string", Span{t.span.line, t.span.col, line, col},
                      "close the label with a double quote"};
      }
    } else if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Punct;
      t.text = "->";
      advance();
      advance();
    } else if (std::string_view("{}()[];,:=*").find(ch) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, ch);
      advance();
    } else {
      throw Failure{std::string("unexpected character '") + ch + "'",
                    Span{line, col, line, col + 1}, ""};
    }
    t.span.end_line = line;
    t.span.end_col = col;
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.span = Span{line, col, line, col};
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    case Tok::Int: return "integer " + t.text;
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& last() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool at_punct(std::string_view p) const {
    return peek().kind == Tok::Punct && peek().text == p;
  }
  bool at_ident(std::string_view s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }

  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }

  Token expect(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
    return next();
  }

  [[noreturn]] void fail(std::string message, std::string hint = {}) const {
    throw Failure{std::move(message), peek().span, std::move(hint)};
  }

  Token expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) fail("expected " + std::string(what) + ", found " + describe(peek()));
    return next();
  }

  void expect_word(std::string_view word) {
    if (!at_ident(word)) fail("expected '" + std::string(word) + "', found " + describe(peek()));
    next();
  }

  std::string expect_string(std::string_view what) {
    if (peek().kind != Tok::String) fail("expected " + std::string(what) + " string, found " + describe(peek()));
    return next().text;
  }

  std::int64_t expect_int64(std::string_view what) {
    if (peek().kind != Tok::Int) fail("expected " + std::string(what) + ", found " + describe(peek()));
    const std::string& s = peek().text;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("integer out of range: " + s);
    next();
    return v;
  }

  int expect_int(std::string_view what) {
    const Token at = peek();
    const std::int64_t v = expect_int64(what);
    if (v < -1000000 || v > 1000000) throw Failure{"integer out of range: " + at.text, at.span, ""};
    return static_cast<int>(v);
  }

  bool expect_bool() {
    if (at_ident("true")) {
      next();
      return true;
    }
    if (at_ident("false")) {
      next();
      return false;
    }
    fail("expected true or false, found " + describe(peek()));
  }

  // ---- manifold expressions ----

  Manifold expr() {
    const Span start = peek().span;
    std::vector<Manifold> factors{atom()};
    while (accept("*")) factors.push_back(atom());
    if (factors.size() == 1) return std::move(factors[0]);
    return build(start, [&] { return Manifold::product(std::move(factors)); });
  }

  template <class F>
  Manifold build(const Span& start, F&& f) {
    try {
      return f();
    } catch (const Error& e) {
      throw Failure{e.what(), join(start, last().span), ""};
    }
  }

  Manifold atom() {
    const Span start = peek().span;
    if (accept("(")) {
      Manifold inner = expr();
      expect(")");
      return inner;
    }
    const Token head = expect_ident("a manifold expression");
    const std::string& h = head.text;
    if (h == "S") {
      expect("(");
      const int d = expect_int("a dimension");
      expect(")");
      return build(start, [&] { return Manifold::sphere(d); });
    }
    if (h == "Sigma" || h == "Theta") {
      expect("(");
      const int d = expect_int("a dimension");
      expect(",");
      std::string label = expect_string("a label");
      expect(")");
      return build(start, [&] {
        return h == "Sigma" ? Manifold::almost_sphere(d, label) : Manifold::homotopy_sphere(d, label);
      });
    }
    if (h == "bundle") {
      expect("(");
      Manifold fiber = expr();
      expect_word("over");
      const int base = expect_int("a base dimension");
      std::string twist;
      if (accept(",")) {
        expect_word("twist");
        twist = expect_string("a twist");
      }
      expect(")");
      return build(start, [&] { return Manifold::bundle(std::move(fiber), base, twist); });
    }
    if (h == "csum") {
      expect("(");
      std::vector<Manifold> parts{expr()};
      while (accept(",")) parts.push_back(expr());
      expect(")");
      return build(start, [&] { return Manifold::connected_sum(std::move(parts)); });
    }
    if (h == "named") {
      expect("(");
      std::string name = expect_string("a name");
      expect(",");
      expect_word("dim");
      expect("=");
      const int dim = expect_int("a dimension");
      NamedInfo info;
      std::set<std::string> seen;
      while (accept(",")) {
        const Token key = expect_ident("a named() attribute");
        if (!seen.insert(key.text).second) {
          throw Failure{"duplicate attribute " + key.text, key.span, ""};
        }
        expect("=");
        if (key.text == "euler") {
          info.euler = expect_int64("an Euler characteristic");
        } else if (key.text == "conn") {
          info.connectivity = expect_int("a connectivity");
        } else if (key.text == "torsion") {
          info.torsion_h2 = expect_bool();
        } else if (key.text == "qhs") {
          info.rational_homology_sphere = expect_bool();
        } else if (key.text == "ranks") {
          expect("[");
          RankList ranks;
          if (!at_punct("]")) {
            do {
              const int deg = expect_int("a degree");
              expect(":");
              ranks.emplace_back(deg, expect_int64("a rank"));
            } while (accept(","));
          }
          expect("]");
          info.ranks = std::move(ranks);
        } else {
          throw Failure{"unknown named() attribute " + key.text, key.span,
                        "use euler, conn, torsion, qhs or ranks"};
        }
      }
      expect(")");
      return build(start, [&] { return Manifold::named(name, dim, info); });
    }
    throw Failure{"unknown manifold constructor " + h, head.span,
                  "use S, Sigma, Theta, bundle, csum or named"};
  }

  // ---- descriptors ----

  AxisFiber axis() {
    const Span start = peek().span;
    if (at_ident("punctured") && peek(1).text == "(") {
      next();
      expect("(");
      Manifold f = expr();
      expect(",");
      expect_word("holes");
      expect("=");
      const int holes = expect_int("a hole count");
      expect(")");
      return AxisFiber::punctured(std::move(f), holes);
    }
    if (at_ident("bounded") && peek(1).text == "(") {
      next();
      expect("(");
      std::string name = expect_string("a name");
      expect(",");
      expect("[");
      std::vector<Manifold> boundary;
      if (!at_punct("]")) {
        do {
          boundary.push_back(expr());
        } while (accept(","));
      }
      expect("]");
      expect(")");
      return AxisFiber::with_boundary(std::move(name), std::move(boundary));
    }
    (void)start;
    return AxisFiber::cylinder(expr());
  }

  Component component() {
    const Token id = expect_ident("a component id");
    expect(":");
    return Component{id.text, expr()};
  }

  FoldEvent event() {
    const Token head = expect_ident("an event");
    const std::string& k = head.text;
    FoldEvent ev = [&]() -> FoldEvent {
      expect("(");
      if (k == "birth") {
        Component c = component();
        return FoldEvent::birth(c.id, c.label);
      }
      if (k == "death") {
        return FoldEvent::death(expect_ident("a component id").text);
      }
      if (k == "split") {
        std::string from = expect_ident("a component id").text;
        expect("->");
        Component a = component();
        expect(",");
        Component b = component();
        return FoldEvent::split(from, a, b);
      }
      if (k == "merge") {
        std::string a = expect_ident("a component id").text;
        expect(",");
        std::string b = expect_ident("a component id").text;
        expect("->");
        Component into = component();
        return FoldEvent::merge(a, b, into);
      }
      if (k == "generic") {
        expect_word("i");
        expect("=");
        const int index = expect_int("an index");
        expect(",");
        std::string id = expect_ident("a component id").text;
        expect(":");
        Manifold before = expr();
        expect("->");
        Manifold after = expr();
        expect(",");
        expect_word("chi_sing");
        expect("=");
        const std::int64_t chi = expect_int64("an Euler characteristic");
        return FoldEvent::generic(index, id, before, after, chi);
      }
      throw Failure{"unknown event kind " + k, head.span,
                    "use birth, death, split, merge or generic"};
    }();
    expect(")");
    if (at_ident("twist")) {
      next();
      ev = ev.with_twist(expect_string("a twist"));
    }
    return ev;
  }

  template <class F>
  std::vector<Span> list(F&& item) {
    std::vector<Span> spans;
    expect("[");
    while (!at_punct("]")) {
      const Span start = peek().span;
      item();
      spans.push_back(join(start, last().span));
      if (!accept(",")) break;
    }
    expect("]");
    return spans;
  }

  struct Block {
    Span header;
    std::set<std::string> seen;
  };

  /// Reads `name =` and rejects duplicates and unknown names.
  std::string field(Block& b, std::initializer_list<std::string_view> allowed) {
    const Token name = expect_ident("a field name");
    bool known = false;
    std::string all;
    for (auto a : allowed) {
      known = known || a == name.text;
      if (!all.empty()) all += ", ";
      all += a;
    }
    if (!known) throw Failure{"unknown field " + name.text, name.span, "fields are " + all};
    if (!b.seen.insert(name.text).second) {
      throw Failure{"duplicate field " + name.text, name.span, ""};
    }
    expect("=");
    return name.text;
  }

  void end_field() {
    if (at_punct("}")) return;
    expect(";");
  }

  Descriptor roundfold(std::vector<Span>& spans) {
    Block b{last().span, {}};
    expect("{");
    Descriptor d;
    while (!at_punct("}")) {
      const std::string f = field(b, {"m", "n", "trivial", "axis", "half", "simply_connected",
                                      "restriction_trivial", "events"});
      if (f == "m") {
        d.m = expect_int("m");
      } else if (f == "n") {
        d.n = expect_int("n");
      } else if (f == "trivial") {
        const Token t = expect_ident("none, top, pl or smooth");
        auto tr = triviality_from_string(t.text);
        if (!tr) throw Failure{"unknown triviality " + t.text, t.span, "use none, top, pl or smooth"};
        d.triviality = *tr;
      } else if (f == "axis") {
        d.axis = axis();
      } else if (f == "half") {
        d.half_trace = expect_bool();
      } else if (f == "simply_connected") {
        d.simply_connected = expect_bool();
      } else if (f == "restriction_trivial") {
        d.restriction_trivial = expect_bool();
      } else {
        spans = list([&] { d.events.push_back(event()); });
      }
      end_field();
    }
    const Token close = expect("}");
    for (const char* req : {"m", "n", "events"}) {
      if (!b.seen.count(req)) {
        throw Failure{std::string("missing field ") + req, join(b.header, close.span), ""};
      }
    }
    return d;
  }

  MorseTrace trace(std::vector<Span>& spans) {
    Block b{last().span, {}};
    expect("{");
    MorseTrace t;
    while (!at_punct("}")) {
      const std::string f = field(b, {"boundary", "axis", "actions"});
      if (f == "boundary") {
        list([&] { t.boundary.push_back(component()); });
      } else if (f == "axis") {
        t.source_label = axis();
      } else {
        spans = list([&] { t.actions.push_back(event()); });
      }
      end_field();
    }
    const Token close = expect("}");
    if (!b.seen.count("actions")) {
      throw Failure{"missing field actions", join(b.header, close.span), ""};
    }
    return t;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()) + " after the block");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Diagnostic diagnostic(const Failure& f) { return Diagnostic{Severity::Error, f.message, f.span, f.hint}; }

std::string violation_hint(const std::string& message) {
  if (message.find("absent component") != std::string::npos) {
    return "introduce the component with a birth event first";
  }
  if (message.find("duplicate") != std::string::npos) return "rename one of the components";
  return {};
}

void add_violations(const ValidationReport& r, const std::vector<Span>& spans, const Span& whole,
                    std::vector<Diagnostic>& out) {
  for (const auto& v : r.violations) {
    Span s = whole;
    if (v.event && *v.event < spans.size()) s = spans[*v.event];
    out.push_back(Diagnostic{Severity::Error, v.message, s, violation_hint(v.message)});
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string print_component(const Component& c) { return c.id + " : " + to_text(c.label); }

std::string print_event(const FoldEvent& ev) {
  std::string s;
  switch (ev.kind) {
    case EventKind::Birth:
      s = "birth(" + print_component(ev.produced.at(0)) + ")";
      break;
    case EventKind::Death:
      s = "death(" + ev.consumed.at(0) + ")";
      break;
    case EventKind::Split:
      s = "split(" + ev.consumed.at(0) + " -> " + print_component(ev.produced.at(0)) + ", " +
          print_component(ev.produced.at(1)) + ")";
      break;
    case EventKind::Merge:
      s = "merge(" + ev.consumed.at(0) + ", " + ev.consumed.at(1) + " -> " +
          print_component(ev.produced.at(0)) + ")";
      break;
    case EventKind::Generic:
      s = "generic(i=" + std::to_string(ev.index) + ", " + ev.consumed.at(0) + " : " +
          (ev.before ? to_text(*ev.before) : std::string("?")) + " -> " +
          to_text(ev.produced.at(0).label) + ", chi_sing=" +
          std::to_string(ev.singular_euler.value_or(0)) + ")";
      break;
  }
  if (ev.twist) s += " twist " + quote(*ev.twist);
  return s;
}

std::string print_axis(const AxisFiber& a) {
  switch (a.kind) {
    case AxisKind::Cylinder: return to_text(*a.fiber);
    case AxisKind::PuncturedCylinder:
      return "punctured(" + to_text(*a.fiber) + ", holes=" + std::to_string(a.holes) + ")";
    case AxisKind::NamedWithBoundary: {
      std::string s = "bounded(" + quote(a.name) + ", [";
      for (std::size_t i = 0; i < a.boundary.size(); ++i) {
        if (i) s += ", ";
        s += to_text(a.boundary[i]);
      }
      return s + "])";
    }
  }
  return {};
}

void print_events(std::ostringstream& os, const char* field, const std::vector<FoldEvent>& evs) {
  if (evs.empty()) {
    os << "  " << field << " = [];\n";
    return;
  }
  os << "  " << field << " = [\n";
  for (std::size_t i = 0; i < evs.size(); ++i) {
    os << "    " << print_event(evs[i]) << (i + 1 < evs.size() ? ",\n" : "\n");
  }
  os << "  ];\n";
}

}  // namespace

ParsedFile parse(std::string_view text) {
  ParsedFile out;
  try {
    Parser p(lex(text));
    const Token head = p.expect_ident("roundfold, trace or manifold");
    if (head.text == "roundfold") {
      Descriptor d = p.roundfold(out.item_spans);
      p.expect_end();
      const Span whole = join(head.span, p.last().span);
      add_violations(validate(d), out.item_spans, whole, out.diagnostics);
      out.value = std::move(d);
    } else if (head.text == "trace") {
      MorseTrace t = p.trace(out.item_spans);
      p.expect_end();
      const Span whole = join(head.span, p.last().span);
      add_violations(validate_trace(t), out.item_spans, whole, out.diagnostics);
      out.value = std::move(t);
    } else if (head.text == "manifold") {
      Manifold e = p.expr();
      p.accept(";");
      p.expect_end();
      out.value = std::move(e);
    } else {
      throw Failure{"unknown block " + head.text, head.span, "files start with roundfold, trace or manifold"};
    }
  } catch (const Failure& f) {
    out.value = std::monostate{};
    out.item_spans.clear();
    out.diagnostics.push_back(diagnostic(f));
  }
  return out;
}

Manifold parse_manifold(std::string_view text) {
  try {
    Parser p(lex(text));
    if (p.at_ident("manifold")) p.next();
    Manifold e = p.expr();
    p.accept(";");
    p.expect_end();
    return e;
  } catch (const Failure& f) {
    throw Error(ErrorKind::Parse, format_diagnostic(diagnostic(f)));
  }
}

std::string print(const Descriptor& d) {
  std::ostringstream os;
  os << "roundfold {\n";
  os << "  m = " << d.m << ";\n";
  os << "  n = " << d.n << ";\n";
  os << "  trivial = " << to_string(d.triviality) << ";\n";
  if (d.axis) os << "  axis = " << print_axis(*d.axis) << ";\n";
  if (d.half_trace) os << "  half = true;\n";
  if (d.simply_connected) os << "  simply_connected = " << (*d.simply_connected ? "true" : "false") << ";\n";
  if (d.restriction_trivial) os << "  restriction_trivial = true;\n";
  print_events(os, "events", d.events);
  os << "}\n";
  return os.str();
}

std::string print(const MorseTrace& t) {
  std::ostringstream os;
  os << "trace {\n";
  os << "  boundary = [";
  for (std::size_t i = 0; i < t.boundary.size(); ++i) {
    if (i) os << ", ";
    os << print_component(t.boundary[i]);
  }
  os << "];\n";
  if (t.source_label) os << "  axis = " << print_axis(*t.source_label) << ";\n";
  print_events(os, "actions", t.actions);
  os << "}\n";
  return os.str();
}

std::string print(const Manifold& e) { return "manifold " + to_text(e) + "\n"; }

std::string print(const FileValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) {
          return {};
        } else {
          return print(x);
        }
      },
      v);
}

}  // namespace rfm

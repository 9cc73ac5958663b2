#include "rfm/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rfm/report.hpp"

namespace rfm {

namespace fs = std::filesystem;

std::vector<std::string> preset_path() {
  std::vector<std::string> dirs;
  const char* env = std::getenv("RFM_PRESET_PATH");
  if (!env) return dirs;
  std::stringstream ss(env);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (!dir.empty()) dirs.push_back(dir);
  }
  return dirs;
}

namespace {

struct UsageError {
  std::string message;
};

struct Session {
  Session(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::string command;
  Json input = Json::object();
  Json result = nullptr;
  std::vector<std::string> provenance;
  std::vector<Diagnostic> diagnostics;
  std::string path_for_messages;

  int finish(const std::string& text) {
    for (const auto& d : diagnostics) err << format_diagnostic(d, path_for_messages) << "\n";
    if (json) {
      Json report{{"command", command}, {"input", input}, {"result", result}, {"provenance", provenance}};
      Json diags = Json::array();
      for (const auto& d : diagnostics) diags.push_back(to_json(d));
      report["diagnostics"] = diags;
      out << report.dump(2) << "\n";
    } else if (!text.empty()) {
      out << text;
      if (text.back() != '\n') out << "\n";
    }
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::Error) return 1;
    }
    return 0;
  }

  int fail(const std::string& message, const std::string& hint = {}) {
    diagnostics.push_back(Diagnostic{Severity::Error, message, Span{0, 0, 0, 0}, hint});
    result = nullptr;
    return finish({});
  }
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool builtin_preset(const std::string& call) {
  const std::string name = call.substr(0, call.find('('));
  for (const auto& e : preset_catalog()) {
    if (e.signature.substr(0, e.signature.find('(')) == name) return true;
  }
  return false;
}

std::optional<std::string> preset_file(const std::string& name) {
  for (const auto& dir : preset_path()) {
    fs::path p = fs::path(dir) / (name + ".rfm");
    if (fs::exists(p)) return p.string();
  }
  return std::nullopt;
}

/// Loads FILE, `-` or `preset:NAME`. Parse and validation problems are
/// recorded on the session and reported as nullopt.
std::optional<ParsedFile> load(Session& s, const std::string& ref) {
  std::string text;
  if (ref.rfind("preset:", 0) == 0) {
    const std::string name = ref.substr(7);
    s.input = Json{{"preset", name}};
    if (builtin_preset(name)) {
      text = print(preset(name).descriptor);
    } else if (auto file = preset_file(name)) {
      text = read_text(*file);
      s.path_for_messages = *file;
    } else {
      throw Error(ErrorKind::UnknownPreset, "unknown preset: " + name);
    }
  } else {
    s.input = Json{{"path", ref}};
    s.path_for_messages = ref;
    text = read_text(ref);
  }
  ParsedFile f = parse(text);
  const char* kind = f.descriptor() ? "roundfold" : f.trace() ? "trace" : f.manifold() ? "manifold" : "none";
  s.input["kind"] = kind;
  if (!f.ok()) {
    s.diagnostics.insert(s.diagnostics.end(), f.diagnostics.begin(), f.diagnostics.end());
    return std::nullopt;
  }
  return f;
}

const Descriptor& need_descriptor(const ParsedFile& f) {
  if (!f.descriptor()) throw Error(ErrorKind::Argument, "expected a roundfold file");
  return *f.descriptor();
}

Manifold read_expression(Session& s, const std::string& arg) {
  std::string text = arg;
  if (fs::exists(arg) && fs::is_regular_file(arg)) {
    text = read_text(arg);
    s.input = Json{{"path", arg}};
  } else {
    s.input = Json{{"expr", arg}};
  }
  return parse_manifold(text);
}

std::string descriptor_summary(const Descriptor& d) {
  std::ostringstream os;
  os << "roundfold m=" << d.m << " n=" << d.n << " l=" << d.l() << " trivial=" << to_string(d.triviality);
  return os.str();
}

std::string prop1_text(const Prop1Report& r) {
  std::ostringstream os;
  for (const auto& h : r.hypotheses) {
    os << (h.holds ? "[x] " : "[ ] ") << h.name;
    if (!h.detail.empty()) os << " (" << h.detail << ")";
    os << "\n";
  }
  os << "H_" << r.hn_degree << "(" << r.hn_source << ") rank: ";
  if (r.hn_rank) os << *r.hn_rank; else os << "withheld";
  os << "\n";
  for (const auto& c : r.homotopy) os << c.statement << "\n";
  if (r.cross_check) os << "cross-check with W_f: " << (*r.cross_check ? "agrees" : "DISAGREES") << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string classify_text(const ClassificationResult& r) {
  std::ostringstream os;
  if (r.manifold) {
    os << "M = " << to_text(*r.manifold) << " (" << to_string(r.confidence) << ")\n";
  } else {
    os << "unclassified\n";
  }
  for (const auto& a : r.chain) {
    os << "  " << a.rule << " [" << a.reference << "]: " << a.conclusion << "\n";
    for (const auto& h : a.hypotheses) {
      os << "    " << (h.holds ? "[x] " : "[ ] ") << h.name;
      if (!h.detail.empty()) os << " (" << h.detail << ")";
      os << "\n";
    }
  }
  for (const auto& h : r.failed) {
    os << "  failed: " << h.name;
    if (!h.detail.empty()) os << " (" << h.detail << ")";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Round fold map descriptors: validation, Reeb spaces, classification"};
  app.name("rfm");
  app.require_subcommand(1);

  bool json = false;
  std::string file, file2, site, expr, dot, fiber, twist;
  std::optional<int> n_opt;
  std::size_t region = 0;
  bool assume = false, dim5 = false;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "emit a JSON report"); };
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "descriptor file, - for stdin, or preset:NAME")->required();
    add_json(sub);
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a file");
  add_file(validate_cmd);
  auto* reeb_cmd = app.add_subcommand("reeb", "cells of W_f and the graph L");
  add_file(reeb_cmd);
  reeb_cmd->add_option("--dot", dot, "write L as Graphviz to OUT (- for stdout)");
  auto* homology_cmd = app.add_subcommand("homology", "integral homology of W_f");
  add_file(homology_cmd);
  auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic of the source");
  add_file(euler_cmd);
  auto* prop1_cmd = app.add_subcommand("prop1", "homology and homotopy of the source");
  add_file(prop1_cmd);
  auto* classify_cmd = app.add_subcommand("classify", "identify the source manifold");
  add_file(classify_cmd);
  classify_cmd->add_flag("--dim5", dim5, "decide existence for a simply connected 5-manifold");
  auto* synth_cmd = app.add_subcommand("synthesize", "descriptor for a manifold expression");
  synth_cmd->add_option("EXPR", expr, "expression or file")->required();
  synth_cmd->add_option("--n", n_opt, "base dimension");
  add_json(synth_cmd);
  auto* combine_cmd = app.add_subcommand("combine", "glue F2 into a core sphere of F1");
  combine_cmd->add_option("F1", file, "first descriptor")->required();
  combine_cmd->add_option("SITE", site, "core component of F1")->required();
  combine_cmd->add_option("F2", file2, "second descriptor")->required();
  combine_cmd->add_flag("--assume-null-homotopic", assume, "assert the null-homotopy hypothesis");
  add_json(combine_cmd);
  auto* decompose_cmd = app.add_subcommand("decompose", "cut at a sphere component");
  decompose_cmd->add_option("FILE", file, "descriptor")->required();
  decompose_cmd->add_option("REGION", region, "region 1..l")->required();
  decompose_cmd->add_option("SITE", site, "component alive in the region")->required();
  decompose_cmd->add_flag("--assume-null-homotopic", assume, "assert the null-homotopy hypothesis");
  add_json(decompose_cmd);
  auto* spin_cmd = app.add_subcommand("spin", "spin a trace, or build a bundle map");
  spin_cmd->add_option("TRACE", file, "trace file");
  spin_cmd->add_option("--n", n_opt, "base dimension")->required();
  spin_cmd->add_option("--fiber", fiber, "bundle fiber expression");
  spin_cmd->add_option("--twist", twist, "bundle twist label");
  add_json(spin_cmd);
  auto* preset_cmd = app.add_subcommand("preset", "print a catalog entry");
  preset_cmd->add_option("NAME", file, "name or name(args)")->required();
  add_json(preset_cmd);
  auto* list_cmd = app.add_subcommand("list-presets", "list the catalog");
  add_json(list_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Session s(out, err);
  s.json = json;
  s.command = sub->get_name();

  try {
    if (sub == list_cmd) {
      Json entries = Json::array();
      std::string text;
      for (const auto& e : preset_catalog()) {
        entries.push_back(Json{{"signature", e.signature}, {"description", e.description}, {"source", "builtin"}});
        text += e.signature + "  " + e.description + "\n";
      }
      for (const auto& dir : preset_path()) {
        if (!fs::is_directory(dir)) continue;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
          if (entry.path().extension() == ".rfm") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
          entries.push_back(Json{{"signature", p.stem().string()}, {"description", ""}, {"source", p.string()}});
          text += p.stem().string() + "  " + p.string() + "\n";
        }
      }
      s.result = entries;
      return s.finish(text);
    }

    if (sub == preset_cmd) {
      s.input = Json{{"preset", file}};
      if (builtin_preset(file)) {
        Preset p = preset(file);
        s.result = to_json(p);
        s.provenance.push_back(p.description);
        return s.finish(print(p.descriptor));
      }
      if (auto path = preset_file(file)) {
        auto f = load(s, path->c_str());
        if (!f) return s.finish({});
        s.result = Json{{"descriptor", f->descriptor() ? to_json(*f->descriptor()) : Json(nullptr)}, {"name", file}};
        return s.finish(print(f->value));
      }
      throw Error(ErrorKind::UnknownPreset, "unknown preset: " + file);
    }

    if (sub == synth_cmd) {
      const Manifold e = read_expression(s, expr);
      Descriptor d = synthesize(e, n_opt);
      s.result = to_json(d);
      s.provenance.push_back("M = " + to_text(normalize(e)));
      return s.finish(print(d));
    }

    if (sub == spin_cmd) {
      std::optional<MorseTrace> trace;
      if (!file.empty()) {
        auto f = load(s, file);
        if (!f) return s.finish({});
        if (!f->trace()) throw Error(ErrorKind::Argument, "expected a trace file");
        trace = *f->trace();
      }
      Descriptor d;
      if (!fiber.empty()) {
        const Manifold fib = parse_manifold(fiber);
        d = from_bundle(fib, *n_opt, twist, trace);
        s.provenance.push_back("bundle of " + to_text(fib) + " over S^" + std::to_string(*n_opt));
      } else if (trace) {
        d = trivial_spinning(*trace, *n_opt);
        s.provenance.push_back("trivial spinning around S^" + std::to_string(*n_opt - 1));
      } else {
        throw UsageError{"spin needs a TRACE file or --fiber"};
      }
      s.result = to_json(d);
      return s.finish(print(d));
    }

    if (sub == combine_cmd) {
      auto f1 = load(s, file);
      if (!f1) return s.finish({});
      Json in1 = s.input;
      auto f2 = load(s, file2);
      if (!f2) return s.finish({});
      s.input = Json{{"f1", in1}, {"f2", s.input}, {"site", site}};
      SurgeryResult r = combine(need_descriptor(*f1), site, need_descriptor(*f2), assume);
      s.provenance = r.provenance;
      s.result = to_json(r.descriptor);
      return s.finish(print(r.descriptor));
    }

    auto f = load(s, file);
    if (!f) return s.finish({});

    if (sub == validate_cmd) {
      std::string text;
      if (f->descriptor()) {
        s.result = to_json(validate(*f->descriptor()));
        text = "ok: " + descriptor_summary(*f->descriptor());
      } else if (f->trace()) {
        s.result = to_json(validate_trace(*f->trace()));
        text = "ok: trace with " + std::to_string(f->trace()->actions.size()) + " actions";
      } else {
        s.result = Json{{"ok", true}, {"manifold", to_json(*f->manifold())}};
        text = "ok: manifold " + to_text(*f->manifold());
      }
      return s.finish(text);
    }

    if (sub == classify_cmd && dim5) {
      Dim5Result r = f->manifold() ? dim5_recognize(*f->manifold()) : dim5_recognize(need_descriptor(*f));
      s.result = to_json(r);
      std::string text = std::string(to_string(r.verdict)) + " [" + r.reference + "]: " + r.reason + "\n";
      if (r.witness) text += print(*r.witness);
      return s.finish(text);
    }

    const Descriptor& d = need_descriptor(*f);

    if (sub == reeb_cmd) {
      ReebComplex r = build_reeb(d);
      r.complex.check();
      s.result = to_json(r);
      std::ostringstream text;
      text << "cells:";
      for (auto c : r.complex.cells) text << " " << c;
      text << "\nL: " << r.forest.vertices.size() << " vertices, " << r.forest.edges.size() << " edges, "
           << r.forest.connected_components << " components, " << r.forest.cycle_count << " cycles, "
           << r.cap_count() << " caps\n";
      if (!dot.empty()) {
        const std::string g = forest_dot(d, r.forest);
        if (dot == "-") {
          if (json) s.result["dot"] = g; else return s.finish(g);
        } else {
          std::ofstream o(dot, std::ios::binary);
          if (!o) throw UsageError{"cannot write " + dot};
          o << g;
          s.provenance.push_back("wrote " + dot);
        }
      }
      return s.finish(text.str());
    }
    if (sub == homology_cmd) {
      HomologyProfile h = homology(build_reeb(d).complex);
      s.result = to_json(h);
      return s.finish(homology_text(h));
    }
    if (sub == euler_cmd) {
      const std::int64_t chi = euler_characteristic(d);
      s.result = Json{{"euler", chi}};
      return s.finish(std::to_string(chi));
    }
    if (sub == prop1_cmd) {
      Prop1Report r = prop1_report(d);
      s.result = to_json(r);
      return s.finish(prop1_text(r));
    }
    if (sub == classify_cmd) {
      ClassificationResult r = classify(d);
      s.result = to_json(r);
      return s.finish(classify_text(r));
    }
    if (sub == decompose_cmd) {
      DecomposeResult r = decompose(d, region, site, assume);
      s.provenance = r.provenance;
      s.result = Json{{"f1", to_json(r.f1)}, {"f2", to_json(r.f2)}};
      return s.finish("# f1\n" + print(r.f1) + "# f2\n" + print(r.f2));
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    const std::string kind(to_string(e.kind()));
    const std::string what = e.what();
    return s.fail(what.rfind(kind, 0) == 0 ? what : kind + ": " + what);
  }
  err << "usage error: unhandled command\n";
  return 2;
}

}  // namespace rfm

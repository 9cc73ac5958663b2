#include "rfm/report.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace rfm {

Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

Json to_json(const Manifold& e) {
  Json j{{"dim", e.dim()}, {"kind", std::string(to_string(e.kind()))}, {"text", to_text(e)}};
  return j;
}

namespace {

Json component_json(const Component& c) { return Json{{"id", c.id}, {"label", to_text(c.label)}}; }

Json checks_json(const std::vector<HypothesisCheck>& hs) {
  Json out = Json::array();
  for (const auto& h : hs) out.push_back(Json{{"detail", h.detail}, {"holds", h.holds}, {"name", h.name}});
  return out;
}

Json axis_json(const AxisFiber& a) {
  Json j;
  switch (a.kind) {
    case AxisKind::Cylinder:
      j["kind"] = "cylinder";
      j["fiber"] = to_text(*a.fiber);
      break;
    case AxisKind::PuncturedCylinder:
      j["kind"] = "punctured";
      j["fiber"] = to_text(*a.fiber);
      j["holes"] = a.holes;
      break;
    case AxisKind::NamedWithBoundary: {
      j["kind"] = "bounded";
      j["name"] = a.name;
      Json b = Json::array();
      for (const auto& m : a.boundary) b.push_back(to_text(m));
      j["boundary"] = b;
      break;
    }
  }
  return j;
}

Json events_json(const std::vector<FoldEvent>& evs) {
  Json out = Json::array();
  for (const auto& ev : evs) out.push_back(to_json(ev));
  return out;
}

}  // namespace

Json to_json(const FoldEvent& ev) {
  Json j{{"kind", std::string(to_string(ev.kind))}, {"index", ev.index}};
  j["consumed"] = ev.consumed;
  Json produced = Json::array();
  for (const auto& c : ev.produced) produced.push_back(component_json(c));
  j["produced"] = produced;
  if (ev.before) j["before"] = to_text(*ev.before);
  if (ev.singular_euler) j["chi_sing"] = *ev.singular_euler;
  if (ev.twist) j["twist"] = *ev.twist;
  return j;
}

Json to_json(const Descriptor& d) {
  Json j{{"m", d.m},
         {"n", d.n},
         {"l", d.l()},
         {"triviality", std::string(to_string(d.triviality))},
         {"half_trace", d.half_trace},
         {"restriction_trivial", d.restriction_trivial}};
  j["axis"] = d.axis ? axis_json(*d.axis) : Json(nullptr);
  j["simply_connected"] = d.simply_connected ? Json(*d.simply_connected) : Json(nullptr);
  j["events"] = events_json(d.events);
  return j;
}

Json to_json(const MorseTrace& t) {
  Json b = Json::array();
  for (const auto& c : t.boundary) b.push_back(component_json(c));
  Json j{{"boundary", b}};
  j["actions"] = events_json(t.actions);
  j["axis"] = t.source_label ? axis_json(*t.source_label) : Json(nullptr);
  return j;
}

Json to_json(const HomologyProfile& h) {
  Json out = Json::array();
  for (const auto& g : h) {
    Json tors = Json::array();
    for (const auto& t : g.torsion) tors.push_back(to_json(t));
    out.push_back(Json{{"degree", g.degree}, {"rank", g.rank}, {"torsion", tors}});
  }
  return out;
}

Json to_json(const ComponentForest& f) {
  Json vs = Json::array();
  for (const auto& v : f.vertices) {
    std::string kind = v.kind == VertexKind::Event ? "event" : v.kind == VertexKind::Passive ? "passive" : "cap";
    Json jv{{"kind", kind}, {"event", v.event}};
    if (!v.component.empty()) jv["component"] = v.component;
    vs.push_back(jv);
  }
  Json es = Json::array();
  for (const auto& e : f.edges) {
    es.push_back(Json{{"component", e.component}, {"inner", e.inner}, {"outer", e.outer}, {"region", e.region}});
  }
  return Json{{"vertices", vs},
              {"edges", es},
              {"capped_leaves", f.capped_leaves},
              {"free_leaves", f.free_leaves},
              {"connected_components", f.connected_components},
              {"cycles", f.cycle_count},
              {"tree", f.is_tree()}};
}

Json to_json(const ReebComplex& r) {
  Json cells = Json::array();
  for (auto c : r.complex.cells) cells.push_back(c);
  return Json{{"cells", cells}, {"caps", r.cap_count()}, {"forest", to_json(r.forest)}};
}

Json to_json(const Prop1Report& r) {
  Json hn{{"degree", r.hn_degree}, {"source", r.hn_source}};
  hn["rank"] = r.hn_rank ? Json(*r.hn_rank) : Json(nullptr);
  Json homotopy = Json::array();
  for (const auto& h : r.homotopy) homotopy.push_back(Json{{"degree", h.degree}, {"statement", h.statement}});
  Json j{{"H_n", hn},
         {"applies", r.applies},
         {"second_clause", r.second_clause},
         {"l", r.l},
         {"hypotheses", checks_json(r.hypotheses)},
         {"homotopy", homotopy},
         {"reeb_homology", to_json(r.reeb_homology)},
         {"notes", r.notes}};
  j["cross_check"] = r.cross_check ? Json(*r.cross_check) : Json(nullptr);
  return j;
}

Json to_json(const ClassificationResult& r) {
  Json chain = Json::array();
  for (const auto& a : r.chain) {
    chain.push_back(Json{{"conclusion", a.conclusion},
                         {"hypotheses", checks_json(a.hypotheses)},
                         {"reference", a.reference},
                         {"rule", a.rule}});
  }
  Json j{{"classified", r.classified()},
         {"confidence", std::string(to_string(r.confidence))},
         {"theoremChain", chain},
         {"failed", checks_json(r.failed)},
         {"notes", r.notes}};
  j["manifold"] = r.manifold ? to_json(*r.manifold) : Json(nullptr);
  return j;
}

Json to_json(const Dim5Result& r) {
  Json j{{"verdict", std::string(to_string(r.verdict))}, {"reason", r.reason}, {"reference", r.reference}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const Preset& p) {
  return Json{{"name", p.name},
              {"description", p.description},
              {"descriptor", to_json(p.descriptor)},
              {"expected", to_json(p.expected)},
              {"known_as", p.known_as}};
}

Json to_json(const Diagnostic& d) {
  Json span{{"line", d.span.line}, {"col", d.span.col}, {"end_line", d.span.end_line}, {"end_col", d.span.end_col}};
  Json j{{"severity", std::string(to_string(d.severity))}, {"message", d.message}};
  j["span"] = d.span.line > 0 ? span : Json(nullptr);
  j["hint"] = d.hint.empty() ? Json(nullptr) : Json(d.hint);
  return j;
}

Json to_json(const ValidationReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json jv{{"message", v.message}};
    jv["event"] = v.event ? Json(*v.event) : Json(nullptr);
    vs.push_back(jv);
  }
  return Json{{"ok", r.ok()}, {"violations", vs}};
}

std::string homology_text(const HomologyProfile& h) {
  std::ostringstream os;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) os << ", ";
    os << "H_" << h[i].degree << " = ";
    std::vector<std::string> parts;
    if (h[i].rank == 1) parts.push_back("Z");
    if (h[i].rank > 1) parts.push_back("Z^" + std::to_string(h[i].rank));
    for (const auto& t : h[i].torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) parts.push_back("0");
    for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? " + " : "") << parts[k];
  }
  return os.str();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

std::string forest_dot(const Descriptor& d, const ComponentForest& f) {
  std::ostringstream os;
  os << "graph L {\n  rankdir=LR;\n";
  auto is_in = [](const std::vector<std::size_t>& v, std::size_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    const ForestVertex& v = f.vertices[i];
    std::string label;
    switch (v.kind) {
      case VertexKind::Event:
        label = std::string(to_string(d.events[v.event].kind)) + " " + std::to_string(v.event + 1);
        break;
      case VertexKind::Passive: label = v.component + " @" + std::to_string(v.event + 1); break;
      case VertexKind::Cap: label = "core " + v.component; break;
    }
    std::string shape = "ellipse";
    if (is_in(f.capped_leaves, i)) shape = "doublecircle";
    else if (is_in(f.free_leaves, i)) shape = "box";
    os << "  v" << i << " [label=\"" << dot_escape(label) << "\", shape=" << shape << "];\n";
  }
  for (const auto& e : f.edges) {
    os << "  v" << e.outer << " -- v" << e.inner << " [label=\"" << dot_escape(e.component) << " r"
       << e.region << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rfm

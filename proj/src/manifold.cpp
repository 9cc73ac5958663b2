#include "rfm/manifold.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rfm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::InvariantUnavailable: return "invariant unavailable";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Site: return "site";
    case ErrorKind::NotSeparable: return "not separable";
    case ErrorKind::SiteExhaustion: return "site exhaustion";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Scope: return "scope";
    case ErrorKind::NoConstruction: return "no construction known";
    case ErrorKind::UnknownPreset: return "unknown preset";
    case ErrorKind::TraceRequired: return "trace required";
    case ErrorKind::Mismatch: return "mismatch";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

std::string_view to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::AlmostSphere: return "almost_sphere";
    case ManifoldKind::HomotopySphere: return "homotopy_sphere";
    case ManifoldKind::Product: return "product";
    case ManifoldKind::Bundle: return "bundle";
    case ManifoldKind::ConnectedSum: return "connected_sum";
    case ManifoldKind::Named: return "named";
  }
  return "unknown";
}

Manifold Manifold::sphere(int dim) {
  if (dim < 0) throw Error(ErrorKind::Structural, "sphere of negative dimension");
  Manifold m;
  m.kind_ = ManifoldKind::Sphere;
  m.dim_ = dim;
  return m;
}

Manifold Manifold::almost_sphere(int dim, std::string label) {
  Manifold m = sphere(dim);
  m.kind_ = ManifoldKind::AlmostSphere;
  m.label_ = std::move(label);
  return m;
}

Manifold Manifold::homotopy_sphere(int dim, std::string label) {
  Manifold m = sphere(dim);
  m.kind_ = ManifoldKind::HomotopySphere;
  m.label_ = std::move(label);
  return m;
}

Manifold Manifold::product(std::vector<Manifold> factors) {
  if (factors.empty()) throw Error(ErrorKind::Structural, "product with no factors");
  Manifold m;
  m.kind_ = ManifoldKind::Product;
  for (const auto& f : factors) m.dim_ += f.dim();
  m.children_ = std::move(factors);
  return m;
}

Manifold Manifold::bundle(Manifold fiber, int base_dim, std::string twist) {
  if (base_dim < 1) throw Error(ErrorKind::Structural, "bundle base dimension must be positive");
  Manifold m;
  m.kind_ = ManifoldKind::Bundle;
  m.dim_ = fiber.dim() + base_dim;
  m.base_ = base_dim;
  m.label_ = std::move(twist);
  m.children_.push_back(std::move(fiber));
  return m;
}

Manifold Manifold::connected_sum(std::vector<Manifold> summands) {
  if (summands.empty()) throw Error(ErrorKind::Structural, "connected sum with no summands");
  const int dim = summands.front().dim();
  if (dim < 1) throw Error(ErrorKind::Structural, "connected sum of 0-dimensional manifolds");
  for (std::size_t i = 1; i < summands.size(); ++i) {
    if (summands[i].dim() != dim) {
      throw Error(ErrorKind::Structural,
                  "dimension mismatch in connected sum: " + to_text(summands.front()) + " has dim " +
                      std::to_string(dim) + " but " + to_text(summands[i]) + " has dim " +
                      std::to_string(summands[i].dim()));
    }
  }
  Manifold m;
  m.kind_ = ManifoldKind::ConnectedSum;
  m.dim_ = dim;
  m.children_ = std::move(summands);
  return m;
}

Manifold Manifold::named(std::string name, int dim, NamedInfo info) {
  if (dim < 0) throw Error(ErrorKind::Structural, "named manifold of negative dimension");
  Manifold m;
  m.kind_ = ManifoldKind::Named;
  m.dim_ = dim;
  m.label_ = std::move(name);
  m.named_ = std::move(info);
  return m;
}

bool Manifold::is_sphere_like() const noexcept {
  return kind_ == ManifoldKind::Sphere || kind_ == ManifoldKind::AlmostSphere ||
         kind_ == ManifoldKind::HomotopySphere;
}

namespace {

std::strong_ordering compare_info(const NamedInfo& a, const NamedInfo& b) {
  if (auto c = a.euler <=> b.euler; c != 0) return c;
  if (auto c = a.connectivity <=> b.connectivity; c != 0) return c;
  if (auto c = a.ranks <=> b.ranks; c != 0) return c;
  if (auto c = a.torsion_h2 <=> b.torsion_h2; c != 0) return c;
  return a.rational_homology_sphere <=> b.rational_homology_sphere;
}

}  // namespace

std::strong_ordering operator<=>(const Manifold& a, const Manifold& b) {
  if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_); c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  const std::size_t n = std::min(a.children_.size(), b.children_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.children_[i] <=> b.children_[i]; c != 0) return c;
  }
  if (auto c = a.children_.size() <=> b.children_.size(); c != 0) return c;
  if (auto c = a.label_.compare(b.label_) <=> 0; c != 0) return c;
  if (auto c = a.base_ <=> b.base_; c != 0) return c;
  return compare_info(a.named_, b.named_);
}

bool is_trivial_sphere_label(const std::string& label) {
  return label.empty() || label == "std";
}

Manifold normalize(const Manifold& e) {
  switch (e.kind()) {
    case ManifoldKind::Sphere:
    case ManifoldKind::Named:
      return e;
    case ManifoldKind::AlmostSphere:
    case ManifoldKind::HomotopySphere:
      if (e.dim() != 4 && is_trivial_sphere_label(e.label())) return Manifold::sphere(e.dim());
      return e;
    case ManifoldKind::Bundle: {
      Manifold fiber = normalize(e.fiber());
      if (e.is_trivial_twist()) {
        return normalize(Manifold::product({std::move(fiber), Manifold::sphere(e.base_dim())}));
      }
      return Manifold::bundle(std::move(fiber), e.base_dim(), e.label());
    }
    case ManifoldKind::Product: {
      std::vector<Manifold> factors;
      for (const auto& child : e.children()) {
        Manifold c = normalize(child);
        if (c.kind() == ManifoldKind::Product) {
          factors.insert(factors.end(), c.children().begin(), c.children().end());
        } else {
          factors.push_back(std::move(c));
        }
      }
      if (factors.size() == 1) return factors.front();
      std::sort(factors.begin(), factors.end());
      return Manifold::product(std::move(factors));
    }
    case ManifoldKind::ConnectedSum: {
      std::vector<Manifold> summands;
      for (const auto& child : e.children()) {
        Manifold c = normalize(child);
        if (c.kind() == ManifoldKind::ConnectedSum) {
          summands.insert(summands.end(), c.children().begin(), c.children().end());
        } else if (c.kind() != ManifoldKind::Sphere) {
          summands.push_back(std::move(c));
        }
      }
      if (summands.empty()) return Manifold::sphere(e.dim());
      if (summands.size() == 1) return summands.front();
      std::sort(summands.begin(), summands.end());
      return Manifold::connected_sum(std::move(summands));
    }
  }
  return e;
}

namespace {

std::int64_t sphere_euler(int d) { return d % 2 == 0 ? 2 : 0; }

std::int64_t euler_raw(const Manifold& e) {
  switch (e.kind()) {
    case ManifoldKind::Sphere:
    case ManifoldKind::AlmostSphere:
    case ManifoldKind::HomotopySphere:
      return sphere_euler(e.dim());
    case ManifoldKind::Product: {
      std::int64_t chi = 1;
      for (const auto& f : e.children()) chi *= euler_raw(f);
      return chi;
    }
    case ManifoldKind::Bundle:
      return euler_raw(e.fiber()) * sphere_euler(e.base_dim());
    case ManifoldKind::ConnectedSum: {
      std::int64_t chi = 0;
      for (const auto& s : e.children()) chi += euler_raw(s);
      const auto k = static_cast<std::int64_t>(e.children().size());
      return chi - (k - 1) * sphere_euler(e.dim());
    }
    case ManifoldKind::Named:
      if (!e.named_info().euler) {
        throw Error(ErrorKind::InvariantUnavailable,
                    "Euler characteristic of " + to_text(e) + " is not declared");
      }
      return *e.named_info().euler;
  }
  return 0;
}

RankList to_list(const std::map<int, std::int64_t>& ranks) {
  RankList out;
  for (const auto& [deg, r] : ranks) {
    if (r != 0) out.emplace_back(deg, r);
  }
  return out;
}

RankList kunneth(const RankList& a, const RankList& b) {
  std::map<int, std::int64_t> out;
  for (const auto& [da, ra] : a) {
    for (const auto& [db, rb] : b) out[da + db] += ra * rb;
  }
  return to_list(out);
}

RankList sphere_ranks(int d) {
  if (d == 0) return {{0, 2}};
  return {{0, 1}, {d, 1}};
}

std::int64_t rank_at(const RankList& r, int degree) {
  for (const auto& [d, v] : r) {
    if (d == degree) return v;
  }
  return 0;
}

[[noreturn]] void outside_fragment(const Manifold& e, const std::string& why) {
  throw Error(ErrorKind::InvariantUnavailable,
              "homology ranks of " + to_text(e) + " are unavailable: " + why);
}

}  // namespace

std::int64_t euler_of_expr(const Manifold& e) {
  const std::int64_t chi = euler_raw(e);
  if (e.dim() % 2 == 1) {
    if (chi != 0) {
      throw Error(ErrorKind::Structural, "odd-dimensional expression " + to_text(e) +
                                             " evaluates to nonzero Euler characteristic " +
                                             std::to_string(chi));
    }
    return 0;
  }
  return chi;
}

RankList homology_ranks_of_expr(const Manifold& e) {
  switch (e.kind()) {
    case ManifoldKind::Sphere:
    case ManifoldKind::AlmostSphere:
    case ManifoldKind::HomotopySphere:
      return sphere_ranks(e.dim());
    case ManifoldKind::Product: {
      RankList acc{{0, 1}};
      for (const auto& f : e.children()) acc = kunneth(acc, homology_ranks_of_expr(f));
      return acc;
    }
    case ManifoldKind::Bundle: {
      if (e.is_trivial_twist()) {
        return kunneth(homology_ranks_of_expr(e.fiber()), sphere_ranks(e.base_dim()));
      }
      const Manifold& fiber = e.fiber();
      if (!fiber.is_sphere_like()) outside_fragment(e, "twisted bundle with non-sphere fiber");
      if (fiber.dim() < e.base_dim()) {
        outside_fragment(e, "sphere bundle with fiber dimension below the base dimension");
      }
      // No differential of the Serre spectral sequence can hit when the
      // fiber dimension is at least the base dimension.
      return kunneth(sphere_ranks(fiber.dim()), sphere_ranks(e.base_dim()));
    }
    case ManifoldKind::ConnectedSum: {
      const int m = e.dim();
      std::map<int, std::int64_t> out{{0, 1}, {m, 1}};
      for (const auto& s : e.children()) {
        const RankList r = homology_ranks_of_expr(s);
        if (rank_at(r, 0) != 1) outside_fragment(e, "disconnected summand");
        for (const auto& [d, v] : r) {
          if (d > 0 && d < m) out[d] += v;
        }
      }
      return to_list(out);
    }
    case ManifoldKind::Named:
      if (!e.named_info().ranks) outside_fragment(e, "no declared ranks");
      return *e.named_info().ranks;
  }
  return {};
}

std::optional<int> known_connectivity(const Manifold& e) {
  switch (e.kind()) {
    case ManifoldKind::Sphere:
    case ManifoldKind::AlmostSphere:
    case ManifoldKind::HomotopySphere:
      if (e.dim() == 0) return std::nullopt;
      return e.dim() - 1;
    case ManifoldKind::Product: {
      std::optional<int> acc;
      for (const auto& f : e.children()) {
        auto c = known_connectivity(f);
        if (!c) return std::nullopt;
        acc = acc ? std::min(*acc, *c) : *c;
      }
      return acc;
    }
    case ManifoldKind::Bundle: {
      auto c = known_connectivity(e.fiber());
      if (!c) return std::nullopt;
      return std::min(*c, e.base_dim() - 1);
    }
    case ManifoldKind::ConnectedSum: {
      std::optional<int> acc;
      for (const auto& s : e.children()) {
        auto c = known_connectivity(s);
        if (!c) return std::nullopt;
        acc = acc ? std::min(*acc, *c) : *c;
      }
      if (e.dim() <= 2) return std::min(*acc, 0);
      return acc;
    }
    case ManifoldKind::Named:
      return e.named_info().connectivity;
  }
  return std::nullopt;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

void write_text(std::ostringstream& os, const Manifold& e) {
  switch (e.kind()) {
    case ManifoldKind::Sphere:
      os << "S(" << e.dim() << ")";
      return;
    case ManifoldKind::AlmostSphere:
      os << "Sigma(" << e.dim() << ", " << quote(e.label()) << ")";
      return;
    case ManifoldKind::HomotopySphere:
      os << "Theta(" << e.dim() << ", " << quote(e.label()) << ")";
      return;
    case ManifoldKind::Product: {
      bool first = true;
      for (const auto& f : e.children()) {
        if (!first) os << " * ";
        first = false;
        if (f.kind() == ManifoldKind::Product) {
          os << "(";
          write_text(os, f);
          os << ")";
        } else {
          write_text(os, f);
        }
      }
      return;
    }
    case ManifoldKind::Bundle:
      os << "bundle(";
      write_text(os, e.fiber());
      os << " over " << e.base_dim();
      if (!e.is_trivial_twist()) os << ", twist " << quote(e.label());
      os << ")";
      return;
    case ManifoldKind::ConnectedSum: {
      os << "csum(";
      bool first = true;
      for (const auto& s : e.children()) {
        if (!first) os << ", ";
        first = false;
        write_text(os, s);
      }
      os << ")";
      return;
    }
    case ManifoldKind::Named: {
      const NamedInfo& info = e.named_info();
      os << "named(" << quote(e.label()) << ", dim=" << e.dim();
      if (info.euler) os << ", euler=" << *info.euler;
      if (info.connectivity != 0) os << ", conn=" << info.connectivity;
      if (info.torsion_h2) os << ", torsion=true";
      if (info.rational_homology_sphere) os << ", qhs=true";
      if (info.ranks) {
        os << ", ranks=[";
        bool first = true;
        for (const auto& [d, r] : *info.ranks) {
          if (!first) os << ", ";
          first = false;
          os << d << ":" << r;
        }
        os << "]";
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string to_text(const Manifold& e) {
  std::ostringstream os;
  write_text(os, e);
  return os.str();
}

}  // namespace rfm

#pragma once

// Formal closed-manifold expressions.
//
// A Manifold is an immutable tree: spheres and almost/homotopy spheres at the
// leaves, products, bundle total spaces over standard spheres and connected
// sums as interior nodes, plus opaque Named leaves that carry declared
// invariants. Twist labels are opaque; two distinct labels are never merged.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfm/error.hpp"

namespace rfm {

enum class ManifoldKind {
  Sphere = 0,
  AlmostSphere = 1,
  HomotopySphere = 2,
  Product = 3,
  Bundle = 4,
  ConnectedSum = 5,
  Named = 6,
};

std::string_view to_string(ManifoldKind kind);

/// (degree, free rank) pairs, ascending by degree, zero ranks omitted.
using RankList = std::vector<std::pair<int, std::int64_t>>;

/// Declared data of a Named leaf.
struct NamedInfo {
  std::optional<std::int64_t> euler;
  int connectivity = 0;
  std::optional<RankList> ranks;
  bool torsion_h2 = false;
  bool rational_homology_sphere = false;

  friend bool operator==(const NamedInfo&, const NamedInfo&) = default;
};

/// Number of oriented homotopy 7-spheres up to orientation preserving
/// diffeomorphism.
inline constexpr int kTheta7Order = 28;
/// Classes of Theta_7 that admit no special generic map into R^3.
inline constexpr int kTheta7NoSpecialGenericIntoR3 = 14;

class Manifold {
 public:
  static Manifold sphere(int dim);
  static Manifold almost_sphere(int dim, std::string label);
  static Manifold homotopy_sphere(int dim, std::string label);
  /// Throws Structural on an empty factor list.
  static Manifold product(std::vector<Manifold> factors);
  /// An empty twist label means the trivial bundle.
  static Manifold bundle(Manifold fiber, int base_dim, std::string twist = {});
  /// Throws Structural on an empty list or on summands of different dims.
  static Manifold connected_sum(std::vector<Manifold> summands);
  static Manifold named(std::string name, int dim, NamedInfo info = {});

  ManifoldKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  const std::vector<Manifold>& children() const noexcept { return children_; }
  /// Twist label (Bundle), theta/twist label (spheres) or name (Named).
  const std::string& label() const noexcept { return label_; }
  int base_dim() const noexcept { return base_; }
  const Manifold& fiber() const { return children_.front(); }
  const NamedInfo& named_info() const noexcept { return named_; }

  bool is_trivial_twist() const noexcept { return label_.empty(); }
  /// Standard sphere, or an almost/homotopy sphere.
  bool is_sphere_like() const noexcept;
  bool is_standard_sphere() const noexcept { return kind_ == ManifoldKind::Sphere; }

  friend std::strong_ordering operator<=>(const Manifold& a, const Manifold& b);
  friend bool operator==(const Manifold& a, const Manifold& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  Manifold() = default;

  ManifoldKind kind_ = ManifoldKind::Sphere;
  int dim_ = 0;
  std::vector<Manifold> children_;
  std::string label_;
  int base_ = 0;
  NamedInfo named_;
};

/// True for labels that denote the standard smooth structure.
bool is_trivial_sphere_label(const std::string& label);

/// Canonical form: idempotent; flattens sums and products, sorts summands
/// and factors, drops standard-sphere summands, rewrites trivial bundles as
/// products and trivially-labelled exotic spheres (dim != 4) as spheres.
Manifold normalize(const Manifold& e);

/// Euler characteristic. Throws InvariantUnavailable when a Named leaf has
/// no declared value, Structural when an odd-dimensional value is nonzero.
std::int64_t euler_of_expr(const Manifold& e);

/// Free homology ranks on the recognizable fragment; throws
/// InvariantUnavailable outside it.
RankList homology_ranks_of_expr(const Manifold& e);

/// Lower bound on the connectivity (k such that pi_i = 0 for i <= k), or
/// nullopt when nothing is known.
std::optional<int> known_connectivity(const Manifold& e);

/// Canonical DSL text of an expression.
std::string to_text(const Manifold& e);

}  // namespace rfm

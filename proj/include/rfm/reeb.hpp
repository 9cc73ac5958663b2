#pragma once

// Cellular model of the Reeb space and exact integer homology.
//
// W_f is modelled as S^{n-1} x L with one n-disc glued over every capped
// leaf of L. S^{n-1} carries its minimal cell structure (a point and a top
// cell; for n = 1 the two points of S^0).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rfm/descriptor.hpp"

namespace rfm {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix, row major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  BigInt& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

struct SmithForm {
  /// Positive invariant factors, each dividing the next.
  std::vector<BigInt> factors;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// boundary[d] maps C_d to C_{d-1} (rows = (d-1)-cells, cols = d-cells);
/// boundary[0] is the empty 0 x cells[0] map.
struct ChainComplex {
  std::vector<std::size_t> cells;
  std::vector<IntMatrix> boundary;

  int top_degree() const { return static_cast<int>(cells.size()) - 1; }
  /// Throws Structural on shape mismatches or a nonzero composite.
  void check() const;
};

struct HomologyGroup {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<BigInt> torsion;

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// One entry per degree 0..top.
using HomologyProfile = std::vector<HomologyGroup>;

HomologyProfile homology(const ChainComplex& c);

/// Free rank in `degree`, zero outside the profile.
std::size_t rank_in(const HomologyProfile& h, int degree);
bool torsion_free(const HomologyProfile& h);

enum class CellOrigin {
  VertexTimesPoint,  // v x e^0
  VertexTimesTop,    // v x e^{n-1}
  EdgeTimesPoint,    // e x e^0
  EdgeTimesTop,      // e x e^{n-1}
  Cap,               // disc over a capped leaf
};

std::string_view to_string(CellOrigin o);

struct CellInfo {
  CellOrigin origin = CellOrigin::VertexTimesPoint;
  /// Forest vertex index (vertex cells and caps) or edge index.
  std::size_t source = 0;
};

struct ReebComplex {
  ChainComplex complex;
  /// provenance[d][i] describes cell i of dimension d.
  std::vector<std::vector<CellInfo>> provenance;
  ComponentForest forest;

  std::size_t cap_count() const;
};

ReebComplex build_reeb(const Descriptor& d);

/// Euler characteristic of the source by additivity over the radial strata.
std::int64_t euler_characteristic(const Descriptor& d);

/// Descriptor lies in the class where every regular fiber component is
/// sphere-like and every fold has index 0 or 1.
bool in_prop1_class(const Descriptor& d);

/// Declared simple connectivity, else what the Reeb model forces.
std::optional<bool> simply_connected(const Descriptor& d);

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct HomotopyClaim {
  int degree = 0;
  /// "pi_k(M) = pi_k(W_f)" or "pi_k(M) = 0".
  std::string statement;
};

struct Prop1Report {
  std::vector<HypothesisCheck> hypotheses;
  /// First clause (homotopy groups agree with W_f in low degrees).
  bool applies = false;
  /// Second clause (simply connected, m >= 2n).
  bool second_clause = false;
  std::size_t l = 0;
  int hn_degree = 0;
  std::optional<std::size_t> hn_rank;
  /// "M" when licensed by the second clause, "W_f" otherwise.
  std::string hn_source;
  std::vector<HomotopyClaim> homotopy;
  HomologyProfile reeb_homology;
  /// Agreement of the second-clause ranks with homology(build_reeb(d)).
  std::optional<bool> cross_check;
  std::vector<std::string> notes;
};

Prop1Report prop1_report(const Descriptor& d);

}  // namespace rfm

#include "rfm/reeb.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace rfm {

bool IntMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const BigInt& x) { return x.is_zero(); });
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw Error(ErrorKind::Structural, "matrix shapes do not compose");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const BigInt& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        if (!b.at(k, j).is_zero()) c.at(i, j) += x * b.at(k, j);
      }
    }
  }
  return c;
}

namespace {

using Dense = std::vector<std::vector<BigInt>>;

// Classic reduction with least-absolute-value pivots.
std::vector<BigInt> dense_smith(Dense a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> factors;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
  };

  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j].is_zero()) continue;
        if (pr == rows || abs(a[i][j]) < abs(a[pr][pc])) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t].is_zero()) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) {
          if (!a[t][j].is_zero()) a[i][j] -= q * a[t][j];
        }
        if (!a[i][t].is_zero()) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j].is_zero()) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) {
          if (!a[i][t].is_zero()) a[i][j] -= q * a[i][t];
        }
        if (!a[t][j].is_zero()) dirty = true;
      }
      if (dirty) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (!a[i][t].is_zero() && abs(a[i][t]) < abs(a[bi][bj])) {
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!a[t][j].is_zero() && abs(a[t][j]) < abs(a[bi][bj])) {
            bi = t;
            bj = j;
          }
        }
        std::swap(a[t], a[bi]);
        swap_cols(t, bj);
        continue;
      }
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    factors.push_back(abs(a[t][t]));
  }
  return factors;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t rows = input.rows;
  const std::size_t cols = input.cols;
  Dense a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = input.at(i, j);
  }

  // Unit pivots are eliminated in place first; boundary matrices of cell
  // complexes are mostly +-1 so this leaves a small dense remainder.
  std::vector<bool> row_done(rows, false), col_done(cols, false);
  std::size_t units = 0;
  for (bool found = true; found;) {
    found = false;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_done[j] || abs(a[i][j]) != 1) continue;
        const BigInt u = a[i][j];
        for (std::size_t k = 0; k < rows; ++k) {
          if (k == i || row_done[k] || a[k][j].is_zero()) continue;
          const BigInt q = a[k][j] * u;
          for (std::size_t c = 0; c < cols; ++c) {
            if (!col_done[c] && !a[i][c].is_zero()) a[k][c] -= q * a[i][c];
          }
        }
        row_done[i] = true;
        col_done[j] = true;
        ++units;
        found = true;
        break;
      }
    }
  }

  Dense rest;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_done[i]) continue;
    std::vector<BigInt> row;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!col_done[j]) row.push_back(a[i][j]);
    }
    rest.push_back(std::move(row));
  }

  SmithForm out;
  out.factors.assign(units, BigInt(1));
  for (auto& f : dense_smith(std::move(rest))) out.factors.push_back(std::move(f));
  out.rank = out.factors.size();
  return out;
}

void ChainComplex::check() const {
  if (boundary.size() != cells.size()) {
    throw Error(ErrorKind::Structural, "chain complex needs one boundary map per degree");
  }
  for (std::size_t d = 0; d < cells.size(); ++d) {
    const IntMatrix& b = boundary[d];
    const std::size_t below = d == 0 ? 0 : cells[d - 1];
    if (b.cols != cells[d] || b.rows != below) {
      throw Error(ErrorKind::Structural,
                  "boundary map in degree " + std::to_string(d) + " has the wrong shape");
    }
    if (d >= 2 && !multiply(boundary[d - 1], b).is_zero()) {
      throw Error(ErrorKind::Structural,
                  "boundary maps compose to nonzero in degree " + std::to_string(d));
    }
  }
}

HomologyProfile homology(const ChainComplex& c) {
  c.check();
  const std::size_t top = c.cells.size();
  std::vector<SmithForm> snf(top + 1);
  for (std::size_t d = 1; d < top; ++d) snf[d] = smith_normal_form(c.boundary[d]);

  HomologyProfile h;
  for (std::size_t d = 0; d < top; ++d) {
    HomologyGroup g;
    g.degree = static_cast<int>(d);
    const std::size_t out_rank = d == 0 ? 0 : snf[d].rank;
    const std::size_t in_rank = d + 1 < top ? snf[d + 1].rank : 0;
    g.rank = c.cells[d] - out_rank - in_rank;
    if (d + 1 < top) {
      for (const auto& f : snf[d + 1].factors) {
        if (f > 1) g.torsion.push_back(f);
      }
    }
    h.push_back(std::move(g));
  }
  return h;
}

std::size_t rank_in(const HomologyProfile& h, int degree) {
  for (const auto& g : h) {
    if (g.degree == degree) return g.rank;
  }
  return 0;
}

bool torsion_free(const HomologyProfile& h) {
  return std::all_of(h.begin(), h.end(), [](const HomologyGroup& g) { return g.torsion.empty(); });
}

std::string_view to_string(CellOrigin o) {
  switch (o) {
    case CellOrigin::VertexTimesPoint: return "vertex_point";
    case CellOrigin::VertexTimesTop: return "vertex_top";
    case CellOrigin::EdgeTimesPoint: return "edge_point";
    case CellOrigin::EdgeTimesTop: return "edge_top";
    case CellOrigin::Cap: return "cap";
  }
  return "?";
}

std::size_t ReebComplex::cap_count() const {
  std::size_t count = 0;
  for (const auto& dim : provenance) {
    count += std::count_if(dim.begin(), dim.end(),
                           [](const CellInfo& c) { return c.origin == CellOrigin::Cap; });
  }
  return count;
}

ReebComplex build_reeb(const Descriptor& d) {
  ReebComplex out;
  out.forest = component_forest(d);
  const ComponentForest& forest = out.forest;
  const int n = d.n;
  const int sd = n - 1;  // dimension of the top cell of S^{n-1}

  auto& cells = out.provenance;
  cells.assign(static_cast<std::size_t>(n) + 1, {});
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, int>>> entries(cells.size());
  auto add = [&](int dim, CellOrigin o, std::size_t src) {
    cells[dim].push_back({o, src});
    return cells[dim].size() - 1;
  };

  const std::size_t nv = forest.vertices.size();
  std::vector<std::size_t> vp(nv), vt(nv);
  for (std::size_t v = 0; v < nv; ++v) vp[v] = add(0, CellOrigin::VertexTimesPoint, v);
  for (std::size_t v = 0; v < nv; ++v) vt[v] = add(sd, CellOrigin::VertexTimesTop, v);
  for (std::size_t e = 0; e < forest.edges.size(); ++e) {
    const ForestEdge& edge = forest.edges[e];
    const std::size_t c = add(1, CellOrigin::EdgeTimesPoint, e);
    entries[1].emplace_back(vp[edge.inner], c, 1);
    entries[1].emplace_back(vp[edge.outer], c, -1);
  }
  for (std::size_t e = 0; e < forest.edges.size(); ++e) {
    const ForestEdge& edge = forest.edges[e];
    const std::size_t c = add(sd + 1, CellOrigin::EdgeTimesTop, e);
    entries[sd + 1].emplace_back(vt[edge.inner], c, 1);
    entries[sd + 1].emplace_back(vt[edge.outer], c, -1);
  }
  for (std::size_t leaf : forest.capped_leaves) {
    const std::size_t c = add(n, CellOrigin::Cap, leaf);
    entries[n].emplace_back(vt[leaf], c, 1);
    if (n == 1) entries[n].emplace_back(vp[leaf], c, -1);
  }

  ChainComplex& cx = out.complex;
  for (const auto& dim : cells) cx.cells.push_back(dim.size());
  cx.boundary.emplace_back(0, cx.cells[0]);
  for (std::size_t k = 1; k < cells.size(); ++k) {
    IntMatrix b(cx.cells[k - 1], cx.cells[k]);
    for (const auto& [r, c, v] : entries[k]) b.at(r, c) += v;
    cx.boundary.push_back(std::move(b));
  }
  cx.check();
  return out;
}

namespace {

std::int64_t chi_of(const FiberConfiguration& cfg) {
  std::int64_t total = 0;
  for (const auto& c : cfg) total += euler_of_expr(c.label);
  return total;
}

const Manifold& label_of(const FiberConfiguration& cfg, const std::string& id) {
  for (const auto& c : cfg) {
    if (c.id == id) return c.label;
  }
  throw Error(ErrorKind::Structural, "component " + id + " missing during replay");
}

}  // namespace

std::int64_t euler_characteristic(const Descriptor& d) {
  const auto fibers = regular_fibers(d);
  const std::size_t l = d.l();
  const std::int64_t chi_sphere = euler_of_expr(Manifold::sphere(d.n - 1));
  const std::int64_t chi_core = d.n % 2 == 0 ? 1 : -1;

  std::int64_t total = 0;
  for (std::size_t r = 1; r <= l; ++r) {
    const std::int64_t chi_c = r == l ? chi_core : -chi_sphere;
    total += chi_c * chi_of(fibers[r]);
  }
  for (std::size_t k = 0; k < l; ++k) {
    const FoldEvent& ev = d.events[k];
    const FiberConfiguration& outer = fibers[k];
    std::int64_t singular = 0;
    for (const auto& c : outer) {
      if (std::find(ev.consumed.begin(), ev.consumed.end(), c.id) == ev.consumed.end()) {
        singular += euler_of_expr(c.label);
      }
    }
    switch (ev.kind) {
      case EventKind::Birth:
      case EventKind::Death:
        singular += 1;
        break;
      case EventKind::Split:
        singular += euler_of_expr(ev.produced[0].label) + euler_of_expr(ev.produced[1].label) - 1;
        break;
      case EventKind::Merge:
        singular += euler_of_expr(label_of(outer, ev.consumed[0])) +
                    euler_of_expr(label_of(outer, ev.consumed[1])) - 1;
        break;
      case EventKind::Generic:
        singular += *ev.singular_euler;
        break;
    }
    total += chi_sphere * singular;
  }
  if (d.m % 2 != 0 && total != 0) {
    throw Error(ErrorKind::Structural,
                "odd-dimensional source has nonzero Euler characteristic " + std::to_string(total) +
                    "; the declared singular fiber data is inconsistent");
  }
  return total;
}

namespace {

std::optional<std::string> non_sphere_fiber(const std::vector<FiberConfiguration>& fibers) {
  for (const auto& cfg : fibers) {
    for (const auto& c : cfg) {
      if (!normalize(c.label).is_sphere_like()) return c.id + " = " + to_text(c.label);
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> high_index_event(const Descriptor& d) {
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    if (d.events[k].index > 1) return k;
  }
  return std::nullopt;
}

}  // namespace

bool in_prop1_class(const Descriptor& d) {
  const auto fibers = regular_fibers(d);
  return !non_sphere_fiber(fibers) && !high_index_event(d);
}

std::optional<bool> simply_connected(const Descriptor& d) {
  if (d.simply_connected) return d.simply_connected;
  if (!in_prop1_class(d) || d.n < 2 || d.m - d.n < 2) return std::nullopt;
  const ComponentForest forest = component_forest(d);
  if (!forest.connected()) return std::nullopt;
  return forest.is_tree() && (d.n >= 3 || !forest.capped_leaves.empty());
}

Prop1Report prop1_report(const Descriptor& d) {
  Prop1Report rep;
  const auto fibers = regular_fibers(d);
  const ComponentForest forest = component_forest(d);
  const int m = d.m;
  const int n = d.n;
  rep.l = fibers.back().size();
  rep.hn_degree = n;

  auto& hyp = rep.hypotheses;
  hyp.push_back({"source connected", forest.connected(),
                 std::to_string(forest.connected_components) + " component(s) in L"});
  hyp.push_back({"m > n >= 2", m > n && n >= 2,
                 "m = " + std::to_string(m) + ", n = " + std::to_string(n)});
  const auto bad_fiber = non_sphere_fiber(fibers);
  hyp.push_back({"regular fibers are almost-spheres", !bad_fiber,
                 bad_fiber ? "component " + *bad_fiber : "all components sphere-like"});
  const auto bad_event = high_index_event(d);
  hyp.push_back({"fold indices are 0 or 1", !bad_event,
                 bad_event ? "event " + std::to_string(*bad_event + 1) + " has index " +
                                 std::to_string(d.events[*bad_event].index)
                           : "max index " + std::to_string(std::max_element(
                                                d.events.begin(), d.events.end(),
                                                [](const FoldEvent& a, const FoldEvent& b) {
                                                  return a.index < b.index;
                                                })->index)});
  rep.applies = std::all_of(hyp.begin(), hyp.end(), [](const HypothesisCheck& h) { return h.holds; });

  std::optional<bool> sc;
  std::string sc_detail;
  if (d.simply_connected) {
    sc = d.simply_connected;
    sc_detail = "declared";
  } else if (rep.applies) {
    sc = simply_connected(d);
    sc_detail = sc ? "derived from the Reeb model" : "not determined";
  } else {
    sc_detail = "not determined";
  }
  hyp.push_back({"simply connected", sc.value_or(false), sc_detail});
  hyp.push_back({"m >= 2n", m >= 2 * n,
                 "m = " + std::to_string(m) + ", 2n = " + std::to_string(2 * n)});
  rep.second_clause = rep.applies && sc.value_or(false) && m >= 2 * n;

  if (!rep.applies) return rep;

  const ReebComplex reeb = build_reeb(d);
  rep.reeb_homology = homology(reeb.complex);

  for (int k = 0; k <= m - n - 1; ++k) {
    const bool vanishing = rep.second_clause && k <= n - 1;
    rep.homotopy.push_back(
        {k, vanishing ? "pi_k(M) = 0" : "pi_k(M) = pi_k(W_f)"});
  }
  if (rep.second_clause) {
    const std::size_t r = m > 2 * n ? rep.l - 1 : 2 * (rep.l - 1);
    auto it = std::find_if(rep.homotopy.begin(), rep.homotopy.end(),
                           [&](const HomotopyClaim& c) { return c.degree == n; });
    const std::string claim = "pi_n(M) = H_n(M) = Z^" + std::to_string(r);
    if (it != rep.homotopy.end()) {
      it->statement = claim;
    } else {
      rep.homotopy.push_back({n, claim});
    }
    rep.hn_rank = r;
    rep.hn_source = "M";
    bool agree = rank_in(rep.reeb_homology, n) == rep.l - 1 && torsion_free(rep.reeb_homology);
    for (int k = 1; k < n; ++k) agree = agree && rank_in(rep.reeb_homology, k) == 0;
    rep.cross_check = agree;
  } else {
    rep.hn_rank = rank_in(rep.reeb_homology, n);
    rep.hn_source = "W_f";
    rep.notes.push_back("H_n is reported for W_f; the second clause needs simple connectivity and m >= 2n");
  }
  rep.notes.push_back("pi_k for k >= " + std::to_string(std::max(m - n, rep.second_clause ? n + 1 : 0)) +
                      " is not determined");
  return rep;
}

}  // namespace rfm

#pragma once

#include <functional>
#include <map>

#include "berkcrucial/profile.hpp"

namespace berk {

/// Finite subtree of the Berkovich line: vertices (normal-formed points,
/// closed under pairwise joins) with adjacency; edge lengths are rho,
/// +infinity for edges reaching type I points.
class FiniteTree {
 public:
  struct Edge {
    int u, v;
    ExtValue len;
  };

  const std::vector<BerkPoint>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& incident() const { return inc_; }
  int find(const BerkPoint& P) const;  // -1 if absent
  bool trivial() const { return verts_.size() <= 1; }
  int valency(int v) const { return static_cast<int>(inc_[v].size()); }

  /// Vertices with valency <= 1.
  std::vector<int> endpoints() const;
  /// Index of the neighbor of v along edge e.
  int other(int e, int v) const;
  /// Connected component of "start" in the tree minus vertex "cut".
  std::vector<int> component_without(int cut, int start) const;

  static FiniteTree span(const std::vector<BerkPoint>& points);
  /// Span of this tree's vertices plus extra points (used for refinement).
  FiniteTree with_points(const std::vector<BerkPoint>& extra) const;

  /// True when P lies on the tree (on a vertex or inside an edge).
  bool contains(const BerkPoint& P) const;

 private:
  std::vector<BerkPoint> verts_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> inc_;
  void rebuild_adjacency();
};

/// Nearest-point retraction of S onto the tree.
BerkPoint retract_to_tree(const BerkPoint& S, const FiniteTree& T);

/// Atomic signed measure with finite support on the line.
class TreeMeasure {
 public:
  void add(const BerkPoint& P, const QQ& mass);
  QQ at(const BerkPoint& P) const;
  QQ total() const;
  QQ total_variation() const;
  /// Total mass carried by the listed points.
  const std::vector<std::pair<BerkPoint, QQ>>& atoms() const { return atoms_; }
  TreeMeasure operator+(const TreeMeasure& o) const;
  TreeMeasure operator-(const TreeMeasure& o) const;
  TreeMeasure scaled(const QQ& c) const;
  TreeMeasure pushforward_retract(const FiniteTree& T) const;

 private:
  std::vector<std::pair<BerkPoint, QQ>> atoms_;  // keyed, sorted, nonzero
};

/// nu_Gamma = -(1/2) sum (v_Gamma(S) - 2) delta_S; total mass 1.
TreeMeasure valency_measure(const FiniteTree& T);

/// A piecewise-affine function on a tree: one exact segment profile per edge
/// (oriented u -> v), with every profile breakpoint a vertex.
struct TreePLF {
  FiniteTree tree;
  std::vector<SegmentPLF> profs;  // parallel to tree.edges()

  QQ value_at_vertex(int v) const;
  /// Supremum over the tree (requires finite values; type I tails must have
  /// nonpositive outward slope).
  QQ sup() const;
};

using EdgeProfiler =
    std::function<SegmentPLF(const BerkPoint&, const BerkPoint&)>;

/// Compute per-edge profiles, refining the tree until all breakpoints are
/// vertices.  Several profilers may be supplied; the tree is refined for the
/// union of their breakpoints and all are evaluated on the final tree.
std::vector<TreePLF> build_profiled(const FiniteTree& T,
                                    const std::vector<EdgeProfiler>& gens);

/// Outward-slope Laplacian: atom at each vertex = sum of slopes into the
/// incident edges; at type I endpoints the (finite) tail slope is used.
TreeMeasure tree_laplacian(const TreePLF& F);

enum class NuRoute { CrucialLaplacian, Geometric };

/// nu_{f,Gamma}: probability measure on Gamma.  The CrucialLaplacian route
/// evaluates Delta_Gamma(Crucial_f|Gamma) + nu_Gamma; the Geometric route
/// uses the wedge and potential profiles with base point S0.
TreeMeasure nu_f_gamma(const RationalMapRep& f, const FiniteTree& T,
                       const BerkPoint& S0,
                       NuRoute route = NuRoute::CrucialLaplacian);

struct BarycenterResult {
  std::vector<BerkPoint> extremes;  // one point, or the two ends of a segment
};

/// Barycenter of a probability measure on the tree: the set of points all of
/// whose tree-direction masses are <= 1/2.
BarycenterResult barycenter(const TreeMeasure& nu, const FiniteTree& T);

}  // namespace berk

#include "berkcrucial/tree.hpp"

#include <algorithm>
#include <set>

namespace berk {

namespace {
QQ fin(const ExtValue& v) { return v.value(); }

// z strictly between x and y on the tree
bool strictly_between(const BerkPoint& z, const BerkPoint& x, const BerkPoint& y) {
  if (z == x || z == y) return false;
  return join(x, y, z) == z;
}
}  // namespace

int FiniteTree::find(const BerkPoint& P) const {
  std::string k = P.key();
  for (size_t i = 0; i < verts_.size(); ++i)
    if (verts_[i].key() == k) return static_cast<int>(i);
  return -1;
}

std::vector<int> FiniteTree::endpoints() const {
  std::vector<int> out;
  for (size_t i = 0; i < verts_.size(); ++i)
    if (inc_[i].size() <= 1) out.push_back(static_cast<int>(i));
  return out;
}

int FiniteTree::other(int e, int v) const {
  return edges_[e].u == v ? edges_[e].v : edges_[e].u;
}

std::vector<int> FiniteTree::component_without(int cut, int start) const {
  std::vector<int> seen;
  std::vector<bool> mark(verts_.size(), false);
  mark[cut] = true;
  std::vector<int> stack{start};
  mark[start] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    seen.push_back(v);
    for (int e : inc_[v]) {
      int w = other(e, v);
      if (!mark[w]) {
        mark[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

void FiniteTree::rebuild_adjacency() {
  inc_.assign(verts_.size(), {});
  for (size_t e = 0; e < edges_.size(); ++e) {
    inc_[edges_[e].u].push_back(static_cast<int>(e));
    inc_[edges_[e].v].push_back(static_cast<int>(e));
  }
}

FiniteTree FiniteTree::span(const std::vector<BerkPoint>& points) {
  if (points.empty()) throw InputError("span of an empty point set");
  FiniteTree T;
  std::set<std::string> seen;
  std::vector<BerkPoint> V;
  auto push = [&](const BerkPoint& P) {
    BerkPoint n = P.normal_form();
    if (seen.insert(n.key()).second) V.push_back(n);
  };
  for (const auto& P : points) push(P);
  // close under medians of triples (branch points of the Steiner tree)
  size_t base = V.size();
  for (size_t i = 0; i < base; ++i)
    for (size_t j = i + 1; j < base; ++j)
      for (size_t k = j + 1; k < base; ++k) push(join(V[i], V[j], V[k]));
  // adjacency by betweenness
  T.verts_ = V;
  for (size_t i = 0; i < V.size(); ++i)
    for (size_t j = i + 1; j < V.size(); ++j) {
      bool adjacent = true;
      for (size_t k = 0; k < V.size() && adjacent; ++k) {
        if (k == i || k == j) continue;
        if (strictly_between(V[k], V[i], V[j])) adjacent = false;
      }
      if (adjacent)
        T.edges_.push_back(
            Edge{static_cast<int>(i), static_cast<int>(j), rho(V[i], V[j])});
    }
  T.rebuild_adjacency();
  return T;
}

FiniteTree FiniteTree::with_points(const std::vector<BerkPoint>& extra) const {
  std::vector<BerkPoint> pts = verts_;
  pts.insert(pts.end(), extra.begin(), extra.end());
  return span(pts);
}

bool FiniteTree::contains(const BerkPoint& P) const {
  if (find(P) >= 0) return true;
  for (const auto& e : edges_)
    if (strictly_between(P, verts_[e.u], verts_[e.v])) return true;
  return false;
}

BerkPoint retract_to_tree(const BerkPoint& S, const FiniteTree& T) {
  BerkPoint r = T.vertices()[0];
  for (const auto& v : T.vertices()) r = join(S, r, v);
  return r;
}

void TreeMeasure::add(const BerkPoint& P, const QQ& mass) {
  if (mass == 0) return;
  BerkPoint n = P.normal_form();
  std::string k = n.key();
  for (auto& [pt, m] : atoms_) {
    if (pt.key() == k) {
      m += mass;
      if (m == 0) {
        atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(),
                                    [&](const auto& a) { return a.second == 0; }),
                     atoms_.end());
      }
      return;
    }
  }
  atoms_.emplace_back(n, mass);
  std::sort(atoms_.begin(), atoms_.end(),
            [](const auto& a, const auto& b) { return a.first.key() < b.first.key(); });
}

QQ TreeMeasure::at(const BerkPoint& P) const {
  std::string k = P.normal_form().key();
  for (const auto& [pt, m] : atoms_)
    if (pt.key() == k) return m;
  return QQ(0);
}

QQ TreeMeasure::total() const {
  QQ s(0);
  for (const auto& [pt, m] : atoms_) s += m;
  return s;
}

QQ TreeMeasure::total_variation() const {
  QQ s(0);
  for (const auto& [pt, m] : atoms_) s += abs(m);
  return s;
}

TreeMeasure TreeMeasure::operator+(const TreeMeasure& o) const {
  TreeMeasure r = *this;
  for (const auto& [pt, m] : o.atoms_) r.add(pt, m);
  return r;
}

TreeMeasure TreeMeasure::operator-(const TreeMeasure& o) const {
  return *this + o.scaled(QQ(-1));
}

TreeMeasure TreeMeasure::scaled(const QQ& c) const {
  TreeMeasure r;
  if (c == 0) return r;
  for (const auto& [pt, m] : atoms_) r.add(pt, QQ(m * c));
  return r;
}

TreeMeasure TreeMeasure::pushforward_retract(const FiniteTree& T) const {
  TreeMeasure r;
  for (const auto& [pt, m] : atoms_) r.add(retract_to_tree(pt, T), m);
  return r;
}

TreeMeasure valency_measure(const FiniteTree& T) {
  if (T.trivial()) throw InputError("valency_measure of a trivial tree");
  TreeMeasure nu;
  for (size_t i = 0; i < T.vertices().size(); ++i) {
    int v = T.valency(static_cast<int>(i));
    nu.add(T.vertices()[i], qq(-(v - 2), 2));
  }
  return nu;
}

QQ TreePLF::value_at_vertex(int v) const {
  const BerkPoint& P = tree.vertices()[v];
  if (!P.is_type2())
    throw std::logic_error("TreePLF: no finite value at a type I vertex");
  for (int e : tree.incident()[v]) return profs[e].value_at(P);
  throw std::logic_error("TreePLF: isolated vertex");
}

QQ TreePLF::sup() const {
  bool have = false;
  QQ best(0);
  auto consider = [&](const QQ& v) {
    if (!have || v > best) best = v;
    have = true;
  };
  for (size_t e = 0; e < profs.size(); ++e) {
    const auto& pr = profs[e];
    for (const auto& piece : pr.pieces) {
      // affine pieces: extremes at the ends; infinite ends need slope <= 0
      if (piece.lo_inf || piece.hi_inf) {
        const QQ out_slope = piece.lo_inf ? -piece.f.first_slope() : piece.f.last_slope();
        if (out_slope > 0)
          throw std::logic_error("TreePLF::sup unbounded along a tail");
        consider(piece.f.evaluate(piece.lo_inf ? piece.x_hi : piece.x_lo));
      } else {
        consider(piece.f.evaluate(piece.x_lo));
        consider(piece.f.evaluate(piece.x_hi));
      }
    }
  }
  if (!have) throw std::logic_error("TreePLF::sup of an empty tree");
  return best;
}

std::vector<TreePLF> build_profiled(const FiniteTree& T0,
                                    const std::vector<EdgeProfiler>& gens) {
  FiniteTree T = T0;
  for (int round = 0; round < 6; ++round) {
    std::vector<std::vector<SegmentPLF>> all(gens.size());
    std::vector<BerkPoint> bps;
    for (size_t g = 0; g < gens.size(); ++g) {
      for (const auto& e : T.edges()) {
        SegmentPLF pr = gens[g](T.vertices()[e.u], T.vertices()[e.v]);
        auto ib = pr.interior_breakpoints();
        bps.insert(bps.end(), ib.begin(), ib.end());
        all[g].push_back(std::move(pr));
      }
    }
    if (bps.empty()) {
      std::vector<TreePLF> out;
      for (size_t g = 0; g < gens.size(); ++g)
        out.push_back(TreePLF{T, std::move(all[g])});
      return out;
    }
    T = T.with_points(bps);
  }
  throw std::logic_error("build_profiled: refinement did not stabilize");
}

TreeMeasure tree_laplacian(const TreePLF& F) {
  TreeMeasure mu;
  const FiniteTree& T = F.tree;
  for (size_t v = 0; v < T.vertices().size(); ++v) {
    QQ s(0);
    for (int e : T.incident()[v]) {
      const auto& pr = F.profs[e];
      s += (T.edges()[e].u == static_cast<int>(v)) ? pr.slope_from_a()
                                                   : pr.slope_from_b();
    }
    mu.add(T.vertices()[v], s);
  }
  return mu;
}

TreeMeasure nu_f_gamma(const RationalMapRep& f, const FiniteTree& T,
                       const BerkPoint& S0, NuRoute route) {
  if (T.trivial()) throw InputError("nu_f_gamma on a trivial tree");
  if (!S0.is_type2()) throw InputError("nu_f_gamma: S0 must be type II");
  int d = f.degree();
  if (d < 2) throw InputError("nu_f_gamma: degree must be > 1");
  if (route == NuRoute::CrucialLaplacian) {
    EdgeProfiler gen = [&](const BerkPoint& A, const BerkPoint& B) {
      return edge_profile(ProfileKind::Crucial, f, S0, A, B);
    };
    std::vector<TreePLF> built = build_profiled(T, {gen});
    return tree_laplacian(built[0]) + valency_measure(built[0].tree);
  }
  // Geometric route: the retracted pullback is recovered from the potential,
  // whose Laplacian is d delta_{S0} - f* delta_{S0}; hence
  //   nu = [Delta(wedge) - Delta(potential)]/(d-1) + (r)_* delta_{S0}.
  EdgeProfiler wg = [&](const BerkPoint& A, const BerkPoint& B) {
    return edge_profile(ProfileKind::Wedge, f, S0, A, B);
  };
  EdgeProfiler pg = [&](const BerkPoint& A, const BerkPoint& B) {
    return edge_profile(ProfileKind::Potential, f, S0, A, B);
  };
  std::vector<TreePLF> built = build_profiled(T, {wg, pg});
  TreeMeasure dl = tree_laplacian(built[0]) - tree_laplacian(built[1]);
  TreeMeasure r = dl.scaled(QQ(1, d - 1));
  r.add(retract_to_tree(S0, built[0].tree), QQ(1));
  return r;
}

BarycenterResult barycenter(const TreeMeasure& nu, const FiniteTree& T0) {
  if (nu.total() != 1)
    throw InputError("barycenter: probability measure required");
  // ensure atoms are vertices
  std::vector<BerkPoint> pts;
  for (const auto& [pt, m] : nu.atoms()) pts.push_back(pt);
  FiniteTree T = T0.with_points(pts);
  size_t n = T.vertices().size();
  // mass of each component cut at v, per incident edge
  std::vector<bool> qualifies(n, false);
  for (size_t v = 0; v < n; ++v) {
    bool ok = true;
    for (int e : T.incident()[v]) {
      int w = T.other(e, static_cast<int>(v));
      QQ mass(0);
      for (int u : T.component_without(static_cast<int>(v), w))
        mass += nu.at(T.vertices()[u]);
      if (mass > QQ(1, 2)) {
        ok = false;
        break;
      }
    }
    qualifies[v] = ok;
  }
  // the qualifying set is a connected subtree spanned by qualifying vertices
  std::vector<int> q;
  for (size_t v = 0; v < n; ++v)
    if (qualifies[v]) q.push_back(static_cast<int>(v));
  if (q.empty())
    throw std::logic_error("barycenter: empty median set");
  // extremes: qualifying vertices with at most one qualifying neighbor
  BarycenterResult res;
  if (q.size() == 1) {
    res.extremes.push_back(T.vertices()[q[0]]);
    return res;
  }
  for (int v : q) {
    int qn = 0;
    for (int e : T.incident()[v])
      if (qualifies[T.other(e, v)]) ++qn;
    if (qn <= 1) res.extremes.push_back(T.vertices()[v]);
  }
  if (res.extremes.size() > 2)
    throw std::logic_error("barycenter: median set is not a segment");
  return res;
}

}  // namespace berk

#include "coalg/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace coalg {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (int v = 0; v < vertex_count(); ++v) {
    if (!vertex_idx_.count(vertices_[v])) vertex_idx_[vertices_[v]] = v;
  }
  out_.assign(vertex_count(), {});
  in_.assign(vertex_count(), {});
  arrow_src_.assign(arrow_count(), -1);
  arrow_tgt_.assign(arrow_count(), -1);
  for (int a = 0; a < arrow_count(); ++a) {
    if (!arrow_idx_.count(arrows_[a].id)) arrow_idx_[arrows_[a].id] = a;
    auto s = vertex_idx_.find(arrows_[a].src);
    auto t = vertex_idx_.find(arrows_[a].tgt);
    if (s != vertex_idx_.end()) arrow_src_[a] = s->second;
    if (t != vertex_idx_.end()) arrow_tgt_[a] = t->second;
    if (s != vertex_idx_.end() && t != vertex_idx_.end()) {
      out_[s->second].push_back(a);
      in_[t->second].push_back(a);
    }
  }
}

int Quiver::vertex_index(const std::string& name) const {
  auto it = vertex_idx_.find(name);
  return it == vertex_idx_.end() ? -1 : it->second;
}

int Quiver::arrow_index(const std::string& id) const {
  auto it = arrow_idx_.find(id);
  return it == arrow_idx_.end() ? -1 : it->second;
}

std::vector<std::string> Quiver::validate() const {
  std::vector<std::string> errs;
  std::set<std::string> seen_v;
  for (const auto& v : vertices_) {
    if (!seen_v.insert(v).second)
      errs.push_back("duplicate vertex '" + v + "'");
  }
  std::set<std::string> seen_a;
  for (const auto& a : arrows_) {
    if (!seen_a.insert(a.id).second)
      errs.push_back("duplicate arrow-id '" + a.id + "'");
    if (!vertex_idx_.count(a.src))
      errs.push_back("dangling endpoint: arrow '" + a.id +
                     "' has undeclared source '" + a.src + "'");
    if (!vertex_idx_.count(a.tgt))
      errs.push_back("dangling endpoint: arrow '" + a.id +
                     "' has undeclared target '" + a.tgt + "'");
  }
  return errs;
}

Path Path::of_arrows(const Quiver& q, std::vector<int> arrows) {
  if (arrows.empty()) throw Error("Path::of_arrows: empty sequence");
  for (size_t i = 0; i + 1 < arrows.size(); ++i) {
    if (q.tgt(arrows[i]) != q.src(arrows[i + 1]))
      throw Error("non-composable arrow sequence at position " +
                  std::to_string(i));
  }
  return Path(q.src(arrows.front()), q.tgt(arrows.back()), std::move(arrows));
}

Path Path::extended_target(const Quiver& q, int a) const {
  if (q.src(a) != tgt_) throw Error("extended_target: arrow not composable");
  std::vector<int> v = arrows_;
  v.push_back(a);
  return Path(src_, q.tgt(a), std::move(v));
}

Path Path::extended_source(const Quiver& q, int a) const {
  if (q.tgt(a) != src_) throw Error("extended_source: arrow not composable");
  std::vector<int> v;
  v.reserve(arrows_.size() + 1);
  v.push_back(a);
  v.insert(v.end(), arrows_.begin(), arrows_.end());
  return Path(q.src(a), tgt_, std::move(v));
}

Path Path::target_part(const Quiver& q, int k) const {
  if (k < 0 || k > length()) throw Error("target_part: bad cut");
  if (k == 0) return trivial(tgt_);
  std::vector<int> v(arrows_.end() - k, arrows_.end());
  return of_arrows(q, std::move(v));
}

Path Path::source_part(const Quiver& q, int k) const {
  if (k < 0 || k > length()) throw Error("source_part: bad cut");
  if (k == 0) return trivial(src_);
  std::vector<int> v(arrows_.begin(), arrows_.begin() + k);
  return of_arrows(q, std::move(v));
}

std::string Path::display(const Quiver& q) const {
  if (is_trivial()) return "e(" + q.vertex_name(src_) + ")";
  std::string s;
  for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
    if (!s.empty()) s += ".";
    s += q.arrow(*it).id;
  }
  return s;
}

bool PathOrder::operator()(const Path& a, const Path& b) const {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.is_trivial())
    return q->vertex_name(a.source()) < q->vertex_name(b.source());
  const auto& x = a.arrows();
  const auto& y = b.arrows();
  for (size_t i = 0; i < x.size(); ++i) {
    const std::string& xi = q->arrow(x[i]).id;
    const std::string& yi = q->arrow(y[i]).id;
    if (xi != yi) return xi < yi;
  }
  return false;
}

std::vector<Path> paths_up_to(const Quiver& q, int n) {
  if (n < 0) throw Error("paths_up_to: negative bound");
  PathOrder ord{&q};
  std::vector<Path> level;
  for (int v = 0; v < q.vertex_count(); ++v) level.push_back(Path::trivial(v));
  std::sort(level.begin(), level.end(), ord);
  std::vector<Path> all = level;
  for (int len = 1; len <= n; ++len) {
    std::vector<Path> next;
    for (const auto& p : level)
      for (int a : q.out_arrows(p.target())) next.push_back(p.extended_target(q, a));
    std::sort(next.begin(), next.end(), ord);
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
    if (level.empty()) break;
  }
  return all;
}

namespace {

struct TarjanState {
  const Quiver& q;
  std::vector<int> index, low, stack;
  std::vector<bool> on_stack;
  std::vector<int> scc_of;
  int counter = 0, scc_count = 0;

  explicit TarjanState(const Quiver& qq)
      : q(qq),
        index(qq.vertex_count(), -1),
        low(qq.vertex_count(), 0),
        on_stack(qq.vertex_count(), false),
        scc_of(qq.vertex_count(), -1) {}

  void dfs(int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int a : q.out_arrows(v)) {
      int w = q.tgt(a);
      if (index[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc_of[w] = scc_count;
      } while (w != v);
      ++scc_count;
    }
  }
};

}  // namespace

SccInfo scc(const Quiver& q) {
  TarjanState st(q);
  for (int v = 0; v < q.vertex_count(); ++v)
    if (st.index[v] < 0) st.dfs(v);

  SccInfo info;
  // Tarjan numbers components in reverse topological order; renumber so the
  // component of the smallest contained vertex index comes first.
  std::vector<int> remap(st.scc_count, -1);
  int next = 0;
  for (int v = 0; v < q.vertex_count(); ++v)
    if (remap[st.scc_of[v]] < 0) remap[st.scc_of[v]] = next++;
  info.scc_of.resize(q.vertex_count());
  info.sccs.assign(st.scc_count, {});
  for (int v = 0; v < q.vertex_count(); ++v) {
    info.scc_of[v] = remap[st.scc_of[v]];
    info.sccs[info.scc_of[v]].push_back(v);
  }
  std::set<std::pair<int, int>> edges;
  for (int a = 0; a < q.arrow_count(); ++a) {
    int cu = info.scc_of[q.src(a)], cv = info.scc_of[q.tgt(a)];
    if (cu != cv) edges.insert({cu, cv});
  }
  info.condensation.assign(edges.begin(), edges.end());

  // Weak components via union-find over arrows.
  std::vector<int> parent(q.vertex_count());
  for (int v = 0; v < q.vertex_count(); ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int a = 0; a < q.arrow_count(); ++a)
    parent[find(q.src(a))] = find(q.tgt(a));
  std::map<int, int> root_to_comp;
  info.weak_of.resize(q.vertex_count());
  for (int v = 0; v < q.vertex_count(); ++v) {
    int r = find(v);
    auto it = root_to_comp.find(r);
    if (it == root_to_comp.end())
      it = root_to_comp.insert({r, info.weak_count++}).first;
    info.weak_of[v] = it->second;
  }
  info.component_strongly_connected.assign(info.weak_count, true);
  std::vector<int> comp_scc(info.weak_count, -1);
  for (int v = 0; v < q.vertex_count(); ++v) {
    int c = info.weak_of[v];
    if (comp_scc[c] < 0)
      comp_scc[c] = info.scc_of[v];
    else if (comp_scc[c] != info.scc_of[v])
      info.component_strongly_connected[c] = false;
  }
  info.all_strongly_connected = true;
  for (bool b : info.component_strongly_connected)
    info.all_strongly_connected = info.all_strongly_connected && b;
  return info;
}

std::string ShapeClass::name() const {
  switch (family) {
    case Family::DynkinA: return "A" + std::to_string(index);
    case Family::DynkinD: return "D" + std::to_string(index);
    case Family::DynkinE: return "E" + std::to_string(index);
    case Family::EuclideanA: return "~A" + std::to_string(index);
    case Family::EuclideanD: return "~D" + std::to_string(index);
    case Family::EuclideanE: return "~E" + std::to_string(index);
    case Family::Other: return "Other";
  }
  return "Other";
}

namespace {

// Classifies one connected undirected multigraph given vertex list and
// undirected edge multiset (loops as self-pairs).
ShapeClass classify_component(const std::vector<int>& verts,
                              const std::vector<std::pair<int, int>>& edges) {
  using F = ShapeClass::Family;
  const ShapeClass other{F::Other, 0};
  int n = static_cast<int>(verts.size());
  std::map<int, int> local;
  for (int i = 0; i < n; ++i) local[verts[i]] = i;

  std::map<std::pair<int, int>, int> mult;
  for (auto [u, v] : edges) {
    if (u == v) return other;  // any loop
    int a = local[u], b = local[v];
    if (a > b) std::swap(a, b);
    mult[{a, b}]++;
  }
  int total_edges = static_cast<int>(edges.size());
  for (auto& [e, m] : mult) {
    if (m >= 3) return other;
    if (m == 2) {
      // The double edge is admitted only as ~A1 on an isolated pair.
      if (n == 2 && total_edges == 2) return {F::EuclideanA, 1};
      return other;
    }
  }

  std::vector<std::vector<int>> adj(n);
  for (auto& [e, m] : mult) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  int e_count = static_cast<int>(mult.size());

  if (e_count == n) {
    // Unicyclic: a pure cycle iff all degrees are 2.
    for (int i = 0; i < n; ++i)
      if (adj[i].size() != 2) return other;
    return {F::EuclideanA, n - 1};  // n >= 3 here
  }
  if (e_count != n - 1) return other;  // not a tree

  // Tree shapes.
  std::vector<int> deg(n);
  int max_deg = 0;
  for (int i = 0; i < n; ++i) {
    deg[i] = static_cast<int>(adj[i].size());
    max_deg = std::max(max_deg, deg[i]);
  }
  if (max_deg <= 2) return {F::DynkinA, n};  // path (n = 1 allowed)
  if (max_deg >= 5) return other;

  std::vector<int> branch_nodes;
  for (int i = 0; i < n; ++i)
    if (deg[i] >= 3) branch_nodes.push_back(i);

  // Walks from a branch node into a branch until hitting a leaf or another
  // branch node; returns edge count, or -1 if it ends at a branch node.
  auto branch_len = [&](int from, int first) {
    int prev = from, cur = first, len = 1;
    while (deg[cur] == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    return deg[cur] == 1 ? len : -1;
  };

  if (branch_nodes.size() == 1) {
    int c = branch_nodes[0];
    if (deg[c] == 4) {
      // Star with four length-1 branches is ~D4.
      if (n == 5) return {F::EuclideanD, 4};
      return other;
    }
    std::vector<int> lens;
    for (int w : adj[c]) {
      int l = branch_len(c, w);
      if (l < 0) return other;
      lens.push_back(l);
    }
    std::sort(lens.begin(), lens.end());
    int a = lens[0], b = lens[1], cc = lens[2];
    if (a == 1 && b == 1) return {F::DynkinD, n};          // (1,1,c), n >= 4
    if (a == 1 && b == 2 && cc == 2) return {F::DynkinE, 6};
    if (a == 1 && b == 2 && cc == 3) return {F::DynkinE, 7};
    if (a == 1 && b == 2 && cc == 4) return {F::DynkinE, 8};
    if (a == 2 && b == 2 && cc == 2) return {F::EuclideanE, 6};
    if (a == 1 && b == 3 && cc == 3) return {F::EuclideanE, 7};
    if (a == 1 && b == 2 && cc == 5) return {F::EuclideanE, 8};
    return other;
  }
  if (branch_nodes.size() == 2) {
    // ~Dn: two degree-3 nodes, each with exactly two leaf branches of
    // length 1, joined by a path.
    if (max_deg != 3) return other;
    for (int c : branch_nodes) {
      int leaves = 0, inner = 0;
      for (int w : adj[c]) {
        int l = branch_len(c, w);
        if (l == 1) ++leaves;
        else if (l < 0) ++inner;
      }
      if (leaves != 2 || inner != 1) return other;
    }
    return {F::EuclideanD, n - 1};  // n = comp size = (n-1)+1, n-1 >= 5
  }
  return other;
}

}  // namespace

std::vector<ShapeClass> shape_class(const Quiver& q) {
  SccInfo info = scc(q);
  std::vector<std::vector<int>> comp_verts(info.weak_count);
  std::vector<std::vector<std::pair<int, int>>> comp_edges(info.weak_count);
  for (int v = 0; v < q.vertex_count(); ++v)
    comp_verts[info.weak_of[v]].push_back(v);
  for (int a = 0; a < q.arrow_count(); ++a)
    comp_edges[info.weak_of[q.src(a)]].push_back({q.src(a), q.tgt(a)});
  std::vector<ShapeClass> out;
  for (int c = 0; c < info.weak_count; ++c)
    out.push_back(classify_component(comp_verts[c], comp_edges[c]));
  return out;
}

std::string pattern_name(ForbiddenPattern p) {
  switch (p) {
    case ForbiddenPattern::K3: return "K3";
    case ForbiddenPattern::K5: return "K5";
    case ForbiddenPattern::L3: return "L3";
    case ForbiddenPattern::B2tilde: return "~B2";
    case ForbiddenPattern::P1: return "P1";
    case ForbiddenPattern::P2: return "P2";
  }
  return "?";
}

bool ForbiddenMatch::verify(const Quiver& q) const {
  auto valid_arrow = [&](int a) { return a >= 0 && a < q.arrow_count(); };
  for (int a : arrows)
    if (!valid_arrow(a)) return false;
  for (int v : vertices)
    if (v < 0 || v >= q.vertex_count()) return false;
  auto distinct = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(arrows)) return false;
  switch (pattern) {
    case ForbiddenPattern::K3: {
      if (arrows.size() != 3 || vertices.size() != 2) return false;
      auto [u, v] = std::pair{vertices[0], vertices[1]};
      if (u == v) return false;
      for (int a : arrows)
        if (q.src(a) != u || q.tgt(a) != v) return false;
      return true;
    }
    case ForbiddenPattern::K5: {
      if (arrows.size() != 5 || vertices.size() != 6) return false;
      int sink = vertices[5];
      if (!distinct(vertices)) return false;
      for (int i = 0; i < 5; ++i) {
        if (q.src(arrows[i]) != vertices[i] || q.tgt(arrows[i]) != sink)
          return false;
        if (vertices[i] == sink) return false;
      }
      return true;
    }
    case ForbiddenPattern::L3: {
      if (arrows.size() != 3 || vertices.size() != 1) return false;
      for (int a : arrows)
        if (q.src(a) != vertices[0] || q.tgt(a) != vertices[0]) return false;
      return true;
    }
    case ForbiddenPattern::B2tilde: {
      // a,b : u -> v parallel, c : u -> w, with u, v, w distinct.
      if (arrows.size() != 3 || vertices.size() != 3) return false;
      int u = vertices[0], v = vertices[1], w = vertices[2];
      if (!distinct(vertices)) return false;
      return q.src(arrows[0]) == u && q.tgt(arrows[0]) == v &&
             q.src(arrows[1]) == u && q.tgt(arrows[1]) == v &&
             q.src(arrows[2]) == u && q.tgt(arrows[2]) == w;
    }
    case ForbiddenPattern::P1: {
      // two loops at u plus an arrow u -> v, v != u.
      if (arrows.size() != 3 || vertices.size() != 2) return false;
      int u = vertices[0], v = vertices[1];
      if (u == v) return false;
      return q.src(arrows[0]) == u && q.tgt(arrows[0]) == u &&
             q.src(arrows[1]) == u && q.tgt(arrows[1]) == u &&
             q.src(arrows[2]) == u && q.tgt(arrows[2]) == v;
    }
    case ForbiddenPattern::P2: {
      // one loop at u plus a double arrow u -> v, v != u.
      if (arrows.size() != 3 || vertices.size() != 2) return false;
      int u = vertices[0], v = vertices[1];
      if (u == v) return false;
      return q.src(arrows[0]) == u && q.tgt(arrows[0]) == u &&
             q.src(arrows[1]) == u && q.tgt(arrows[1]) == v &&
             q.src(arrows[2]) == u && q.tgt(arrows[2]) == v;
    }
  }
  return false;
}

std::vector<ForbiddenMatch> find_all_forbidden(const Quiver& q) {
  std::vector<ForbiddenMatch> out;
  int nv = q.vertex_count();

  // K3: three parallel arrows between distinct vertices; one witness per pair.
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v) {
      if (u == v) continue;
      std::vector<int> par;
      for (int a : q.out_arrows(u))
        if (q.tgt(a) == v) par.push_back(a);
      if (par.size() >= 3)
        out.push_back({ForbiddenPattern::K3, {u, v}, {par[0], par[1], par[2]}});
    }
  // K5: five arrows into one sink from five distinct non-sink sources.
  for (int v = 0; v < nv; ++v) {
    std::map<int, int> first_from;  // source -> arrow
    for (int a : q.in_arrows(v)) {
      int u = q.src(a);
      if (u != v && !first_from.count(u)) first_from[u] = a;
    }
    if (first_from.size() >= 5) {
      ForbiddenMatch m{ForbiddenPattern::K5, {}, {}};
      for (auto& [u, a] : first_from) {
        if (m.arrows.size() == 5) break;
        m.vertices.push_back(u);
        m.arrows.push_back(a);
      }
      m.vertices.push_back(v);
      out.push_back(std::move(m));
    }
  }
  // L3: three loops at one vertex.
  for (int u = 0; u < nv; ++u) {
    std::vector<int> loops;
    for (int a : q.out_arrows(u))
      if (q.tgt(a) == u) loops.push_back(a);
    if (loops.size() >= 3)
      out.push_back({ForbiddenPattern::L3, {u}, {loops[0], loops[1], loops[2]}});
  }
  // ~B2: double arrow u -> v plus arrow u -> w, all vertices distinct.
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v) {
      if (u == v) continue;
      std::vector<int> par;
      for (int a : q.out_arrows(u))
        if (q.tgt(a) == v) par.push_back(a);
      if (par.size() < 2) continue;
      for (int c : q.out_arrows(u)) {
        int w = q.tgt(c);
        if (w == u || w == v) continue;
        out.push_back({ForbiddenPattern::B2tilde, {u, v, w}, {par[0], par[1], c}});
        break;
      }
    }
  // P1: two loops at u plus an exit arrow.
  for (int u = 0; u < nv; ++u) {
    std::vector<int> loops;
    for (int a : q.out_arrows(u))
      if (q.tgt(a) == u) loops.push_back(a);
    if (loops.size() < 2) continue;
    for (int c : q.out_arrows(u)) {
      if (q.tgt(c) == u) continue;
      out.push_back({ForbiddenPattern::P1, {u, q.tgt(c)}, {loops[0], loops[1], c}});
      break;
    }
  }
  // P2: a loop at u plus a double arrow u -> v.
  for (int u = 0; u < nv; ++u) {
    int loop = -1;
    for (int a : q.out_arrows(u))
      if (q.tgt(a) == u) { loop = a; break; }
    if (loop < 0) continue;
    for (int v = 0; v < nv; ++v) {
      if (v == u) continue;
      std::vector<int> par;
      for (int a : q.out_arrows(u))
        if (q.tgt(a) == v) par.push_back(a);
      if (par.size() >= 2)
        out.push_back({ForbiddenPattern::P2, {u, v}, {loop, par[0], par[1]}});
    }
  }
  // Deterministic pattern-major order.
  std::stable_sort(out.begin(), out.end(),
                   [](const ForbiddenMatch& a, const ForbiddenMatch& b) {
                     return static_cast<int>(a.pattern) < static_cast<int>(b.pattern);
                   });
  return out;
}

std::optional<ForbiddenMatch> find_forbidden(const Quiver& q) {
  auto all = find_all_forbidden(q);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool serial_shape(const Quiver& q) {
  for (int v = 0; v < q.vertex_count(); ++v)
    if (q.out_arrows(v).size() > 1 || q.in_arrows(v).size() > 1) return false;
  return true;
}

std::string to_dot(const Quiver& q) {
  std::ostringstream os;
  os << "digraph Q {\n";
  for (const auto& v : q.vertices()) os << "  \"" << v << "\";\n";
  for (const auto& a : q.arrows())
    os << "  \"" << a.src << "\" -> \"" << a.tgt << "\" [label=\"" << a.id
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace coalg

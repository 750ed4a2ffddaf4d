#include "coalg/monomial.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace coalg {

namespace {

std::string word_display(const Quiver& q, const std::vector<int>& word) {
  if (word.empty()) return "(empty)";
  std::string s;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (!s.empty()) s += ".";
    s += q.arrow(*it).id;
  }
  return s;
}

std::vector<int> step(const PathNfa& n, const std::vector<int>& subset, int arrow) {
  std::vector<int> out;
  for (int s : subset)
    for (const auto& tr : n.out[s])
      if (tr.arrow == arrow) out.push_back(tr.to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool hits_accepting(const PathNfa& n, const std::vector<int>& subset) {
  for (int s : subset)
    if (n.accepting[s]) return true;
  return false;
}

// Complete DFA by subset construction; state 0 is the initial subset of all
// NFA states, the empty subset is the (rejecting) dead state.
struct Dfa {
  std::vector<std::vector<int>> next;  // state x arrow -> state
  std::vector<char> accepting;
};

constexpr int kDfaCap = 1 << 14;

Dfa determinize(const PathNfa& n, int arrow_count) {
  Dfa d;
  std::map<std::vector<int>, int> idx;
  std::vector<std::vector<int>> subsets;
  std::vector<int> all(n.size());
  for (int i = 0; i < n.size(); ++i) all[i] = i;
  idx[all] = 0;
  subsets.push_back(all);
  for (size_t cur = 0; cur < subsets.size(); ++cur) {
    d.next.emplace_back(arrow_count, -1);
    d.accepting.push_back(hits_accepting(n, subsets[cur]));
    for (int a = 0; a < arrow_count; ++a) {
      auto nxt = step(n, subsets[cur], a);
      auto it = idx.find(nxt);
      if (it == idx.end()) {
        if (static_cast<int>(subsets.size()) >= kDfaCap)
          throw Error("pattern automaton too complex to determinize");
        it = idx.insert({nxt, static_cast<int>(subsets.size())}).first;
        subsets.push_back(nxt);
      }
      d.next[cur][a] = it->second;
    }
  }
  return d;
}

}  // namespace

std::vector<std::string> PathNfa::check_geometry(const Quiver& q) const {
  std::vector<std::string> errs;
  for (int s = 0; s < size(); ++s) {
    if (vertex[s] < 0 || vertex[s] >= q.vertex_count()) {
      errs.push_back("invalid path word: state " + std::to_string(s) +
                     " has unknown vertex");
      continue;
    }
    for (const auto& tr : out[s]) {
      if (tr.arrow < 0 || tr.arrow >= q.arrow_count()) {
        errs.push_back("invalid path word: unknown arrow on a transition");
        continue;
      }
      if (q.src(tr.arrow) != vertex[s] || q.tgt(tr.arrow) != vertex[tr.to])
        errs.push_back("invalid path word: transition on '" +
                       q.arrow(tr.arrow).id + "' breaks composability");
    }
  }
  return errs;
}

bool PathNfa::accepts(const std::vector<int>& word) const {
  if (word.empty()) return false;
  std::vector<int> subset(size());
  for (int i = 0; i < size(); ++i) subset[i] = i;
  for (int a : word) {
    subset = step(*this, subset, a);
    if (subset.empty()) return false;
  }
  return hits_accepting(*this, subset);
}

PathNfa PathNfa::trimmed() const {
  // Useful = co-reachable to an accepting state (all states can start runs).
  std::vector<char> useful(size(), 0);
  std::deque<int> work;
  for (int s = 0; s < size(); ++s)
    if (accepting[s]) {
      useful[s] = 1;
      work.push_back(s);
    }
  std::vector<std::vector<int>> rev(size());
  for (int s = 0; s < size(); ++s)
    for (const auto& tr : out[s]) rev[tr.to].push_back(s);
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int p : rev[s])
      if (!useful[p]) {
        useful[p] = 1;
        work.push_back(p);
      }
  }
  PathNfa r;
  std::vector<int> remap(size(), -1);
  for (int s = 0; s < size(); ++s)
    if (useful[s]) {
      remap[s] = r.size();
      r.vertex.push_back(vertex[s]);
      r.accepting.push_back(accepting[s]);
      r.out.emplace_back();
    }
  for (int s = 0; s < size(); ++s) {
    if (!useful[s]) continue;
    for (const auto& tr : out[s])
      if (useful[tr.to]) r.out[remap[s]].push_back({tr.arrow, remap[tr.to]});
  }
  return r;
}

bool PathNfa::is_trim() const { return trimmed().size() == size(); }

bool PathNfa::finite_language() const {
  PathNfa t = trimmed();
  std::vector<int> color(t.size(), 0);
  // Iterative DFS cycle detection.
  for (int root = 0; root < t.size(); ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i < t.out[s].size()) {
        int to = t.out[s][i++].to;
        if (color[to] == 1) return false;
        if (color[to] == 0) {
          color[to] = 1;
          stack.push_back({to, 0});
        }
      } else {
        color[s] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

int PathNfa::max_word_length() const {
  PathNfa t = trimmed();
  // Longest path in the DAG ending at an accepting state; memoized "longest
  // run starting here".
  std::vector<int> best(t.size(), -1);
  std::vector<int> order;
  std::vector<int> indeg_state(t.size(), 0);
  // Reverse-topological via DFS finish order.
  std::vector<int> color(t.size(), 0);
  for (int root = 0; root < t.size(); ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i < t.out[s].size()) {
        int to = t.out[s][i++].to;
        if (color[to] == 0) {
          color[to] = 1;
          stack.push_back({to, 0});
        }
      } else {
        order.push_back(s);
        stack.pop_back();
      }
    }
  }
  int overall = 0;
  for (int s : order) {
    int b = t.accepting[s] ? 0 : -1;
    for (const auto& tr : t.out[s])
      if (best[tr.to] >= 0) b = std::max(b, best[tr.to] + 1);
    best[s] = b;
    overall = std::max(overall, b);
  }
  return overall;
}

bool PathNfa::includes(const Quiver& q, const PathNfa& sub,
                       std::vector<int>* witness) const {
  Dfa d = determinize(*this, q.arrow_count());
  // Product BFS: sub runs start at any state, the DFA at state 0. A word in
  // L(sub) \ L(this) shows up as a reachable (accepting, rejecting) pair.
  struct Node {
    int s, dstate;
  };
  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, int>> parent;
  std::deque<Node> work;
  std::set<std::pair<int, int>> seen;
  for (int s = 0; s < sub.size(); ++s) {
    seen.insert({s, 0});
    work.push_back({s, 0});
  }
  auto emit_witness = [&](std::pair<int, int> node) {
    if (!witness) return;
    std::vector<int> w;
    while (true) {
      auto it = parent.find(node);
      if (it == parent.end()) break;
      w.push_back(it->second.second);
      node = it->second.first;
    }
    std::reverse(w.begin(), w.end());
    *witness = w;
  };
  while (!work.empty()) {
    Node n = work.front();
    work.pop_front();
    for (const auto& tr : sub.out[n.s]) {
      int nd = d.next[n.dstate][tr.arrow];
      std::pair<int, int> key{tr.to, nd};
      if (seen.insert(key).second) {
        parent[key] = {{n.s, n.dstate}, tr.arrow};
        if (sub.accepting[tr.to] && !d.accepting[nd]) {
          emit_witness(key);
          return false;
        }
        work.push_back({tr.to, nd});
      } else if (sub.accepting[tr.to] && !d.accepting[nd]) {
        // Already seen as non-failing? Acceptance flags are state properties,
        // so a seen key was already checked.
      }
    }
  }
  return true;
}

bool PathNfa::factor_closed(const Quiver& q, std::vector<int>* witness) const {
  PathNfa f = trimmed();
  for (int s = 0; s < f.size(); ++s) f.accepting[s] = 1;
  return includes(q, f, witness);
}

PathNfa PathNfa::avoid_factor(const std::vector<int>& word) const {
  if (word.empty()) return *this;
  int len = static_cast<int>(word.size());
  // KMP prefix function over the arrow word.
  std::vector<int> pf(len, 0);
  for (int i = 1; i < len; ++i) {
    int k = pf[i - 1];
    while (k > 0 && word[i] != word[k]) k = pf[k - 1];
    if (word[i] == word[k]) ++k;
    pf[i] = k;
  }
  auto kmp_next = [&](int k, int a) {
    while (true) {
      if (word[k] == a) return k + 1;
      if (k == 0) return 0;
      k = pf[k - 1];
    }
  };
  PathNfa r;
  auto id = [&](int s, int k) { return s * len + k; };
  r.vertex.assign(size() * len, -1);
  r.accepting.assign(size() * len, 0);
  r.out.assign(size() * len, {});
  for (int s = 0; s < size(); ++s)
    for (int k = 0; k < len; ++k) {
      r.vertex[id(s, k)] = vertex[s];
      r.accepting[id(s, k)] = accepting[s];
    }
  for (int s = 0; s < size(); ++s)
    for (const auto& tr : out[s])
      for (int k = 0; k < len; ++k) {
        int k2 = kmp_next(k, tr.arrow);
        if (k2 == len) continue;  // factor completed: forbidden
        r.out[id(s, k)].push_back({tr.arrow, id(tr.to, k2)});
      }
  return r.trimmed();
}

PathNfa PathNfa::restrict_support(const std::vector<bool>& keep) const {
  PathNfa r;
  std::vector<int> remap(size(), -1);
  for (int s = 0; s < size(); ++s) {
    if (vertex[s] >= 0 && vertex[s] < static_cast<int>(keep.size()) &&
        keep[vertex[s]]) {
      remap[s] = r.size();
      r.vertex.push_back(vertex[s]);
      r.accepting.push_back(accepting[s]);
      r.out.emplace_back();
    }
  }
  for (int s = 0; s < size(); ++s) {
    if (remap[s] < 0) continue;
    for (const auto& tr : out[s])
      if (remap[tr.to] >= 0) r.out[remap[s]].push_back({tr.arrow, remap[tr.to]});
  }
  return r.trimmed();
}

PathNfa PathNfa::all_paths(const Quiver& q) {
  PathNfa n;
  n.vertex.resize(q.vertex_count());
  n.accepting.assign(q.vertex_count(), 1);
  n.out.assign(q.vertex_count(), {});
  for (int v = 0; v < q.vertex_count(); ++v) n.vertex[v] = v;
  for (int a = 0; a < q.arrow_count(); ++a)
    n.out[q.src(a)].push_back({a, q.tgt(a)});
  return n;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Path> sorted_nonempty(const Quiver& q, std::vector<Path> paths) {
  std::vector<Path> out;
  for (auto& p : paths)
    if (!p.is_trivial()) out.push_back(std::move(p));
  PathOrder ord{&q};
  std::sort(out.begin(), out.end(), ord);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool set_contains(const Quiver& q, const std::vector<Path>& sorted, const Path& p) {
  PathOrder ord{&q};
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p, ord);
  return it != sorted.end() && *it == p;
}

// Enumerates every accepted word of an NFA with a finite language.
std::vector<Path> enumerate_all_finite(const Quiver& q, const PathNfa& nfa) {
  PathNfa t = nfa.trimmed();
  int bound = t.max_word_length();
  std::vector<Path> out;
  struct Node {
    Path p;
    std::vector<int> subset;
  };
  std::deque<Node> work;
  for (int v = 0; v < q.vertex_count(); ++v) {
    std::vector<int> sv;
    for (int s = 0; s < t.size(); ++s)
      if (t.vertex[s] == v) sv.push_back(s);
    if (!sv.empty()) work.push_back({Path::trivial(v), std::move(sv)});
  }
  while (!work.empty()) {
    Node n = std::move(work.front());
    work.pop_front();
    if (n.p.length() >= bound) continue;
    for (int a : q.out_arrows(n.p.target())) {
      auto nxt = step(t, n.subset, a);
      if (nxt.empty()) continue;
      Path ext = n.p.extended_target(q, a);
      if (hits_accepting(t, nxt)) out.push_back(ext);
      work.push_back({std::move(ext), std::move(nxt)});
    }
  }
  PathOrder ord{&q};
  std::sort(out.begin(), out.end(), ord);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

MonomialCoalgebra MonomialCoalgebra::finite(std::shared_ptr<const Quiver> q,
                                            std::vector<Path> paths,
                                            bool complete) {
  MonomialCoalgebra m;
  m.kind_ = Kind::Finite;
  m.complete_ = complete;
  m.paths_ = sorted_nonempty(*q, std::move(paths));
  m.q_ = std::move(q);
  return m;
}

MonomialCoalgebra MonomialCoalgebra::pattern(std::shared_ptr<const Quiver> q,
                                             PathNfa nfa) {
  MonomialCoalgebra m;
  m.kind_ = Kind::Pattern;
  m.q_ = std::move(q);
  m.nfa_ = std::move(nfa);
  return m;
}

MonomialCoalgebra MonomialCoalgebra::pattern_from_raw(
    std::shared_ptr<const Quiver> q, const std::vector<std::string>& states,
    const std::vector<std::string>& accepting,
    const std::vector<std::tuple<std::string, std::string, std::string>>&
        transitions) {
  std::map<std::string, int> sidx;
  for (const auto& s : states) {
    if (sidx.count(s)) throw Error("pattern automaton: duplicate state '" + s + "'");
    sidx[s] = static_cast<int>(sidx.size());
  }
  std::set<std::string> acc(accepting.begin(), accepting.end());
  for (const auto& s : acc)
    if (!sidx.count(s))
      throw Error("pattern automaton: unknown accepting state '" + s + "'");

  int nraw = static_cast<int>(states.size());
  int nv = q->vertex_count();
  PathNfa n;
  n.vertex.resize(nraw * nv);
  n.accepting.assign(nraw * nv, 0);
  n.out.assign(nraw * nv, {});
  auto pid = [&](int raw, int v) { return raw * nv + v; };
  for (int r = 0; r < nraw; ++r)
    for (int v = 0; v < nv; ++v) {
      n.vertex[pid(r, v)] = v;
      n.accepting[pid(r, v)] = acc.count(states[r]) ? 1 : 0;
    }
  for (const auto& [from, arrow, to] : transitions) {
    auto fi = sidx.find(from);
    auto ti = sidx.find(to);
    if (fi == sidx.end() || ti == sidx.end())
      throw Error("pattern automaton: transition references unknown state");
    int a = q->arrow_index(arrow);
    if (a < 0)
      throw Error("pattern automaton: transition on unknown arrow '" + arrow + "'");
    n.out[pid(fi->second, q->src(a))].push_back({a, pid(ti->second, q->tgt(a))});
  }
  n = n.trimmed();
  if (n.finite_language())
    return finite(q, enumerate_all_finite(*q, n), /*complete=*/true);
  return pattern(std::move(q), std::move(n));
}

MonomialCoalgebra MonomialCoalgebra::full(std::shared_ptr<const Quiver> q) {
  PathNfa n = PathNfa::all_paths(*q);
  if (n.finite_language())
    return finite(q, enumerate_all_finite(*q, n), /*complete=*/true);
  return pattern(std::move(q), std::move(n));
}

bool MonomialCoalgebra::contains(const Path& p) const {
  if (p.is_trivial())
    return p.source() >= 0 && p.source() < q_->vertex_count();
  if (kind_ == Kind::Finite) return set_contains(*q_, paths_, p);
  return nfa_.accepts(p.arrows());
}

std::vector<Path> MonomialCoalgebra::enumerate(int n) const {
  if (n < 0) throw Error("enumerate: negative truncation");
  std::vector<Path> out;
  for (int v = 0; v < q_->vertex_count(); ++v) out.push_back(Path::trivial(v));
  PathOrder ord{q_.get()};
  std::sort(out.begin(), out.end(), ord);
  if (kind_ == Kind::Finite) {
    for (const auto& p : paths_)
      if (p.length() <= n) out.push_back(p);
    return out;
  }
  struct Node {
    Path p;
    std::vector<int> subset;
  };
  std::vector<Path> found;
  std::deque<Node> work;
  for (int v = 0; v < q_->vertex_count(); ++v) {
    std::vector<int> sv;
    for (int s = 0; s < nfa_.size(); ++s)
      if (nfa_.vertex[s] == v) sv.push_back(s);
    if (!sv.empty()) work.push_back({Path::trivial(v), std::move(sv)});
  }
  while (!work.empty()) {
    Node nd = std::move(work.front());
    work.pop_front();
    if (nd.p.length() >= n) continue;
    for (int a : q_->out_arrows(nd.p.target())) {
      auto nxt = step(nfa_, nd.subset, a);
      if (nxt.empty()) continue;
      Path ext = nd.p.extended_target(*q_, a);
      if (hits_accepting(nfa_, nxt)) found.push_back(ext);
      work.push_back({std::move(ext), std::move(nxt)});
    }
  }
  std::sort(found.begin(), found.end(), ord);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

bool MonomialCoalgebra::language_finite() const {
  if (kind_ == Kind::Finite) return true;
  return nfa_.finite_language();
}

int MonomialCoalgebra::max_member_length() const {
  if (kind_ == Kind::Finite)
    return paths_.empty() ? 0 : paths_.back().length();
  if (!nfa_.finite_language())
    throw Error("max_member_length: infinite language");
  return nfa_.max_word_length();
}

namespace {

PathNfa finite_to_nfa(const Quiver& q, const std::vector<Path>& sorted) {
  PathNfa n;
  // One state per member path (trivial roots included); transitions follow
  // target extensions that stay inside the set.
  std::vector<Path> all;
  for (int v = 0; v < q.vertex_count(); ++v) all.push_back(Path::trivial(v));
  all.insert(all.end(), sorted.begin(), sorted.end());
  PathOrder ord{&q};
  std::sort(all.begin(), all.end(), ord);
  auto index_of = [&](const Path& p) {
    auto it = std::lower_bound(all.begin(), all.end(), p, ord);
    if (it == all.end() || !(*it == p)) return -1;
    return static_cast<int>(it - all.begin());
  };
  n.vertex.resize(all.size());
  n.accepting.resize(all.size());
  n.out.assign(all.size(), {});
  for (size_t i = 0; i < all.size(); ++i) {
    n.vertex[i] = all[i].target();
    n.accepting[i] = all[i].is_trivial() ? 0 : 1;
  }
  for (size_t i = 0; i < all.size(); ++i)
    for (int a : q.out_arrows(all[i].target())) {
      int j = index_of(all[i].extended_target(q, a));
      if (j >= 0) n.out[i].push_back({a, j});
    }
  return n;
}

}  // namespace

bool MonomialCoalgebra::language_includes(const MonomialCoalgebra& sub) const {
  // Exact inclusion; finite sublanguages are checked word by word.
  if (sub.language_finite()) {
    std::vector<Path> words = sub.kind_ == Kind::Finite
                                  ? sub.paths_
                                  : enumerate_all_finite(*q_, sub.nfa_);
    for (const auto& p : words)
      if (!contains(p)) return false;
    return true;
  }
  if (language_finite()) return false;  // infinite cannot fit in finite
  return nfa_.includes(*q_, sub.nfa_);
}

bool MonomialCoalgebra::language_equal(const MonomialCoalgebra& other) const {
  return language_includes(other) && other.language_includes(*this);
}

bool MonomialCoalgebra::is_full() const {
  PathNfa all = PathNfa::all_paths(*q_);
  if (all.finite_language()) {
    for (const auto& p : enumerate_all_finite(*q_, all))
      if (!contains(p)) return false;
    return true;
  }
  if (language_finite()) return false;
  return nfa_.includes(*q_, all);
}

// ---------------------------------------------------------------------------

bool subpath_closed(const Quiver& q, const std::vector<Path>& sorted_paths,
                    std::string* missing) {
  for (const auto& p : sorted_paths) {
    if (p.length() < 1) continue;
    Path drop_first = p.target_part(q, p.length() - 1);
    Path drop_last = p.source_part(q, p.length() - 1);
    for (const Path& sub : {drop_first, drop_last}) {
      if (sub.is_trivial()) continue;
      if (!set_contains(q, sorted_paths, sub)) {
        if (missing)
          *missing = "missing subpath " + sub.display(q) + " (subpath of " +
                     p.display(q) + ")";
        return false;
      }
    }
  }
  return true;
}

std::vector<std::string> validate_monomial(const MonomialCoalgebra& m) {
  std::vector<std::string> errs;
  const Quiver& q = m.quiver();
  if (m.kind() == MonomialCoalgebra::Kind::Finite) {
    // Geometric validity is enforced by Path construction; closure is checked
    // path by path so every violation is reported.
    for (const auto& p : m.finite_paths()) {
      if (p.length() < 1) continue;
      for (const Path& sub :
           {p.target_part(q, p.length() - 1), p.source_part(q, p.length() - 1)}) {
        if (!sub.is_trivial() && !m.contains(sub))
          errs.push_back("non-closed set: missing subpath " + sub.display(q) +
                         " (subpath of " + p.display(q) + ")");
      }
    }
    std::sort(errs.begin(), errs.end());
    errs.erase(std::unique(errs.begin(), errs.end()), errs.end());
    return errs;
  }
  auto geo = m.nfa().check_geometry(q);
  errs.insert(errs.end(), geo.begin(), geo.end());
  if (!errs.empty()) return errs;
  if (!m.nfa().is_trim())
    errs.push_back("non-trimmed automaton: " +
                   std::to_string(m.nfa().size() - m.nfa().trimmed().size()) +
                   " useless state(s)");
  std::vector<int> witness;
  if (!m.nfa().factor_closed(q, &witness))
    errs.push_back("language not factor-closed: factor " +
                   word_display(q, witness) + " is not a member");
  return errs;
}

bool is_admissible(const MonomialCoalgebra& m) {
  const Quiver& q = m.quiver();
  for (int a = 0; a < q.arrow_count(); ++a)
    if (!m.contains(Path::of_arrows(q, {a}))) return false;
  return true;
}

std::vector<ExtensionEntry> extension_report(const MonomialCoalgebra& m, int n) {
  const Quiver& q = m.quiver();
  std::vector<ExtensionEntry> out;
  for (const auto& p : m.enumerate(n)) {
    ExtensionEntry e{p, false, false};
    for (int a : q.out_arrows(p.target()))
      if (m.contains(p.extended_target(q, a))) {
        e.left_extendable = true;
        break;
      }
    for (int a : q.in_arrows(p.source()))
      if (m.contains(p.extended_source(q, a))) {
        e.right_extendable = true;
        break;
      }
    out.push_back(std::move(e));
  }
  return out;
}

std::string StringCheck::describe(const Quiver& q) const {
  if (ok) return "ok";
  if (condition == 'a')
    return "condition a: vertex '" + q.vertex_name(vertex) +
           "' has more than two arrows on one side";
  std::string s = "condition c: arrow '" + q.arrow(arrow).id +
                  "' has two continuations in C: ";
  s += "'" + q.arrow(pair[0]).id + "', '" + q.arrow(pair[1]).id + "'";
  return s;
}

StringCheck string_check(const MonomialCoalgebra& m) {
  if (!is_admissible(m)) throw Error("string_check: non-admissible input");
  const Quiver& q = m.quiver();
  for (int v = 0; v < q.vertex_count(); ++v) {
    if (q.out_arrows(v).size() > 2 || q.in_arrows(v).size() > 2) {
      StringCheck r;
      r.ok = false;
      r.condition = 'a';
      r.vertex = v;
      return r;
    }
  }
  for (int b = 0; b < q.arrow_count(); ++b) {
    Path pb = Path::of_arrows(q, {b});
    std::vector<int> succ, pred;
    for (int a : q.out_arrows(q.tgt(b)))
      if (m.contains(pb.extended_target(q, a))) succ.push_back(a);
    for (int g : q.in_arrows(q.src(b)))
      if (m.contains(pb.extended_source(q, g))) pred.push_back(g);
    for (const auto& two : {succ, pred}) {
      if (two.size() > 1) {
        StringCheck r;
        r.ok = false;
        r.condition = 'c';
        r.arrow = b;
        r.pair = {two[0], two[1]};
        return r;
      }
    }
  }
  return {};
}

namespace {

void require_same_quiver(const MonomialCoalgebra& a, const MonomialCoalgebra& b) {
  if (a.quiver_ptr() == b.quiver_ptr()) return;
  const Quiver &qa = a.quiver(), &qb = b.quiver();
  if (qa.vertices() != qb.vertices()) throw Error("presentations on different quivers");
  if (qa.arrow_count() != qb.arrow_count())
    throw Error("presentations on different quivers");
  for (int i = 0; i < qa.arrow_count(); ++i)
    if (qa.arrow(i).id != qb.arrow(i).id || qa.arrow(i).src != qb.arrow(i).src ||
        qa.arrow(i).tgt != qb.arrow(i).tgt)
      throw Error("presentations on different quivers");
}

}  // namespace

std::vector<Path> wedge_monomial(const MonomialCoalgebra& a,
                                 const MonomialCoalgebra& b,
                                 const MonomialCoalgebra& c, int n) {
  require_same_quiver(a, c);
  require_same_quiver(b, c);
  if (!c.language_includes(a)) throw Error("wedge_monomial: A not contained in C");
  if (!c.language_includes(b)) throw Error("wedge_monomial: B not contained in C");
  const Quiver& q = c.quiver();
  std::vector<Path> out;
  for (const auto& p : c.enumerate(n)) {
    bool all_cuts = true;
    for (int k = 0; k <= p.length() && all_cuts; ++k) {
      Path tau = p.source_part(q, k);
      Path eta = p.target_part(q, p.length() - k);
      if (!a.contains(eta) && !b.contains(tau)) all_cuts = false;
    }
    if (all_cuts) out.push_back(p);
  }
  std::string missing;
  std::vector<Path> nonempty;
  for (const auto& p : out)
    if (!p.is_trivial()) nonempty.push_back(p);
  if (!subpath_closed(q, nonempty, &missing))
    throw ConsistencyError("wedge_monomial output not subpath-closed: " + missing);
  return out;
}

MonomialCoalgebra avoid_factor(const MonomialCoalgebra& m,
                               const std::vector<int>& word) {
  const Quiver& q = m.quiver();
  for (int a : word)
    if (a < 0 || a >= q.arrow_count()) return m;  // foreign arrow: unchanged
  if (word.empty()) return m;
  if (m.kind() == MonomialCoalgebra::Kind::Finite) {
    std::vector<Path> keep;
    for (const auto& p : m.finite_paths()) {
      const auto& arr = p.arrows();
      bool has = false;
      for (size_t i = 0; i + word.size() <= arr.size() && !has; ++i)
        has = std::equal(word.begin(), word.end(), arr.begin() + i);
      if (!has) keep.push_back(p);
    }
    return MonomialCoalgebra::finite(m.quiver_ptr(), std::move(keep),
                                     m.finite_complete());
  }
  PathNfa n = m.nfa().avoid_factor(word);
  if (n.finite_language())
    return MonomialCoalgebra::finite(m.quiver_ptr(),
                                     enumerate_all_finite(q, n), true);
  return MonomialCoalgebra::pattern(m.quiver_ptr(), std::move(n));
}

MonomialCoalgebra support_subcoalgebra(const MonomialCoalgebra& m,
                                       const std::vector<bool>& keep) {
  const Quiver& q = m.quiver();
  if (m.kind() == MonomialCoalgebra::Kind::Finite) {
    std::vector<Path> paths;
    for (const auto& p : m.finite_paths()) {
      bool inside = keep[p.source()];
      for (int a : p.arrows()) inside = inside && keep[q.tgt(a)];
      if (inside) paths.push_back(p);
    }
    return MonomialCoalgebra::finite(m.quiver_ptr(), std::move(paths),
                                     m.finite_complete());
  }
  PathNfa n = m.nfa().restrict_support(keep);
  if (n.finite_language())
    return MonomialCoalgebra::finite(m.quiver_ptr(),
                                     enumerate_all_finite(q, n), true);
  return MonomialCoalgebra::pattern(m.quiver_ptr(), std::move(n));
}

SubquiverRestriction restrict_to_subquiver(const MonomialCoalgebra& m,
                                           const std::vector<bool>& keep) {
  const Quiver& q = m.quiver();
  std::vector<std::string> verts;
  std::vector<Arrow> arrows;
  std::vector<int> arrow_remap(q.arrow_count(), -1);
  for (int v = 0; v < q.vertex_count(); ++v)
    if (keep[v]) verts.push_back(q.vertex_name(v));
  for (int a = 0; a < q.arrow_count(); ++a)
    if (keep[q.src(a)] && keep[q.tgt(a)]) {
      arrow_remap[a] = static_cast<int>(arrows.size());
      arrows.push_back(q.arrow(a));
    }
  auto sub = std::make_shared<Quiver>(std::move(verts), std::move(arrows));

  MonomialCoalgebra restricted = support_subcoalgebra(m, keep);
  if (restricted.kind() == MonomialCoalgebra::Kind::Finite) {
    std::vector<Path> paths;
    for (const auto& p : restricted.finite_paths()) {
      std::vector<int> w;
      for (int a : p.arrows()) w.push_back(arrow_remap[a]);
      paths.push_back(Path::of_arrows(*sub, std::move(w)));
    }
    return {sub, MonomialCoalgebra::finite(sub, std::move(paths),
                                           restricted.finite_complete())};
  }
  PathNfa n = restricted.nfa();
  std::vector<int> vmap(q.vertex_count(), -1);
  for (int v = 0, j = 0; v < q.vertex_count(); ++v)
    if (keep[v]) vmap[v] = j++;
  for (auto& v : n.vertex) v = vmap[v];
  for (auto& outs : n.out)
    for (auto& tr : outs) tr.arrow = arrow_remap[tr.arrow];
  return {sub, MonomialCoalgebra::pattern(sub, std::move(n))};
}

}  // namespace coalg

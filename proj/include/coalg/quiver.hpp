#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace coalg {

/// Thrown on violated preconditions and malformed inputs (CLI exit code 1).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a theorem-backed runtime assertion fails (CLI exit code 2).
/// This always indicates an implementation bug, never a valid output.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string id;
  std::string src;
  std::string tgt;
};

/// Finite directed multigraph. Loops and parallel arrows are permitted.
/// Vertices and arrows are identified by name; equality is by identifier,
/// not isomorphism.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  const std::string& vertex_name(int v) const { return vertices_.at(v); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  int src(int a) const { return arrow_src_.at(a); }
  int tgt(int a) const { return arrow_tgt_.at(a); }

  /// -1 when absent.
  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& id) const;

  const std::vector<int>& out_arrows(int v) const { return out_.at(v); }
  const std::vector<int>& in_arrows(int v) const { return in_.at(v); }

  /// Empty list iff the Quiver invariants hold; otherwise one message per
  /// violation (dangling endpoint, duplicate arrow-id, duplicate vertex).
  std::vector<std::string> validate() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<int> arrow_src_, arrow_tgt_;  // -1 for dangling endpoints
  std::vector<std::vector<int>> out_, in_;
  std::unordered_map<std::string, int> vertex_idx_, arrow_idx_;
};

/// A path of the quiver: either the trivial path at a vertex, or a composable
/// arrow sequence. Arrows are stored in traversal order (the first entry is
/// the first arrow leaving the source), i.e. the reverse of the composition
/// notation a_n...a_1.
class Path {
 public:
  static Path trivial(int vertex) { return Path(vertex, vertex, {}); }
  static Path of_arrows(const Quiver& q, std::vector<int> arrows);

  bool is_trivial() const { return arrows_.empty(); }
  int length() const { return static_cast<int>(arrows_.size()); }
  int source() const { return src_; }
  int target() const { return tgt_; }
  const std::vector<int>& arrows() const { return arrows_; }

  /// Extends at the target: result = a . p in composition notation.
  Path extended_target(const Quiver& q, int a) const;
  /// Extends at the source: result = p . a in composition notation.
  Path extended_source(const Quiver& q, int a) const;

  /// Target-side part of the cut at k (the last length-k arrows, in notation
  /// the "eta" of p = eta.tau), where tau keeps the first (length - k).
  Path target_part(const Quiver& q, int k) const;
  Path source_part(const Quiver& q, int k) const;

  /// Composition notation, e.g. "b.a" for the path that traverses a then b;
  /// trivial paths render as "e(v)".
  std::string display(const Quiver& q) const;

  bool operator==(const Path& o) const {
    return src_ == o.src_ && arrows_ == o.arrows_;
  }
  bool operator!=(const Path& o) const { return !(*this == o); }

 private:
  Path(int s, int t, std::vector<int> a)
      : src_(s), tgt_(t), arrows_(std::move(a)) {}
  int src_;
  int tgt_;
  std::vector<int> arrows_;
};

/// Deterministic path order: by length, then trivial paths by vertex name,
/// then by the arrow-id sequence in traversal order.
struct PathOrder {
  const Quiver* q = nullptr;
  bool operator()(const Path& a, const Path& b) const;
};

/// All paths of length <= n, in PathOrder.
std::vector<Path> paths_up_to(const Quiver& q, int n);

struct SccInfo {
  std::vector<int> scc_of;                 // vertex -> scc index
  std::vector<std::vector<int>> sccs;      // vertex lists
  std::vector<std::pair<int, int>> condensation;  // scc DAG edges, deduped
  std::vector<int> weak_of;                // vertex -> weak component index
  int weak_count = 0;
  /// Per weak component: true iff it is a single SCC.
  std::vector<bool> component_strongly_connected;
  bool all_strongly_connected = false;
};

SccInfo scc(const Quiver& q);

/// Shape of the underlying undirected multigraph, per connected component.
struct ShapeClass {
  enum class Family { DynkinA, DynkinD, DynkinE, EuclideanA, EuclideanD, EuclideanE, Other };
  Family family = Family::Other;
  int index = 0;  // the subscript n; 0 for Other

  bool is_dynkin() const {
    return family == Family::DynkinA || family == Family::DynkinD ||
           family == Family::DynkinE;
  }
  bool is_euclidean() const {
    return family == Family::EuclideanA || family == Family::EuclideanD ||
           family == Family::EuclideanE;
  }
  std::string name() const;
  bool operator==(const ShapeClass& o) const {
    return family == o.family && index == o.index;
  }
};

/// One entry per weak component, indexed like SccInfo::weak_of.
std::vector<ShapeClass> shape_class(const Quiver& q);

enum class ForbiddenPattern { K3, K5, L3, B2tilde, P1, P2 };

std::string pattern_name(ForbiddenPattern p);

struct ForbiddenMatch {
  ForbiddenPattern pattern;
  std::vector<int> vertices;  // by pattern role
  std::vector<int> arrows;    // by pattern role
  /// Re-checks the embedding against q.
  bool verify(const Quiver& q) const;
};

/// First match in a deterministic scan (pattern order K3, K5, L3, B~2, P1,
/// P2; locations in index order), or nullopt.
std::optional<ForbiddenMatch> find_forbidden(const Quiver& q);

/// All matches, one witness per (pattern, anchor location).
std::vector<ForbiddenMatch> find_all_forbidden(const Quiver& q);

/// True iff every vertex has in-degree <= 1 and out-degree <= 1, counting
/// parallel arrows, so each component is a line or a single cycle.
bool serial_shape(const Quiver& q);

std::string to_dot(const Quiver& q);

}  // namespace coalg

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coalg/quiver.hpp"

namespace coalg {

/// NFA over the arrow alphabet whose states carry the vertex reached so far.
/// Every state is implicitly initial; a nonempty arrow word (in traversal
/// order) is a member iff some run ends in an accepting state. Trivial paths
/// are members by convention and are not represented here.
struct PathNfa {
  struct Tr {
    int arrow;
    int to;
  };
  std::vector<int> vertex;  // per state
  std::vector<char> accepting;
  std::vector<std::vector<Tr>> out;

  int size() const { return static_cast<int>(vertex.size()); }

  /// Transitions must respect the quiver geometry: s -a-> t needs
  /// vertex[s] == src(a) and vertex[t] == tgt(a). Violations reported.
  std::vector<std::string> check_geometry(const Quiver& q) const;

  bool accepts(const std::vector<int>& word) const;

  /// Keeps only states from which an accepting state is reachable.
  PathNfa trimmed() const;
  bool is_trim() const;

  /// True iff the accepted language is finite (trimmed part is acyclic).
  bool finite_language() const;
  /// Longest accepted word; only valid when finite_language().
  int max_word_length() const;

  /// Exact: is L(sub) a subset of L(*this)? On failure returns a witness
  /// word in L(sub) \ L(*this).
  bool includes(const Quiver& q, const PathNfa& sub,
                std::vector<int>* witness = nullptr) const;

  /// Exact factor-closure of the accepted language.
  bool factor_closed(const Quiver& q, std::vector<int>* witness = nullptr) const;

  /// Language restricted to words avoiding `word` as a contiguous factor.
  PathNfa avoid_factor(const std::vector<int>& word) const;

  /// Language restricted to words whose every visited vertex lies in keep.
  PathNfa restrict_support(const std::vector<bool>& keep) const;

  /// Accepts exactly the nonempty paths of q.
  static PathNfa all_paths(const Quiver& q);
};

/// Monomial subcoalgebra of a path coalgebra: a subpath-closed set of paths,
/// given explicitly (Finite) or as a factor-closed path language (Pattern).
/// All trivial paths of the quiver are members by convention.
class MonomialCoalgebra {
 public:
  enum class Kind { Finite, Pattern };

  /// `paths` lists the nonempty members (trivial paths implicit); `complete`
  /// flags that the set is the entire basis, not a truncation.
  static MonomialCoalgebra finite(std::shared_ptr<const Quiver> q,
                                  std::vector<Path> paths, bool complete);
  static MonomialCoalgebra pattern(std::shared_ptr<const Quiver> q, PathNfa nfa);
  /// Builds the canonical pattern from a raw automaton (product with the
  /// quiver's path automaton, then trim). Acyclic results collapse to a
  /// Finite-complete presentation.
  static MonomialCoalgebra pattern_from_raw(
      std::shared_ptr<const Quiver> q, const std::vector<std::string>& states,
      const std::vector<std::string>& accepting,
      const std::vector<std::tuple<std::string, std::string, std::string>>&
          transitions);
  static MonomialCoalgebra full(std::shared_ptr<const Quiver> q);

  Kind kind() const { return kind_; }
  bool finite_complete() const { return kind_ == Kind::Finite && complete_; }
  const Quiver& quiver() const { return *q_; }
  std::shared_ptr<const Quiver> quiver_ptr() const { return q_; }
  const std::vector<Path>& finite_paths() const { return paths_; }
  const PathNfa& nfa() const { return nfa_; }

  bool contains(const Path& p) const;

  /// Exactly the member paths of length <= n, in PathOrder.
  std::vector<Path> enumerate(int n) const;

  bool language_finite() const;
  int max_member_length() const;  // only for finite languages
  /// Exact language comparisons (same quiver assumed).
  bool language_includes(const MonomialCoalgebra& sub) const;
  bool language_equal(const MonomialCoalgebra& other) const;
  /// True iff every path of the quiver is a member.
  bool is_full() const;

 private:
  MonomialCoalgebra() = default;
  Kind kind_ = Kind::Finite;
  bool complete_ = true;
  std::shared_ptr<const Quiver> q_;
  std::vector<Path> paths_;  // Finite: sorted nonempty members
  PathNfa nfa_;              // Pattern
};

/// Empty iff all MonomialCoalgebra invariants hold: subpath closure (factor
/// closure on the automaton), valid path words, trimmed automata.
std::vector<std::string> validate_monomial(const MonomialCoalgebra& m);

/// True iff every vertex and every arrow of the quiver belongs to m.
bool is_admissible(const MonomialCoalgebra& m);

struct ExtensionEntry {
  Path path;
  bool left_extendable;   // exists arrow b with b.p in m
  bool right_extendable;  // exists arrow g with p.g in m
};

/// One entry per member path of length <= n.
std::vector<ExtensionEntry> extension_report(const MonomialCoalgebra& m, int n);

/// String-coalgebra conditions: (a) vertex degrees <= 2 in Q; (b) monomial
/// (holds by type); (c) unique composable continuation inside m per arrow.
struct StringCheck {
  bool ok = true;
  char condition = ' ';  // 'a' or 'c'
  int vertex = -1;       // condition a
  int arrow = -1;        // condition c: the arrow beta
  std::vector<int> pair;  // condition c: the two competing arrows
  std::string describe(const Quiver& q) const;
};

StringCheck string_check(const MonomialCoalgebra& m);

/// {p in C, len(p) <= n : every factorization p = eta.tau has eta in A or
/// tau in B}. A, B must be sub-presentations of C on the same quiver.
std::vector<Path> wedge_monomial(const MonomialCoalgebra& a,
                                 const MonomialCoalgebra& b,
                                 const MonomialCoalgebra& c, int n);

/// Members avoiding the given arrow word as a factor. An arrow word not in
/// the quiver leaves m unchanged.
MonomialCoalgebra avoid_factor(const MonomialCoalgebra& m,
                               const std::vector<int>& word);

/// Members supported entirely inside the vertex set (all trivial paths stay).
MonomialCoalgebra support_subcoalgebra(const MonomialCoalgebra& m,
                                       const std::vector<bool>& keep);

/// New quiver on the kept vertices with the induced presentation.
struct SubquiverRestriction {
  std::shared_ptr<const Quiver> quiver;
  MonomialCoalgebra coalgebra;
};
SubquiverRestriction restrict_to_subquiver(const MonomialCoalgebra& m,
                                           const std::vector<bool>& keep);

/// Membership helper used across modules.
bool subpath_closed(const Quiver& q, const std::vector<Path>& sorted_paths,
                    std::string* missing = nullptr);

}  // namespace coalg

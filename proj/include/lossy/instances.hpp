#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lossy {

/// Dense 1-based identifier shared by hitting-set elements and graph vertices.
using Element = std::uint32_t;

/// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ElementSet make_set(std::vector<Element> elems);
bool contains(const ElementSet& s, Element e);
bool intersects(const ElementSet& a, const ElementSet& b);
bool is_subset(const ElementSet& a, const ElementSet& b);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);

/// Universe plus a family of sets of size at most d. Immutable once built.
/// The family is deduplicated and kept in lexicographic order.
class HypergraphInstance {
 public:
  HypergraphInstance() = default;
  HypergraphInstance(int d, ElementSet universe, std::vector<ElementSet> family);

  /// Universe = {1..n}.
  static HypergraphInstance with_dense_universe(int d, Element n, std::vector<ElementSet> family);
  /// Universe = union of the family.
  static HypergraphInstance spanned(int d, std::vector<ElementSet> family);

  int d() const { return d_; }
  const ElementSet& universe() const { return universe_; }
  const std::vector<ElementSet>& family() const { return family_; }
  std::size_t num_elements() const { return universe_.size(); }
  std::size_t num_sets() const { return family_.size(); }
  Element max_element() const { return universe_.empty() ? 0 : universe_.back(); }

  /// Sets of the family fully contained in `subset` (universe becomes `subset`).
  HypergraphInstance induced(const ElementSet& subset) const;
  /// Sets of the family disjoint from `removed`; universe becomes their union.
  HypergraphInstance without(const ElementSet& removed) const;

  bool operator==(const HypergraphInstance&) const = default;

 private:
  int d_ = 2;
  ElementSet universe_;
  std::vector<ElementSet> family_;
};

class Graph {
 public:
  using Edge = std::pair<Element, Element>;

  Graph() = default;
  /// Throws InvalidInstance on self-loops, duplicate edges or unknown endpoints.
  Graph(ElementSet vertices, std::vector<Edge> edges);
  static Graph with_dense_vertices(Element n, std::vector<Edge> edges);

  const ElementSet& vertices() const { return vertices_; }
  /// Normalized (u < v) and lexicographically sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_vertex(Element v) const;
  bool adjacent(Element u, Element v) const;
  const ElementSet& neighbors(Element v) const;

  Graph induced(const ElementSet& subset) const;
  Graph without(const ElementSet& removed) const;
  /// Same vertex set, restricted edge set.
  Graph with_edges(std::vector<Edge> edges) const;

  /// View as 2-HS (Vertex Cover): one set per edge, universe = V.
  HypergraphInstance as_vertex_cover() const;

  bool operator==(const Graph& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

 private:
  std::size_t slot(Element v) const;

  ElementSet vertices_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> index_;  // vertex id -> position in vertices_, -1 if absent
  std::vector<ElementSet> adj_;
  std::vector<std::uint8_t> matrix_;
};

class Tournament {
 public:
  using Arc = std::pair<Element, Element>;

  Tournament() = default;
  /// Throws InvalidInstance unless every unordered pair carries exactly one arc.
  Tournament(ElementSet vertices, std::vector<Arc> arcs);
  static Tournament with_dense_vertices(Element n, std::vector<Arc> arcs);

  const ElementSet& vertices() const { return vertices_; }
  /// Sorted lexicographically.
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t num_vertices() const { return vertices_.size(); }

  bool has_vertex(Element v) const;
  /// True iff the arc u->v is present.
  bool arc(Element u, Element v) const;

  Tournament induced(const ElementSet& subset) const;
  Tournament without(const ElementSet& removed) const;

  bool operator==(const Tournament& o) const { return vertices_ == o.vertices_ && arcs_ == o.arcs_; }

 private:
  std::size_t slot(Element v) const;

  ElementSet vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::int32_t> index_;
  std::vector<std::uint8_t> matrix_;
};

enum class ProblemKind { HittingSet, VertexCover, ClusterVertexDeletion, FeedbackVertexSetTournament };

std::string_view to_string(ProblemKind kind);

struct Solution {
  ElementSet elements;
  ProblemKind kind = ProblemKind::HittingSet;

  std::size_t size() const { return elements.size(); }
};

/// Outcome of a verification; `witness` holds an unhit set / obstruction when invalid.
struct Verdict {
  bool ok = true;
  ElementSet witness;
  std::string reason;

  explicit operator bool() const { return ok; }
};

Verdict verify_solution(const HypergraphInstance& inst, const Solution& s);
/// VC or CVD depending on the solution's tag.
Verdict verify_solution(const Graph& g, const Solution& s);
Verdict verify_solution(const Tournament& t, const Solution& s);

bool is_hitting_set(const HypergraphInstance& inst, const ElementSet& s);

/// d = 3 instance whose sets are the vertex sets of induced P3's.
HypergraphInstance cvd_to_hs(const Graph& g);
/// d = 3 instance whose sets are the vertex sets of directed triangles.
HypergraphInstance fvst_to_hs(const Tournament& t);

// Text formats: comment lines start with 'c'.
HypergraphInstance parse_hs(std::string_view text);
Graph parse_graph(std::string_view text);
Tournament parse_tournament(std::string_view text);

/// Non-dense id sets are written relabelled to 1..n with a `c labels ...` line,
/// which the parsers use to restore the original ids.
std::string serialize_hs(const HypergraphInstance& inst);
std::string serialize_graph(const Graph& g);
std::string serialize_tournament(const Tournament& t);

}  // namespace lossy

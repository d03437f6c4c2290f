#include "lossy/instances.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace lossy {

ElementSet make_set(std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

bool contains(const ElementSet& s, Element e) { return std::binary_search(s.begin(), s.end(), e); }

bool intersects(const ElementSet& a, const ElementSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// HypergraphInstance

HypergraphInstance::HypergraphInstance(int d, ElementSet universe, std::vector<ElementSet> family)
    : d_(d), universe_(make_set(std::move(universe))) {
  if (d < 1) throw InvalidInstance("d must be positive");
  for (auto& s : family) {
    s = make_set(std::move(s));
    if (s.empty()) throw InvalidInstance("empty set in family");
    if (static_cast<int>(s.size()) > d) throw InvalidInstance("set larger than d");
    for (Element e : s)
      if (!contains(universe_, e)) throw InvalidInstance("element " + std::to_string(e) + " not in universe");
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  family_ = std::move(family);
}

HypergraphInstance HypergraphInstance::with_dense_universe(int d, Element n, std::vector<ElementSet> family) {
  ElementSet u(n);
  std::iota(u.begin(), u.end(), Element{1});
  return HypergraphInstance(d, std::move(u), std::move(family));
}

HypergraphInstance HypergraphInstance::spanned(int d, std::vector<ElementSet> family) {
  ElementSet u;
  for (const auto& s : family) u.insert(u.end(), s.begin(), s.end());
  return HypergraphInstance(d, make_set(std::move(u)), std::move(family));
}

HypergraphInstance HypergraphInstance::induced(const ElementSet& subset) const {
  std::vector<ElementSet> fam;
  for (const auto& s : family_)
    if (is_subset(s, subset)) fam.push_back(s);
  return HypergraphInstance(d_, set_intersection(universe_, subset), std::move(fam));
}

HypergraphInstance HypergraphInstance::without(const ElementSet& removed) const {
  std::vector<ElementSet> fam;
  for (const auto& s : family_)
    if (!intersects(s, removed)) fam.push_back(s);
  return spanned(d_, std::move(fam));
}

// ---------------------------------------------------------------------------
// Graph

namespace {

std::vector<std::int32_t> build_index(const ElementSet& vertices) {
  std::vector<std::int32_t> index(vertices.empty() ? 1 : vertices.back() + 1, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<std::int32_t>(i);
  return index;
}

ElementSet dense_range(Element n) {
  ElementSet v(n);
  std::iota(v.begin(), v.end(), Element{1});
  return v;
}

}  // namespace

Graph::Graph(ElementSet vertices, std::vector<Edge> edges) : vertices_(make_set(std::move(vertices))) {
  index_ = build_index(vertices_);
  const std::size_t n = vertices_.size();
  matrix_.assign(n * n, 0);
  adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u == v) throw InvalidInstance("self-loop at " + std::to_string(u));
    if (!has_vertex(u) || !has_vertex(v))
      throw InvalidInstance("edge endpoint outside vertex set");
    if (u > v) std::swap(u, v);
    auto a = slot(u), b = slot(v);
    if (matrix_[a * n + b]) throw InvalidInstance("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    matrix_[a * n + b] = matrix_[b * n + a] = 1;
    edges_.emplace_back(u, v);
    adj_[a].push_back(v);
    adj_[b].push_back(u);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::with_dense_vertices(Element n, std::vector<Edge> edges) {
  return Graph(dense_range(n), std::move(edges));
}

bool Graph::has_vertex(Element v) const { return v < index_.size() && index_[v] >= 0; }

std::size_t Graph::slot(Element v) const {
  if (!has_vertex(v)) throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");
  return static_cast<std::size_t>(index_[v]);
}

bool Graph::adjacent(Element u, Element v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  return matrix_[slot(u) * vertices_.size() + slot(v)] != 0;
}

const ElementSet& Graph::neighbors(Element v) const { return adj_[slot(v)]; }

Graph Graph::induced(const ElementSet& subset) const {
  ElementSet vs = set_intersection(vertices_, subset);
  std::vector<Edge> es;
  for (const auto& [u, v] : edges_)
    if (contains(vs, u) && contains(vs, v)) es.emplace_back(u, v);
  return Graph(std::move(vs), std::move(es));
}

Graph Graph::without(const ElementSet& removed) const { return induced(set_difference(vertices_, removed)); }

Graph Graph::with_edges(std::vector<Edge> edges) const { return Graph(vertices_, std::move(edges)); }

HypergraphInstance Graph::as_vertex_cover() const {
  std::vector<ElementSet> fam;
  fam.reserve(edges_.size());
  for (const auto& [u, v] : edges_) fam.push_back({u, v});
  return HypergraphInstance(2, vertices_, std::move(fam));
}

// ---------------------------------------------------------------------------
// Tournament

Tournament::Tournament(ElementSet vertices, std::vector<Arc> arcs) : vertices_(make_set(std::move(vertices))) {
  index_ = build_index(vertices_);
  const std::size_t n = vertices_.size();
  matrix_.assign(n * n, 0);
  for (auto [u, v] : arcs) {
    if (u == v) throw InvalidInstance("self-loop at " + std::to_string(u));
    if (!has_vertex(u) || !has_vertex(v)) throw InvalidInstance("arc endpoint outside vertex set");
    auto a = slot(u), b = slot(v);
    if (matrix_[a * n + b] || matrix_[b * n + a])
      throw InvalidInstance("pair {" + std::to_string(u) + "," + std::to_string(v) + "} oriented twice");
    matrix_[a * n + b] = 1;
    arcs_.emplace_back(u, v);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!matrix_[a * n + b] && !matrix_[b * n + a])
        throw InvalidInstance("missing pair {" + std::to_string(vertices_[a]) + "," +
                              std::to_string(vertices_[b]) + "}");
  std::sort(arcs_.begin(), arcs_.end());
}

Tournament Tournament::with_dense_vertices(Element n, std::vector<Arc> arcs) {
  return Tournament(dense_range(n), std::move(arcs));
}

bool Tournament::has_vertex(Element v) const { return v < index_.size() && index_[v] >= 0; }

std::size_t Tournament::slot(Element v) const {
  if (!has_vertex(v)) throw std::out_of_range("vertex " + std::to_string(v) + " not in tournament");
  return static_cast<std::size_t>(index_[v]);
}

bool Tournament::arc(Element u, Element v) const {
  return matrix_[slot(u) * vertices_.size() + slot(v)] != 0;
}

Tournament Tournament::induced(const ElementSet& subset) const {
  ElementSet vs = set_intersection(vertices_, subset);
  std::vector<Arc> as;
  for (const auto& [u, v] : arcs_)
    if (contains(vs, u) && contains(vs, v)) as.emplace_back(u, v);
  return Tournament(std::move(vs), std::move(as));
}

Tournament Tournament::without(const ElementSet& removed) const {
  return induced(set_difference(vertices_, removed));
}

// ---------------------------------------------------------------------------
// Solutions

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::HittingSet: return "HS";
    case ProblemKind::VertexCover: return "VC";
    case ProblemKind::ClusterVertexDeletion: return "CVD";
    case ProblemKind::FeedbackVertexSetTournament: return "FVST";
  }
  return "?";
}

bool is_hitting_set(const HypergraphInstance& inst, const ElementSet& s) {
  for (const auto& set : inst.family())
    if (!intersects(set, s)) return false;
  return true;
}

Verdict verify_solution(const HypergraphInstance& inst, const Solution& s) {
  for (Element e : s.elements)
    if (!contains(inst.universe(), e)) return {false, {e}, "element outside universe"};
  for (const auto& set : inst.family())
    if (!intersects(set, s.elements)) return {false, set, "set not hit"};
  return {};
}

namespace {

Verdict verify_vertex_cover(const Graph& g, const ElementSet& s) {
  for (Element v : s)
    if (!g.has_vertex(v)) return {false, {v}, "vertex outside graph"};
  for (const auto& [u, v] : g.edges())
    if (!contains(s, u) && !contains(s, v)) return {false, {u, v}, "edge not covered"};
  return {};
}

Verdict verify_cluster(const Graph& g, const ElementSet& s) {
  for (Element v : s)
    if (!g.has_vertex(v)) return {false, {v}, "vertex outside graph"};
  // An induced P3 centred at v exists iff two remaining neighbours of v are non-adjacent.
  for (Element v : g.vertices()) {
    if (contains(s, v)) continue;
    ElementSet nb;
    for (Element u : g.neighbors(v))
      if (!contains(s, u)) nb.push_back(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!g.adjacent(nb[i], nb[j])) return {false, make_set({nb[i], v, nb[j]}), "induced P3 remains"};
  }
  return {};
}

}  // namespace

Verdict verify_solution(const Graph& g, const Solution& s) {
  switch (s.kind) {
    case ProblemKind::VertexCover: return verify_vertex_cover(g, s.elements);
    case ProblemKind::ClusterVertexDeletion: return verify_cluster(g, s.elements);
    default: throw std::invalid_argument("graph solutions must be tagged VC or CVD");
  }
}

Verdict verify_solution(const Tournament& t, const Solution& s) {
  if (s.kind != ProblemKind::FeedbackVertexSetTournament)
    throw std::invalid_argument("tournament solutions must be tagged FVST");
  for (Element v : s.elements)
    if (!t.has_vertex(v)) return {false, {v}, "vertex outside tournament"};
  // Kahn's algorithm on T - S; a leftover vertex lies on a cycle, hence on a triangle.
  ElementSet rest = set_difference(t.vertices(), s.elements);
  std::vector<std::size_t> indeg(rest.size(), 0);
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = 0; j < rest.size(); ++j)
      if (i != j && t.arc(rest[j], rest[i])) ++indeg[i];
  std::vector<bool> done(rest.size(), false);
  std::size_t removed = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (done[i] || indeg[i] != 0) continue;
      done[i] = true;
      ++removed;
      progress = true;
      for (std::size_t j = 0; j < rest.size(); ++j)
        if (!done[j] && t.arc(rest[i], rest[j])) --indeg[j];
    }
  }
  if (removed == rest.size()) return {};
  ElementSet left;
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (!done[i]) left.push_back(rest[i]);
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t b = 0; b < left.size(); ++b)
      for (std::size_t c = 0; c < left.size(); ++c)
        if (t.arc(left[a], left[b]) && t.arc(left[b], left[c]) && t.arc(left[c], left[a]))
          return {false, make_set({left[a], left[b], left[c]}), "directed triangle remains"};
  return {false, left, "cycle remains"};
}

// ---------------------------------------------------------------------------
// Implicit 3-HS reductions

HypergraphInstance cvd_to_hs(const Graph& g) {
  std::vector<ElementSet> fam;
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      for (std::size_t k = j + 1; k < vs.size(); ++k) {
        int edges = g.adjacent(vs[i], vs[j]) + g.adjacent(vs[j], vs[k]) + g.adjacent(vs[i], vs[k]);
        if (edges == 2) fam.push_back({vs[i], vs[j], vs[k]});
      }
  return HypergraphInstance(3, vs, std::move(fam));
}

HypergraphInstance fvst_to_hs(const Tournament& t) {
  std::vector<ElementSet> fam;
  const auto& vs = t.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      for (std::size_t k = j + 1; k < vs.size(); ++k) {
        Element a = vs[i], b = vs[j], c = vs[k];
        bool cyclic = (t.arc(a, b) && t.arc(b, c) && t.arc(c, a)) || (t.arc(b, a) && t.arc(c, b) && t.arc(a, c));
        if (cyclic) fam.push_back({a, b, c});
      }
  return HypergraphInstance(3, vs, std::move(fam));
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::vector<Element> labels{};

  // Next non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      tokens.clear();
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
      }
      if (tokens.empty()) continue;
      if (tokens[0] == "c") {
        if (tokens.size() >= 2 && tokens[1] == "labels") {
          for (std::size_t k = 2; k < tokens.size(); ++k) labels.push_back(number(tokens[k]));
        }
        continue;
      }
      return true;
    }
    return false;
  }

  std::uint64_t number(std::string_view tok) const {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError(line_no, "expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
  }

  Element element(std::string_view tok, std::uint64_t n) const {
    auto v = number(tok);
    if (v < 1 || v > n) throw ParseError(line_no, "id " + std::string(tok) + " out of range 1.." + std::to_string(n));
    return static_cast<Element>(v);
  }

  // Maps dense ids back to the labels recorded by serialize_*; identity without a labels line.
  Element relabel(Element v) const { return labels.empty() ? v : labels[v - 1]; }

  void check_labels(std::uint64_t n) const {
    if (labels.empty()) return;
    if (labels.size() != n) throw ParseError(line_no, "labels line does not match vertex count");
    if (make_set(labels).size() != n || labels.front() == 0) throw ParseError(line_no, "labels must be distinct positive ids");
  }
};

std::string labels_line(const ElementSet& ids) {
  bool dense = true;
  for (std::size_t i = 0; i < ids.size(); ++i) dense = dense && ids[i] == i + 1;
  if (dense) return {};
  std::string out = "c labels";
  for (Element e : ids) out += " " + std::to_string(e);
  return out + "\n";
}

std::size_t dense_id(const ElementSet& ids, Element e) {
  return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), e) - ids.begin()) + 1;
}

}  // namespace

HypergraphInstance parse_hs(std::string_view text) {
  LineReader in{text};
  std::vector<std::string_view> tok;
  if (!in.next(tok) || tok.size() != 5 || tok[0] != "p" || tok[1] != "hs")
    throw ParseError(in.line_no, "expected header 'p hs <n> <m> <d>'");
  auto n = in.number(tok[2]);
  auto m = in.number(tok[3]);
  auto d = in.number(tok[4]);
  if (d < 1) throw ParseError(in.line_no, "d must be positive");
  std::vector<ElementSet> fam;
  while (in.next(tok)) {
    if (tok[0] != "s") throw ParseError(in.line_no, "expected set line 's e1 e2 ...'");
    if (tok.size() == 1) throw ParseError(in.line_no, "empty set");
    if (tok.size() - 1 > d) throw ParseError(in.line_no, "set larger than d=" + std::to_string(d));
    ElementSet s;
    for (std::size_t i = 1; i < tok.size(); ++i) s.push_back(in.element(tok[i], n));
    fam.push_back(std::move(s));
  }
  if (fam.size() != m)
    throw ParseError(in.line_no, "header announced " + std::to_string(m) + " sets, found " + std::to_string(fam.size()));
  in.check_labels(n);
  ElementSet universe = dense_range(static_cast<Element>(n));
  for (auto& s : fam)
    for (auto& e : s) e = in.relabel(e);
  for (auto& e : universe) e = in.relabel(e);
  return HypergraphInstance(static_cast<int>(d), std::move(universe), std::move(fam));
}

Graph parse_graph(std::string_view text) {
  LineReader in{text};
  std::vector<std::string_view> tok;
  if (!in.next(tok) || tok.size() != 4 || tok[0] != "p" || tok[1] != "edge")
    throw ParseError(in.line_no, "expected header 'p edge <n> <m>'");
  auto n = in.number(tok[2]);
  auto m = in.number(tok[3]);
  std::vector<Graph::Edge> edges;
  std::set<std::pair<Element, Element>> seen;
  while (in.next(tok)) {
    if (tok.size() != 3 || tok[0] != "e") throw ParseError(in.line_no, "expected edge line 'e u v'");
    Element u = in.element(tok[1], n), v = in.element(tok[2], n);
    if (u == v) throw ParseError(in.line_no, "self-loop");
    if (!seen.insert(std::minmax(u, v)).second) throw ParseError(in.line_no, "duplicate edge");
    edges.emplace_back(u, v);
  }
  if (edges.size() != m)
    throw ParseError(in.line_no, "header announced " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  in.check_labels(n);
  ElementSet vs = dense_range(static_cast<Element>(n));
  for (auto& e : vs) e = in.relabel(e);
  for (auto& [u, v] : edges) u = in.relabel(u), v = in.relabel(v);
  return Graph(std::move(vs), std::move(edges));
}

Tournament parse_tournament(std::string_view text) {
  LineReader in{text};
  std::vector<std::string_view> tok;
  if (!in.next(tok) || tok.size() != 3 || tok[0] != "p" || tok[1] != "tour")
    throw ParseError(in.line_no, "expected header 'p tour <n>'");
  auto n = in.number(tok[2]);
  std::vector<Tournament::Arc> arcs;
  while (in.next(tok)) {
    if (tok.size() != 3 || tok[0] != "a") throw ParseError(in.line_no, "expected arc line 'a u v'");
    arcs.emplace_back(in.element(tok[1], n), in.element(tok[2], n));
  }
  in.check_labels(n);
  ElementSet vs = dense_range(static_cast<Element>(n));
  for (auto& e : vs) e = in.relabel(e);
  for (auto& [u, v] : arcs) u = in.relabel(u), v = in.relabel(v);
  return Tournament(std::move(vs), std::move(arcs));
}

std::string serialize_hs(const HypergraphInstance& inst) {
  const auto& u = inst.universe();
  std::ostringstream out;
  out << "p hs " << u.size() << ' ' << inst.num_sets() << ' ' << inst.d() << '\n' << labels_line(u);
  for (const auto& s : inst.family()) {
    out << 's';
    for (Element e : s) out << ' ' << dense_id(u, e);
    out << '\n';
  }
  return out.str();
}

std::string serialize_graph(const Graph& g) {
  const auto& vs = g.vertices();
  std::ostringstream out;
  out << "p edge " << vs.size() << ' ' << g.num_edges() << '\n' << labels_line(vs);
  for (const auto& [u, v] : g.edges()) out << "e " << dense_id(vs, u) << ' ' << dense_id(vs, v) << '\n';
  return out.str();
}

std::string serialize_tournament(const Tournament& t) {
  const auto& vs = t.vertices();
  std::ostringstream out;
  out << "p tour " << vs.size() << '\n' << labels_line(vs);
  for (const auto& [u, v] : t.arcs()) out << "a " << dense_id(vs, u) << ' ' << dense_id(vs, v) << '\n';
  return out.str();
}

}  // namespace lossy

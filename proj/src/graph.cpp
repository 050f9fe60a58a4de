#include "tcol/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "tcol/errors.hpp"
#include "tcol/rng.hpp"

namespace tcol {

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
  const auto& a = adjacency[u];
  return std::binary_search(a.begin(), a.end(), v);
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw GraphInvariantError("negative vertex count");
  for (auto& e : edges) {
    if (e.first == e.second)
      throw GraphInvariantError("self-loop at vertex " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first < 0 || e.second >= n)
      throw GraphInvariantError("edge (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + ") out of range for n=" +
                                std::to_string(n));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    auto it = std::adjacent_find(edges.begin(), edges.end());
    throw GraphInvariantError("duplicate edge (" + std::to_string(it->first) + "," +
                              std::to_string(it->second) + ")");
  }

  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.adjacency.assign(n, {});
  for (const auto& [u, v] : g.edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& a : g.adjacency) std::sort(a.begin(), a.end());

  g.degree = n > 0 ? static_cast<int>(g.adjacency[0].size()) : 0;
  for (int v = 0; v < n; ++v) {
    int dv = static_cast<int>(g.adjacency[v].size());
    if (dv != g.degree)
      throw GraphInvariantError("graph is not regular: vertex 0 has degree " +
                                std::to_string(g.degree) + " but vertex " + std::to_string(v) +
                                " has degree " + std::to_string(dv));
  }
  return g;
}

namespace {

Graph load_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected header \"n m\"");
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    int u, v;
    if (!(ls >> u >> v))
      throw ParseError("line " + std::to_string(lineno) + ": expected edge \"u v\"");
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError("empty input");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError("header announced " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return make_graph(n, std::move(edges));
}

Graph load_dimacs(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> n >> m) || (fmt != "edge" && fmt != "edges" && fmt != "col"))
        throw ParseError("line " + std::to_string(lineno) + ": malformed DIMACS problem line");
      continue;
    }
    if (line[0] == 'e') {
      char e;
      int u, v;
      if (!(ls >> e >> u >> v))
        throw ParseError("line " + std::to_string(lineno) + ": malformed DIMACS edge line");
      edges.emplace_back(u - 1, v - 1);  // DIMACS is 1-indexed
      continue;
    }
    throw ParseError("line " + std::to_string(lineno) + ": unrecognized DIMACS line type '" +
                     std::string(1, line[0]) + "'");
  }
  if (n < 0) throw ParseError("DIMACS input has no problem line");
  return make_graph(n, std::move(edges));
}

}  // namespace

Graph load_graph(std::istream& in) {
  // Peek at the first meaningful character to pick the format.
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::istringstream replay(text);
  if (i < text.size() && (text[i] == 'c' || text[i] == 'p' || text[i] == 'e'))
    return load_dimacs(replay);
  return load_edge_list(replay);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return load_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
  out << g.n << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  write_graph(g, out);
}

Graph complete_multipartite(int parts, int part_size) {
  if (parts < 2 || part_size < 1)
    throw PreconditionError("complete_multipartite requires parts >= 2, part_size >= 1");
  int n = parts * part_size;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (parts - 1) * part_size / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (u / part_size != v / part_size) edges.emplace_back(u, v);
  return make_graph(n, std::move(edges));
}

Graph blow_up(const Graph& g, int t) {
  if (t < 1) throw PreconditionError("blow_up requires t >= 1");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(g.edges.size()) * t * t);
  for (const auto& [u, v] : g.edges)
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) edges.emplace_back(u * t + i, v * t + j);
  return make_graph(g.n * t, std::move(edges));
}

Graph disjoint_union(const std::vector<Graph>& parts) {
  if (parts.empty()) throw PreconditionError("disjoint_union of zero graphs");
  int d = parts[0].degree;
  int offset = 0;
  std::vector<std::pair<int, int>> edges;
  for (const auto& g : parts) {
    if (g.degree != d)
      throw GraphInvariantError("disjoint_union degree mismatch: " + std::to_string(d) +
                                " vs " + std::to_string(g.degree));
    for (const auto& [u, v] : g.edges) edges.emplace_back(u + offset, v + offset);
    offset += g.n;
  }
  return make_graph(offset, std::move(edges));
}

Graph perturb_almost_colorable(const Graph& g, double delta, std::uint64_t seed) {
  if (delta < 0.0 || delta > 1.0) throw PreconditionError("delta must lie in [0,1]");
  int k = static_cast<int>(std::ceil(delta * g.n - 1e-12));
  if (k <= 0) return g;
  if (k < 2) return g;  // a single rewired vertex admits no real swap

  Rng rng(seed);
  auto canonical = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  // Some subsets admit no legal swap (e.g. both vertices inside one part of
  // a complete multipartite graph), so resample the subset a few times
  // before giving up.
  for (int subset_attempt = 0; subset_attempt < 20; ++subset_attempt) {
    std::vector<int> verts(g.n);
    for (int v = 0; v < g.n; ++v) verts[v] = v;
    rng.shuffle(verts);
    std::vector<bool> in_s(g.n, false);
    for (int i = 0; i < k; ++i) in_s[verts[i]] = true;

    std::set<std::pair<int, int>> edge_set(g.edges.begin(), g.edges.end());
    std::vector<std::pair<int, int>> incident;  // (s-vertex, other endpoint)
    auto rebuild_incident = [&] {
      incident.clear();
      for (const auto& [u, v] : edge_set) {
        if (in_s[u]) incident.emplace_back(u, v);
        if (in_s[v]) incident.emplace_back(v, u);
      }
    };
    rebuild_incident();

    // Swap (a,b),(c,d) -> (a,d),(c,b) with a,c in S, so every new edge
    // touches S and the induced subgraph on V\S only loses edges.
    long swaps_wanted = static_cast<long>(k) * g.degree;
    long done = 0;
    int stale = 0;
    while (done < swaps_wanted && !incident.empty()) {
      auto [a, b] = incident[rng.next_below(incident.size())];
      auto [c, d] = incident[rng.next_below(incident.size())];
      if (a == c || a == d || b == c || b == d ||
          edge_set.count(canonical(a, d)) || edge_set.count(canonical(c, b))) {
        if (++stale > 500) break;
        continue;
      }
      stale = 0;
      edge_set.erase(canonical(a, b));
      edge_set.erase(canonical(c, d));
      edge_set.insert(canonical(a, d));
      edge_set.insert(canonical(c, b));
      rebuild_incident();
      ++done;
    }
    if (done > 0) return make_graph(g.n, {edge_set.begin(), edge_set.end()});
  }
  throw GraphInvariantError("perturb_almost_colorable: no degree-preserving swap found");
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (n * d) % 2 != 0)
    throw PreconditionError("random_regular requires 0 <= d < n with n*d even");
  Rng rng(seed);
  auto canonical = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  for (int attempt = 0; attempt < 50; ++attempt) {
    // configuration model, then repair self-loops and duplicates by swaps
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> count;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      edges.emplace_back(stubs[i], stubs[i + 1]);
      if (stubs[i] != stubs[i + 1]) ++count[canonical(stubs[i], stubs[i + 1])];
    }
    auto is_bad = [&](const std::pair<int, int>& e) {
      return e.first == e.second || count[canonical(e.first, e.second)] > 1;
    };

    bool ok = false;
    for (int pass = 0; pass < 400; ++pass) {
      std::vector<std::size_t> bads;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (is_bad(edges[i])) bads.push_back(i);
      if (bads.empty()) { ok = true; break; }
      for (std::size_t i : bads) {
        if (!is_bad(edges[i])) continue;
        for (int t = 0; t < 50; ++t) {
          std::size_t j = rng.next_below(edges.size());
          if (j == i) continue;
          auto [u, v] = edges[i];
          auto [x, y] = edges[j];
          if (rng.next_u64() & 1) std::swap(x, y);
          if (u == x || v == y) continue;
          auto e1 = canonical(u, x), e2 = canonical(v, y);
          if (count[e1] > 0 || count[e2] > 0 || e1 == e2) continue;
          if (edges[i].first != edges[i].second) --count[canonical(edges[i].first, edges[i].second)];
          if (edges[j].first != edges[j].second) --count[canonical(edges[j].first, edges[j].second)];
          edges[i] = {u, x};
          edges[j] = {v, y};
          ++count[e1];
          ++count[e2];
          break;
        }
      }
    }
    if (ok) {
      std::vector<std::pair<int, int>> simple;
      simple.reserve(edges.size());
      for (auto [u, v] : edges) simple.push_back(canonical(u, v));
      return make_graph(n, std::move(simple));
    }
  }
  throw SolverError("random_regular: failed to sample a simple graph");
}

int PartialColoring::colored_count() const {
  int c = 0;
  for (int a : assignment)
    if (a != 0) ++c;
  return c;
}

ColoringVerdict verify_partial_coloring(const Graph& g, const PartialColoring& c) {
  if (static_cast<int>(c.assignment.size()) != g.n)
    throw PreconditionError("coloring has " + std::to_string(c.assignment.size()) +
                            " entries for a graph on " + std::to_string(g.n) + " vertices");
  ColoringVerdict v;
  v.colored_count = c.colored_count();
  for (const auto& [a, b] : g.edges)
    if (c.assignment[a] != 0 && c.assignment[a] == c.assignment[b]) v.violations.emplace_back(a, b);
  v.valid = v.violations.empty();
  return v;
}

namespace {

void enumerate_colorings_rec(const Graph& g, int colors, int budget_left, int v,
                             std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (v == g.n) {
    out.push_back(cur);
    return;
  }
  for (int c = 0; c <= colors; ++c) {
    if (c == 0) {
      if (budget_left == 0) continue;
    } else {
      bool clash = false;
      for (int w : g.adjacency[v])
        if (w < v && cur[w] == c) { clash = true; break; }
      if (clash) continue;
    }
    cur[v] = c;
    enumerate_colorings_rec(g, colors, budget_left - (c == 0 ? 1 : 0), v + 1, cur, out);
  }
  cur[v] = 0;
}

}  // namespace

std::vector<std::vector<int>> enumerate_proper_colorings(const Graph& g, int colors,
                                                         int uncolored_budget, int cap) {
  if (g.n > cap)
    throw CapExceededError("enumerate_proper_colorings: n=" + std::to_string(g.n) +
                           " exceeds cap " + std::to_string(cap));
  if (colors < 1 || uncolored_budget < 0)
    throw PreconditionError("enumerate_proper_colorings: colors >= 1, budget >= 0 required");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(g.n, 0);
  enumerate_colorings_rec(g, colors, uncolored_budget, 0, cur, out);
  // Recursion explores symbols in increasing order, so out is already sorted.
  return out;
}

namespace {

void max_is_rec(const Graph& g, const std::vector<int>& order, std::size_t idx,
                std::vector<bool>& blocked, std::vector<int>& cur, std::vector<int>& best) {
  if (cur.size() + (order.size() - idx) <= best.size()) return;  // bound
  if (idx == order.size()) {
    if (cur.size() > best.size()) best = cur;
    return;
  }
  int v = order[idx];
  if (!blocked[v]) {
    std::vector<int> newly;
    for (int w : g.adjacency[v])
      if (!blocked[w]) { blocked[w] = true; newly.push_back(w); }
    cur.push_back(v);
    max_is_rec(g, order, idx + 1, blocked, cur, best);
    cur.pop_back();
    for (int w : newly) blocked[w] = false;
  }
  max_is_rec(g, order, idx + 1, blocked, cur, best);
}

}  // namespace

std::vector<int> max_independent_set_bruteforce(const Graph& g, int cap) {
  if (g.n > cap)
    throw CapExceededError("max_independent_set_bruteforce: n=" + std::to_string(g.n) +
                           " exceeds cap " + std::to_string(cap));
  std::vector<int> order(g.n);
  for (int v = 0; v < g.n; ++v) order[v] = v;
  // Degree-descending order tightens the bound early; ties by index keep the
  // result deterministic (all degrees are equal here, but load_graph accepts
  // any regular graph and subclasses of this routine may not).
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.adjacency[a].size() > g.adjacency[b].size();
  });
  std::vector<bool> blocked(g.n, false);
  std::vector<int> cur, best;
  max_is_rec(g, order, 0, blocked, cur, best);
  std::sort(best.begin(), best.end());
  return best;
}

namespace {

void enum_is_rec(const Graph& g, int min_size, int v, int taken, std::vector<bool>& blocked,
                 std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  int remaining = g.n - v;
  if (taken + remaining < min_size) return;
  if (v == g.n) {
    out.push_back(cur);
    return;
  }
  // exclude v (symbol 0 first keeps lexicographic order)
  cur[v] = 0;
  enum_is_rec(g, min_size, v + 1, taken, blocked, cur, out);
  if (!blocked[v]) {
    std::vector<int> newly;
    for (int w : g.adjacency[v])
      if (w > v && !blocked[w]) { blocked[w] = true; newly.push_back(w); }
    cur[v] = 1;
    enum_is_rec(g, min_size, v + 1, taken + 1, blocked, cur, out);
    cur[v] = 0;
    for (int w : newly) blocked[w] = false;
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_independent_sets(const Graph& g, int min_size, int cap) {
  if (g.n > cap)
    throw CapExceededError("enumerate_independent_sets: n=" + std::to_string(g.n) +
                           " exceeds cap " + std::to_string(cap));
  std::vector<std::vector<int>> out;
  std::vector<bool> blocked(g.n, false);
  std::vector<int> cur(g.n, 0);
  enum_is_rec(g, min_size, 0, 0, blocked, cur, out);
  return out;
}

std::int64_t edges_within(const Graph& g, const std::vector<int>& s) {
  std::vector<bool> in(g.n, false);
  for (int v : s) {
    if (v < 0 || v >= g.n) throw PreconditionError("edges_within: vertex out of range");
    in[v] = true;
  }
  std::int64_t count = 0;
  for (const auto& [u, v] : g.edges)
    if (in[u] && in[v]) ++count;
  return count;
}

std::int64_t edges_between(const Graph& g, const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> side(g.n, 0);
  for (int v : s) {
    if (v < 0 || v >= g.n) throw PreconditionError("edges_between: vertex out of range");
    side[v] = 1;
  }
  for (int v : t) {
    if (v < 0 || v >= g.n) throw PreconditionError("edges_between: vertex out of range");
    if (side[v] == 1) throw PreconditionError("edges_between: sets overlap at vertex " + std::to_string(v));
    side[v] = 2;
  }
  std::int64_t count = 0;
  for (const auto& [u, v] : g.edges)
    if (side[u] * side[v] == 2) ++count;
  return count;
}

}  // namespace tcol

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tcol {

// Simple undirected regular graph. Vertices are 0-indexed; edges are stored
// canonically as (min,max) and kept sorted so serialization is deterministic.
struct Graph {
  int n = 0;
  int degree = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor lists

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_edge(int u, int v) const;
};

// Validates (no self-loops, no duplicates, regularity) and builds adjacency.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Reads either the plain edge-list format ("n m" header, then "u v" lines)
// or DIMACS .col ("p edge n m" / "e u v", 1-indexed).
Graph load_graph(std::istream& in);
Graph load_graph_file(const std::string& path);

// Emits the edge-list format: "n m\n" then sorted "u v\n" lines.
void write_graph(const Graph& g, std::ostream& out);
void write_graph_file(const Graph& g, const std::string& path);

// Complete k-partite graph with parts of size m; vertex v lies in part v/m.
// Regular with degree (k-1)m and chromatic number k.
Graph complete_multipartite(int parts, int part_size);

// Replaces each vertex by t copies and each edge by a complete bipartite
// t-by-t bundle. Preserves regularity (d'=td) and the chromatic number; the
// random-walk spectrum gains (t-1)n extra zeros.
Graph blow_up(const Graph& g, int t);

// All components must share the same degree.
Graph disjoint_union(const std::vector<Graph>& parts);

// Rewires the edges incident to a random ceil(delta*n)-subset S by
// degree-preserving double-edge swaps whose new edges always touch S. The
// original proper 3-coloring restricted to V\S therefore stays proper, so
// the output is delta-almost 3-colorable by construction.
Graph perturb_almost_colorable(const Graph& g, double delta, std::uint64_t seed);

// Configuration-model sampler, resampled until simple. Used by the
// randomized property suites.
Graph random_regular(int n, int d, std::uint64_t seed);

// Assignment per vertex: 0 = unassigned, colors are 1..3.
struct PartialColoring {
  std::vector<int> assignment;

  int colored_count() const;
};

struct ColoringVerdict {
  bool valid = false;
  int colored_count = 0;
  std::vector<std::pair<int, int>> violations;  // monochromatic edges
};

ColoringVerdict verify_partial_coloring(const Graph& g, const PartialColoring& c);

// All assignments over {0,..,q} (0 = unassigned) with at most
// `uncolored_budget` unassigned vertices and no monochromatic edge between
// assigned endpoints. Backtracking with forward pruning; output sorted
// lexicographically. Throws CapExceededError when n > cap.
std::vector<std::vector<int>> enumerate_proper_colorings(const Graph& g, int colors,
                                                         int uncolored_budget, int cap = 20);

// Maximum independent set by branch and bound on degree-ordered vertices.
std::vector<int> max_independent_set_bruteforce(const Graph& g, int cap = 30);

// All 0/1 indicator vectors of independent sets with at least min_size
// vertices, sorted lexicographically.
std::vector<std::vector<int>> enumerate_independent_sets(const Graph& g, int min_size,
                                                         int cap = 20);

std::int64_t edges_within(const Graph& g, const std::vector<int>& s);
// s and t must be disjoint.
std::int64_t edges_between(const Graph& g, const std::vector<int>& s, const std::vector<int>& t);

}  // namespace tcol

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace spinlab {

// Finite simple undirected connected graph, vertices labeled 1..n. Immutable
// after construction; the constructor validates simplicity and connectivity.
class Graph {
 public:
  // Edges may be in any order and orientation. Throws SelfLoop,
  // DuplicateEdge, Disconnected or InvalidParameter.
  Graph(int n, std::vector<std::pair<int, int>> edge_pairs, std::string spec);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  int degree(int v) const { return static_cast<int>(adjacency_[check(v) - 1].size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_[check(v) - 1]; }
  // Normalized edge list: each pair (i, j) with i < j, lexicographically sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Human-readable origin of the graph ("star:11", "file:g.txt", ...), used
  // in reports. Not part of equality.
  const std::string& spec() const { return spec_; }

 private:
  int check(int v) const {
    if (v < 1 || v > n_) raise(ErrorCode::InvalidParameter, "vertex id out of range: " + std::to_string(v));
    return v;
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::string spec_;
};

// Builds a graph from raw (i, j) pairs. Labels must be positive; they are
// compacted in sorted order to 1..n, so input [(5,9)] becomes K2. Requires at
// least one edge.
Graph from_edge_list(const std::vector<std::pair<int, int>>& pairs);

// Named families. Labelings are fixed so that formulas referring to specific
// vertices are reproducible:
//   star(n0):               center 1, leaves 2..n0+1
//   path(n):                1-2-...-n
//   cycle(n):               1-2-...-n-1, n >= 3
//   complete(n):            all pairs
//   perfect_binary_tree(k): 2^k-1 vertices, root 1, children of i are 2i, 2i+1
//   parallel_paths(l, d):   endpoints 1 and l*d+2 joined by d disjoint paths,
//                           each with l internal vertices; path p uses
//                           1+(p-1)*l+1 .. 1+p*l in order
//   torus(side, dim):       side^dim vertices on the periodic grid, vertex
//                           label 1 + sum coords[i]*side^i; for side=2 the
//                           wraparound pair collapses to a single edge
Graph star_graph(int n0);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph perfect_binary_tree(int depth);
Graph parallel_paths(int l, int d);
Graph torus_graph(int side, int dim);

// Generator strings as accepted by the CLI: "star:11", "path:5", "cycle:6",
// "complete:4", "tree:4", "paths:3x3", "torus:4x2d". Anything else is read
// as an edge-list file path ("file:" prefix forces that).
Graph parse_graph_spec(const std::string& spec);

// Edge-list text format: one "i j" pair per line, 1-based labels, '#' starts
// a comment, blank lines ignored.
Graph load_edge_list(const std::string& path);
Graph read_edge_list(std::istream& in, const std::string& spec);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

// (L f)(s) = sum over edges {s,l} of f(s) - f(l).
std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& f);

// Dense L = diag(degrees) - adjacency, indexed by vertex-1.
Eigen::MatrixXd laplacian_matrix(const Graph& g);

}  // namespace spinlab

#include "graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace spinlab {

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_pairs, std::string spec)
    : n_(n), spec_(std::move(spec)) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "graph needs at least one vertex");

  for (auto& [a, b] : edge_pairs) {
    if (a < 1 || a > n || b < 1 || b > n)
      raise(ErrorCode::InvalidParameter,
            "edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range 1.." + std::to_string(n));
    if (a == b) raise(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edge_pairs.begin(), edge_pairs.end());
  for (std::size_t e = 1; e < edge_pairs.size(); ++e) {
    if (edge_pairs[e] == edge_pairs[e - 1])
      raise(ErrorCode::DuplicateEdge, "duplicate edge (" + std::to_string(edge_pairs[e].first) + "," +
                                          std::to_string(edge_pairs[e].second) + ")");
  }
  edges_ = std::move(edge_pairs);

  adjacency_.assign(n_, {});
  for (auto [a, b] : edges_) {
    adjacency_[a - 1].push_back(b);
    adjacency_[b - 1].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  // Connectivity by BFS from vertex 1.
  std::vector<char> seen(n_, 0);
  std::vector<int> queue = {1};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int w : adjacency_[queue[head] - 1]) {
      if (!seen[w - 1]) {
        seen[w - 1] = 1;
        queue.push_back(w);
      }
    }
  }
  if (static_cast<int>(queue.size()) != n_)
    raise(ErrorCode::Disconnected, "graph is disconnected (" + std::to_string(queue.size()) + " of " +
                                       std::to_string(n_) + " vertices reachable from 1)");
}

Graph from_edge_list(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) raise(ErrorCode::InvalidParameter, "edge list is empty");
  std::set<int> labels;
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1) raise(ErrorCode::InvalidParameter, "vertex labels must be positive");
    labels.insert(a);
    labels.insert(b);
  }
  std::map<int, int> compact;
  int next = 1;
  for (int lab : labels) compact[lab] = next++;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.emplace_back(compact[a], compact[b]);
  return Graph(static_cast<int>(labels.size()), std::move(edges), "edges:" + std::to_string(pairs.size()));
}

Graph star_graph(int n0) {
  if (n0 < 1) raise(ErrorCode::InvalidParameter, "star needs at least one leaf");
  std::vector<std::pair<int, int>> edges;
  for (int leaf = 2; leaf <= n0 + 1; ++leaf) edges.emplace_back(1, leaf);
  return Graph(n0 + 1, std::move(edges), "star:" + std::to_string(n0));
}

Graph path_graph(int n) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "path needs at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges), "path:" + std::to_string(n));
}

Graph cycle_graph(int n) {
  if (n < 3) raise(ErrorCode::InvalidParameter, "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(n, 1);
  return Graph(n, std::move(edges), "cycle:" + std::to_string(n));
}

Graph complete_graph(int n) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "complete graph needs at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) edges.emplace_back(a, b);
  return Graph(n, std::move(edges), "complete:" + std::to_string(n));
}

Graph perfect_binary_tree(int depth) {
  if (depth < 1) raise(ErrorCode::InvalidParameter, "tree depth must be >= 1");
  if (depth > 20) raise(ErrorCode::InvalidParameter, "tree depth > 20 not supported");
  const int n = (1 << depth) - 1;
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v <= n; ++v) edges.emplace_back(v / 2, v);
  return Graph(n, std::move(edges), "tree:" + std::to_string(depth));
}

Graph parallel_paths(int l, int d) {
  if (l < 1 || d < 1) raise(ErrorCode::InvalidParameter, "parallel paths need l >= 1 and d >= 1");
  const int n = l * d + 2;
  std::vector<std::pair<int, int>> edges;
  for (int p = 0; p < d; ++p) {
    int prev = 1;
    for (int i = 1; i <= l; ++i) {
      const int v = 1 + p * l + i;
      edges.emplace_back(prev, v);
      prev = v;
    }
    edges.emplace_back(prev, n);
  }
  return Graph(n, std::move(edges), "paths:" + std::to_string(l) + "x" + std::to_string(d));
}

Graph torus_graph(int side, int dim) {
  if (side < 2) raise(ErrorCode::InvalidParameter, "torus side must be >= 2");
  if (dim < 1) raise(ErrorCode::InvalidParameter, "torus dimension must be >= 1");
  long long count = 1;
  for (int k = 0; k < dim; ++k) {
    count *= side;
    if (count > (1 << 20)) raise(ErrorCode::InvalidParameter, "torus too large");
  }
  const int n = static_cast<int>(count);

  std::vector<int> stride(dim);
  stride[0] = 1;
  for (int k = 1; k < dim; ++k) stride[k] = stride[k - 1] * side;

  std::set<std::pair<int, int>> edge_set;  // set: side=2 wraparound duplicates collapse
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < dim; ++k) {
      const int coord = (v / stride[k]) % side;
      const int up = v + ((coord + 1) % side - coord) * stride[k];
      edge_set.emplace(std::min(v, up) + 1, std::max(v, up) + 1);
    }
  }
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  return Graph(n, std::move(edges), "torus:" + std::to_string(side) + "x" + std::to_string(dim) + "d");
}

namespace {

int parse_positive_int(const std::string& text, const std::string& what) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || value < 1)
    raise(ErrorCode::ParseError, "cannot parse " + what + " from '" + text + "'");
  return value;
}

}  // namespace

Graph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (head == "file") return load_edge_list(rest);
    if (head == "star") return star_graph(parse_positive_int(rest, "star size"));
    if (head == "path") return path_graph(parse_positive_int(rest, "path length"));
    if (head == "cycle") return cycle_graph(parse_positive_int(rest, "cycle length"));
    if (head == "complete") return complete_graph(parse_positive_int(rest, "complete-graph size"));
    if (head == "tree") return perfect_binary_tree(parse_positive_int(rest, "tree depth"));
    if (head == "paths") {
      const auto x = rest.find('x');
      if (x == std::string::npos) raise(ErrorCode::ParseError, "expected paths:<l>x<d>, got '" + spec + "'");
      return parallel_paths(parse_positive_int(rest.substr(0, x), "path length l"),
                            parse_positive_int(rest.substr(x + 1), "path count d"));
    }
    if (head == "torus") {
      const auto x = rest.find('x');
      if (x == std::string::npos || rest.empty() || rest.back() != 'd')
        raise(ErrorCode::ParseError, "expected torus:<side>x<dim>d, got '" + spec + "'");
      return torus_graph(parse_positive_int(rest.substr(0, x), "torus side"),
                         parse_positive_int(rest.substr(x + 1, rest.size() - x - 2), "torus dimension"));
    }
    raise(ErrorCode::ParseError, "unknown generator '" + head + "' in '" + spec + "'");
  }
  return load_edge_list(spec);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open edge-list file '" + path + "'");
  return read_edge_list(in, "file:" + path);
}

Graph read_edge_list(std::istream& in, const std::string& spec) {
  std::vector<std::pair<int, int>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    long long a, b;
    if (!(row >> a)) continue;  // blank or comment-only line
    std::string trailing;
    if (!(row >> b) || (row >> trailing))
      raise(ErrorCode::ParseError, "edge list line " + std::to_string(lineno) + ": expected 'i j'");
    if (a < 1 || b < 1 || a > 1'000'000'000 || b > 1'000'000'000)
      raise(ErrorCode::ParseError, "edge list line " + std::to_string(lineno) + ": labels must be positive");
    pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (pairs.empty()) raise(ErrorCode::InvalidParameter, "edge list is empty");
  Graph g = from_edge_list(pairs);
  return Graph(g.n(), g.edges(), spec);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# " << g.spec() << " n=" << g.n() << " m=" << g.m() << "\n";
  for (auto [a, b] : g.edges()) out << a << " " << b << "\n";
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_edge_list(g, out);
  out.flush();
  if (!out) raise(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& f) {
  if (static_cast<int>(f.size()) != g.n())
    raise(ErrorCode::DimensionMismatch,
          "vector length " + std::to_string(f.size()) + " != vertex count " + std::to_string(g.n()));
  std::vector<double> out(g.n(), 0.0);
  for (int v = 1; v <= g.n(); ++v) {
    double acc = 0.0;
    for (int w : g.neighbors(v)) acc += f[v - 1] - f[w - 1];
    out[v - 1] = acc;
  }
  return out;
}

Eigen::MatrixXd laplacian_matrix(const Graph& g) {
  const int n = g.n();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : g.edges()) {
    lap(a - 1, a - 1) += 1.0;
    lap(b - 1, b - 1) += 1.0;
    lap(a - 1, b - 1) -= 1.0;
    lap(b - 1, a - 1) -= 1.0;
  }
  return lap;
}

}  // namespace spinlab

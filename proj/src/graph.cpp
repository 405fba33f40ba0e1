#include "treembed/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include "treembed/errors.hpp"
#include "treembed/rng.hpp"

namespace treembed {

Graph Graph::from_edges(int32_t n, std::vector<Edge> raw) {
  if (n < 1) throw ArgError("graph needs at least one vertex");
  for (auto& e : raw) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw ArgError("edge endpoint out of range");
    if (e.u == e.v) throw ArgError("self-loop not allowed");
    if (e.w < 1) throw ArgError("edge weight must be >= 1");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(raw.begin(), raw.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  });
  Graph g;
  g.n = n;
  for (const auto& e : raw) {
    if (!g.edges.empty() && g.edges.back().u == e.u && g.edges.back().v == e.v)
      continue;  // duplicate: sorted by weight, keep the minimum
    g.edges.push_back(e);
  }
  g.adj.assign(n, {});
  for (const auto& e : g.edges) {
    g.adj[e.u].emplace_back(e.v, e.w);
    g.adj[e.v].emplace_back(e.u, e.w);
  }
  return g;
}

int64_t Graph::max_weight() const {
  int64_t mx = 1;
  for (const auto& e : edges) mx = std::max(mx, e.w);
  return mx;
}

bool Graph::connected() const {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int32_t> stack = {0};
  seen[0] = 1;
  int32_t count = 1;
  while (!stack.empty()) {
    int32_t u = stack.back();
    stack.pop_back();
    for (auto [v, w] : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

namespace {

int64_t parse_int_field(const std::string& tok, size_t line_no,
                        const char* what) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                     " '" + tok + "'");
  return value;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  int64_t n = -1, m = -1;
  std::vector<Graph::Edge> raw;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header 'n m'");
      n = parse_int_field(toks[0], line_no, "vertex count");
      m = parse_int_field(toks[1], line_no, "edge count");
      if (n < 1) throw ParseError("line " + std::to_string(line_no) +
                                  ": vertex count must be >= 1");
      if (m < 0) throw ParseError("line " + std::to_string(line_no) +
                                  ": negative edge count");
      continue;
    }
    if (toks.size() != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'u v w'");
    int64_t u = parse_int_field(toks[0], line_no, "vertex id");
    int64_t v = parse_int_field(toks[1], line_no, "vertex id");
    int64_t w = parse_int_field(toks[2], line_no, "weight");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("line " + std::to_string(line_no) +
                       ": vertex id out of range");
    if (u == v)
      throw ParseError("line " + std::to_string(line_no) + ": self-loop");
    if (w < 1)
      throw ParseError("line " + std::to_string(line_no) + ": weight < 1");
    raw.push_back({static_cast<int32_t>(u), static_cast<int32_t>(v), w});
  }
  if (n < 0) throw ParseError("missing header line");
  if (static_cast<int64_t>(raw.size()) != m)
    throw ParseError("header announced " + std::to_string(m) +
                     " edges, found " + std::to_string(raw.size()));
  return Graph::from_edges(static_cast<int32_t>(n), std::move(raw));
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graph file: " + path);
  out << write_graph(g);
  if (!out) throw IoError("write failed: " + path);
}

ExactDistances dijkstra_exact(const Graph& g, int32_t s) {
  if (s < 0 || s >= g.n) throw ArgError("source out of range");
  ExactDistances res;
  res.source = s;
  res.d.assign(g.n, kInfDist);
  res.d[s] = 0;
  using Item = std::pair<int64_t, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du != res.d[u]) continue;
    for (auto [v, w] : g.adj[u]) {
      if (du + w < res.d[v]) {
        res.d[v] = du + w;
        pq.push({res.d[v], v});
      }
    }
  }
  return res;
}

Permutation random_permutation(int32_t n, uint64_t seed) {
  if (n < 1) throw ArgError("permutation size must be >= 1");
  Rng rng(seed);
  Permutation p;
  p.inv.resize(n);
  for (int32_t i = 0; i < n; ++i) p.inv[i] = i;
  for (int32_t i = n - 1; i > 0; --i) {
    int32_t j = static_cast<int32_t>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(p.inv[i], p.inv[j]);
  }
  p.pi.resize(n);
  for (int32_t r = 0; r < n; ++r) p.pi[p.inv[r]] = r + 1;
  return p;
}

Permutation identity_permutation(int32_t n) {
  if (n < 1) throw ArgError("permutation size must be >= 1");
  Permutation p;
  p.pi.resize(n);
  p.inv.resize(n);
  for (int32_t i = 0; i < n; ++i) {
    p.pi[i] = i + 1;
    p.inv[i] = i;
  }
  return p;
}

}  // namespace treembed

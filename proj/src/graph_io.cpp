#include "exgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace exg {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Graph read_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  Graph g;
  bool have_header = false;
  int m_left = 0;
  bool bipartite = false;

  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (blank(line)) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string kind;
      ls >> kind;
      if (kind == "graph") {
        int n;
        if (!(ls >> n) || n < 0) throw ParseError(lineno, "malformed header: expected 'graph <n>'");
        g = Graph(n);
      } else if (kind == "bigraph") {
        int m, n;
        if (!(ls >> m >> n) || m < 0 || n < 0) throw ParseError(lineno, "malformed header: expected 'bigraph <m> <n>'");
        g = Graph::with_parts(m, n);
        m_left = m;
        bipartite = true;
      } else {
        throw ParseError(lineno, "malformed header: unknown keyword '" + kind + "'");
      }
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "malformed header: trailing tokens");
      have_header = true;
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw ParseError(lineno, "malformed edge line");
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "malformed edge line: trailing tokens");
    if (u == v) throw ParseError(lineno, "self-loop " + std::to_string(u));
    if (u > v) throw ParseError(lineno, "edge endpoints out of order (require u < v)");
    if (u < 0 || v >= g.order()) throw ParseError(lineno, "vertex out of range");
    if (bipartite && ((u < m_left) == (v < m_left)))
      throw ParseError(lineno, "edge within a part of the bigraph");
    if (g.has_edge(u, v)) throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.add_edge(u, v);
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  return g;
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  const auto& parts = g.parts();
  if (parts) {
    out << "bigraph " << parts->left.count() << ' ' << parts->right.count() << '\n';
  } else {
    out << "graph " << g.order() << '\n';
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_graph(ss.str());
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << write_graph(g);
}

}  // namespace exg

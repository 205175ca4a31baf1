#ifndef EXGRAPH_GRAPH_IO_HPP
#define EXGRAPH_GRAPH_IO_HPP

#include <stdexcept>
#include <string>

#include "exgraph/graph.hpp"

namespace exg {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

// Text format:
//   graph <n>        or   bigraph <m> <n>
//   <u> <v>          one edge per line, u < v
// '#' starts a comment; blank lines allowed; LF endings.
// For bigraph, parts are 0..m-1 and m..m+n-1 and every edge must cross.
Graph read_graph(const std::string& text);

// Canonical form: header, then edges sorted lexicographically.
std::string write_graph(const Graph& g);

Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace exg

#endif

#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "firefighter/graph.hpp"
#include "firefighter/layout.hpp"
#include "firefighter/propagation.hpp"
#include "firefighter/reduction.hpp"

namespace firefighter::io {

using nlohmann::json;

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " +
                                           what),
        line_(line) {}
  /// 1-based line of the offending input, 0 when not line-oriented.
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
      ++j;
    }
    if (j > i) {
      out.push_back(line.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

inline std::int64_t to_int(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line, "integer out of range: " + std::string(token));
  }
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "not an integer: " + std::string(token));
  }
  return value;
}

inline Vertex to_vertex(std::string_view token, std::size_t line,
                        std::int64_t bound) {
  auto value = to_int(token, line);
  if (value < 0 || value >= bound) {
    throw ParseError(line, "vertex id " + std::string(token) +
                               " out of range [0, " + std::to_string(bound) +
                               ")");
  }
  return static_cast<Vertex>(value);
}

inline bool skippable(std::string_view line) {
  auto t = tokens(line);
  return t.empty() || t.front().front() == '#';
}

} // namespace detail

/// Edge-list text: `n <count>` then one `u v` pair per line; `#` comments.
inline Graph parse_edge_list(std::string_view text) {
  auto lines = detail::split_lines(text);
  std::int64_t n = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::skippable(lines[i])) {
      continue;
    }
    auto t = detail::tokens(lines[i]);
    if (n < 0) {
      if (t.size() != 2 || t[0] != "n") {
        throw ParseError(lineno, "expected header `n <vertexCount>`");
      }
      n = detail::to_int(t[1], lineno);
      if (n < 0 || n > std::numeric_limits<Vertex>::max()) {
        throw ParseError(lineno, "vertex count out of range");
      }
      continue;
    }
    if (t.size() != 2) {
      throw ParseError(lineno, "expected `u v`");
    }
    Vertex u = detail::to_vertex(t[0], lineno, n);
    Vertex v = detail::to_vertex(t[1], lineno, n);
    if (u == v) {
      throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
    }
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) {
      throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " +
                                   std::to_string(v));
    }
    edges.push_back(e);
  }
  if (n < 0) {
    throw ParseError(0, "missing header `n <vertexCount>`");
  }
  return Graph(static_cast<std::size_t>(n), edges);
}

inline std::string write_edge_list(const Graph &g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
  }
  return out.str();
}

/// One line of n space-separated vertex ids.
inline LinearLayout parse_layout(std::string_view text) {
  auto lines = detail::split_lines(text);
  VertexList order;
  bool found = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::skippable(lines[i])) {
      continue;
    }
    if (found) {
      throw ParseError(i + 1, "layout must be a single line");
    }
    found = true;
    for (auto tok : detail::tokens(lines[i])) {
      order.push_back(detail::to_vertex(
          tok, i + 1, std::numeric_limits<Vertex>::max()));
    }
  }
  try {
    return LinearLayout(std::move(order));
  } catch (const std::invalid_argument &e) {
    throw ParseError(0, e.what());
  }
}

inline std::string write_layout(const LinearLayout &layout) {
  std::ostringstream out;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    out << (i ? " " : "") << layout.at(i);
  }
  out << '\n';
  return out.str();
}

/// One bag per line, space-separated ids. Empty lines are empty bags only
/// when they sit between other bags; leading/trailing blanks are dropped.
inline PathDecomposition parse_decomposition(std::string_view text) {
  auto lines = detail::split_lines(text);
  while (!lines.empty() && detail::tokens(lines.back()).empty()) {
    lines.pop_back();
  }
  PathDecomposition pd;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto t = detail::tokens(lines[i]);
    if (!t.empty() && t.front().front() == '#') {
      continue;
    }
    if (t.empty() && pd.bags.empty()) {
      continue;
    }
    VertexList bag;
    for (auto tok : t) {
      bag.push_back(detail::to_vertex(tok, i + 1,
                                      std::numeric_limits<Vertex>::max()));
    }
    pd.bags.push_back(std::move(bag));
  }
  return pd;
}

inline std::string write_decomposition(const PathDecomposition &pd) {
  std::ostringstream out;
  for (const auto &bag : pd.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      out << (i ? " " : "") << bag[i];
    }
    out << '\n';
  }
  return out.str();
}

/// DIMACS CNF restricted to positive literals. Variables come back 0-based.
inline CubicMonotoneFormula parse_dimacs_cnf(std::string_view text) {
  auto lines = detail::split_lines(text);
  CubicMonotoneFormula f;
  std::int64_t declared_clauses = -1;
  std::vector<int> current;
  std::size_t current_line = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto t = detail::tokens(lines[i]);
    if (t.empty() || t.front() == "c" || t.front().front() == 'c') {
      continue;
    }
    if (t.front() == "%") {
      break;
    }
    if (t.front() == "p") {
      if (declared_clauses >= 0) {
        throw ParseError(lineno, "duplicate problem line");
      }
      if (t.size() != 4 || t[1] != "cnf") {
        throw ParseError(lineno, "expected `p cnf <variables> <clauses>`");
      }
      auto vars = detail::to_int(t[2], lineno);
      declared_clauses = detail::to_int(t[3], lineno);
      if (vars < 0 || vars > std::numeric_limits<int>::max() ||
          declared_clauses < 0) {
        throw ParseError(lineno, "bad problem line counts");
      }
      f.variable_count = static_cast<int>(vars);
      continue;
    }
    if (declared_clauses < 0) {
      throw ParseError(lineno, "clause before `p cnf` header");
    }
    for (auto tok : t) {
      auto lit = detail::to_int(tok, lineno);
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (lit < 0) {
        throw ParseError(lineno, "negative literal " + std::string(tok) +
                                     " in a monotone formula");
      }
      if (lit > f.variable_count) {
        throw ParseError(lineno, "literal " + std::string(tok) +
                                     " exceeds declared variable count");
      }
      if (current.empty()) {
        current_line = lineno;
      }
      current.push_back(static_cast<int>(lit - 1));
    }
  }
  if (declared_clauses < 0) {
    throw ParseError(0, "missing `p cnf` header");
  }
  if (!current.empty()) {
    throw ParseError(current_line, "clause not terminated by 0");
  }
  if (static_cast<std::int64_t>(f.clauses.size()) != declared_clauses) {
    throw ParseError(0, "header declares " + std::to_string(declared_clauses) +
                            " clauses, found " +
                            std::to_string(f.clauses.size()));
  }
  return f;
}

inline std::string write_dimacs_cnf(const CubicMonotoneFormula &f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto &clause : f.clauses) {
    for (int x : clause) {
      out << x + 1 << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

/// Assignment text: signed DIMACS-style literals (positive = true); unlisted
/// variables are false and a trailing 0 or a leading `v` is accepted.
inline Assignment parse_assignment(std::string_view text, int variable_count) {
  Assignment tau(static_cast<std::size_t>(variable_count), false);
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (auto tok : detail::tokens(lines[i])) {
      if (tok == "v" || tok.front() == 'c') {
        continue;
      }
      auto lit = detail::to_int(tok, i + 1);
      if (lit == 0) {
        continue;
      }
      auto var = lit < 0 ? -lit : lit;
      if (var > variable_count) {
        throw ParseError(i + 1, "variable " + std::to_string(var) +
                                    " out of range");
      }
      tau[static_cast<std::size_t>(var - 1)] = lit > 0;
    }
  }
  return tau;
}

inline json strategy_to_json(const Strategy &s) {
  return json{{"steps", s.steps}};
}

inline Strategy strategy_from_json(const json &j) {
  try {
    if (!j.is_object() || !j.contains("steps")) {
      throw ParseError(0, "strategy JSON needs a \"steps\" array");
    }
    Strategy s;
    for (const auto &step : j.at("steps")) {
      VertexList ids;
      for (const auto &id : step) {
        if (!id.is_number_integer() || id.get<std::int64_t>() < 0 ||
            id.get<std::int64_t>() > std::numeric_limits<Vertex>::max()) {
          throw ParseError(0, "strategy vertex ids must be non-negative "
                              "integers");
        }
        ids.push_back(id.get<Vertex>());
      }
      s.steps.push_back(std::move(ids));
    }
    return s;
  } catch (const json::exception &e) {
    throw ParseError(0, std::string("bad strategy JSON: ") + e.what());
  }
}

inline Strategy parse_strategy(std::string_view text) {
  try {
    return strategy_from_json(json::parse(text));
  } catch (const json::parse_error &e) {
    throw ParseError(0, std::string("bad strategy JSON: ") + e.what());
  }
}

inline json trace_to_json(const Trace &t) {
  json steps = json::array();
  for (const auto &s : t.per_step) {
    steps.push_back({{"protected", s.protected_now},
                     {"newlyBurned", s.newly_burned}});
  }
  return json{{"burned", t.burned},
              {"protected", t.protected_vertices},
              {"saved", t.saved},
              {"stepCount", t.step_count},
              {"perStep", steps}};
}

inline Trace trace_from_json(const json &j) {
  try {
    Trace t;
    t.burned = j.at("burned").get<VertexList>();
    t.protected_vertices = j.at("protected").get<VertexList>();
    t.saved = j.at("saved").get<VertexList>();
    t.step_count = j.at("stepCount").get<int>();
    for (const auto &s : j.at("perStep")) {
      t.per_step.push_back({s.at("protected").get<VertexList>(),
                            s.at("newlyBurned").get<VertexList>()});
    }
    return t;
  } catch (const json::exception &e) {
    throw ParseError(0, std::string("bad trace JSON: ") + e.what());
  }
}

/// Labels for a reduction tree. clauseMap indices are 1-based, matching the
/// DIMACS input.
inline json labels_to_json(const ReductionTree &tree) {
  json roles = json::object();
  for (std::size_t v = 0; v < tree.roles.size(); ++v) {
    roles[std::to_string(v)] = role_name(tree.roles[v]);
  }
  json clause_map = json::object();
  for (const auto &lit : tree.literals) {
    clause_map[std::to_string(lit.literal)] = {
        {"variable", lit.variable + 1},
        {"clause", lit.clause + 1},
        {"negated", lit.negated}};
  }
  return json{{"source", tree.source},
              {"k", tree.k},
              {"budget", tree.budget},
              {"roles", roles},
              {"clauseMap", clause_map}};
}

} // namespace firefighter::io

#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "incsssp/workloads.hpp"

namespace incsssp {

/// Stream text format, one item per line ('#' starts a comment):
///
///   n=<int> W=<int> budget=<int> [eps=<p>/<q>]   header, first non-blank line
///   e <u> <v> <w>                                 initial edge (before any event)
///   a <u> <v> <w>                                 insertion
///   q <v>                                         distance query
///   p <v>                                         path query
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::kParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::int64_t parse_int(const Token& t, std::size_t line_no, std::string_view what) {
  std::int64_t value = 0;
  const auto* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, t.column, "expected integer " + std::string(what) + ", got '" + std::string(t.text) + "'");
  }
  return value;
}

}  // namespace detail

inline InsertionStream parse_stream(std::string_view text) {
  using detail::Token;
  InsertionStream s;
  bool have_header = false;
  std::unordered_set<std::uint64_t> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<Token> tok = detail::tokenize(line);
    if (tok.empty()) continue;

    if (!have_header) {
      bool seen_n = false, seen_w = false, seen_b = false;
      for (const Token& t : tok) {
        const auto eq = t.text.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, t.column, "expected key=value in header");
        const std::string_view key = t.text.substr(0, eq);
        const Token value{t.text.substr(eq + 1), t.column + eq + 1};
        if (key == "n") {
          const auto n = detail::parse_int(value, line_no, "n");
          if (n < 1) throw ParseError(line_no, value.column, "n must be >= 1");
          s.n = static_cast<std::size_t>(n);
          seen_n = true;
        } else if (key == "W") {
          s.max_weight = detail::parse_int(value, line_no, "W");
          if (s.max_weight < 1) throw ParseError(line_no, value.column, "W must be >= 1");
          seen_w = true;
        } else if (key == "budget") {
          const auto b = detail::parse_int(value, line_no, "budget");
          if (b < 0) throw ParseError(line_no, value.column, "budget must be >= 0");
          s.budget = static_cast<std::size_t>(b);
          seen_b = true;
        } else if (key == "eps") {
          const auto slash = value.text.find('/');
          if (slash == std::string_view::npos) throw ParseError(line_no, value.column, "eps must be <p>/<q>");
          const auto p = detail::parse_int({value.text.substr(0, slash), value.column}, line_no, "eps numerator");
          const auto q = detail::parse_int({value.text.substr(slash + 1), value.column + slash + 1}, line_no, "eps denominator");
          if (p <= 0 || q <= 0) throw ParseError(line_no, value.column, "eps terms must be positive");
          s.eps = Rational(p, q);
        } else {
          throw ParseError(line_no, t.column, "unknown header key '" + std::string(key) + "'");
        }
      }
      if (!seen_n || !seen_w || !seen_b) throw ParseError(line_no, 1, "header needs n=, W= and budget=");
      have_header = true;
      continue;
    }

    auto vertex = [&](const Token& t) {
      const auto v = detail::parse_int(t, line_no, "vertex");
      if (v < 0 || static_cast<std::size_t>(v) >= s.n) throw ParseError(line_no, t.column, "vertex out of range");
      return static_cast<Vertex>(v);
    };
    auto arity = [&](std::size_t want) {
      if (tok.size() != want) {
        throw ParseError(line_no, tok.front().column,
                         "'" + std::string(tok.front().text) + "' takes " + std::to_string(want - 1) + " arguments");
      }
    };

    const std::string_view op = tok.front().text;
    if (op == "a" || op == "e") {
      arity(4);
      const Vertex u = vertex(tok[1]);
      const Vertex v = vertex(tok[2]);
      const Weight w = detail::parse_int(tok[3], line_no, "weight");
      if (w < 1 || w > s.max_weight) throw ParseError(line_no, tok[3].column, "weight outside [1, W]");
      if (!edges.insert((std::uint64_t{u} << 32) | v).second) throw ParseError(line_no, tok[1].column, "duplicate edge");
      if (edges.size() > s.budget) throw ParseError(line_no, tok.front().column, "edge count exceeds budget");
      if (op == "e") {
        if (!s.events.empty()) throw ParseError(line_no, tok.front().column, "initial edges must precede events");
        s.initial_edges.push_back({u, v, w});
      } else {
        s.events.push_back(Event::insert(u, v, w));
      }
    } else if (op == "q" || op == "p") {
      arity(2);
      const Vertex x = vertex(tok[1]);
      s.events.push_back(op == "q" ? Event::query(x) : Event::path(x));
    } else {
      throw ParseError(line_no, tok.front().column, "unknown event '" + std::string(op) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing header");
  return s;
}

/// Canonical text form: header, initial edges, events; single spaces, no comments.
inline std::string serialize(const InsertionStream& s) {
  std::ostringstream out;
  out << "n=" << s.n << " W=" << s.max_weight << " budget=" << s.budget;
  if (s.eps) out << " eps=" << s.eps->numerator() << '/' << s.eps->denominator();
  out << '\n';
  for (const Edge& e : s.initial_edges) out << "e " << e.tail << ' ' << e.head << ' ' << e.weight << '\n';
  for (const Event& ev : s.events) {
    switch (ev.kind) {
      case Event::Kind::kInsert: out << "a " << ev.u << ' ' << ev.v << ' ' << ev.w << '\n'; break;
      case Event::Kind::kQuery: out << "q " << ev.u << '\n'; break;
      case Event::Kind::kPath: out << "p " << ev.u << '\n'; break;
    }
  }
  return out.str();
}

}  // namespace incsssp

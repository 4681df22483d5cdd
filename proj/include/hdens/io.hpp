#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hdens/error.hpp"
#include "hdens/graph.hpp"
#include "hdens/hypergraph.hpp"

namespace hdens::io {

/// Integers, "p/q", "p/2^e", "2^-e", decimals ("0.25") and scientific ("1e-6").
inline mpq_class parse_rational(const std::string& text) {
  auto fail = [&] { return error(errc::parse_error, "not a rational number: '" + text + "'"); };
  if (text.empty()) throw fail();
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto integer = [&](const std::string& s) {
    if (!is_int(s)) throw fail();
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
  };
  auto pow2 = [&](const std::string& e) {
    const long k = integer(e).get_si();
    mpz_class p = 1;
    p <<= static_cast<mp_bitcnt_t>(k < 0 ? -k : k);
    return k < 0 ? mpq_class(1, p) : mpq_class(p);
  };

  if (text.rfind("2^", 0) == 0) return pow2(text.substr(2));
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const mpz_class num = integer(text.substr(0, slash));
    const std::string den_text = text.substr(slash + 1);
    mpq_class den = den_text.rfind("2^", 0) == 0 ? pow2(den_text.substr(2)) : mpq_class(integer(den_text));
    if (den == 0) throw fail();
    mpq_class q = mpq_class(num) / den;
    q.canonicalize();
    return q;
  }
  // decimal / scientific
  std::string mant = text;
  long exp10 = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    exp10 = integer(text.substr(e + 1)).get_si();
  }
  std::string digits = mant;
  if (const auto dot = mant.find('.'); dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+") throw fail();
  }
  mpq_class q(integer(digits));
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0)
    q /= scale;
  else
    q *= scale;
  q.canonicalize();
  return q;
}

/// Integer or "p/q" in lowest terms.
inline std::string format_rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

/// Largest order accepted from a file header.
inline constexpr std::size_t max_file_order = std::size_t{1} << 24;

namespace detail {

struct line_reader {
  std::istream& in;
  std::string source;
  std::size_t number = 0;

  // Next non-blank line with comments stripped, split into tokens.
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++number;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return tokens;
    }
    return std::nullopt;
  }

  error fail(const std::string& what) const {
    return error(errc::parse_error, source + ":" + std::to_string(number) + ": " + what);
  }

  std::size_t count(const std::string& token) const {
    if (token.empty() || token.size() > 18) throw fail("bad number '" + token + "'");
    for (char ch : token)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail("bad number '" + token + "'");
    return std::stoull(token);
  }

  std::size_t header() {
    auto tokens = next();
    if (!tokens || tokens->front() != "n" || tokens->size() != 2) throw fail("expected header 'n <count>'");
    const auto n = count((*tokens)[1]);
    if (n > max_file_order)
      throw error(errc::too_large, source + ":" + std::to_string(number) + ": order " + std::to_string(n) +
                                       " exceeds " + std::to_string(max_file_order));
    return n;
  }

  vertex_id vertex(const std::string& token, std::size_t n) const {
    const auto v = count(token);
    if (v < 1 || v > n) throw fail("vertex " + token + " outside 1.." + std::to_string(n));
    return static_cast<vertex_id>(v);
  }
};

}  // namespace detail

/// "n <count>" header, then "e <v1> <v2> ..." lines; '#' starts a comment.
inline hypergraph read_hypergraph(std::istream& in, const std::string& source = "<input>") {
  detail::line_reader r{in, source};
  const std::size_t n = r.header();
  std::vector<hyperedge> edges;
  while (auto tokens = r.next()) {
    if (tokens->front() != "e") throw r.fail("expected 'e', got '" + tokens->front() + "'");
    hyperedge e;
    for (std::size_t i = 1; i < tokens->size(); ++i) e.push_back(r.vertex((*tokens)[i], n));
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw r.fail("repeated vertex in edge");
    edges.push_back(std::move(e));
  }
  return hypergraph(n, std::move(edges));
}

inline void write_hypergraph(std::ostream& out, const hypergraph& h) {
  out << "n " << h.order() << '\n';
  for (const auto& e : h.edges()) {
    out << 'e';
    for (auto v : e) out << ' ' << v;
    out << '\n';
  }
}

/// "n <count>" header, then "g <u> <v>" lines.
inline graph read_graph(std::istream& in, const std::string& source = "<input>") {
  detail::line_reader r{in, source};
  const std::size_t n = r.header();
  graph g(n);
  while (auto tokens = r.next()) {
    if (tokens->front() != "g" || tokens->size() != 3) throw r.fail("expected 'g <u> <v>'");
    const auto u = r.vertex((*tokens)[1], n), v = r.vertex((*tokens)[2], n);
    if (u == v) throw r.fail("loop at vertex " + std::to_string(u));
    g.add_edge(u, v);
  }
  return g;
}

inline void write_graph(std::ostream& out, const graph& g) {
  out << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << "g " << u << ' ' << v << '\n';
}

template <class Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse_error, "cannot open " + path);
  return reader(in, path);
}

inline hypergraph read_hypergraph_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& p) { return read_hypergraph(in, p); });
}

inline graph read_graph_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& p) { return read_graph(in, p); });
}

}  // namespace hdens::io

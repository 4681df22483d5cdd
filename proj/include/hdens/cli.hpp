#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdens/chains.hpp"
#include "hdens/constructions.hpp"
#include "hdens/count.hpp"
#include "hdens/density.hpp"
#include "hdens/error.hpp"
#include "hdens/graph.hpp"
#include "hdens/hypergraph.hpp"
#include "hdens/io.hpp"

namespace hdens::cli {

using json = nlohmann::ordered_json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_parse = 2;
inline constexpr int exit_precondition = 3;
inline constexpr int exit_cross_check = 4;

inline int exit_code_for(errc code) {
  switch (code) {
    case errc::parse_error: return exit_parse;
    case errc::cross_check_failure: return exit_cross_check;
    default: return exit_precondition;
  }
}

namespace detail {

inline hypergraph load_hypergraph(const std::string& path) {
  if (path == "-") return io::read_hypergraph(std::cin, "<stdin>");
  return io::read_hypergraph_file(path);
}

inline std::vector<vertex_id> parse_id_list(const std::string& text) {
  std::vector<vertex_id> ids;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (!std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        token.size() > 9)
      throw error(errc::parse_error, "bad vertex id '" + token + "'");
    ids.push_back(static_cast<vertex_id>(std::stoul(token)));
  }
  return ids;
}

inline json edges_json(const hypergraph& h) {
  json edges = json::array();
  for (const auto& e : h.edges()) edges.push_back(e);
  return edges;
}

inline json interval_json(const interval_value& iv) { return json::array({iv.lower.str(), iv.upper.str()}); }

inline void oracle_check(const hypergraph& h, bool enabled, json& record) {
  if (!enabled) return;
  if (h.order() > bruteforce_limit) {
    record["oracle"] = "skipped (n > 25)";
    return;
  }
  const auto fast = count_independent(h);
  const auto slow = count_independent_bruteforce(h);
  if (fast != slow)
    throw error(errc::cross_check_failure, "count " + fast.get_str() + " disagrees with brute force " + slow.get_str());
  record["oracle"] = "agree";
}

inline chain build_chain(const std::string& family, const std::string& params, const mpq_class& x) {
  if (family == "hhat") {
    if (params.empty()) return hhat_chain();
    return hhat_vertex_chain(static_cast<std::size_t>(io::parse_rational(params).get_num().get_ui()), false);
  }
  if (family == "path") {
    if (params.empty()) return path_chain(false);
    if (params == "both-ends") return path_chain(true);
    throw error(errc::parse_error, "path params: '' or 'both-ends'");
  }
  if (family == "cliqueunion") {
    if (params.empty() || params == "equal") return scaled_clique_union_chain(1, 1);
    const auto comma = params.find(',');
    if (comma == std::string::npos) throw error(errc::parse_error, "cliqueunion params: 'equal' or 'a,b'");
    const auto a = io::parse_rational(params.substr(0, comma));
    const auto b = io::parse_rational(params.substr(comma + 1));
    if (a.get_den() != 1 || b.get_den() != 1 || a < 0 || b < 0)
      throw error(errc::parse_error, "cliqueunion multipliers must be non-negative integers");
    return scaled_clique_union_chain(a.get_num().get_ui(), b.get_num().get_ui());
  }
  if (family == "jump") {
    if (params.empty()) throw error(errc::parse_error, "jump needs --params r");
    return jumping_chain(io::parse_rational(params));
  }
  if (family == "hofr") {
    if (params.empty()) throw error(errc::parse_error, "hofr needs --params p/q");
    const auto r = io::parse_rational(params);
    return hofr_chain(bits_of_rational(r.get_num(), r.get_den()));
  }
  if (family == "interleave") {
    const mpq_class at = params.empty() ? x : io::parse_rational(params);
    return oscillating_chain(at);
  }
  throw error(errc::parse_error, "unknown family '" + family + "'");
}

inline std::vector<graph> family_members(const std::vector<std::string>& names, std::size_t order) {
  std::vector<graph> family;
  for (const auto& name : names) {
    if (name == "k2") {
      family.push_back(clique_graph(2));
    } else if (name == "triangle") {
      family.push_back(clique_graph(3));
    } else if (name == "cycles") {
      const auto cycles = all_cycles(order);
      family.insert(family.end(), cycles.begin(), cycles.end());
    } else {
      family.push_back(io::read_graph_file(name));
    }
  }
  return family;
}

// Smallest N >= 3 whose enclosure width 2^{-N(3N-1)/2 + 2} is at most `precision`.
inline std::size_t terms_for(const mpq_class& precision) {
  for (std::size_t n = 3;; ++n)
    if (pentagonal_partial(n).enclosure().width().to_rational() <= precision) return n;
}

inline std::size_t product_terms_for(const mpq_class& precision) {
  std::size_t k = 1;
  while (dyadic::pow2_neg(k).to_rational() > precision) ++k;
  return k;
}

}  // namespace detail

/// Parses `args` (without the program name), runs one subcommand, writes a
/// JSON record (or CSV for `chain --csv`) to `out` and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact independence densities of hypergraphs", "hdens"};
  app.require_subcommand(1);

  std::string file;
  bool oracle = false;
  auto* count_cmd = app.add_subcommand("count", "number of independent sets");
  auto* poly_cmd = app.add_subcommand("poly", "independence polynomial coefficients");
  auto* id_cmd = app.add_subcommand("id", "independence density i(H)/2^n");
  for (auto* cmd : {count_cmd, poly_cmd, id_cmd}) {
    cmd->add_option("file", file, "hypergraph file ('-' for stdin)")->required();
    cmd->add_flag("--oracle", oracle, "cross-check against brute force (n <= 25)");
  }

  std::string in_list, out_list, method = "direct";
  auto* rho_cmd = app.add_subcommand("rho", "density of independent sets containing --in and avoiding --out");
  rho_cmd->add_option("file", file, "hypergraph file")->required();
  rho_cmd->add_option("--in", in_list, "comma-separated required vertices");
  rho_cmd->add_option("--out", out_list, "comma-separated forbidden vertices");
  rho_cmd->add_option("--method", method, "direct|recursive|both")
      ->check(CLI::IsMember({"direct", "recursive", "both"}));

  bool exact = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "matching-number bounds on the density");
  bounds_cmd->add_option("file", file, "hypergraph file")->required();
  bounds_cmd->add_flag("--exact", exact, "use a maximum matching instead of a greedy maximal one");

  std::string family, params, x_text = "1";
  std::size_t steps = 10;
  bool classify = false, csv = false;
  auto* chain_cmd = app.add_subcommand("chain", "density sequence of a chain at x");
  chain_cmd->add_option("--family", family, "hhat|path|cliqueunion|jump|hofr|interleave")->required();
  chain_cmd->add_option("--params", params, "family parameters");
  chain_cmd->add_option("--x", x_text, "evaluation point (rational >= 0)");
  chain_cmd->add_option("--steps", steps, "number of chain members")->check(CLI::PositiveNumber);
  chain_cmd->add_flag("--classify", classify, "classify the limit");
  chain_cmd->add_flag("--csv", csv, "emit m,value_num,value_den rows");

  std::string precision_text;
  std::size_t terms = 0;
  auto* pent_cmd = app.add_subcommand("pentagonal", "certified enclosure of prod (1 - 2^-k)");
  auto* precision_opt = pent_cmd->add_option("--precision", precision_text, "target width, e.g. 2^-30 or 1e-6");
  auto* terms_opt = pent_cmd->add_option("--terms", terms, "number of series terms N (>= 3)");
  precision_opt->excludes(terms_opt);

  std::string graph_file, emit_file;
  std::vector<std::string> families;
  auto* ffree_cmd = app.add_subcommand("ffree", "family-free density of a graph via the hypergraph lift");
  ffree_cmd->add_option("--graph", graph_file, "graph file")->required();
  ffree_cmd->add_option("--family", families, "k2|triangle|cycles|<graph files>")->required();
  ffree_cmd->add_option("--emit", emit_file, "write the lifted hypergraph here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_parse;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json record;
  record["command"] = command;
  try {
    if (command == "count" || command == "poly" || command == "id") {
      const auto h = detail::load_hypergraph(file);
      record["file"] = file;
      record["n"] = h.order();
      if (command == "count") {
        record["count"] = count_independent(h).get_str();
      } else if (command == "poly") {
        const auto p = independence_polynomial_of(h);
        record["poly"] = p.str();
        record["independence_number"] = p.degree();
      } else {
        record["id"] = id(h).str();
      }
      detail::oracle_check(h, oracle, record);
    } else if (command == "rho") {
      const auto h = detail::load_hypergraph(file);
      const constraint_pair c(detail::parse_id_list(in_list), detail::parse_id_list(out_list));
      record["file"] = file;
      record["in"] = c.in();
      record["out"] = c.out();
      record["method"] = method;
      std::optional<dyadic> direct, recursive;
      if (method != "recursive") direct = rho(h, c);
      if (method != "direct") recursive = rho_recursive(h, c);
      if (direct) record["direct"] = direct->str();
      if (recursive) record["recursive"] = recursive->str();
      if (direct && recursive && *direct != *recursive)
        throw error(errc::cross_check_failure, "direct " + direct->str() + " != recursive " + recursive->str());
      record["value"] = (direct ? *direct : *recursive).str();
    } else if (command == "bounds") {
      const auto h = detail::load_hypergraph(file);
      const auto b = matching_bounds(h, exact);
      record["file"] = file;
      record["exact"] = exact;
      record["rank"] = b.rank;
      record["matching_size"] = b.matching_size;
      record["bounds"] = json::array({b.lower.str(), b.upper.str()});
    } else if (command == "chain") {
      const mpq_class x = io::parse_rational(x_text);
      if (x < 0) throw error(errc::negative_x, "x must be >= 0, got " + x.get_str());
      const chain c = detail::build_chain(family, params, x);
      const auto seq = make_density_sequence(c, steps, x);
      if (csv) {
        out << "m,value_num,value_den\n";
        for (std::size_t i = 0; i < seq.values.size(); ++i)
          out << i + 1 << ',' << seq.values[i].get_num().get_str() << ',' << seq.values[i].get_den().get_str() << '\n';
        return exit_ok;
      }
      record["chain"] = seq.chain_label;
      record["x"] = io::format_rational(x);
      record["steps"] = steps;
      record["orders"] = seq.orders;
      json values = json::array();
      for (const auto& v : seq.values) values.push_back(io::format_rational(v));
      record["values"] = values;
      if (classify) {
        const auto lc = classify_limit(seq);
        json cls;
        cls["tag"] = to_string(lc.tag);
        if (lc.tag == limit_tag::finite_positive) {
          cls["estimate"] = lc.estimate;
          cls["width"] = lc.width;
        }
        record["class"] = cls;
      }
    } else if (command == "pentagonal") {
      std::size_t n = 0, k = 0;
      if (!terms_opt->empty()) {
        n = terms;
        k = n * (3 * n - 1) / 2 - 1;
      } else {
        const mpq_class precision = precision_text.empty() ? mpq_class(1, 1000000) : io::parse_rational(precision_text);
        if (precision <= 0) throw error(errc::out_of_range, "precision must be > 0");
        record["precision"] = io::format_rational(precision);
        n = detail::terms_for(precision);
        k = detail::product_terms_for(precision);
      }
      const auto pent = pentagonal_partial(n);
      const auto prod = product_enclosure(k);
      const auto pe = pent.enclosure();
      const interval_value both{std::max(pe.lower, prod.lower), std::min(pe.upper, prod.upper)};
      if (both.upper < both.lower) throw error(errc::cross_check_failure, "pentagonal and product enclosures are disjoint");
      record["pentagonal"] = {{"terms", n},
                              {"value", pent.value.str()},
                              {"tail_bound", pent.tail_bound.pow2_str()},
                              {"enclosure", detail::interval_json(pe)}};
      record["product"] = {
          {"terms", k}, {"value", prod.upper.str()}, {"enclosure", detail::interval_json(prod)}};
      record["enclosure"] = detail::interval_json(both);
      record["width"] = both.width().pow2_str();
      bigfloat lo(both.upper.to_rational(), MPFR_RNDU), hi(both.lower.to_rational(), MPFR_RNDD);
      mpfr_log(lo.get(), lo.get(), MPFR_RNDU);
      mpfr_neg(lo.get(), lo.get(), MPFR_RNDD);
      mpfr_log(hi.get(), hi.get(), MPFR_RNDD);
      mpfr_neg(hi.get(), hi.get(), MPFR_RNDU);
      record["neg_log_enclosure"] = json::array({lo.str(20, MPFR_RNDD), hi.str(20, MPFR_RNDU)});
      record["approx"] = bigfloat(pent.value.to_rational(), MPFR_RNDN).str(20);
    } else if (command == "ffree") {
      const graph g = io::read_graph_file(graph_file);
      const auto members = detail::family_members(families, g.order());
      const auto lifted = ffree_lift(g, members);
      if (!emit_file.empty()) {
        std::ofstream f(emit_file);
        if (!f) throw error(errc::parse_error, "cannot write " + emit_file);
        io::write_hypergraph(f, lifted);
        record["emitted"] = emit_file;
      }
      record["graph"] = graph_file;
      record["family"] = families;
      record["n"] = lifted.order();
      record["edges"] = detail::edges_json(lifted);
      record["count"] = count_independent(lifted).get_str();
      record["density"] = id(lifted).str();
    }
  } catch (const error& e) {
    record["status"] = "error";
    record["error"] = std::string(to_string(e.code()));
    record["message"] = e.what();
    out << record.dump(2) << '\n';
    err << "hdens: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  record["status"] = "ok";
  out << record.dump(2) << '\n';
  return exit_ok;
}

}  // namespace hdens::cli

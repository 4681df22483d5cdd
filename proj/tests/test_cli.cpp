#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hdens/cli.hpp"
#include "hdens/io.hpp"
#include "oracles.hpp"

using namespace hdens;
using nlohmann::json;

namespace {

const std::string data = HDENS_DATA_DIR;

struct result {
  int code;
  json record;
  std::string text;
};

result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  result r{code, {}, out.str()};
  if (!r.text.empty() && r.text.front() == '{') r.record = json::parse(r.text);
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("hdens_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Io, ParseRational) {
  EXPECT_EQ(io::parse_rational("21/64"), mpq_class(21, 64));
  EXPECT_EQ(io::parse_rational("3/2^5"), mpq_class(3, 32));
  EXPECT_EQ(io::parse_rational("2^-30"), mpq_class(1, 1 << 30));
  EXPECT_EQ(io::parse_rational("0.25"), mpq_class(1, 4));
  EXPECT_EQ(io::parse_rational("1e-6"), mpq_class(1, 1000000));
  EXPECT_EQ(io::parse_rational("-7"), -7);
  EXPECT_EQ(io::parse_rational("010"), 10);
  for (const char* bad : {"", "x", "1/0", "1/", "/2", "1.2.3", "."}) EXPECT_THROW(io::parse_rational(bad), error) << bad;
}

TEST(Io, HypergraphRoundTrip) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto h = oracle::random_hypergraph(rng);
    std::stringstream ss;
    io::write_hypergraph(ss, h);
    EXPECT_EQ(io::read_hypergraph(ss), h);
  }
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  std::istringstream bad("n 3\n# comment\n\ne 1 4\n");
  try {
    io::read_hypergraph(bad, "f");
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse_error);
    EXPECT_NE(std::string(e.what()).find("f:4"), std::string::npos);
  }
  std::istringstream no_header("e 1 2\n");
  EXPECT_THROW(io::read_hypergraph(no_header), error);
  std::istringstream loop("n 2\ng 1 1\n");
  EXPECT_THROW(io::read_graph(loop), error);
}

TEST(Cli, CountPolyId) {
  EXPECT_EQ(run({"id", data + "/edge2.hg"}).record["id"], "3/4");
  const auto p = run({"poly", data + "/p4.hg", "--oracle"});
  EXPECT_EQ(p.record["poly"], "[1,4,3]");
  EXPECT_EQ(p.record["oracle"], "agree");
  EXPECT_EQ(run({"id", data + "/hhat3.hg"}).record["id"], "21/64");
  EXPECT_EQ(run({"count", data + "/p4.hg"}).record["count"], "8");
}

TEST(Cli, Rho) {
  const auto both = run({"rho", data + "/edge2.hg", "--in", "1", "--method", "both"});
  EXPECT_EQ(both.code, 0);
  EXPECT_EQ(both.record["direct"], "1/4");
  EXPECT_EQ(both.record["recursive"], "1/4");
  EXPECT_EQ(run({"rho", data + "/edge2.hg", "--in", "1,2"}).record["value"], "0");
  EXPECT_EQ(run({"rho", data + "/hhat3.hg"}).record["value"], run({"id", data + "/hhat3.hg"}).record["id"]);
  const auto overlap = run({"rho", data + "/edge2.hg", "--in", "1", "--out", "1"});
  EXPECT_EQ(overlap.code, cli::exit_precondition);
  EXPECT_EQ(overlap.record["error"], "OverlappingConstraints");
}

TEST(Cli, RhoBothOnRandomInputs) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 60; ++i) {
    const auto h = oracle::random_hypergraph(rng);
    std::ostringstream body;
    io::write_hypergraph(body, h);
    const auto path = temp_file("rho.hg", body.str());
    const auto [in, out] = oracle::random_constraints(rng, h.order());
    auto list = [](const std::vector<vertex_id>& v) {
      std::string s;
      for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
      return s;
    };
    std::vector<std::string> args{"rho", path, "--method", "both"};
    if (!in.empty()) args.insert(args.end(), {"--in", list(in)});
    if (!out.empty()) args.insert(args.end(), {"--out", list(out)});
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_EQ(io::parse_rational(r.record["value"]), oracle::constrained_density(h, in, out));
  }
}

TEST(Cli, Bounds) {
  EXPECT_EQ(run({"bounds", data + "/two_edges.hg", "--exact"}).record["bounds"], json::array({"1/16", "9/16"}));
  EXPECT_EQ(run({"bounds", data + "/k3.hg", "--exact"}).record["bounds"], json::array({"1/4", "3/4"}));
  EXPECT_EQ(run({"bounds", data + "/edge3.hg"}).record["bounds"], json::array({"1/8", "7/8"}));
}

TEST(Cli, Chain) {
  const auto path = run({"chain", "--family", "path", "--x", "2", "--steps", "40", "--classify"});
  EXPECT_EQ(path.record["class"]["tag"], "FinitePositive");
  EXPECT_NEAR(path.record["class"]["estimate"].get<double>(), 4.0 / 3.0, 1e-6);
  const auto hofr = run({"chain", "--family", "hofr", "--params", "7/8", "--steps", "10"});
  const auto& v = hofr.record["values"];
  for (std::size_t i = 2; i < 10; ++i) EXPECT_EQ(v[i], "7/8");
  const auto cu = run({"chain", "--family", "cliqueunion", "--params", "equal", "--x", "3", "--steps", "50", "--classify"});
  EXPECT_EQ(cu.record["class"]["tag"], "Infinite");
  EXPECT_EQ(cu.record["values"][49], "151");
  EXPECT_EQ(run({"chain", "--family", "jump", "--params", "1", "--steps", "3"}).code, cli::exit_precondition);
  EXPECT_EQ(run({"chain", "--family", "path", "--x=-1", "--steps", "3"}).record["error"], "NegativeX");
  EXPECT_EQ(run({"chain", "--family", "nope"}).code, cli::exit_parse);
}

TEST(Cli, ChainCsv) {
  const auto r = run({"chain", "--family", "hhat", "--steps", "3", "--csv"});
  EXPECT_EQ(r.text, "m,value_num,value_den\n1,1,2\n2,3,8\n3,21,64\n");
}

TEST(Cli, Pentagonal) {
  const auto r = run({"pentagonal", "--precision", "1e-6"});
  ASSERT_EQ(r.code, 0);
  const mpq_class lo = io::parse_rational(r.record["enclosure"][0]), hi = io::parse_rational(r.record["enclosure"][1]);
  EXPECT_LE(hi - lo, mpq_class(1, 1000000));
  EXPECT_LE(lo, mpq_class(288788, 1000000));
  EXPECT_GE(hi, mpq_class(288788, 1000000));
  const double nl_lo = std::stod(r.record["neg_log_enclosure"][0].get<std::string>());
  const double nl_hi = std::stod(r.record["neg_log_enclosure"][1].get<std::string>());
  EXPECT_LE(nl_lo, 1.242062 + 1e-5);
  EXPECT_GE(nl_hi, 1.242062 - 1e-5);
  const auto t = run({"pentagonal", "--terms", "4"});
  EXPECT_LE(io::parse_rational(t.record["width"]), mpq_class(1, 1 << 21));
  EXPECT_EQ(run({"pentagonal", "--terms", "2"}).record["error"], "NTooSmall");
}

TEST(Cli, Ffree) {
  EXPECT_EQ(run({"ffree", "--graph", data + "/k3.g", "--family", "cycles"}).record["density"], "7/8");
  const auto p3 = run({"ffree", "--graph", data + "/p3.g", "--family", "k2"});
  EXPECT_EQ(p3.record["density"], "5/8");
  EXPECT_EQ(p3.record["edges"].size(), 2u);
  const auto emit = std::filesystem::temp_directory_path() / "hdens_test_lift.hg";
  run({"ffree", "--graph", data + "/k3.g", "--family", "triangle", "--emit", emit.string()});
  EXPECT_EQ(io::read_hypergraph_file(emit.string()), hypergraph(3, {{1, 2, 3}}));
  const auto disc = temp_file("disc.g", "n 2\n");
  EXPECT_EQ(run({"ffree", "--graph", data + "/k3.g", "--family", disc}).record["error"], "DisconnectedFamily");
}

TEST(Cli, ExactFieldsRoundTrip) {
  const auto r = run({"chain", "--family", "path", "--x", "5/2", "--steps", "12"});
  for (const auto& v : r.record["values"]) {
    const auto q = io::parse_rational(v);
    EXPECT_EQ(io::format_rational(q), v.get<std::string>());
  }
}

TEST(Cli, ParseErrors) {
  const auto missing = run({"id", "/nonexistent/file.hg"});
  EXPECT_EQ(missing.code, cli::exit_parse);
  const auto bad = temp_file("bad.hg", "n 2\ne 1 3\n");
  const auto r = run({"id", bad});
  EXPECT_EQ(r.code, cli::exit_parse);
  EXPECT_NE(r.record["message"].get<std::string>().find(":2:"), std::string::npos);
  EXPECT_EQ(run({}).code, cli::exit_parse);
}

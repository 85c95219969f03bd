#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;
using hubpath::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hubpath");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Fresh scratch directory per test case.
struct Dir {
  fs::path path;
  explicit Dir(const std::string& name) : path(fs::temp_directory_path() / ("hubpath_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Dir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("gen writes the documented shapes") {
  Dir d("gen");
  REQUIRE(run({"gen", "--kind", "star", "--n", "6", "--out", d / "star.txt"}).code == 0);
  auto star = lines_of(slurp(d / "star.txt"));
  REQUIRE(star.size() == 6);
  CHECK(star[1] == "0 1");
  CHECK(star[5] == "0 5");

  Run chain = run({"gen", "--kind", "chain", "--n", "4"});
  CHECK(chain.code == 0);
  CHECK(chain.out.find("0 1\n1 2\n2 3\n") != std::string::npos);

  auto a = run({"gen", "--kind", "ba", "--n", "2000", "--param", "3", "--seed", "1"}).out;
  auto b = run({"gen", "--kind", "ba", "--n", "2000", "--param", "3", "--seed", "1"}).out;
  CHECK(a == b);

  CHECK(run({"gen", "--kind", "grid", "--n", "4"}).code != 0);
  CHECK(run({"gen", "--kind", "chain", "--n", "1"}).code != 0);
  CHECK(run({"gen", "--kind", "ba", "--n", "10", "--param", "0"}).code != 0);
}

TEST_CASE("build: stats line, k validation, byte-identical rebuilds") {
  Dir d("build");
  run({"gen", "--kind", "ba", "--n", "800", "--param", "3", "--out", d / "g.txt"});
  Run r = run({"build", "--graph", d / "g.txt", "--hubs", "8", "--k", "6", "--out", d / "a.hub2"});
  REQUIRE(r.code == 0);
  auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rfind("n\tm\thubs\tk", 0) == 0);
  CHECK(rows[1].rfind("800\t", 0) == 0);

  REQUIRE(run({"build", "--graph", d / "g.txt", "--hubs", "8", "--k", "6", "--out", d / "b.hub2",
               "--threads", "3"})
              .code == 0);
  CHECK(slurp(d / "a.hub2") == slurp(d / "b.hub2"));

  Run bad = run({"build", "--graph", d / "g.txt", "--k", "0", "--out", d / "c.hub2"});
  CHECK(bad.code != 0);
  CHECK_FALSE(fs::exists(d / "c.hub2"));
  CHECK(run({"build", "--graph", d / "missing.txt", "--out", d / "c.hub2"}).code != 0);
}

TEST_CASE("parse errors surface the line number") {
  Dir d("parse");
  std::ofstream(d / "bad.txt") << "0 1\n1 x\n";
  Run r = run({"build", "--graph", d / "bad.txt", "--out", d / "i.hub2"});
  CHECK(r.code != 0);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("query prints one line per pair for every engine") {
  Dir d("query");
  run({"gen", "--kind", "chain", "--n", "9", "--out", d / "c.txt"});
  REQUIRE(run({"build", "--graph", d / "c.txt", "--hubs", "1", "--k", "6", "--out", d / "c.hub2"})
              .code == 0);

  Run hl = run({"query", "--graph", d / "c.txt", "--index", d / "c.hub2", "--engine", "hl", "0",
                "3", "0", "8", "4", "4"});
  CHECK(hl.code == 0);
  auto out = lines_of(hl.out);
  REQUIRE(out.size() == 3);
  CHECK(out[0].rfind("dist=3 path=0,1,2,3 visited=", 0) == 0);
  CHECK(out[1].rfind("dist=none path=none visited=", 0) == 0);
  CHECK(out[2].rfind("dist=0 path=4 visited=", 0) == 0);

  for (std::string e : {"bfs", "bibfs", "hn", "hl"}) {
    Run r = run({"query", "--graph", d / "c.txt", "--hubs", "1", "--engine", e, "2", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("dist=5 path=2,3,4,5,6,7 visited=", 0) == 0);
  }

  CHECK(run({"query", "--graph", d / "c.txt", "--engine", "bfs", "0"}).code != 0);
  CHECK(run({"query", "--graph", d / "c.txt", "--engine", "bfs", "0", "99"}).code != 0);
  CHECK(run({"query", "--graph", d / "c.txt", "--engine", "astar", "0", "1"}).code != 0);
  CHECK(run({"query", "--graph", d / "c.txt", "--index", d / "c.hub2", "--k", "4", "0", "1"})
            .code != 0);
}

TEST_CASE("verify passes on good inputs and reports a corrupted index") {
  Dir d("verify");
  run({"gen", "--kind", "chain", "--n", "12", "--out", d / "c.txt"});
  run({"build", "--graph", d / "c.txt", "--hubs", "2", "--out", d / "c.hub2"});
  Run ok = run({"verify", "--graph", d / "c.txt", "--index", d / "c.hub2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  std::string bytes = slurp(d / "c.hub2");
  bytes[bytes.size() / 2] ^= 0x01;
  std::ofstream(d / "bad.hub2", std::ios::binary) << bytes;
  Run bad = run({"verify", "--graph", d / "c.txt", "--index", d / "bad.hub2"});
  CHECK(bad.code != 0);
  CHECK(bad.out.find("checksum") != std::string::npos);

  run({"gen", "--kind", "er", "--n", "500", "--param", "6", "--out", d / "er.txt"});
  Run er = run({"verify", "--graph", d / "er.txt", "--hubs", "10", "--pairs", "300"});
  CHECK(er.code == 0);
  CHECK(er.out.find("300 pairs, 0 disagreements") != std::string::npos);

  run({"gen", "--kind", "star", "--n", "6", "--out", d / "s.txt"});
  Run mismatch = run({"verify", "--graph", d / "s.txt", "--index", d / "c.hub2"});
  CHECK(mismatch.code != 0);
}

TEST_CASE("bench writes records and a summary") {
  Dir d("bench");
  run({"gen", "--kind", "ba", "--n", "1500", "--param", "3", "--out", d / "g.txt"});
  run({"build", "--graph", d / "g.txt", "--hubs", "15", "--out", d / "g.hub2"});
  auto bench = [&](const std::string& rec) {
    return run({"bench", "--graph", d / "g.txt", "--index", d / "g.hub2", "--pairs", "1000",
                "--seed", "7", "--engines", "bfs,hl", "--records", d / rec});
  };
  Run a = bench("a.jsonl");
  REQUIRE(a.code == 0);
  auto summary = lines_of(a.out);
  REQUIRE(summary.size() == 3);
  CHECK(summary[1].rfind("bfs\t1000\t", 0) == 0);
  CHECK(summary[2].rfind("hl\t1000\t", 0) == 0);

  auto recs = lines_of(slurp(d / "a.jsonl"));
  CHECK(recs.size() == 2000);
  REQUIRE(bench("b.jsonl").code == 0);
  auto again = lines_of(slurp(d / "b.jsonl"));
  REQUIRE(again.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    auto x = nlohmann::json::parse(recs[i]), y = nlohmann::json::parse(again[i]);
    CHECK(x["s"] == y["s"]);
    CHECK(x["t"] == y["t"]);
    CHECK(x["dist"] == y["dist"]);
    CHECK(x["visited"] == y["visited"]);
  }

  Run longp = run({"bench", "--graph", d / "g.txt", "--index", d / "g.hub2", "--pairs", "100",
                   "--min-dist", "4", "--non-hub-only", "--engines", "bibfs,hn,hl"});
  CHECK(longp.code == 0);
  CHECK(lines_of(longp.out).size() == 4);

  Run missing = run({"bench", "--graph", d / "g.txt", "--engines", "hl"});
  CHECK(missing.code != 0);
  CHECK(missing.err.find("--index") != std::string::npos);
}

TEST_CASE("hubnet writes network stats") {
  Dir d("hubnet");
  run({"gen", "--kind", "ba", "--n", "1000", "--param", "3", "--out", d / "g.txt"});
  Run r = run({"hubnet", "--graph", d / "g.txt", "--hubs", "10", "--k", "5", "--verify",
               "--stats-out", d / "s.tsv"});
  CHECK(r.code == 0);
  auto rows = lines_of(slurp(d / "s.tsv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].find("avg_hub_degree_network") != std::string::npos);
  CHECK(rows[1].rfind("10\t5\t", 0) == 0);
  CHECK(rows[1].substr(rows[1].rfind('\t')) == "\t0");
}

TEST_CASE("thread count falls back to the environment") {
  using hubpath::cli::resolve_threads;
  ::unsetenv("HUBPATH_THREADS");
  CHECK(resolve_threads(0) == 1);
  ::setenv("HUBPATH_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  CHECK(resolve_threads(2) == 2);
  ::setenv("HUBPATH_THREADS", "lots", 1);
  CHECK(resolve_threads(0) == 1);
  ::unsetenv("HUBPATH_THREADS");
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scoopw/cli/commands.hpp"
#include "scoopw/report/report.hpp"
#include "support.hpp"

using namespace scoopw;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "scoopw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("scoopw_test_" + name);
  std::ofstream(path) << text;
  return path;
}

nlohmann::json without(nlohmann::json j, const std::vector<std::string>& keys) {
  if (j.is_object()) {
    for (const auto& k : keys) j.erase(k);
    for (auto& [k, v] : j.items()) v = without(v, keys);
  } else if (j.is_array()) {
    for (auto& v : j) v = without(v, keys);
  }
  return j;
}

}  // namespace

TEST_CASE("explore exit codes") {
  CHECK(cli({"explore", "--model", "qoq", "--rules", "deadlock", "bench:colours"}).code == kExitOk);
  Run dl = cli({"explore", "--model", "rq", "--rules", "deadlock", "bench:dp_lazy_2"});
  CHECK(dl.code == kExitViolation);
  CHECK(dl.out.find("deadlock: yes") != std::string::npos);
  CHECK(dl.out.find("(h3, lock(2), h4) (h4, lock(1), h3)") != std::string::npos);
  Run cut = cli({"explore", "--max-states", "1", "bench:colours"});
  CHECK(cut.code == kExitTruncated);
  CHECK(cut.out.find("truncated") != std::string::npos);
  CHECK(cli({"explore", "--model", "scoop", "bench:colours"}).code == kExitInput);
  CHECK(cli({"explore", "bench:nope"}).code == kExitInput);
  CHECK(cli({"explore", "/nonexistent/file.scoop"}).code == kExitInput);
  CHECK(cli({"explore", "--rules", "maybe", "bench:colours"}).code == kExitInput);
  CHECK(cli({"explore", "--format", "xml", "bench:colours"}).code == kExitInput);
  CHECK(cli({"explore"}).code == kExitInput);
  CHECK(cli({}).code == kExitInput);
}

TEST_CASE("source errors are reported with positions") {
  auto path = write_temp("bad.scoop", "class APPLICATION\n  make do x := 1 end\nend\n");
  Run r = cli({"compile", path.string()});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find(":2:") != std::string::npos);
}

TEST_CASE("json reports are deterministic apart from timing") {
  std::vector<std::string> args{"explore", "--model", "qoq", "--rules", "deadlock,mutex:eat", "--format", "json",
                                "bench:dp_eager_2"};
  Run a = cli(args);
  Run again = cli(args);
  args.insert(args.end() - 1, {"--strategy", "parallel"});
  Run b = cli(args);
  REQUIRE(a.code == kExitViolation);
  REQUIRE(b.code == kExitViolation);
  auto ja = nlohmann::json::parse(a.out);
  auto jb = nlohmann::json::parse(b.out);
  CHECK(ja["schema"] == kReportSchemaVersion);
  CHECK(ja["verdicts"][1]["verdict"] == "yes");
  CHECK(without(ja, {"wall_time"}) == without(nlohmann::json::parse(again.out), {"wall_time"}));
  // The frontier size depends on the strategy; nothing else may.
  CHECK(without(ja, {"wall_time", "max_frontier"}) == without(jb, {"wall_time", "max_frontier"}));
}

TEST_CASE("compare and trace-check") {
  Run c = cli({"compare", "--models", "rq,qoq,dscoop", "--rules", "deadlock", "bench:dp_lazy_2"});
  CHECK(c.code == kExitViolation);
  CHECK(c.out.find("deadlock: rq=yes qoq=no dscoop=no") != std::string::npos);
  CHECK(cli({"compare", "--models", "rq", "bench:colours"}).code == kExitInput);
  Run same = cli({"compare", "--models", "rq,qoq", "--rules", "deadlock", "--format", "json", "bench:colours"});
  CHECK(same.code == kExitOk);
  CHECK(nlohmann::json::parse(same.out)["discrepancies"].empty());

  CHECK(cli({"trace-check", "--model", "dscoop", "bench:stack"}).code == kExitOk);
  Run bad = cli({"trace-check", "--model", "qoq", "--fault-serve-newest", "bench:stack"});
  CHECK(bad.code == kExitViolation);
  CHECK(bad.out.find("order violation") != std::string::npos);
}

TEST_CASE("rule files on the command line") {
  auto path = write_temp("rules.json", R"({"rules": [{"kind": "mutex", "name": "forks", "method": "eat"}]})");
  Run r = cli({"explore", "--model", "dscoop", "--rules", path.string(), "--format", "json", "bench:dp_eager_2"});
  CHECK(r.code == kExitViolation);
  CHECK(nlohmann::json::parse(r.out)["verdicts"][0]["rule"] == "forks");
}

TEST_CASE("prelock order hook") {
  CHECK(cli({"explore", "--model", "dscoop", "--rules", "deadlock", "bench:bank_transfer"}).code == kExitOk);
  Run arg = cli({"explore", "--model", "dscoop", "--rules", "deadlock", "--prelock-order", "argument",
                 "bench:bank_transfer"});
  CHECK(arg.code == kExitViolation);
  CHECK(arg.out.find("prelock") != std::string::npos);
  CHECK(cli({"explore", "--prelock-order", "sideways", "bench:bank_transfer"}).code == kExitInput);
}

TEST_CASE("dot output") {
  Run r = cli({"explore", "--model", "rq", "--format", "dot", "bench:stack"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("digraph states {", 0) == 0);
  CHECK(r.out.find("s0 -> ") != std::string::npos);
  CHECK(r.out.find("doublecircle") != std::string::npos);
  Run big = cli({"explore", "--model", "dscoop", "--format", "dot", "bench:producer_consumer_5"});
  CHECK(big.code == kExitInput);
  CHECK(big.err.find("limited") != std::string::npos);
}

TEST_CASE("listing and compiling") {
  Run l = cli({"list-benchmarks"});
  CHECK(l.code == kExitOk);
  for (const auto& id : bench::ids()) CHECK(l.out.find(id + "\t") != std::string::npos);
  CHECK(cli({"--list-benchmarks"}).out == l.out);
  Run c = cli({"compile", "--format", "json", "bench:stack"});
  CHECK(c.code == kExitOk);
  CHECK_FALSE(nlohmann::json::parse(c.out)["methods"].empty());
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("livelock candidates are listed") {
  auto path = write_temp("forever.scoop", R"(
class APPLICATION
  make
    local c: separate CELL  v: INTEGER
    do
      create c
      from until False loop
        separate c do
          c.poke
          v := c.value
        end
      end
    end
end
class CELL
  n: INTEGER
  poke do n := 1 - n end
  value: INTEGER do Result := n end
end
)");
  Run r = cli({"explore", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("livelock candidate") != std::string::npos);
}

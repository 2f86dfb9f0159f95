// Copyright 2026 The pifotree authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "pifotree/pifotree.hpp"

namespace pifotree {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("pifotree_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string fixture(const std::string& name) {
    return std::string(PIFOTREE_FIXTURE_DIR) + "/" + name;
  }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  Result run(const std::string& args) const {
    const std::string out = tmp("stdout.txt");
    const std::string err = tmp("stderr.txt");
    const std::string cmd =
        std::string("\"") + PIFOTREE_CLI + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out), read_file(err)};
  }

  fs::path dir_;
};

TEST_F(Cli, SimulateReproducesGolden) {
  const Result r = run("simulate --trace " + fixture("hpfq_trace.csv") + " --policy " +
                       fixture("hpfq.cfg") + " --line-rate 4 --out-csv " + tmp("out.csv") +
                       " --out-gantt " + tmp("out.svg"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(tmp("out.csv")), read_file(fixture("hpfq_departures.csv")));
  const std::string svg = read_file(tmp("out.svg"));
  EXPECT_NE(svg.find("<!-- pifotree-gantt v1 -->"), std::string::npos);
}

TEST_F(Cli, EmbedTernaryIntoBinary) {
  const Result r = run("embed --source \"[*, *, *]\" --target-dary 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# height 2"), std::string::npos);
  EXPECT_NE(r.out.find("\n3 -> 2.1\n"), std::string::npos);
  const Embedding e = parse_embedding(r.out);
  EXPECT_EQ(e.source(), parse_topo("[*, *, *]"));
}

TEST_F(Cli, EmbedIntoExplicitTarget) {
  write_file(tmp("target.topo"), "# target\n[[*, *], [*, [*, *]]]\n");
  const Result r = run("embed --source \"[*, *, [*, *]]\" --target-topo " + tmp("target.topo"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(validate(parse_embedding(r.out)));
  const Result none = run("embed --source \"[*, *, *]\" --target-topo \"[*, *]\"");
  EXPECT_EQ(none.code, 2);
  EXPECT_FALSE(none.err.empty());
}

TEST_F(Cli, CompileThenSimulateMatches) {
  for (const std::string name : {"wfq", "twopol"}) {
    const std::string trace = fixture(name == "wfq" ? "abc_trace.csv" : "twopol_trace.csv");
    ASSERT_EQ(run("compile --policy " + fixture(name + ".cfg") + " --target-dary 2 --out " +
                  tmp(name + "_bin.cfg"))
                  .code,
              0);
    EXPECT_TRUE(parse_policy(read_file(tmp(name + "_bin.cfg"))).compiled.has_value());
    ASSERT_EQ(run("simulate --trace " + trace + " --policy " + fixture(name + ".cfg") +
                  " --line-rate 4 --out-csv " + tmp("a.csv"))
                  .code,
              0);
    ASSERT_EQ(run("simulate --trace " + trace + " --policy " + tmp(name + "_bin.cfg") +
                  " --line-rate 4 --out-csv " + tmp("b.csv"))
                  .code,
              0);
    EXPECT_EQ(read_file(tmp("a.csv")), read_file(tmp("b.csv"))) << name;
  }
  const Result again = run("compile --policy " + tmp("wfq_bin.cfg") + " --target-dary 2");
  EXPECT_EQ(again.code, 1);
}

TEST_F(Cli, CheckReportsWellFormedness) {
  const Result good = run("check --tree-dump " + fixture("two_leaf_tree.json"));
  EXPECT_EQ(good.code, 0) << good.err;
  EXPECT_NE(good.out.find("well-formed: yes"), std::string::npos);
  EXPECT_NE(good.out.find("flush (pop order): P1 B1 T1 B2 P2 B3"), std::string::npos);
  const Result bad = run("check --tree-dump " + fixture("illformed_tree.json"));
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("well-formed: no"), std::string::npos);
}

TEST_F(Cli, ErrorsAreDiagnosed) {
  write_file(tmp("bad.cfg"), "topology [*, *]\nnode . wfq 1\n");
  const Result bad_policy = run("simulate --trace " + fixture("abc_trace.csv") +
                                " --policy " + tmp("bad.cfg") + " --line-rate 4 --out-csv " +
                                tmp("x.csv"));
  EXPECT_EQ(bad_policy.code, 1);
  EXPECT_NE(bad_policy.err.find("pifotree:"), std::string::npos);

  const Result bad_rate = run("simulate --trace " + fixture("abc_trace.csv") + " --policy " +
                              fixture("fcfs.cfg") + " --line-rate 0 --out-csv " + tmp("x.csv"));
  EXPECT_NE(bad_rate.code, 0);

  const Result unknown_flow = run("simulate --trace " + fixture("twopol_trace.csv") +
                                  " --policy " + fixture("fcfs.cfg") +
                                  " --line-rate 4 --out-csv " + tmp("x.csv"));
  EXPECT_EQ(unknown_flow.code, 1);

  EXPECT_NE(run("embed --source \"[*, *\" --target-dary 2").code, 0);
  EXPECT_NE(run("embed --source \"[*, *]\" --target-dary 1").code, 0);
  EXPECT_NE(run("simulate --bogus").code, 0);
  EXPECT_NE(run("").code, 0);
  EXPECT_NE(run("check --tree-dump " + fixture("hpfq.cfg")).code, 0);
}

}  // namespace
}  // namespace pifotree

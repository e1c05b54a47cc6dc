// Copyright 2026 The hamlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Output {
  int code = -1;
  std::string text;
};

Output run(const std::string &args) {
  std::string cmd = std::string(HAMLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Output out;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.text.append(buf.data(), got);
  int status = pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

fs::path scratch(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / "hamlab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string &name, const std::string &body) {
  fs::path p = scratch(name);
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("embed --no-such-flag").code, 2);
  EXPECT_EQ(run("embed --dimacs /nonexistent/file.cnf").code, 2);
  EXPECT_EQ(run("gadget --alpha 0 --eps 0.05").code, 2);
}

TEST(Cli, EmbedSummary) {
  std::string f = write_file("one.cnf", "p cnf 3 2\n1 2 0\n-1 3 0\n");
  Output o = run("embed --dimacs " + f);
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.text.find("# manifest:"), std::string::npos);
  EXPECT_NE(o.text.find("n,cardinality,ground_energy,degeneracy,operator"), std::string::npos);
}

TEST(Cli, SubdivisionGadgetPasses) {
  Output o = run("gadget --alpha 1 --eps 0.05");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.text.find("43.05"), std::string::npos);
  EXPECT_NE(o.text.find(",1\n"), std::string::npos);
}

TEST(Cli, WalkStationary) {
  std::string g = write_file("five.txt", "5\n0 1\n0 3\n1 2\n2 3\n2 4\n3 4\n");
  Output o = run("walk --graph " + g + " --stationary");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.text.find("0.25"), std::string::npos);
  EXPECT_NE(o.text.find("0.166666666667"), std::string::npos);
}

TEST(Cli, ManifestAndDeterminism) {
  fs::path a = scratch("grover_a.csv"), b = scratch("grover_b.csv");
  ASSERT_EQ(run("--threads 1 variational grover --n 3 --p 2 --seed 5 --out " + a.string()).code, 0);
  ASSERT_EQ(run("--threads 2 variational grover --n 3 --p 2 --seed 5 --out " + b.string()).code, 0);
  EXPECT_TRUE(fs::exists(a.string() + ".manifest.json"));
  std::string ta = slurp(a), tb = slurp(b);
  EXPECT_FALSE(ta.empty());
  // Thread count is recorded in the manifest line; the data rows must agree byte for byte.
  EXPECT_EQ(ta.substr(ta.find('\n')), tb.substr(tb.find('\n')));
  ASSERT_EQ(run("--threads 1 variational grover --n 3 --p 2 --seed 5 --out " + a.string()).code, 0);
  EXPECT_EQ(slurp(a), ta);
}

TEST(Cli, ClockRow) {
  fs::path c = scratch("circ.json");
  std::ofstream(c) << R"({"n": 1, "gates": [{"kind": "h", "qubits": [0]}]})";
  Output o = run("variational clock --circuit " + c.string() + " --M 2");
  ASSERT_EQ(o.code, 0) << o.text;
  EXPECT_NE(o.text.find("L,M,encoding,overlap"), std::string::npos);
  EXPECT_NE(o.text.find("0.5"), std::string::npos);
}

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <regex>
#include <string>
#include <vector>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SUBDYN_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& file) { return std::string(SUBDYN_DATA) + "/" + file; }

bool has_line(const std::string& text, const std::string& line) {
  return text.find("\n" + line + "\n") != std::string::npos || text.rfind(line + "\n", 0) == 0;
}

}  // namespace

TEST_CASE("derive lists the Chacon return words and derivative") {
  auto r = run("derive --sub " + data("chacon.sub"));
  CHECK(r.status == 0);
  CHECK(has_line(r.out, "return.v1: 0"));
  CHECK(has_line(r.out, "return.v2: 0s0"));
  CHECK(has_line(r.out, "return.v3: 0s0s0"));
  CHECK(has_line(r.out, "return.v4: 0110"));
  CHECK(has_line(r.out, "tau.v1: v1 v2"));
  CHECK(has_line(r.out, "tau.v2: v1 v3 v2"));
  CHECK(has_line(r.out, "tau.v3: v1 v3 v3 v2"));
  CHECK(has_line(r.out, "tau.v4: v1 v2 v4 v4 v1 v2"));
}

TEST_CASE("nesting diagram as DOT") {
  auto r = run("build-diagram --sub " + data("chacon.sub") + " --method nesting --format dot");
  CHECK(r.status == 0);
  std::regex vertex("^  \"L1_([^\"]+)\";$");
  std::regex top_edge("^  \"L0_v0\" -> \"L1_([^\"]+)\"");
  std::map<std::string, int> mult;
  std::size_t vertices = 0;
  std::size_t start = 0;
  while (start < r.out.size()) {
    auto end = r.out.find('\n', start);
    std::string line = r.out.substr(start, end - start);
    std::smatch m;
    if (std::regex_search(line, m, vertex)) ++vertices;
    if (std::regex_search(line, m, top_edge)) ++mult[m[1]];
    start = end + 1;
  }
  CHECK(vertices == 8);
  std::vector<int> counts;
  for (const auto& [v, c] : mult) counts.push_back(c);
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{1, 1, 1, 1, 1, 1, 2, 2});
}

TEST_CASE("vershik with zero steps prints the start only") {
  auto r = run("vershik --sub " + data("chacon.sub") + " --method derivative --steps 0");
  CHECK(r.status == 0);
  CHECK(r.out.find("start: ") != std::string::npos);
  CHECK(r.out.find("orbit.") == std::string::npos);
}

TEST_CASE("odometer export") {
  auto r = run("export --sub " + data("odometer.sub") + " --method direct");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "digraph bratteli {\n"
        "  \"L0_v0\";\n"
        "  \"L1_v\";\n"
        "  \"L2_v\";\n"
        "  \"L0_v0\" -> \"L1_v\" [label=\"0\"];\n"
        "  \"L0_v0\" -> \"L1_v\" [label=\"1\"];\n"
        "  \"L1_v\" -> \"L2_v\" [label=\"0\"];\n"
        "  \"L1_v\" -> \"L2_v\" [label=\"1\"];\n"
        "}\n");
}

TEST_CASE("exit codes") {
  CHECK(run("bogus").status == 2);
  CHECK(run("derive").status == 2);
  CHECK(run("derive --sub /nonexistent/file.sub").status == 2);
  CHECK(run("analyze --sub " + data("chacon.sub") + " --method nope").status == 2);
  CHECK(run("return-words --sub " + data("chacon.sub") + " --cap 3").status == 3);
  CHECK(run("lambda --sub " + data("chacon.sub")).status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("every command is deterministic") {
  const std::vector<std::string> commands{
      "analyze --sub " + data("chacon.sub"),
      "language --sub " + data("chacon.sub"),
      "classify --sub " + data("chacon.sub"),
      "periodic-check --sub " + data("thue_morse.sub"),
      "nesting --sub " + data("chacon.sub"),
      "minimal --sub " + data("two_block.sub"),
      "return-words --sub " + data("chacon.sub"),
      "derive --sub " + data("chacon.sub"),
      "build-diagram --sub " + data("chacon.sub"),
      "read --sub " + data("chacon.sub"),
      "vershik --sub " + data("chacon.sub") + " --steps 20",
      "recognize --sub " + data("chacon.sub") + " --seed 7",
      "jsymbol --sub " + data("chacon.sub"),
      "lambda --sub " + data("thue_morse.sub"),
      "export --sub " + data("chacon.sub") + " --method nesting",
  };
  for (const auto& c : commands) {
    INFO(c);
    auto a = run(c);
    auto b = run(c);
    CHECK(a.status == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("the seed is recorded") {
  auto r = run("recognize --sub " + data("chacon.sub") + " --seed 7");
  CHECK(has_line(r.out, "seed: 7"));
}

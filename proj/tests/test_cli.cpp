#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

#include "advlearn/automata.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/io.hpp"

using namespace advlearn;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(ADVLEARN_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("advlearn_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::string p = (path / name).string();
    write_text_file(p, content);
    return p;
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("learn") {
  TempDir tmp;
  std::string target = tmp.file("parity.dfa", serialize(parity()));
  Result r = run("learn " + target + " --out " + (tmp / "out.dfa") + " --stats " + (tmp / "run.json"));
  CHECK(r.status == 0);
  CHECK(parse_dfa(read_text_file(tmp / "out.dfa")) == parity());
  auto record = nlohmann::json::parse(read_text_file(tmp / "run.json"));
  CHECK(record["learned_states"] == 2);
  CHECK(record["mode"] == "none");
  CHECK(record["teacher"]["mq"] == record["stats"]["mq_asked"]);
}

TEST_CASE("learn with advice") {
  TempDir tmp;
  std::string target = tmp.file("add.dfa", serialize(bitadd_dfa()));
  std::string advice = tmp.file("bin.srs", serialize(bitadd_srs()));
  Result r = run("learn " + target + " " + advice + " --mode two-sided --shadow --stats " + (tmp / "run.json"));
  CHECK(r.status == 0);
  auto record = nlohmann::json::parse(read_text_file(tmp / "run.json"));
  CHECK(record["stats"]["mq_asked"] == 115);
  CHECK(record["stats"]["mq_total"] == 201);
  CHECK(record["shadow_mismatches"] == 0);
  CHECK(record["learned_states"] == 3);
}

TEST_CASE("inconsistent advice") {
  TempDir tmp;
  std::string target = tmp.file("parity.dfa", serialize(parity()));
  std::string advice = tmp.file("idem.srs", "a a -> a\n");
  Result check = run("check " + target + " " + advice);
  CHECK(check.status == 1);
  CHECK(contains(check.out, "x: a a"));
  CHECK(contains(check.out, "y: a"));
  Result learn = run("learn " + target + " " + advice + " --mode two-sided");
  CHECK(learn.status == 3);
  Result ok = run("check " + tmp.file("all.dfa", serialize(accept_all())) + " " + advice + " --convergence");
  CHECK(ok.status == 0);
  CHECK(contains(ok.out, "convergent: proved"));
}

TEST_CASE("normalize") {
  TempDir tmp;
  std::string advice = tmp.file("sort.srs", "b a -> a b\n");
  Result r = run("normalize --quiet " + advice + " b a b a");
  CHECK(r.status == 0);
  CHECK(r.out == "a a b b\n");
  Result trace = run("normalize " + advice + " b a");
  CHECK(contains(trace.out, "rule 0 at 0"));
}

TEST_CASE("gen") {
  TempDir tmp;
  CHECK(run("gen --out " + (tmp / "add.dfa") + " bitadd").status == 0);
  CHECK(parse_dfa(read_text_file(tmp / "add.dfa")) == bitadd_dfa());
  CHECK(run("gen --out " + (tmp / "r.dfa") + " random --states 7 --alphabet 'a b' --accept-prob 0.3 --seed 4").status ==
        0);
  CHECK(parse_dfa(read_text_file(tmp / "r.dfa")) == random_dfa(7, ab(), 0.3, 4));
}

TEST_CASE("bench") {
  Result a = run("bench bitadd --trials 2");
  CHECK(a.status == 0);
  CHECK(contains(a.out, "bitadd,0,1,3,201,1,115,86,1,0,42.79,0.00,"));
  CHECK(contains(a.out, "bitadd,summary,"));
}

TEST_CASE("errors") {
  TempDir tmp;
  CHECK(run("bench nope").status == 2);
  CHECK(run("frobnicate").status == 2);
  Result bad = run("learn " + tmp.file("bad.dfa", "alphabet: a\nstates: q0\ninitial: q9\n"));
  CHECK(bad.status == 2);
  CHECK(contains(bad.out, "3:"));
}

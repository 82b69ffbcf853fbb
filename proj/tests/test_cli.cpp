#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "shiftlab/cli.hpp"
#include "shiftlab/experiments.hpp"
#include "shiftlab/words.hpp"

using namespace shiftlab;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("words subcommands") {
  auto r = run({"words", "char", "--alpha", "2/5", "--range", "0:4"});
  CHECK(r.code == 0);
  CHECK(r.out == "00101\n");

  r = run({"words", "char", "--alpha", "2/5", "--range", "0:4", "--upper"});
  CHECK(r.out == "10100\n");

  r = run({"words", "check", "--word", "010010", "--k", "1"});
  CHECK(r.out == "true\n");
  r = run({"words", "check", "--word", "0011", "--k", "1"});
  CHECK(r.out == "false\n");
  r = run({"words", "check", "--word", "0", "--joint", "1"});
  CHECK(r.out == "true\n");

  r = run({"words", "interval", "--word", "00101"});
  CHECK(r.out == "(1/3, 1/2)\n");
  r = run({"words", "interval", "--word", "00", "--joint", "11"});
  CHECK(r.out == "empty\n");
}

TEST_CASE("sft1d subcommands") {
  auto r = run({"sft1d", "entropy", "--forbid", "11"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.481211825\n");

  r = run({"sft1d", "language", "--forbid", "11", "--n", "3"});
  CHECK(r.out == "000\n001\n010\n100\n101\n");

  r = run({"sft1d", "report", "--forbid", "01,10", "--nmax", "1"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);

  r = run({"sft1d", "report", "--forbid", "11", "--nmax", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);

  r = run({"sft1d", "chain", "--forbid", "11", "--n", "2", "--dot"});
  CHECK(r.code == 0);
  CHECK(r.out.find("graph chain") != std::string::npos);
}

TEST_CASE("spacer1d subcommands") {
  auto r = run({"spacer1d", "flist", "--alphabet", "a"});
  CHECK(r.out == "00000\na0a\naa\n");

  r = run({"spacer1d", "transform", "--word", "abc", "--gaps", "2,4"});
  CHECK(r.out == "a00b0000c\n");

  r = run({"spacer1d", "transform", "--project", "a00b000a"});
  CHECK(r.out == "aba\n");

  r = run({"spacer1d", "transform", "--project", "a0b"});
  CHECK(r.code == 1);
}

TEST_CASE("layers subcommands") {
  auto r = run({"layers", "classify", "--a", "lower:2/5", "--b", "lower:2/5"});
  CHECK(r.out == "2\n");
  r = run({"layers", "classify", "--a", "ep:01|0011|01@0", "--b", "periodic:01"});
  CHECK(r.out == "3\n");
  r = run({"layers", "build", "--a", "periodic:01", "--b", "periodic:01",
           "--rect", "0:0:1:1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("@3 0 0 2 2") == 0);
}

TEST_CASE("experiments") {
  auto r = run({"experiment", "chain-diameter", "--instance", "golden",
                "--nmax", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("n,words,components,diameter,radius") != std::string::npos);
  CHECK(r.out.find("1,2,1,1,") != std::string::npos);

  r = run({"experiment", "slope-map"});
  CHECK(r.code == 0);
  CHECK(r.out.find("slope,length,lo,hi") != std::string::npos);
  // exact rationals in the table
  CHECK(r.out.find("1/2,10,") != std::string::npos);

  // reruns are byte-identical
  auto r2 = run({"experiment", "slope-map"});
  CHECK(r.out == r2.out);
}

TEST_CASE("usage errors") {
  auto r = run({"nonsense"});
  CHECK(r.code == 2);
  r = run({"words", "char", "--alpha", "not-a-slope"});
  CHECK(r.code == 1);
  r = run({"sft1d", "entropy", "--forbid", "11", "--alphabet", "0"});
  CHECK(r.code == 1);  // forbidden word outside the alphabet
}

TEST_CASE("minimal unbalanced words") {
  auto words4 = minimal_unbalanced_words(4);
  CHECK(words4 == std::vector<std::string>{"0011", "1100"});
  auto words6 = minimal_unbalanced_words(6);
  // the distant-witness words of length six join the two four-letter ones
  CHECK(words6.size() > 2);
  for (const auto& w : words6) {
    CHECK_FALSE(is_k_balanced(Word(w), 1));
    CHECK(is_k_balanced(Word(w.substr(1)), 1));
    CHECK(is_k_balanced(Word(w.substr(0, w.size() - 1)), 1));
  }
}

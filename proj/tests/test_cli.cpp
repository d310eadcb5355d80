// Copyright 2026 The decgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "decgame/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = decgame::run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

double num(const nlohmann::json& v) { return v.get<double>(); }

}  // namespace

TEST_CASE("solve examples") {
  const Run a = run({"solve", "--probs", "0.5,0.3,0.15,0.05", "--eps", "0.2", "--obj", "log",
                     "--mode", "exact"});
  REQUIRE(a.code == 0);
  const auto j = lines(a.out).at(0);
  CHECK(j["i_hat"] == 2);
  CHECK(num(j["q"][0]) == doctest::Approx(0.6826061944859853).epsilon(1e-13));
  CHECK(num(j["q"][1]) == doctest::Approx(0.3173938055140147).epsilon(1e-13));
  CHECK(num(j["value"]) == doctest::Approx(std::log(0.3)).epsilon(1e-13));
  CHECK(j.contains("witness"));

  const Run b = run({"solve", "--probs", "0.5,0.5", "--eps", "0", "--mode", "relaxed"});
  REQUIRE(b.code == 0);
  const auto k = lines(b.out).at(0);
  CHECK(num(k["q"][0]) == 1.0);
  CHECK(num(k["q"][1]) == 0.0);
  CHECK(num(k["value"]) == doctest::Approx(std::log(0.5)).epsilon(1e-15));

  const Run c = run({"solve", "--probs", "0.25,0.25,0.25,0.25", "--eps", "0.1"});
  CHECK(c.code == 2);
  CHECK(c.err.find("AssumptionViolated") != std::string::npos);
  CHECK(c.err.find("case_ii") != std::string::npos);

  const Run d = run({"solve", "--probs", "0.5,0.3,0.15,0.05", "--eps", "0.2", "--kkt"});
  CHECK(lines(d.out).at(0)["kkt"]["feasible"] == true);

  const Run e = run({"solve", "--input", "-", "--eps", "0.3", "--mode", "relaxed"},
                    "{\"id\":\"x\",\"logits\":[1.0,0.0,-3.5]}\n");
  REQUIRE(e.code == 0);
  const auto el = lines(e.out).at(0);
  CHECK(el["id"] == "x");
  CHECK(el["q"].size() == 3);
  CHECK(run({"solve", "--input", "-", "--eps", "0.3"},
            "{\"logits\":[1.0,\"-inf\"]}\n").code == 65);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 64);
  CHECK(run({"solve"}).code == 64);
  CHECK(run({"solve", "--probs", "0.5,0.5"}).code == 64);
  CHECK(run({"solve", "--probs", "0.5,x", "--eps", "0.1"}).code == 65);
  CHECK(run({"solve", "--probs", "0.5,-0.5", "--eps", "0.1"}).code == 65);
  CHECK(run({"solve", "--probs", "0.5,0.5", "--eps", "1.5"}).code == 64);
  CHECK(run({"solve", "--probs", "0.5,0.5", "--eps", "0.1", "--obj", "cubic"}).code == 64);
  CHECK(run({"sample", "--method", "beam"}, "").code == 64);
  CHECK(run({"sample", "--method", "game", "--eps", "0"}, "").code == 64);
  CHECK(run({"verify", "--dims", "5"}).code == 2);
  CHECK(run({"simulate", "--d", "5", "--T", "2", "--mode", "relaxed"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("64  usage error") != std::string::npos);
}

TEST_CASE("sample") {
  const std::string input =
      "{\"id\":\"a\",\"probs\":[0.1,0.7,0.2]}\n"
      "{\"id\":7,\"logits\":[2,-1,5,0.5]}\n"
      "\n"
      "{\"probs\":[0.4,0.35,0.25]}\n";
  const Run g = run({"sample", "--method", "greedy"}, input);
  REQUIRE(g.code == 0);
  const auto gl = lines(g.out);
  REQUIRE(gl.size() == 3);
  CHECK(gl[0]["token"] == 1);
  CHECK(gl[0]["id"] == "a");
  CHECK(gl[1]["token"] == 2);
  CHECK(gl[1]["id"] == 7);
  CHECK(gl[2]["token"] == 0);

  const std::vector<std::string> game{"sample", "--method", "game", "--eps", "0.95",
                                      "--tau", "2", "--seed", "7", "--emit-q"};
  const Run a = run(game, input);
  const Run b = run(game, input);
  CHECK(a.out == b.out);

  auto literal = game;
  literal.push_back("--paper-literal-tau");
  const Run l = run(literal, input);
  CHECK(l.out != a.out);
  CHECK(l.err.find("paper-literal") != std::string::npos);

  const std::string bad = "{\"probs\":[0.5,0.5]}\n{\"probs\":[0.5,-0.5]}\nnope\n{\"probs\":[0.2,0.8]}\n";
  const Run lenient = run({"sample", "--method", "greedy"}, bad);
  CHECK(lenient.code == 0);
  const auto ll = lines(lenient.out);
  REQUIRE(ll.size() == 4);
  CHECK(ll[1]["error"] == "NegativeProbability");
  CHECK(ll[2]["error"] == "ParseError");
  CHECK(ll[3]["token"] == 1);
  CHECK(lenient.err.find("record 1") != std::string::npos);
  const Run strict = run({"sample", "--method", "greedy", "--strict"}, bad);
  CHECK(strict.code == 65);
  CHECK(lines(strict.out).size() == 1);
}

TEST_CASE("sample seed from the environment") {
  const std::string input = "{\"probs\":[0.3,0.3,0.4]}\n{\"probs\":[0.5,0.5]}\n";
  const std::vector<std::string> args{"sample", "--method", "pure"};
  ::setenv("DECGAME_SEED", "123", 1);
  const Run env = run(args, input);
  ::unsetenv("DECGAME_SEED");
  auto flagged = args;
  flagged.insert(flagged.end(), {"--seed", "123"});
  CHECK(env.out == run(flagged, input).out);
  ::setenv("DECGAME_SEED", "abc", 1);
  CHECK(run(args, input).code == 64);
  ::unsetenv("DECGAME_SEED");
}

TEST_CASE("analyze") {
  const std::string tokens =
      "{\"seq\":\"a\",\"token\":3,\"prompt\":true}\n"
      "{\"seq\":\"a\",\"token\":0,\"probs\":[0.5,0.5]}\n"
      "{\"seq\":\"a\",\"token\":0,\"probs\":[0.25,0.75]}\n";
  const Run r = run({"analyze"}, tokens);
  REQUIRE(r.code == 0);
  const auto out = lines(r.out);
  CHECK(num(out[0]["perplexity"]) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(out[0]["repetition"] == true);
  CHECK(out.back()["summary"]["mauve"].is_null());

  const Run uniform = run({"analyze"},
                          "{\"token\":1,\"probs\":[0.25,0.25,0.25,0.25]}\n"
                          "{\"token\":2,\"probs\":[0.25,0.25,0.25,0.25]}\n");
  CHECK(num(lines(uniform.out).back()["summary"]["perplexity"]) ==
        doctest::Approx(4.0).epsilon(1e-12));

  const Run sure = run({"analyze"}, "{\"token\":0,\"probs\":[1,0]}\n");
  CHECK(num(lines(sure.out).back()["summary"]["perplexity"]) == 1.0);

  CHECK(run({"analyze"}, "{\"token\":1,\"probs\":[1,0]}\n").code == 65);
  CHECK(run({"analyze"}, "{\"token\":4,\"probs\":[0.5,0.5]}\n").code == 65);

  const Run table = run({"analyze", "--table"}, tokens);
  CHECK(table.out.find("repetition_frequency\t1.0000") != std::string::npos);
}

TEST_CASE("analyze with a separate distribution file") {
  const std::string path = "decgame_cli_dists.jsonl";
  {
    std::ofstream f(path);
    f << "{\"probs\":[0.5,0.5]}\n";
  }
  CHECK(run({"analyze", "--dists", path}, "{\"token\":0}\n{\"token\":1}\n").code == 65);
  {
    std::ofstream f(path);
    f << "{\"probs\":[0.5,0.5]}\n{\"probs\":[0.25,0.75]}\n";
  }
  const Run ok = run({"analyze", "--dists", path}, "{\"token\":0}\n{\"token\":1}\n");
  CHECK(ok.code == 0);
  CHECK(num(lines(ok.out).back()["summary"]["perplexity"]) ==
        doctest::Approx(std::exp(-(std::log(0.5) + std::log(0.75)) / 2.0)).epsilon(1e-12));
  std::remove(path.c_str());
}

TEST_CASE("simulate") {
  const Run r = run({"simulate", "--d", "2", "--T", "2", "--seed", "3", "--eps", "0.1"});
  REQUIRE(r.code == 0);
  const auto j = lines(r.out).back();
  CHECK(num(j["dp_value"]) >= num(j["local_value"]) - 1e-9);

  const std::string path = "decgame_cli_measure.jsonl";
  {
    std::ofstream f(path);
    f << "{\"context\":[],\"probs\":[0.7,0.3]}\n";
  }
  const Run one = run({"simulate", "--file", path, "--eps", "0.3", "--nodes"});
  REQUIRE(one.code == 0);
  const auto ol = lines(one.out);
  CHECK(num(ol[0]["q"][0]) == 1.0);
  CHECK(num(ol.back()["local_value"]) == doctest::Approx(std::log(0.4)).epsilon(1e-14));
  std::remove(path.c_str());
}

TEST_CASE("verify is deterministic") {
  const std::vector<std::string> args{"verify", "--instances", "12", "--step", "0.05",
                                      "--seed", "5"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 12);
  CHECK(a.err.find("0 failures") != std::string::npos);
}

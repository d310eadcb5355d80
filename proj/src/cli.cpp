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

#include "decgame/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "decgame/format.hpp"
#include "decgame/metrics.hpp"
#include "decgame/multistep.hpp"
#include "decgame/objective.hpp"
#include "decgame/oracles.hpp"
#include "decgame/samplers.hpp"
#include "decgame/strategist.hpp"

namespace decgame {

namespace {

using nlohmann::json;

constexpr const char* kExitCodesHelp =
    "Exit codes:\n"
    "  0   success\n"
    "  1   verification failure (verify)\n"
    "  2   assumption violated in exact mode, or size guard (TooLarge)\n"
    "  64  usage error\n"
    "  65  data error (malformed or invalid input)\n"
    "\n"
    "Records are one JSON object per line: {\"id\": ..., \"probs\": [...]} or\n"
    "{\"id\": ..., \"logits\": [...]}. The default --seed comes from DECGAME_SEED.";

double json_to_double(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(Errc::kParseError, "expected a number, got " + v.dump());
}

std::vector<double> json_to_doubles(const json& arr) {
  if (!arr.is_array()) fail(Errc::kParseError, "expected an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(json_to_double(v));
  return out;
}

json parse_json_line(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    fail(Errc::kParseError, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<double> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      fail(Errc::kParseError, "bad number '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) fail(Errc::kEmptyInput, "empty number list");
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("DECGAME_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') fail(Errc::kBadConfig, "DECGAME_SEED is not an integer");
  return v;
}

// Opens `path` for reading, "-" meaning the given stream.
class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) fail(Errc::kParseError, "cannot open " + path);
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) fail(Errc::kParseError, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

// ---- solve ----

struct SolveArgs {
  std::string probs, logits, input;
  double eps = 0.0;
  std::string obj = "log";
  std::string mode = "exact";
  bool kkt = false;
};

std::string solve_record(const RawDist& raw, const SolveArgs& a) {
  const ProbVector p = ingest(raw);
  const Objective obj = Objective::parse(a.obj);
  const SolveMode mode = parse_solve_mode(a.mode);
  const GameSolution sol = solve(p, a.eps, obj, mode);
  std::vector<std::size_t> ids(sol.support_size);
  for (std::size_t k = 0; k < sol.support_size; ++k) ids[k] = p.vocab_id(k);

  std::string s = "{";
  if (raw.id) s += "\"id\":" + *raw.id + ",";
  s += "\"mode\":" + json_string(std::string(to_string(sol.mode)));
  s += ",\"objective\":" + json_string(obj.name());
  s += ",\"epsilon\":" + json_number(a.eps);
  s += ",\"assumption\":" +
       json_string(std::string(to_string(sol.assumption.which)));
  s += ",\"i_hat\":" + std::to_string(sol.support_size);
  s += ",\"ids\":" + json_array(ids);
  s += ",\"weights\":" + json_array(sol.weights);
  s += ",\"q\":" + json_array(p.to_vocab_order(sol.q));
  s += ",\"value\":" + json_number(sol.value);
  const AdversaryOutcome& adv = sol.adversary;
  if (adv.witness) s += ",\"witness\":" + json_array(p.to_vocab_order(*adv.witness));
  auto index = [&](const std::optional<std::size_t>& k) {
    return k ? std::to_string(p.vocab_id(*k)) : std::string("null");
  };
  s += ",\"donor\":" + index(adv.donor_index);
  s += ",\"recipient\":" + index(adv.recipient_index);
  s += ",\"zeroed\":" + index(adv.zeroed_index);
  if (a.kkt) {
    const KktCertificate c = kkt_certificate(sol.q, p, a.eps, obj);
    s += ",\"kkt\":{\"feasible\":" + json_bool(c.feasible);
    s += ",\"nu\":" + json_number(c.nu_star);
    s += ",\"residual\":" + json_number(c.stationarity_residual);
    s += ",\"violation\":" + json_string(c.violation) + "}";
  }
  s += "}";
  return s;
}

int cmd_solve(const SolveArgs& a, std::istream& in, std::ostream& out) {
  const int sources = !a.probs.empty() + !a.logits.empty() + !a.input.empty();
  if (sources != 1) {
    fail(Errc::kBadConfig, "give exactly one of --probs, --logits, --input");
  }
  if (!a.probs.empty()) {
    out << solve_record(RawDist{parse_csv(a.probs), DistKind::kProbs, {}}, a) << '\n';
    return kExitOk;
  }
  if (!a.logits.empty()) {
    out << solve_record(RawDist{parse_csv(a.logits), DistKind::kLogits, {}}, a) << '\n';
    return kExitOk;
  }
  Input input(a.input, in);
  std::string line;
  while (std::getline(input.get(), line)) {
    if (blank(line)) continue;
    out << solve_record(parse_stream_record(line), a) << '\n';
  }
  return kExitOk;
}

// ---- sample ----

struct SampleArgs {
  std::string input = "-";
  std::string output = "-";
  std::string method = "game";
  SamplerConfig cfg;
  std::uint64_t seed = 0;
  bool strict = false;
  bool emit_q = false;
};

int cmd_sample(SampleArgs a, std::istream& in, std::ostream& out,
               std::ostream& err) {
  a.cfg.method = parse_method(a.method);
  a.cfg.validate();
  if (a.cfg.paper_literal_tau_branch && a.cfg.method == Method::kGame) {
    err << "sample: game tau branch = "
        << (a.cfg.tau == 1.0 ? "log (tau = 1, flag has no effect)"
                             : "paper-literal ratio (p_i/p_I)^(1-1/tau)")
        << '\n';
  }
  Input input(a.input, in);
  Output output(a.output, out);
  std::ostream& sink_stream = output.get();
  std::string line;
  std::size_t line_no = 0;
  std::size_t errors = 0;
  std::size_t records = 0;
  // Parse failure of the record currently in flight, if any.
  std::optional<Error> parse_error;

  auto source = [&]() -> std::optional<RawDist> {
    while (std::getline(input.get(), line)) {
      ++line_no;
      if (blank(line)) continue;
      ++records;
      parse_error.reset();
      try {
        return parse_stream_record(line);
      } catch (const Error& e) {
        if (a.strict) {
          throw Error(e.code(), "record " + std::to_string(records - 1) + " (line " +
                                    std::to_string(line_no) + "): " + e.detail());
        }
        // An empty record keeps the index sequence; its error is replaced below.
        parse_error = Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
        return RawDist{};
      }
    }
    return std::nullopt;
  };
  auto sink = [&](StepOutput&& step) {
    if (parse_error) {
      step.error_code = parse_error->code();
      step.error = parse_error->what();
    }
    std::string s = "{\"index\":" + std::to_string(step.index);
    if (step.id) s += ",\"id\":" + *step.id;
    if (step.error_code) {
      ++errors;
      s += ",\"error\":" + json_string(std::string(to_string(*step.error_code)));
      s += ",\"message\":" + json_string(step.error) + "}";
      err << "sample: record " << step.index << ": " << step.error << '\n';
    } else {
      s += ",\"token\":" + std::to_string(*step.token);
      s += ",\"support_size\":" + std::to_string(step.support_size);
      if (a.emit_q && step.truncation) {
        s += ",\"ids\":" + json_array(step.truncation->support_vocab_ids);
        s += ",\"q\":" + json_array(step.truncation->masses);
      }
      s += "}";
    }
    sink_stream << s << '\n';
  };
  GenerateOptions opts;
  opts.seed = a.seed;
  opts.strict = a.strict;
  opts.keep_truncation = a.emit_q;
  generate_stream(source, sink, a.cfg, opts);
  if (errors) err << "sample: " << errors << " record(s) failed\n";
  return kExitOk;
}

// ---- analyze ----

struct AnalyzeArgs {
  std::string input = "-";
  std::string dists;
  bool table = false;
};

std::string seq_key(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

int cmd_analyze(const AnalyzeArgs& a, std::istream& in, std::ostream& out) {
  Input input(a.input, in);
  std::unique_ptr<Input> dists;
  if (!a.dists.empty()) dists = std::make_unique<Input>(a.dists, in);
  std::vector<AnalyzedStep> steps;
  std::string line, dline;
  std::size_t line_no = 0;
  while (std::getline(input.get(), line)) {
    ++line_no;
    if (blank(line)) continue;
    const json j = parse_json_line(line);
    if (!j.is_object() || !j.contains("token")) {
      fail(Errc::kParseError, "line " + std::to_string(line_no) + ": missing token");
    }
    AnalyzedStep step;
    step.seq = j.contains("seq") ? seq_key(j["seq"]) : std::string("0");
    if (!j["token"].is_number_unsigned()) {
      fail(Errc::kParseError,
           "line " + std::to_string(line_no) + ": token must be a non-negative integer");
    }
    step.token = j["token"].get<std::size_t>();
    step.prompt = j.value("prompt", false);
    if (j.contains("support_size")) step.support_size = j["support_size"].get<std::size_t>();
    if (j.contains("probs") || j.contains("logits")) step.dist = parse_stream_record(line);
    if (dists) {
      do {
        if (!std::getline(dists->get(), dline)) {
          fail(Errc::kDimensionMismatch,
               "distribution file ends before token line " + std::to_string(line_no));
        }
      } while (blank(dline));
      step.dist = parse_stream_record(dline);
    }
    if (step.dist && step.token >= step.dist->values.size()) {
      fail(Errc::kDimensionMismatch, "line " + std::to_string(line_no) +
                                         ": token outside the distribution");
    }
    steps.push_back(std::move(step));
  }
  if (dists) {
    while (std::getline(dists->get(), dline)) {
      if (!blank(dline)) {
        fail(Errc::kDimensionMismatch, "distribution file has extra records");
      }
    }
  }
  if (steps.empty()) fail(Errc::kEmptyInput, "no token records");
  const MetricsReport r = analyze_corpus(steps);

  auto opt_number = [](const std::optional<double>& v) {
    return v ? json_number(*v) : std::string("null");
  };
  if (a.table) {
    char buf[64];
    out << "sequences\t" << r.sequences.size() << '\n';
    out << "perplexity\t"
        << (r.perplexity ? format_double(*r.perplexity) : std::string("n/a")) << '\n';
    std::snprintf(buf, sizeof buf, "%.4f", r.repetition_frequency);
    out << "repetition_frequency\t" << buf << '\n';
    if (r.profile) {
      for (const auto& [level, v] : r.profile->quantiles) {
        std::snprintf(buf, sizeof buf, "support_q%02d\t%g", static_cast<int>(level * 100 + 0.5), v);
        out << buf << '\n';
      }
    }
    out << "mauve\tn/a (not computed)\n";
    out << "\nseq\tlength\trepetition\tperplexity\n";
    for (const SequenceMetrics& m : r.sequences) {
      out << m.seq << '\t' << m.length << '\t' << (m.repetition ? "yes" : "no") << '\t'
          << (m.perplexity ? format_double(*m.perplexity) : std::string("n/a")) << '\n';
    }
    return kExitOk;
  }
  for (const SequenceMetrics& m : r.sequences) {
    out << "{\"seq\":" << json_string(m.seq) << ",\"length\":" << m.length
        << ",\"repetition\":" << json_bool(m.repetition)
        << ",\"perplexity\":" << opt_number(m.perplexity) << "}\n";
  }
  out << "{\"summary\":{\"sequences\":" << r.sequences.size()
      << ",\"perplexity\":" << opt_number(r.perplexity)
      << ",\"repetition_frequency\":" << json_number(r.repetition_frequency)
      << ",\"mean_entropy\":";
  double h = 0.0;
  for (double x : r.entropy_series) h += x;
  out << (r.entropy_series.empty()
              ? std::string("null")
              : json_number(h / static_cast<double>(r.entropy_series.size())));
  out << ",\"support_size_quantiles\":";
  if (r.profile) {
    out << '{';
    bool first = true;
    for (const auto& [level, v] : r.profile->quantiles) {
      if (!first) out << ',';
      first = false;
      out << "\"q" << static_cast<int>(level * 100 + 0.5) << "\":" << json_number(v);
    }
    out << '}';
  } else {
    out << "null";
  }
  out << ",\"mauve\":null}}\n";
  return kExitOk;
}

// ---- simulate ----

struct SimulateArgs {
  std::string file;
  std::size_t d = 2;
  std::size_t horizon = 2;
  std::uint64_t seed = 0;
  double eps = 0.1;
  std::string obj = "log";
  std::string mode = "exact";
  double grid_step = 0.0;
  bool no_dp = false;
  bool nodes = false;
  std::size_t harness = 0;
  std::string write_measure;
};

int cmd_simulate(const SimulateArgs& a, std::istream& in, std::ostream& out) {
  const Objective obj = Objective::parse(a.obj);
  const SolveMode mode = parse_solve_mode(a.mode);
  ToyMeasure phat(1, 1);
  if (!a.file.empty()) {
    Input input(a.file, in);
    phat = ToyMeasure::read(input.get());
  } else {
    phat = ToyMeasure::random(a.d, a.horizon, a.seed);
  }
  if (!a.write_measure.empty()) {
    Output w(a.write_measure, out);
    phat.write(w.get());
  }
  const ToyMeasure q = local_mechanism(phat, a.eps, obj, mode);
  const BestResponse br = adversary_best_response(q, phat, a.eps, obj);
  if (a.nodes) {
    for (std::size_t k = 0; k < phat.node_count(); ++k) {
      const auto ctx = phat.context_of(k);
      out << "{\"context\":" << json_array(ctx) << ",\"p\":" << json_array(phat.node(k))
          << ",\"q\":" << json_array(q.node(k))
          << ",\"adversary\":" << json_array(br.adversary.node(k))
          << ",\"value\":" << json_number(br.trace.per_node_values[k])
          << ",\"reach\":" << json_number(br.trace.reach[k]) << "}\n";
    }
  }
  std::string s = "{\"d\":" + std::to_string(phat.vocab_size()) +
                  ",\"T\":" + std::to_string(phat.horizon()) +
                  ",\"epsilon\":" + json_number(a.eps) +
                  ",\"objective\":" + json_string(obj.name()) +
                  ",\"mode\":" + json_string(std::string(to_string(mode))) +
                  ",\"local_value\":" + json_number(br.trace.value);
  if (br.trace.offending_context) {
    s += ",\"offending_context\":" + json_array(*br.trace.offending_context);
  }
  if (!a.no_dp) {
    const double step =
        a.grid_step > 0.0 ? a.grid_step : default_grid_step(phat.vocab_size());
    const DpResult dp = dp_oracle(phat, a.eps, obj, step);
    s += ",\"dp_value\":" + json_number(dp.value) +
         ",\"dp_slack\":" + json_number(dp.slack) +
         ",\"grid_step\":" + json_number(dp.grid_step) +
         ",\"dp_minus_local\":" + json_number(dp.value - br.trace.value);
  }
  s += "}";
  out << s << '\n';
  if (a.harness > 0) {
    for (const HarnessRow& row :
         no_foresight_harness(phat.vocab_size(), phat.horizon(), a.eps, obj,
                              a.harness, a.seed)) {
      out << "{\"harness\":" << json_string(row.strategy)
          << ",\"min_value\":" << json_number(row.min_value)
          << ",\"mean_value\":" << json_number(row.mean_value) << "}\n";
    }
  }
  return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  VerifyOptions opts;
  std::string report = "-";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const VerifySummary summary = run_verification(a.opts);
  {
    Output report(a.report, out);
    for (const OracleRecord& rec : summary.records) {
      report.get() << format_oracle_record(rec) << '\n';
    }
  }
  for (const OracleRecord& rec : summary.records) {
    if (!rec.ok) err << "verify: disagreement " << format_oracle_record(rec) << '\n';
  }
  err << "verify: " << summary.instances << " instances, " << summary.failures
      << " failures\n";
  return summary.failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kAssumptionViolated:
    case Errc::kTooLarge:
      return kExitGuard;
    case Errc::kBadConfig:
    case Errc::kDomainError:
      return kExitUsage;
    default:
      return kExitData;
  }
}

RawDist parse_stream_record(const std::string& line) {
  const json j = parse_json_line(line);
  if (!j.is_object()) fail(Errc::kParseError, "record is not an object");
  RawDist raw;
  if (j.contains("id")) {
    const json& id = j["id"];
    if (!id.is_string() && !id.is_number_integer()) {
      fail(Errc::kParseError, "id must be a string or an integer");
    }
    raw.id = id.dump();
  }
  const bool has_p = j.contains("probs");
  const bool has_l = j.contains("logits");
  if (has_p == has_l) {
    fail(Errc::kParseError, "record needs exactly one of probs, logits");
  }
  raw.kind = has_p ? DistKind::kProbs : DistKind::kLogits;
  raw.values = json_to_doubles(has_p ? j["probs"] : j["logits"]);
  return raw;
}

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"decgame: decoding-game solvers, samplers and oracles", "decgame"};
  app.footer(kExitCodesHelp);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve the one-step game");
  solve_cmd->add_option("--probs", solve_args.probs, "Comma-separated probabilities");
  solve_cmd->add_option("--logits", solve_args.logits, "Comma-separated logits");
  solve_cmd->add_option("--input", solve_args.input, "File of records ('-' = stdin)");
  solve_cmd->add_option("--eps", solve_args.eps, "TV radius")->required();
  solve_cmd->add_option("--obj", solve_args.obj, "log | power:TAU")->capture_default_str();
  solve_cmd->add_option("--mode", solve_args.mode, "exact | first-order | relaxed")
      ->capture_default_str();
  solve_cmd->add_flag("--kkt", solve_args.kkt, "Attach a KKT certificate");

  SampleArgs sample_args;
  sample_args.seed = seed;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Sample one token per record");
  sample_cmd->add_option("--input", sample_args.input, "Record file ('-' = stdin)")
      ->capture_default_str();
  sample_cmd->add_option("--output", sample_args.output, "Output file ('-' = stdout)")
      ->capture_default_str();
  sample_cmd
      ->add_option("--method", sample_args.method,
                   "game | greedy | pure | top_k | nucleus | temperature | typical | eta")
      ->capture_default_str();
  sample_cmd->add_option("--eps", sample_args.cfg.epsilon, "Game radius")->capture_default_str();
  sample_cmd->add_option("--tau", sample_args.cfg.tau, "Game / temperature tau")
      ->capture_default_str();
  sample_cmd->add_option("--top-k", sample_args.cfg.top_k, "top_k size")->capture_default_str();
  sample_cmd->add_option("--top-p", sample_args.cfg.top_p, "nucleus / typical mass")
      ->capture_default_str();
  sample_cmd->add_option("--eta", sample_args.cfg.eta, "eta cut")->capture_default_str();
  sample_cmd->add_flag("--paper-literal-tau", sample_args.cfg.paper_literal_tau_branch,
                       "Use the flipped tau != 1 ratio");
  sample_cmd->add_option("--seed", sample_args.seed, "Seed (default DECGAME_SEED or 0)")
      ->capture_default_str();
  sample_cmd->add_flag("--strict", sample_args.strict, "Abort on the first bad record");
  sample_cmd->add_flag("--emit-q", sample_args.emit_q, "Print retained ids and masses");

  AnalyzeArgs analyze_args;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Corpus metrics");
  analyze_cmd->add_option("--input", analyze_args.input,
                          "Token records {seq, token, prompt?, support_size?, probs?}")
      ->capture_default_str();
  analyze_cmd->add_option("--dists", analyze_args.dists,
                          "Distribution records aligned with the token records");
  analyze_cmd->add_flag("--table", analyze_args.table, "Human-readable summary");

  SimulateArgs sim_args;
  sim_args.seed = seed;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Multi-step game on a toy measure");
  sim_cmd->add_option("--file", sim_args.file, "Toy measure file");
  sim_cmd->add_option("--d", sim_args.d, "Vocabulary size (random measure)")
      ->capture_default_str();
  sim_cmd->add_option("--T", sim_args.horizon, "Horizon (random measure)")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_args.seed, "Seed (default DECGAME_SEED or 0)")
      ->capture_default_str();
  sim_cmd->add_option("--eps", sim_args.eps, "TV radius")->capture_default_str();
  sim_cmd->add_option("--obj", sim_args.obj, "log | power:TAU")->capture_default_str();
  sim_cmd->add_option("--mode", sim_args.mode, "exact | first-order | relaxed")
      ->capture_default_str();
  sim_cmd->add_option("--grid-step", sim_args.grid_step, "DP grid step (default by d)");
  sim_cmd->add_flag("--no-dp", sim_args.no_dp, "Skip the DP oracle");
  sim_cmd->add_flag("--nodes", sim_args.nodes, "Print the per-node table");
  sim_cmd->add_option("--harness", sim_args.harness,
                      "Run the no-foresight harness on N random measures");
  sim_cmd->add_option("--write-measure", sim_args.write_measure,
                      "Write the measure used to a file");

  VerifyArgs verify_args;
  verify_args.opts.seed = seed;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check closed forms against oracles");
  verify_cmd->add_option("--instances", verify_args.opts.instances, "Instance count")
      ->capture_default_str();
  verify_cmd->add_option("--dims", verify_args.opts.dims, "Dimensions, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_args.opts.seed, "Seed (default DECGAME_SEED or 0)")
      ->capture_default_str();
  verify_cmd->add_option("--step", verify_args.opts.step, "Grid step")->capture_default_str();
  verify_cmd->add_option("--report", verify_args.report, "Report file ('-' = stdout)")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "decgame: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, in, out);
    if (*sample_cmd) return cmd_sample(sample_args, in, out, err);
    if (*analyze_cmd) return cmd_analyze(analyze_args, in, out);
    if (*sim_cmd) return cmd_simulate(sim_args, in, out);
    if (*verify_cmd) return cmd_verify(verify_args, out, err);
  } catch (const Error& e) {
    err << "decgame: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "decgame: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace decgame

// advlearn: learning, consistency checks, normal forms, generators and the
// benchmark harness from the command line.
//
// Exit codes: 0 success, 1 consistency witness found, 2 usage or parse
// error, 3 advice error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "advlearn/advice.hpp"
#include "advlearn/automata.hpp"
#include "advlearn/bench.hpp"
#include "advlearn/error.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/io.hpp"

using namespace advlearn;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kWitness = 1;
constexpr int kUsage = 2;
constexpr int kAdvice = 3;

const std::vector<std::string> kModes{"none", "two-sided", "csrs", "positive", "negative", "upward"};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

Word word_arg(const Alphabet& sigma, const std::vector<std::string>& parts) {
  std::string joined;
  for (const auto& p : parts) joined += (joined.empty() ? "" : " ") + p;
  return sigma.parse_word(joined);
}

AdviceMode load_advice(const std::string& mode, const std::string& path, const Alphabet& sigma) {
  if (mode == "none") return NoAdvice{};
  if (mode == "upward") return UpwardClosedAdvice{};
  if (path.empty()) throw input_error("mode '" + mode + "' needs an advice file");
  std::string text = read_text_file(path);
  if (mode == "csrs") return ControlledAdvice{parse_csrs(text, sigma)};
  bool one_sided = mode == "positive" || mode == "negative";
  Srs r = parse_srs(text, sigma, one_sided);
  if (r.alphabet() != sigma) throw input_error("advice alphabet differs from the target alphabet");
  if (mode == "two-sided") return TwoSidedAdvice{r};
  if (mode == "positive") return PositiveAdvice{r};
  return NegativeAdvice{r};
}

void print_witness(std::ostream& out, const Witness& w, const Alphabet& sigma) {
  out << "x: " << sigma.format(w.x) << "\n"
      << "y: " << sigma.format(w.y) << "\n"
      << "rule " << w.rule << " at position " << w.position << "\n";
}

json stats_json(const QueryStats& s) {
  return {{"mq_asked", s.mq_asked},       {"mq_inferred", s.mq_inferred}, {"mq_witness", s.mq_witness},
          {"eq_asked", s.eq_asked},       {"eq_inferred", s.eq_inferred}, {"cex_total_length", s.cex_total_length},
          {"mq_total", s.mq_total()},     {"eq_total", s.eq_total()}};
}

struct LearnArgs {
  std::string target;
  std::string advice;
  std::string mode = "none";
  std::uint64_t seed = 0;
  std::string init_tests = "epsilon+alphabet";
  std::string cex = "prefixes";
  bool shadow = false;
  bool assume_convergent = false;
  bool complete_with_sink = false;
  std::string out;
  std::string stats;
};

int run_learn(const LearnArgs& a) {
  LearnerConfig config;
  config.initial_tests =
      a.init_tests == "epsilon" ? InitialTests::epsilon_only : InitialTests::epsilon_plus_alphabet;
  config.cex_processing = a.cex == "suffixes" ? CexProcessing::all_suffixes : CexProcessing::all_prefixes;
  AdviceOptions options;
  options.shadow = a.shadow;
  options.assume_convergent = a.assume_convergent;

  Automaton target = parse_automaton(read_text_file(a.target), a.complete_with_sink);
  const Alphabet& sigma =
      std::holds_alternative<Dfa>(target) ? std::get<Dfa>(target).alphabet() : std::get<MealyMachine>(target).inputs();
  AdviceMode mode = load_advice(a.mode, a.advice, sigma);

  json record{{"target", a.target},
              {"mode", a.mode},
              {"seed", a.seed},
              {"config", {{"init_tests", a.init_tests}, {"cex", a.cex}, {"shadow", a.shadow}}}};
  auto start = std::chrono::steady_clock::now();
  std::string learned;
  try {
    if (auto* d = std::get_if<Dfa>(&target)) {
      RunOutcome r = learn_with_advice(*d, mode, config, options);
      record["kind"] = "dfa";
      record["target_states"] = minimize(*d).num_states();
      record["learned_states"] = r.dfa.num_states();
      record["stats"] = stats_json(r.stats);
      record["teacher"] = {{"mq", r.teacher_mq}, {"eq", r.teacher_eq}};
      record["learner"] = {{"mq", r.counts.mq}, {"eq", r.counts.eq}, {"rounds", r.counts.rounds}};
      record["shadow_mismatches"] = r.shadow_mismatches;
      learned = serialize(r.dfa);
    } else {
      const auto& m = std::get<MealyMachine>(target);
      MealyRunOutcome r = learn_mealy_with_advice(m, mode, config, options);
      record["kind"] = "mealy";
      record["target_states"] = minimize(m).num_states();
      record["learned_states"] = r.machine.num_states();
      record["stats"] = stats_json(r.stats);
      record["learner"] = {{"mq", r.counts.mq}, {"eq", r.counts.eq}, {"rounds", r.counts.rounds}};
      record["shadow_mismatches"] = r.shadow_mismatches;
      learned = serialize(r.machine);
    }
  } catch (const divergence_error& e) {
    std::cerr << "learning diverged: " << e.what() << "\n";
    if (auto* d = std::get_if<Dfa>(&target)) {
      if (auto v = check_advice(mode, *d); v.witness) {
        std::cerr << "the advice is inconsistent with the target; witness pair:\n";
        print_witness(std::cerr, *v.witness, sigma);
      }
    }
    return kAdvice;
  }
  record["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!a.out.empty()) emit(learned, a.out);
  std::string line = record.dump() + "\n";
  if (a.stats.empty() || a.stats == "-") {
    if (a.out.empty()) std::cout << learned;
    std::cout << line;
  } else {
    if (a.out.empty()) std::cout << learned;
    std::ofstream(a.stats, std::ios::app) << line;
  }
  return record["shadow_mismatches"].get<std::size_t>() == 0 ? kOk : kAdvice;
}

struct CheckArgs {
  std::string automaton;
  std::string advice;
  std::string mode = "two-sided";
  bool convergence = false;
};

int run_check(const CheckArgs& a) {
  Automaton target = parse_automaton(read_text_file(a.automaton));
  if (auto* m = std::get_if<MealyMachine>(&target)) {
    if (a.mode != "two-sided") throw input_error("Mealy machines support only two-sided advice");
    Srs r = parse_srs(read_text_file(a.advice), m->inputs());
    auto v = check_consistency_mealy(r, *m);
    if (v.consistent()) {
      std::cout << "Consistent\n";
      return kOk;
    }
    std::cout << "Inconsistent\n";
    print_witness(std::cout, *v.witness, m->inputs());
    return kWitness;
  }
  const Dfa& d = std::get<Dfa>(target);
  AdviceMode mode = load_advice(a.mode, a.advice, d.alphabet());
  if (a.convergence) {
    std::optional<ConvergenceVerdict> cv;
    if (auto* t = std::get_if<TwoSidedAdvice>(&mode)) cv = check_convergence(t->srs);
    if (auto* c = std::get_if<ControlledAdvice>(&mode)) cv = check_convergence(c->csrs);
    if (cv)
      std::cout << "termination: " << to_string(cv->termination) << "\n"
                << "local confluence: " << to_string(cv->local_confluence) << "\n"
                << "convergent: " << to_string(cv->convergent) << "\n";
  }
  auto v = check_advice(mode, d);
  if (v.consistent()) {
    std::cout << "Consistent\n";
    return kOk;
  }
  std::cout << "Inconsistent\n";
  print_witness(std::cout, *v.witness, d.alphabet());
  return kWitness;
}

struct NormalizeArgs {
  std::string advice;
  std::vector<std::string> word;
  bool csrs = false;
  bool quiet = false;
};

int run_normalize(const NormalizeArgs& a) {
  std::string text = read_text_file(a.advice);
  Csrs c = a.csrs ? parse_csrs(text) : Csrs::from_srs(parse_srs(text));
  const Alphabet& sigma = c.alphabet();
  Word w = word_arg(sigma, a.word);
  std::vector<RewriteStep> trace;
  Word nf = csrs_normal_form(c, w, std::nullopt, &trace);
  std::cout << sigma.format(nf) << "\n";
  if (!a.quiet) {
    std::cout << "  " << sigma.format(w) << "\n";
    for (const auto& step : trace) {
      w = csrs_apply_step(c, w, step);
      std::cout << "  -> " << sigma.format(w) << "   (rule " << step.rule << " at " << step.position << ")\n";
    }
  }
  return kOk;
}

Alphabet alphabet_arg(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return Alphabet(std::move(tokens));
}

Dfa load_dfa(const std::string& path) { return parse_dfa(read_text_file(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active automata learning with rewriting-system advice"};
  app.require_subcommand(1);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a DFA or Mealy target against a simulated teacher");
  learn_cmd->add_option("target", learn.target, "Target automaton file")->required()->check(CLI::ExistingFile);
  learn_cmd->add_option("advice", learn.advice, "Advice file (SRS or cSRS)")->check(CLI::ExistingFile);
  learn_cmd->add_option("--mode", learn.mode, "Advice mode")->check(CLI::IsMember(kModes));
  learn_cmd->add_option("--seed", learn.seed, "Recorded in the run record");
  learn_cmd->add_option("--init-tests", learn.init_tests, "Initial tests")
      ->check(CLI::IsMember({"epsilon", "epsilon+alphabet"}));
  learn_cmd->add_option("--cex", learn.cex, "Counterexample processing")
      ->check(CLI::IsMember({"prefixes", "suffixes"}));
  learn_cmd->add_flag("--shadow", learn.shadow, "Cross-check every inferred answer");
  learn_cmd->add_flag("--assume-convergent", learn.assume_convergent,
                      "Use normal-form caching even without a convergence proof");
  learn_cmd->add_flag("--complete-with-sink", learn.complete_with_sink, "Send missing transitions to a sink");
  learn_cmd->add_option("--out", learn.out, "Write the learned automaton here");
  learn_cmd->add_option("--stats", learn.stats, "Append the JSON run record here");

  BenchConfig bench;
  std::string bench_out;
  std::string bench_init = "epsilon+alphabet", bench_cex = "prefixes";
  std::size_t min_states = 0, max_states = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Run paired trials and write CSV");
  bench_cmd->add_option("scenario", bench.scenario, "Scenario")->required()->check(CLI::IsMember(scenario_names()));
  bench_cmd->add_option("--trials", bench.trials, "Number of trials")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed_base, "Seed of trial 0");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--min-states", min_states, "Smallest target or component");
  bench_cmd->add_option("--max-states", max_states, "Largest target or component");
  bench_cmd->add_option("--init-tests", bench_init)->check(CLI::IsMember({"epsilon", "epsilon+alphabet"}));
  bench_cmd->add_option("--cex", bench_cex)->check(CLI::IsMember({"prefixes", "suffixes"}));
  bench_cmd->add_flag("--shadow", bench.shadow, "Cross-check every inferred answer");
  bench_cmd->add_option("--out", bench_out, "CSV output file");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check advice against an automaton");
  check_cmd->add_option("automaton", check.automaton)->required()->check(CLI::ExistingFile);
  check_cmd->add_option("advice", check.advice)->check(CLI::ExistingFile);
  check_cmd->add_option("--mode", check.mode)->check(CLI::IsMember(kModes));
  check_cmd->add_flag("--convergence", check.convergence, "Also report termination and confluence");

  NormalizeArgs normalize;
  auto* normalize_cmd = app.add_subcommand("normalize", "Print the normal form of a word and the rewrite trace");
  normalize_cmd->add_option("advice", normalize.advice)->required()->check(CLI::ExistingFile);
  normalize_cmd->add_option("word", normalize.word, "Space-separated tokens; '_' for the empty word")->required();
  normalize_cmd->add_flag("--csrs", normalize.csrs, "The advice file is a controlled system");
  normalize_cmd->add_flag("--quiet", normalize.quiet, "Print only the normal form");

  auto* gen_cmd = app.add_subcommand("gen", "Write generated automata and rewriting systems");
  gen_cmd->require_subcommand(1);
  std::string gen_out, gen_alphabet = "a b c d";
  std::uint64_t gen_seed = 1;
  std::size_t gen_states = 10, gen_keep = 10;
  double gen_accept = 0.1;
  std::string gen_idempotent, gen_mode = "any", gen_word;
  std::vector<std::string> gen_patterns, gen_files;
  gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

  auto* g_random = gen_cmd->add_subcommand("random", "Random DFA");
  g_random->add_option("--states", gen_states)->check(CLI::PositiveNumber);
  g_random->add_option("--alphabet", gen_alphabet);
  g_random->add_option("--accept-prob", gen_accept)->check(CLI::Range(0.0, 1.0));
  g_random->add_option("--seed", gen_seed);
  g_random->add_option("--idempotent", gen_idempotent, "Make this letter idempotent");
  auto* g_pattern = gen_cmd->add_subcommand("pattern", "Pattern DFA");
  g_pattern->add_option("--pattern", gen_patterns, "A pattern, tokens separated by spaces")->required();
  g_pattern->add_option("--mode", gen_mode)->check(CLI::IsMember({"any", "all"}));
  g_pattern->add_option("--alphabet", gen_alphabet);
  auto* g_conv = gen_cmd->add_subcommand("convolution", "Convolution of two DFA files");
  g_conv->add_option("files", gen_files)->expected(2)->required()->check(CLI::ExistingFile);
  gen_cmd->add_subcommand("bitadd", "Bitwise addition DFA");
  gen_cmd->add_subcommand("bitadd-srs", "Advice for bitwise addition");
  auto* g_idem = gen_cmd->add_subcommand("idempotent-srs", "{u u -> u}");
  g_idem->add_option("--alphabet", gen_alphabet);
  g_idem->add_option("--word", gen_word)->required();
  auto* g_convsrs = gen_cmd->add_subcommand("conv-srs", "Commutation of private letters of two DFA files");
  g_convsrs->add_option("files", gen_files)->expected(2)->required()->check(CLI::ExistingFile);
  auto* g_sync = gen_cmd->add_subcommand("sync-srs", "{a w -> w} for a synchronizing word w");
  g_sync->add_option("--alphabet", gen_alphabet);
  g_sync->add_option("--word", gen_word)->required();
  auto* g_upward = gen_cmd->add_subcommand("upward-srs", "{_ -> a} for every letter");
  g_upward->add_option("--alphabet", gen_alphabet);
  auto* g_partial = gen_cmd->add_subcommand("partial-csrs", "Prune a DFA file and encode it as a cSRS");
  g_partial->add_option("file", gen_files)->expected(1)->required()->check(CLI::ExistingFile);
  g_partial->add_option("--keep", gen_keep)->check(CLI::PositiveNumber);
  g_partial->add_option("--seed", gen_seed);

  for (auto* sub : gen_cmd->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (learn_cmd->parsed()) return run_learn(learn);
    if (check_cmd->parsed()) return run_check(check);
    if (normalize_cmd->parsed()) return run_normalize(normalize);
    if (bench_cmd->parsed()) {
      bench.learner.initial_tests =
          bench_init == "epsilon" ? InitialTests::epsilon_only : InitialTests::epsilon_plus_alphabet;
      bench.learner.cex_processing = bench_cex == "suffixes" ? CexProcessing::all_suffixes : CexProcessing::all_prefixes;
      if (min_states) bench.params.min_states = min_states;
      if (max_states) bench.params.max_states = max_states;
      auto rows = run_bench(bench);
      std::string csv = csv_header() + "\n";
      for (const auto& r : rows) csv += csv_row(r) + "\n";
      csv += csv_summary(rows) + "\n";
      emit(csv, bench_out);
      return kOk;
    }
    if (gen_cmd->parsed()) {
      std::string text;
      if (g_random->parsed()) {
        Alphabet sigma = alphabet_arg(gen_alphabet);
        Dfa d = random_dfa(gen_states, sigma, gen_accept, gen_seed);
        if (!gen_idempotent.empty()) d = make_letter_idempotent(d, sigma.symbol(gen_idempotent));
        text = serialize(d);
      } else if (g_pattern->parsed()) {
        Alphabet sigma = alphabet_arg(gen_alphabet);
        std::vector<Word> patterns;
        for (const auto& p : gen_patterns) patterns.push_back(sigma.parse_word(p));
        text = serialize(pattern_dfa(patterns, gen_mode == "all" ? PatternMode::all : PatternMode::any, sigma));
      } else if (g_conv->parsed()) {
        text = serialize(convolution(load_dfa(gen_files[0]), load_dfa(gen_files[1])));
      } else if (gen_cmd->got_subcommand("bitadd")) {
        text = serialize(bitadd_dfa());
      } else if (gen_cmd->got_subcommand("bitadd-srs")) {
        text = serialize(bitadd_srs());
      } else if (g_idem->parsed()) {
        Alphabet sigma = alphabet_arg(gen_alphabet);
        text = serialize(idempotent_srs(sigma, {sigma.parse_word(gen_word)}));
      } else if (g_convsrs->parsed()) {
        text = serialize(convolution_srs(load_dfa(gen_files[0]).alphabet(), load_dfa(gen_files[1]).alphabet()));
      } else if (g_sync->parsed()) {
        Alphabet sigma = alphabet_arg(gen_alphabet);
        text = serialize(synchronizing_srs(sigma, sigma.parse_word(gen_word)));
      } else if (g_upward->parsed()) {
        text = serialize(upward_closed_system(alphabet_arg(gen_alphabet)));
      } else if (g_partial->parsed()) {
        text = serialize(encode_partial_dfa(prune_transitions(load_dfa(gen_files[0]), gen_keep, gen_seed)));
      }
      emit(text, gen_out);
      return kOk;
    }
  } catch (const advice_error& e) {
    std::cerr << "advice error: " << e.what() << "\n";
    return kAdvice;
  } catch (const divergence_error& e) {
    std::cerr << "learning diverged: " << e.what() << "\n";
    return kAdvice;
  } catch (const non_termination_error& e) {
    std::cerr << "rewriting did not terminate: " << e.what() << "\n";
    return kAdvice;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#include "ksorder/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ksorder/error.hpp"
#include "ksorder/exact_search.hpp"
#include "ksorder/generators.hpp"
#include "ksorder/goal_driven.hpp"
#include "ksorder/scoring.hpp"

namespace ksorder::cli {
namespace {

std::string format_real(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

unsigned default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Writes to --out when given, else to stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct Shape {
  unsigned n = 0;
  unsigned k = 0;

  ProblemParams params() const { return ProblemParams(n, k); }
};

void add_shape(CLI::App* cmd, Shape& shape) {
  cmd->add_option("--n", shape.n, "number of spikes")->required();
  cmd->add_option("--k", shape.k, "query size")->required();
}

struct GeneratorFlags {
  std::string algo = "pattern-shift";
  std::string reference;
  std::uint64_t base = 2;
  std::uint64_t seed = 0;
  CLI::Option* base_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* reference_opt = nullptr;
};

void add_generator_flags(CLI::App* cmd, GeneratorFlags& flags) {
  cmd->add_option("--algo", flags.algo,
                  "lex, colex, revdoor, pattern-shift, base-unrank, prng-perm, gse, mis")
      ->capture_default_str();
  flags.reference_opt = cmd->add_option(
      "--reference", flags.reference,
      "reference order: lex, colex, revdoor (pattern-shift also accepts self)");
  flags.base_opt = cmd->add_option("--base", flags.base, "digit base for base-unrank");
  flags.seed_opt = cmd->add_option("--seed", flags.seed, "seed for prng-perm");
}

// Rejects flags that the chosen algorithm does not use.
GeneratorSpec to_spec(const GeneratorFlags& f) {
  const bool has_ref = f.reference_opt && f.reference_opt->count() > 0;
  const bool has_base = f.base_opt && f.base_opt->count() > 0;
  const bool has_seed = f.seed_opt && f.seed_opt->count() > 0;
  auto reject = [&](bool given, const char* flag) {
    if (given) {
      throw Error(ErrorKind::configuration,
                  std::string(flag) + " does not apply to --algo " + f.algo);
    }
  };
  if (f.algo == "lex" || f.algo == "colex" || f.algo == "revdoor") {
    reject(has_ref, "--reference");
    reject(has_base, "--base");
    reject(has_seed, "--seed");
    return ReferenceSpec{parse_reference_order(f.algo)};
  }
  if (f.algo == "pattern-shift") {
    reject(has_base, "--base");
    reject(has_seed, "--seed");
    return PatternShiftSpec{has_ref ? parse_shift_reference(f.reference)
                                    : ShiftReference::lexicographic};
  }
  if (f.algo == "base-unrank") {
    reject(has_seed, "--seed");
    if (f.base < 2) throw Error(ErrorKind::configuration, "--base must be >= 2");
    return BaseUnrankSpec{f.base, has_ref ? parse_reference_order(f.reference)
                                          : ReferenceOrder::revolving_door};
  }
  if (f.algo == "prng-perm") {
    reject(has_ref, "--reference");
    reject(has_base, "--base");
    return PrngPermutationSpec{f.seed};
  }
  throw Error(ErrorKind::configuration, "unknown --algo '" + f.algo + "'");
}

bool is_goal_driven(const std::string& algo) { return algo == "gse" || algo == "mis"; }

QuerySequence build_sequence(const std::string& algo, const GeneratorFlags& flags,
                             const ProblemParams& params, unsigned scene_cap) {
  if (algo == "gse") return gse(params, GreedyOptions{.max_n = scene_cap}).sequence;
  if (algo == "mis") return mis(params);
  if (algo == "optimal") return branch_and_prune(params).best;
  GeneratorFlags copy = flags;
  copy.algo = algo;
  return generate(to_spec(copy), params);
}

// --- verbs -----------------------------------------------------------------

int cmd_generate(const Shape& shape, const GeneratorFlags& flags,
                 unsigned scene_cap, const std::string& out_path,
                 std::ostream& out) {
  const auto params = shape.params();
  params.require_masks();
  if (is_goal_driven(flags.algo)) {
    if (flags.reference_opt->count() || flags.base_opt->count() || flags.seed_opt->count()) {
      throw Error(ErrorKind::configuration,
                  "--reference/--base/--seed do not apply to --algo " + flags.algo);
    }
  }
  const auto seq = build_sequence(flags.algo, flags, params, scene_cap);
  Sink sink(out_path, out);
  write_sequence(sink.get(), seq);
  return kSuccess;
}

int cmd_score(const std::string& path, bool with_profile, bool json,
              unsigned scene_cap, unsigned threads, std::ostream& out) {
  const auto seq = read_sequence_file(path);
  seq.require_complete();
  seq.params().require_scene_enumeration(scene_cap);
  const ExactScore score = score_by_scenes(seq, threads);
  if (json) {
    nlohmann::json doc = {{"n", seq.params().n()},
                          {"k", seq.params().k()},
                          {"U", score.total_time},
                          {"scene_count", score.scene_count},
                          {"T", score.value()}};
    if (with_profile) doc["profile"] = score_by_elimination(seq).profile.counts;
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "U=" << score.total_time << " |S|=" << score.scene_count
      << " T=" << format_real(score.value()) << '\n';
  if (with_profile) write_profile_csv(out, seq, score_by_elimination(seq));
  return kSuccess;
}

int cmd_profile(const std::string& path, unsigned scene_cap,
                const std::string& out_path, std::ostream& out) {
  const auto seq = read_sequence_file(path);
  seq.require_complete();
  seq.params().require_scene_enumeration(scene_cap);
  Sink sink(out_path, out);
  write_profile_csv(sink.get(), seq, score_by_elimination(seq));
  return kSuccess;
}

int cmd_sigma(const Shape& shape, bool exact, bool json, std::ostream& out) {
  const auto params = shape.params();
  const double value = sigma(params);
  std::optional<Rational> enumerated;
  if (exact) enumerated = sigma_bruteforce(params);
  if (json) {
    nlohmann::json doc = {{"n", params.n()}, {"k", params.k()}, {"sigma", value}};
    if (enumerated) {
      doc["enumerated"] = {{"numerator", enumerated->numerator},
                           {"denominator", enumerated->denominator}};
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "sigma=" << format_real(value) << '\n';
  if (enumerated) {
    out << "enumerated=" << enumerated->numerator << '/' << enumerated->denominator
        << " (" << format_real(enumerated->value()) << ")\n";
  }
  return kSuccess;
}

int cmd_random_baseline(const Shape& shape, std::uint64_t trials, std::uint64_t seed,
                        std::uint64_t cutoff, unsigned threads, bool json,
                        std::ostream& out) {
  const auto params = shape.params();
  const double expected = expected_random_score(params);
  std::optional<MonteCarloEstimate> mc;
  if (trials > 0) {
    if (cutoff == 0) cutoff = 1000 * params.query_count();
    mc = monte_carlo_random_score(params, trials, seed, cutoff, threads);
  }
  if (json) {
    nlohmann::json doc = {{"n", params.n()}, {"k", params.k()}, {"expected", expected}};
    if (mc) {
      doc["monte_carlo"] = {{"mean", mc->mean},
                            {"standard_error", mc->standard_error},
                            {"trials", mc->trials},
                            {"censored", mc->censored}};
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "expected=" << format_real(expected) << '\n';
  if (mc) {
    out << "monte_carlo=" << format_real(mc->mean)
        << " stderr=" << format_real(mc->standard_error) << " trials=" << mc->trials
        << " censored=" << mc->censored << '\n';
  }
  return kSuccess;
}

int cmd_optimal(const Shape& shape, const std::string& method, bool json,
                const std::string& out_path, std::ostream& out) {
  const auto params = shape.params();
  SearchResult result = [&] {
    if (method == "branch-and-prune") return branch_and_prune(params);
    if (method == "brute-force") return brute_force(params);
    throw Error(ErrorKind::configuration, "unknown --method '" + method + "'");
  }();
  if (!out_path.empty()) write_sequence_file(out_path, result.best);
  if (json) {
    write_search_json(out, result);
    return kSuccess;
  }
  out << "U=" << result.best_score.total_time << " |S|=" << result.best_score.scene_count
      << " T=" << format_real(result.best_score.value()) << '\n'
      << "nodes_expanded=" << result.nodes_expanded << " pruned p1=" << result.pruned.score_bound
      << " p2=" << result.pruned.monotonicity << " p3=" << result.pruned.canonical
      << " p4=" << result.pruned.singleton_tail << '\n';
  write_sequence(out, result.best);
  return kSuccess;
}

struct CompareRow {
  std::string name;
  std::optional<ExactScore> score;
  double value = 0.0;
  std::string status = "ok";
  std::vector<std::uint64_t> remaining;
};

int cmd_compare(const Shape& shape, std::vector<std::string> algos,
                const GeneratorFlags& flags, unsigned scene_cap,
                const std::string& remaining_path, const std::string& archive,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto params = shape.params();
  std::vector<CompareRow> rows;
  for (const auto& algo : algos) {
    CompareRow row{algo};
    try {
      params.require_scene_enumeration(scene_cap);
      const auto seq = build_sequence(algo, flags, params, scene_cap);
      const auto scored = score_by_elimination(seq);
      row.score = scored.score;
      row.value = scored.score.value();
      std::uint64_t left = scored.score.scene_count;
      row.remaining.push_back(left);
      for (auto d : scored.profile.counts) row.remaining.push_back(left -= d);
      if (!archive.empty()) {
        std::filesystem::create_directories(archive);
        write_sequence_file((std::filesystem::path(archive) /
                             (algo + "_n" + std::to_string(params.n()) + "_k" +
                              std::to_string(params.k()) + ".txt"))
                                .string(),
                            seq);
      }
    } catch (const Error& e) {
      row.status = e.kind() == ErrorKind::capacity ? "capacity" : "error";
      err << "compare: " << algo << ": " << e.what() << '\n';
    }
    rows.push_back(std::move(row));
  }
  std::uint64_t scenes = 0;
  try {
    scenes = scene_count(params);
  } catch (const Error&) {
  }
  rows.push_back(CompareRow{"sigma", std::nullopt, sigma(params)});
  rows.push_back(CompareRow{"random", std::nullopt, expected_random_score(params)});
  std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    const bool a_ok = a.status == "ok";
    const bool b_ok = b.status == "ok";
    if (a_ok != b_ok) return a_ok;
    return a.value < b.value;
  });

  Sink sink(out_path, out);
  auto& csv = sink.get();
  csv << "algorithm,U,scene_count,T,status\n";
  for (const auto& row : rows) {
    csv << row.name << ',';
    if (row.score) csv << row.score->total_time;
    csv << ',';
    if (row.status == "ok" && scenes > 0) csv << scenes;
    csv << ',';
    if (row.status == "ok") csv << format_real(row.value);
    csv << ',' << row.status << '\n';
  }

  if (!remaining_path.empty()) {
    std::ofstream rem(remaining_path);
    if (!rem) throw Error(ErrorKind::parse, "cannot write '" + remaining_path + "'");
    std::vector<const CompareRow*> curves;
    for (const auto& row : rows) {
      if (!row.remaining.empty()) curves.push_back(&row);
    }
    const auto random_curve = expected_remaining_random(params);
    rem << 'i';
    for (const auto* row : curves) rem << ',' << row->name;
    rem << ",sigma\n";
    for (std::size_t i = 0; i < random_curve.size(); ++i) {
      rem << i;
      for (const auto* row : curves) rem << ',' << row->remaining[i];
      rem << ',' << format_real(random_curve[i]) << '\n';
    }
  }
  return kSuccess;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const auto outcomes = run_verification(options);
  bool ok = true;
  for (const auto& o : outcomes) {
    out << (o.passed() ? "PASS " : "FAIL ") << o.name << " (" << o.cases << " cases)\n";
    for (const auto& f : o.failures) out << "  " << f << '\n';
    ok = ok && o.passed();
  }
  out << (ok ? "verification passed\n" : "verification FAILED\n");
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orderings of k-subsets that minimize expected time to discovery", "ksorder"};
  app.require_subcommand(1);

  unsigned scene_cap = kDefaultSceneCap;
  unsigned threads = default_threads();
  bool json = false;
  std::string out_path;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--cap", scene_cap, "largest n for scene enumeration")
        ->capture_default_str();
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", json, "JSON output");
  };

  Shape shape;
  GeneratorFlags gen_flags;

  auto* generate_cmd = app.add_subcommand("generate", "write a complete query sequence");
  add_shape(generate_cmd, shape);
  add_generator_flags(generate_cmd, gen_flags);
  add_common(generate_cmd);
  generate_cmd->add_option("--out", out_path, "output file (default stdout)");

  std::string seq_path;
  bool with_profile = false;
  auto* score_cmd = app.add_subcommand("score", "exact score of a sequence file");
  score_cmd->add_option("sequence", seq_path, "sequence file")->required();
  score_cmd->add_flag("--profile", with_profile, "append the per-query CSV");
  add_common(score_cmd);

  auto* profile_cmd = app.add_subcommand("profile", "per-query discovery CSV");
  profile_cmd->add_option("sequence", seq_path, "sequence file")->required();
  profile_cmd->add_option("--out", out_path, "output file (default stdout)");
  add_common(profile_cmd);

  bool exact_sigma = false;
  auto* sigma_cmd = app.add_subcommand("sigma", "average score over all sequences");
  add_shape(sigma_cmd, shape);
  sigma_cmd->add_flag("--enumerate", exact_sigma, "also enumerate all N! sequences (N <= 10)");
  add_common(sigma_cmd);

  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  std::uint64_t cutoff = 0;
  auto* random_cmd =
      app.add_subcommand("random-baseline", "expected score of uniform random queries");
  add_shape(random_cmd, shape);
  random_cmd->add_option("--trials", trials, "Monte Carlo samples (0 = closed form only)");
  random_cmd->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
  random_cmd->add_option("--cutoff", cutoff, "max draws per sample (default 1000*N)");
  add_common(random_cmd);

  std::string method = "branch-and-prune";
  auto* optimal_cmd = app.add_subcommand("optimal", "exact optimum for small n");
  add_shape(optimal_cmd, shape);
  optimal_cmd->add_option("--method", method, "branch-and-prune or brute-force")
      ->capture_default_str();
  optimal_cmd->add_option("--out", out_path, "also write the optimal sequence file");
  add_common(optimal_cmd);

  std::vector<std::string> algos{"gse", "mis", "base-unrank", "pattern-shift", "lex"};
  std::string remaining_path;
  std::string archive;
  auto* compare_cmd = app.add_subcommand("compare", "score several algorithms as CSV");
  add_shape(compare_cmd, shape);
  compare_cmd->add_option("--algos", algos, "algorithms to compare")->delimiter(',');
  compare_cmd->add_option("--remaining", remaining_path,
                          "write remaining-scenes-per-step CSV to this file");
  compare_cmd->add_option("--archive", archive, "write every sequence into this directory");
  compare_cmd->add_option("--out", out_path, "output file (default stdout)");
  add_common(compare_cmd);

  VerifyOptions verify_opts;
  std::string verify_sequence;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  verify_cmd->add_option("--n-min", verify_opts.n_min)->capture_default_str();
  verify_cmd->add_option("--n-max", verify_opts.n_max)->capture_default_str();
  verify_cmd->add_option("--k-min", verify_opts.k_min)->capture_default_str();
  verify_cmd->add_option("--k-max", verify_opts.k_max)->capture_default_str();
  verify_cmd->add_option("--seed", verify_opts.seed)->capture_default_str();
  verify_cmd->add_option("--sequence", verify_sequence, "also check this sequence file");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    if (*generate_cmd) return cmd_generate(shape, gen_flags, scene_cap, out_path, out);
    if (*score_cmd) return cmd_score(seq_path, with_profile, json, scene_cap, threads, out);
    if (*profile_cmd) return cmd_profile(seq_path, scene_cap, out_path, out);
    if (*sigma_cmd) return cmd_sigma(shape, exact_sigma, json, out);
    if (*random_cmd) {
      return cmd_random_baseline(shape, trials, seed, cutoff, threads, json, out);
    }
    if (*optimal_cmd) return cmd_optimal(shape, method, json, out_path, out);
    if (*compare_cmd) {
      return cmd_compare(shape, algos, gen_flags, scene_cap, remaining_path, archive,
                         out_path, out, err);
    }
    if (*verify_cmd) {
      if (!verify_sequence.empty()) verify_opts.sequence_path = verify_sequence;
      return cmd_verify(verify_opts, out);
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::capacity ? kCapacityError : kValidationError;
  }
  return kValidationError;
}

}  // namespace ksorder::cli

#include "commands.hpp"

#include <ginijel/ginijel.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "csv.hpp"
#include "density.hpp"
#include "json.hpp"
#include "json_writer.hpp"

#ifndef GINIJEL_VERSION
#define GINIJEL_VERSION "0.0.0"
#endif

namespace ginijel::cli {
namespace {

using nlohmann::json;

// Raised for conditions where the requested test is undefined on the data.
struct Undefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string x_col;
  std::string y_col;
  std::string delimiter = ",";
  std::string output = "json";
  std::optional<std::uint64_t> seed;
};

struct Seed {
  std::uint64_t value = kDefaultSeed;
  std::string source = "default";
};

Seed resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, "flag"};
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    const std::string text(env);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw InputError(std::string(kSeedEnv) + "='" + text + "' is not an unsigned integer");
    }
    return {v, "env"};
  }
  return {};
}

CsvSchema schema_of(const Common& c) {
  if (c.delimiter.size() != 1) throw InputError("--delimiter must be a single character");
  return {c.x_col, c.y_col, c.delimiter[0]};
}

void add_common(CLI::App* cmd, Common& c, bool with_input = true) {
  if (with_input) {
    cmd->add_option("--input", c.input, "CSV file with a header row")->required();
    cmd->add_option("--x-col", c.x_col, "continuous column")->required();
    cmd->add_option("--y-col", c.y_col, "categorical column")->required();
    cmd->add_option("--delimiter", c.delimiter, "field delimiter")->capture_default_str();
  }
  cmd->add_option("--output", c.output, "json or table")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  cmd->add_option("--seed", c.seed,
                  std::string("RNG seed (default: $") + kSeedEnv + " or " +
                      std::to_string(kDefaultSeed) + ")");
}

json envelope(const std::string& command, const Seed& seed, json inputs, json result) {
  json e = json::object();
  e["version"] = GINIJEL_VERSION;
  e["command"] = command;
  e["seed"] = seed.value;
  e["seed_source"] = seed.source;
  e["inputs"] = std::move(inputs);
  e["result"] = std::move(result);
  return e;
}

json common_inputs(const Common& c) {
  return json{{"input", c.input}, {"x_col", c.x_col}, {"y_col", c.y_col},
              {"delimiter", c.delimiter}};
}

std::string fmt(double v, int precision = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string kv_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& [k, _] : rows) w = std::max(w, k.size());
  std::ostringstream s;
  for (const auto& [k, v] : rows) s << std::left << std::setw(int(w) + 2) << k << v << '\n';
  return s.str();
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
  Common c;
  std::string method = "jel";
  double alpha = 0.05;
  std::string variance = "jackknife";
  std::string weights = "full-sample";
  std::size_t reps = 999;
};

int cmd_test(const TestArgs& a, std::string& text) {
  const Seed seed = resolve_seed(a.c.seed);
  const Dataset d = read_dataset(a.c.input, schema_of(a.c));
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw Error(Errc::invalid_alpha, "alpha must lie in (0, 1)");

  json inputs = common_inputs(a.c);
  inputs["method"] = a.method;
  inputs["alpha"] = a.alpha;
  json result;
  std::vector<std::pair<std::string, std::string>> rows{{"n", std::to_string(d.size())},
                                                        {"categories", std::to_string(d.category_count())}};
  int code = kOk;

  if (a.method == "jel") {
    inputs["jackknife_weights"] = a.weights;
    JackknifeOptions opts;
    opts.weights = a.weights == "subsample" ? JackknifeWeights::subsample : JackknifeWeights::full_sample;
    const JelResult r = jel_test(d, a.alpha, {}, opts);
    const PseudoValues pv = pseudo_values(d, opts);
    result = json{{"delta_hat", r.delta_hat},       {"lambda", r.lambda},
                  {"statistic", r.statistic},       {"p_value", r.p_value},
                  {"critical_value", r.critical_value}, {"alpha", r.alpha},
                  {"reject", r.reject},             {"degenerate", r.degenerate},
                  {"n", r.n},                       {"pseudo_values", pv.nu}};
    rows.insert(rows.end(), {{"delta_hat", fmt(r.delta_hat)},
                             {"lambda", fmt(r.lambda)},
                             {"-2 log R(0)", fmt(r.statistic)},
                             {"p_value (chi2_1)", fmt(r.p_value)},
                             {"critical_value", fmt(r.critical_value)},
                             {"decision", r.reject ? "reject H0" : "do not reject H0"}});
    if (r.degenerate) {
      rows.emplace_back("note", "degenerate: zero outside pseudo-value hull or all pseudo-values zero");
      code = kDegenerate;
    }
  } else if (a.method == "normal") {
    inputs["variance_source"] = a.variance;
    const VarianceSource src = a.variance == "appendix"    ? VarianceSource::appendix
                               : a.variance == "main_text" ? VarianceSource::main_text
                                                           : VarianceSource::jackknife;
    NormalTestResult r;
    try {
      r = normal_test(d, a.alpha, src);
    } catch (const Error& e) {
      if (e.code() != Errc::zero_variance) throw;
      throw Undefined(e.what());
    }
    result = json{{"delta_hat", r.delta_hat},   {"sigma0_sq", r.sigma0_sq},
                  {"statistic", r.statistic},   {"p_value", r.p_value},
                  {"critical_value", r.critical_value}, {"alpha", r.alpha},
                  {"reject", r.reject},         {"variance_source", a.variance},
                  {"n", d.size()}};
    rows.insert(rows.end(), {{"delta_hat", fmt(r.delta_hat)},
                             {"sigma0^2", fmt(r.sigma0_sq)},
                             {"z", fmt(r.statistic)},
                             {"p_value (one-sided)", fmt(r.p_value)},
                             {"decision", r.reject ? "reject H0" : "do not reject H0"}});
  } else {
    inputs["reps"] = a.reps;
    SeededRng rng(seed.value);
    const double p = permutation_baseline(d, a.reps, rng);
    const double delta = estimate_delta(d).delta_hat;
    result = json{{"delta_hat", delta}, {"p_value", p},       {"reps", a.reps},
                  {"alpha", a.alpha},   {"reject", p < a.alpha}, {"n", d.size()}};
    rows.insert(rows.end(), {{"delta_hat", fmt(delta)},
                             {"p_value (permutation)", fmt(p)},
                             {"reps", std::to_string(a.reps)},
                             {"decision", p < a.alpha ? "reject H0" : "do not reject H0"}});
  }

  text = a.c.output == "table" ? kv_table(rows)
                               : dump17(envelope("test", seed, inputs, result)) + "\n";
  return code;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  Common c;
  std::string path = "fast";
};

int cmd_estimate(const EstimateArgs& a, std::string& text) {
  const Seed seed = resolve_seed(a.c.seed);
  const Dataset d = read_dataset(a.c.input, schema_of(a.c));
  const GiniEstimate e =
      estimate_delta(d, a.path == "brute" ? EstimatorPath::brute : EstimatorPath::fast);

  json cats = json::array();
  std::ostringstream table;
  table << "delta_hat  " << fmt(e.delta_hat, 10) << "  (n = " << e.n << ", path = " << a.path
        << ")\n\n"
        << std::left << std::setw(20) << "category" << std::setw(8) << "count" << std::setw(14)
        << "p_hat" << "delta_k\n";
  for (Category k = 0; k < d.category_count(); ++k) {
    cats.push_back(json{{"label", d.label(k)},
                        {"count", d.counts()[k]},
                        {"p_hat", e.p_hat[k]},
                        {"delta_k", e.delta_k[k]}});
    table << std::left << std::setw(20) << d.label(k) << std::setw(8) << d.counts()[k]
          << std::setw(14) << fmt(e.p_hat[k]) << fmt(e.delta_k[k], 10) << '\n';
  }
  json inputs = common_inputs(a.c);
  inputs["path"] = a.path;
  const json result{{"delta_hat", e.delta_hat}, {"n", e.n}, {"categories", cats}};
  text = a.c.output == "table" ? table.str()
                               : dump17(envelope("estimate", seed, inputs, result)) + "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  Common c;
  std::string scenario = "type1-lognormal";
  std::vector<std::size_t> n{100};
  std::optional<std::size_t> reps;
  std::string method = "jel";
  double alpha = 0.05;
  double mu = 0.0;
  double sigma = 1.0;
  std::size_t k = 6;
  unsigned threads = 0;
  bool reproduce = false;
};

json report_json(const SimReport& r) {
  return json{{"scenario", r.scenario},
              {"n", r.n},
              {"reps", r.reps},
              {"alpha", r.alpha},
              {"method", to_string(r.method)},
              {"rejections", r.rejections},
              {"degenerate", r.degenerate},
              {"rejection_rate", r.rejection_rate},
              {"mc_stderr", r.mc_stderr},
              {"seed", r.seed},
              {"wall_time_seconds", r.wall_time_seconds}};
}

int cmd_simulate(const SimulateArgs& a, std::string& text) {
  const Seed seed = resolve_seed(a.c.seed);
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw Error(Errc::invalid_alpha, "alpha must lie in (0, 1)");
  const TestMethod method = a.method == "normal" ? TestMethod::normal : TestMethod::jel;

  struct Job {
    Scenario s;
    std::vector<std::size_t> n;
    std::size_t reps;
  };
  std::vector<Job> jobs;
  if (a.reproduce) {
    const std::vector<std::size_t> grid{20, 40, 60, 80, 100};
    jobs.push_back({Scenario::type1_lognormal(0, 1, 6), grid, a.reps.value_or(2000)});
    jobs.push_back({Scenario::type1_lognormal(0, 2, 6), grid, a.reps.value_or(2000)});
    for (auto s : {Scenario::mix_balanced(), Scenario::mix_light(), Scenario::mix_heavy()}) {
      jobs.push_back({s, grid, a.reps.value_or(1000)});
    }
  } else {
    const Scenario s = parse_scenario(a.scenario, a.mu, a.sigma, a.k);
    const std::size_t default_reps = s.kind == ScenarioKind::type1_lognormal ? 2000 : 1000;
    jobs.push_back({s, a.n, a.reps.value_or(default_reps)});
  }

  json rows = json::array();
  std::ostringstream table;
  table << std::left << std::setw(38) << "scenario" << std::setw(6) << "n" << std::setw(7)
        << "reps" << std::setw(8) << "method" << std::setw(10) << "rate" << std::setw(10)
        << "mc_se" << "degenerate\n";
  for (const auto& job : jobs) {
    for (std::size_t n : job.n) {
      const SimReport r = run_study(job.s, n, job.reps, a.alpha, method, seed.value, a.threads);
      rows.push_back(report_json(r));
      table << std::left << std::setw(38) << r.scenario << std::setw(6) << r.n << std::setw(7)
            << r.reps << std::setw(8) << to_string(r.method) << std::setw(10)
            << fmt(r.rejection_rate, 4) << std::setw(10) << fmt(r.mc_stderr, 3) << r.degenerate
            << '\n';
    }
  }
  json inputs{{"scenario", a.reproduce ? "paper-grid" : a.scenario},
              {"n", a.n},
              {"method", a.method},
              {"alpha", a.alpha},
              {"reproduce_paper", a.reproduce}};
  if (a.reps) inputs["reps"] = *a.reps;
  if (!a.reproduce && parse_scenario(a.scenario).kind == ScenarioKind::type1_lognormal) {
    inputs["mu"] = a.mu;
    inputs["sigma"] = a.sigma;
    inputs["k"] = a.k;
  }
  text = a.c.output == "table"
             ? table.str()
             : dump17(envelope("simulate", seed, inputs, json{{"rows", rows}})) + "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// density

struct DensityArgs {
  Common c;
  std::size_t points = 256;
};

int cmd_density(const DensityArgs& a, std::string& text) {
  const Seed seed = resolve_seed(a.c.seed);
  const Dataset d = read_dataset(a.c.input, schema_of(a.c));
  if (a.points < 2) throw InputError("--points must be at least 2");
  std::vector<DensitySeries> series;
  try {
    series = category_densities(d, a.points);
  } catch (const DegenerateBandwidth& e) {
    throw Undefined(e.what());
  }
  json out = json::array();
  std::ostringstream table;
  table << "category,x,density\n";
  for (const auto& s : series) {
    out.push_back(json{{"category", s.label},
                       {"count", s.count},
                       {"bandwidth", s.bandwidth},
                       {"grid", s.grid},
                       {"density", s.density}});
    for (std::size_t g = 0; g < s.grid.size(); ++g) {
      table << s.label << ',' << fmt(s.grid[g], 8) << ',' << fmt(s.density[g], 8) << '\n';
    }
  }
  json inputs = common_inputs(a.c);
  inputs["points"] = a.points;
  text = a.c.output == "table"
             ? table.str()
             : dump17(envelope("density", seed, inputs, json{{"series", out}})) + "\n";
  return kOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::hull_violation:
    case Errc::all_zero:
    case Errc::zero_variance:
    case Errc::no_convergence:
      return kDegenerate;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Categorical Gini covariance and JEL independence tests", "ginijel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GINIJEL_VERSION);

  TestArgs ta;
  auto* test = app.add_subcommand("test", "test independence of x and y");
  add_common(test, ta.c);
  test->add_option("--method", ta.method, "jel, normal or permutation")
      ->check(CLI::IsMember({"jel", "normal", "permutation"}))
      ->capture_default_str();
  test->add_option("--alpha", ta.alpha, "significance level")->capture_default_str();
  test->add_option("--variance-source", ta.variance, "normal test: jackknife, appendix or main_text")
      ->check(CLI::IsMember({"jackknife", "appendix", "main_text"}))
      ->capture_default_str();
  test->add_option("--jackknife-weights", ta.weights, "jel: full-sample or subsample")
      ->check(CLI::IsMember({"full-sample", "subsample"}))
      ->capture_default_str();
  test->add_option("--reps", ta.reps, "permutation replicates")->capture_default_str();

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "estimate the categorical Gini covariance");
  add_common(estimate, ea.c);
  estimate->add_option("--path", ea.path, "brute or fast")
      ->check(CLI::IsMember({"brute", "fast"}))
      ->capture_default_str();

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo size and power");
  add_common(simulate, sa.c, false);
  simulate->add_option("--scenario", sa.scenario,
                       "type1-lognormal, mix-balanced, mix-light or mix-heavy")
      ->capture_default_str();
  simulate->add_option("--n", sa.n, "sample sizes")->capture_default_str();
  simulate->add_option("--reps", sa.reps, "replications (default 2000 type-I, 1000 power)");
  simulate->add_option("--method", sa.method, "jel or normal")
      ->check(CLI::IsMember({"jel", "normal"}))
      ->capture_default_str();
  simulate->add_option("--alpha", sa.alpha)->capture_default_str();
  simulate->add_option("--mu", sa.mu, "type1-lognormal location")->capture_default_str();
  simulate->add_option("--sigma", sa.sigma, "type1-lognormal scale")->capture_default_str();
  simulate->add_option("--k", sa.k, "type1-lognormal category count")->capture_default_str();
  simulate->add_option("--threads", sa.threads, "worker threads, 0 = all cores")
      ->capture_default_str();
  simulate->add_flag("--reproduce-paper", sa.reproduce,
                     "run the type-I and power grid n = 20..100");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "per-category kernel density series");
  add_common(density, da.c);
  density->add_option("--points", da.points, "grid points per series")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::string text;
  int code = kOk;
  try {
    if (*test) code = cmd_test(ta, text);
    else if (*estimate) code = cmd_estimate(ea, text);
    else if (*simulate) code = cmd_simulate(sa, text);
    else code = cmd_density(da, text);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Undefined& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  out << text << std::flush;
  return code;
}

}  // namespace ginijel::cli

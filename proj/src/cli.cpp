#include "mirrorjac/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mirrorjac/continuum.hpp"
#include "mirrorjac/error.hpp"
#include "mirrorjac/exact_identity.hpp"
#include "mirrorjac/numeric.hpp"
#include "mirrorjac/report.hpp"
#include "mirrorjac/sampling.hpp"
#include "mirrorjac/theorem2.hpp"

namespace mirrorjac::cli {

namespace {

const char* const kCommands[] = {"theorem1", "theorem1-exact", "appendix", "scattering",
                                 "theorem2", "bridge",         "continuum", "sweep"};

// Input problems (bad files, violated preconditions) map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double tolerance(const RunConfig& config, const std::string& name) {
  const auto it = config.tolerances.find(name);
  return it != config.tolerances.end() ? it->second : default_tolerances().at(name);
}

Json config_json(const RunConfig& config) {
  Json tol = Json::object();
  for (const auto& [name, value] : default_tolerances()) tol[name] = tolerance(config, name);
  Json j = {{"command", config.command}};
  j["input"] = config.input_path ? Json(*config.input_path) : Json(nullptr);
  j["M"] = config.M ? Json(*config.M) : Json(nullptr);
  j["J"] = config.J ? Json(*config.J) : Json(nullptr);
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  if (config.command == "continuum") {
    j["A"] = config.A;
    j["N"] = config.N;
  }
  j["format"] = config.format == Format::json ? "json" : "csv";
  j["tolerances"] = tol;
  return j;
}

Json envelope(const RunConfig& config) {
  return {{"tool", "mirrorjac"}, {"version", MIRRORJAC_VERSION}, {"config", config_json(config)}};
}

// Runs body(i) for i in [0, n); each index writes only its own slot, so
// the report does not depend on the thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Trial {
  Json data;
  bool violation = false;
};

template <class F>
std::vector<Trial> run_trials(const RunConfig& config, std::size_t n, F&& one) {
  std::vector<Trial> out(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    try {
      out[i] = one(i);
    } catch (const std::exception& e) {
      out[i].data = {{"trial", i}, {"error", e.what()}};
      out[i].violation = true;
    }
  });
  return out;
}

int finish(Json report, const std::vector<Trial>& trials, std::ostream& out, std::ostream& err) {
  Json list = Json::array();
  std::size_t failures = 0;
  for (const Trial& t : trials) {
    list.push_back(t.data);
    if (t.violation) {
      ++failures;
      err << "violation: " << t.data.dump() << '\n';
    }
  }
  report["trials"] = list;
  report["violations"] = failures;
  out << report.dump(2) << '\n';
  return failures == 0 ? kExitOk : kExitViolation;
}

std::size_t require_M(const RunConfig& config, std::size_t fallback) {
  const std::size_t M = config.M.value_or(fallback);
  if (M == 0) throw UsageError("--M must be >= 1");
  return M;
}

Potential load_or_sample_potential(const RunConfig& config) {
  if (config.input_path) return potential_from_json(read_json_file(*config.input_path));
  TrialRng rng(config.seed, 0);
  return random_admissible_potential(rng, config.J.value_or(3));
}

Json theorem1_trial(const MirrorJacobiSpec& spec, std::size_t i, double tol, bool exact,
                    bool* violation) {
  const Theorem1Report r = verify_theorem1(spec);
  const double M = static_cast<double>(spec.half_size());
  if (exact) {
    *violation = !r.exact_match.value_or(false);
  } else {
    *violation = r.residual >= tol * M * M;
  }
  return {{"trial", i}, {"spec", to_json(spec)}, {"report", to_json(r)}};
}

int cmd_theorem1(const RunConfig& config, bool exact, std::ostream& out, std::ostream& err) {
  Json report = envelope(config);
  const double tol = tolerance(config, "theorem1");
  if (config.input_path) {
    const MirrorJacobiSpec spec = spec_from_json(read_json_file(*config.input_path));
    if (exact && !spec.is_integer()) throw UsageError("theorem1-exact needs an integer spec");
    Trial t;
    t.data = theorem1_trial(spec, 0, tol, exact, &t.violation);
    return finish(report, {t}, out, err);
  }
  const std::size_t M = require_M(config, 4);
  if (exact && M > kMaxExactDimension) throw UsageError("--M must be <= 64 on the exact path");
  const auto trials = run_trials(config, config.trials, [&](std::size_t i) {
    TrialRng rng(config.seed, i);
    const MirrorJacobiSpec spec = exact ? random_integer_spec(rng, M) : random_real_spec(rng, M);
    Trial t;
    t.data = theorem1_trial(spec, i, tol, exact, &t.violation);
    return t;
  });
  return finish(report, trials, out, err);
}

int cmd_appendix(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json report = envelope(config);
  const std::size_t max_M = require_M(config, 10);
  const double tol13 = tolerance(config, "identity13");
  const double tol104 = tolerance(config, "lemma3");
  const double tol112 = tolerance(config, "cos_product");
  std::vector<Trial> rows(max_M);
  for (std::size_t k = 0; k < max_M; ++k) {
    const int M = static_cast<int>(k + 1);
    double lemma3 = 0.0;
    for (int n = 1; n <= M; ++n) {
      for (int g = 0; g < 100; ++g) {
        lemma3 = std::max(lemma3, appendix_lemma3(M, n, kPi * g / 99.0));
      }
    }
    const double id13 = appendix_identity13(M);
    const ProductResidual cos = appendix_cos_product(M);
    rows[k].data = {{"M", M},
                    {"identity13_log_residual", id13},
                    {"lemma3_max_residual", lemma3},
                    {"cos_product_residual", cos.absolute},
                    {"cos_product_log_residual", cos.log}};
    rows[k].violation = id13 >= tol13 || lemma3 >= tol104 || cos.absolute >= tol112;
  }
  if (config.format == Format::csv) {
    out << "M,identity13_log_residual,lemma3_max_residual,cos_product_residual\n";
    out.precision(17);
    for (const Trial& r : rows) {
      out << r.data["M"].get<int>() << ',' << r.data["identity13_log_residual"].get<double>() << ','
          << r.data["lemma3_max_residual"].get<double>() << ','
          << r.data["cos_product_residual"].get<double>() << '\n';
    }
    return std::any_of(rows.begin(), rows.end(), [](const Trial& r) { return r.violation; })
               ? kExitViolation
               : kExitOk;
  }
  return finish(report, rows, out, err);
}

int cmd_scattering(const RunConfig& config, std::ostream& out) {
  Potential pot;
  if (config.input_path) {
    pot = potential_from_json(read_json_file(*config.input_path));
  } else {
    TrialRng rng(config.seed, 0);
    pot = random_potential(rng, config.J.value_or(2), 1.0);
  }
  const JostPolynomial jost = jost_polynomial(pot);
  if (config.format == Format::csv) {
    if (!jost.admissible) throw UsageError("phase samples need an admissible potential");
    const PhaseFunction phase = phase_function(jost);
    out << "p,eta,sigma\n";
    out.precision(17);
    for (std::size_t i = 0; i < phase.grid().size(); ++i) {
      out << phase.grid()[i] << ',' << phase.eta_samples()[i] << ',' << phase.sigma_samples()[i]
          << '\n';
    }
    return kExitOk;
  }
  Json report = envelope(config);
  report["potential"] = to_json(pot);
  report["jost"] = to_json(jost);
  report["discrete_spectrum"] = to_json(discrete_spectrum(jost));
  report["winding_number"] = winding_number(jost);
  out << report.dump(2) << '\n';
  return kExitOk;
}

Trial theorem2_trial(const RunConfig& config, const Potential& pot, std::size_t i) {
  const Theorem2Report r = verify_theorem2(pot);
  Trial t;
  t.data = {{"trial", i}, {"potential", to_json(pot)}, {"report", to_json(r)}};
  if (r.identity_expected) {
    t.violation = r.eq57_residual >= tolerance(config, "eq57") ||
                  r.eq56_residual.value_or(0.0) >= tolerance(config, "eq56") ||
                  r.eq55_residual.value_or(0.0) >= tolerance(config, "eq55");
  }
  return t;
}

int cmd_theorem2(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json report = envelope(config);
  if (config.input_path) {
    const Potential pot = potential_from_json(read_json_file(*config.input_path));
    return finish(report, {theorem2_trial(config, pot, 0)}, out, err);
  }
  const std::size_t J_max = config.J.value_or(6);
  if (J_max == 0) throw UsageError("--J must be >= 1");
  const auto trials = run_trials(config, config.trials, [&](std::size_t i) {
    TrialRng rng(config.seed, i);
    return theorem2_trial(config, random_admissible_potential(rng, J_max), i);
  });
  return finish(report, trials, out, err);
}

int cmd_bridge(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Potential pot = load_or_sample_potential(config);
  const std::size_t M = require_M(config, 20);
  const JostPolynomial jost = jost_polynomial(pot);
  if (!jost.admissible) throw UsageError("bridge needs an admissible potential");
  const PhaseFunction phase = phase_function(jost);
  const double tol = tolerance(config, "bridge");
  const double tol_x = tolerance(config, "crosscheck");

  std::vector<std::size_t> ladder;
  for (std::size_t m : {5, 10, 20, 40, 64}) {
    if (m > pot.support() && m < M) ladder.push_back(m);
  }
  ladder.push_back(M);

  std::vector<Trial> rows(ladder.size());
  parallel_for(ladder.size(), config.threads, [&](std::size_t i) {
    const FiniteMBridgeReport r = finite_m_bridge(phase, pot, ladder[i]);
    rows[i].data = to_json(r);
    rows[i].violation = std::abs(r.sum_S) >= tol || r.spectra_crosscheck >= tol_x;
  });
  const bool bad = std::any_of(rows.begin(), rows.end(), [](const Trial& r) { return r.violation; });
  if (config.format == Format::csv) {
    out << "M,sum_S\n";
    out.precision(17);
    for (const Trial& r : rows) {
      out << r.data["M"].get<std::size_t>() << ',' << r.data["sum_S"].get<double>() << '\n';
    }
    return bad ? kExitViolation : kExitOk;
  }
  Json report = envelope(config);
  report["potential"] = to_json(pot);
  report["bridge"] = rows.back().data;
  Json table = Json::array();
  for (const Trial& r : rows) table.push_back({{"M", r.data["M"]}, {"sum_S", r.data["sum_S"]}});
  report["convergence"] = table;
  if (bad) err << "violation: |sum S_m| or spectra cross-check above tolerance\n";
  out << report.dump(2) << '\n';
  return bad ? kExitViolation : kExitOk;
}

int cmd_continuum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!(config.A >= 0.1 && config.A <= 10.0)) throw UsageError("--A must lie in [0.1, 10]");
  if (config.N < 10) throw UsageError("--N must be >= 10");
  std::vector<std::size_t> ladder;
  for (std::size_t n : {10, 25, 50, 100}) {
    if (n < config.N) ladder.push_back(n);
  }
  ladder.push_back(config.N);
  std::vector<HypothesisReport> results(ladder.size());
  parallel_for(ladder.size(), config.threads,
               [&](std::size_t i) { results[i] = hypothesis_product(config.A, ladder[i]); });
  const HypothesisReport& last = results.back();
  const double tol = tolerance(config, "hypothesis");
  const bool bad = std::min(last.printed.gap, last.parity.gap) >= tol;

  if (config.format == Format::csv) {
    out << "A,N,pairing,lhs_log,rhs_log,gap\n";
    out.precision(17);
    for (const HypothesisReport& r : results) {
      for (const PairingResult* p : {&r.printed, &r.parity}) {
        out << r.A << ',' << r.N << ',' << to_string(p->pairing) << ',' << p->lhs_log << ','
            << p->rhs_log << ',' << p->gap << '\n';
      }
    }
    return bad ? kExitViolation : kExitOk;
  }
  Json report = envelope(config);
  Json table = Json::array();
  for (const HypothesisReport& r : results) table.push_back(to_json(r));
  report["convergence"] = table;
  const auto decreasing = [&](auto member) {
    for (std::size_t i = 1; i < results.size(); ++i) {
      if (!((results[i].*member).gap < (results[i - 1].*member).gap)) return false;
    }
    return true;
  };
  Json converging = Json::array();
  if (decreasing(&HypothesisReport::printed)) converging.push_back("printed");
  if (decreasing(&HypothesisReport::parity)) converging.push_back("parity");
  report["converging_pairings"] = converging;
  if (bad) err << "violation: gap at N = " << config.N << " above tolerance\n";
  out << report.dump(2) << '\n';
  return bad ? kExitViolation : kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::size_t max_M = require_M(config, 10);
  if (max_M > kMaxExactDimension) throw UsageError("--M must be <= 64 for the sweep");
  const std::size_t J_max = config.J.value_or(6);
  if (J_max == 0) throw UsageError("--J must be >= 1");
  const double tol1 = tolerance(config, "theorem1");

  struct Job {
    std::string suite;
    std::size_t M;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t M = 1; M <= max_M; ++M) {
    for (std::size_t i = 0; i < config.trials; ++i) jobs.push_back({"theorem1-exact", M, i});
  }
  for (std::size_t M = 1; M <= max_M; ++M) {
    for (std::size_t i = 0; i < config.trials; ++i) jobs.push_back({"theorem1", M, i});
  }
  for (std::size_t i = 0; i < config.trials; ++i) jobs.push_back({"theorem2", 0, i});

  const auto trials = run_trials(config, jobs.size(), [&](std::size_t k) {
    const Job& job = jobs[k];
    // Distinct streams per suite and M.
    const std::uint64_t stream = splitmix64(config.seed ^ (job.M << 8) ^ job.suite.size());
    TrialRng rng(stream, job.trial);
    Trial t;
    if (job.suite == "theorem2") {
      t = theorem2_trial(config, random_admissible_potential(rng, J_max), job.trial);
    } else {
      const bool exact = job.suite == "theorem1-exact";
      const MirrorJacobiSpec spec =
          exact ? random_integer_spec(rng, job.M) : random_real_spec(rng, job.M);
      t.data = theorem1_trial(spec, job.trial, tol1, exact, &t.violation);
    }
    t.data["suite"] = job.suite;
    return t;
  });

  // Keep the report compact: per-suite counts plus the failing cases.
  Json report = envelope(config);
  Json summary = Json::object();
  Json failures = Json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    Json& s = summary[jobs[k].suite];
    if (s.is_null()) s = {{"trials", 0}, {"violations", 0}};
    s["trials"] = s["trials"].get<std::size_t>() + 1;
    if (trials[k].violation) {
      s["violations"] = s["violations"].get<std::size_t>() + 1;
      failures.push_back(trials[k].data);
      err << "violation: " << trials[k].data.dump() << '\n';
    }
  }
  report["summary"] = summary;
  report["failures"] = failures;
  out << report.dump(2) << '\n';
  return failures.empty() ? kExitOk : kExitViolation;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tolerances = {
      {"theorem1", 1e-8},   {"identity13", 1e-9}, {"lemma3", 1e-12},  {"cos_product", 1e-12},
      {"eq55", 1e-5},       {"eq56", 1e-8},       {"eq57", 1e-8},     {"bridge", 1e-7},
      {"crosscheck", 1e-9}, {"hypothesis", 1e-2},
  };
  return tolerances;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    for (const auto& [name, value] : config.tolerances) {
      if (!default_tolerances().contains(name)) throw UsageError("unknown tolerance '" + name + "'");
      if (!(value > 0.0)) throw UsageError("tolerance '" + name + "' must be positive");
    }
    if (config.threads == 0) throw UsageError("--threads must be >= 1");
    const std::string& c = config.command;
    if (c == "theorem1") return cmd_theorem1(config, false, out, err);
    if (c == "theorem1-exact") return cmd_theorem1(config, true, out, err);
    if (c == "appendix") return cmd_appendix(config, out, err);
    if (c == "scattering") return cmd_scattering(config, out);
    if (c == "theorem2") return cmd_theorem2(config, out, err);
    if (c == "bridge") return cmd_bridge(config, out, err);
    if (c == "continuum") return cmd_continuum(config, out, err);
    if (c == "sweep") return cmd_sweep(config, out, err);
    throw UsageError("unknown command '" + c + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // PreconditionError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Verification suites for eigenvalue product and scattering identities"};
  app.set_version_flag("--version", std::string(MIRRORJAC_VERSION));
  app.require_subcommand(1);

  RunConfig config;
  std::string input;
  std::size_t M = 0;
  std::size_t J = 0;
  std::vector<std::string> tols;
  std::string out_path;
  std::string format = "json";

  app.add_option("--M", M, "Half-size M (maximum M for appendix and sweep)")->envname("MIRRORJAC_M");
  app.add_option("--J", J, "Support bound J (maximum J for random potentials)")
      ->envname("MIRRORJAC_J");
  app.add_option("--spec,--potential", input, "JSON input file")
      ->check(CLI::ExistingFile)
      ->envname("MIRRORJAC_INPUT");
  app.add_option("--trials", config.trials, "Number of random trials")
      ->envname("MIRRORJAC_TRIALS");
  app.add_option("--seed", config.seed, "Seed for all random sweeps")->envname("MIRRORJAC_SEED");
  app.add_option("--tol", tols, "Tolerance override name=value (repeatable)")
      ->envname("MIRRORJAC_TOL")
      ->delimiter(',');
  app.add_option("--out", out_path, "Write the report here instead of stdout")
      ->envname("MIRRORJAC_OUT");
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("MIRRORJAC_FORMAT");
  app.add_option("--threads", config.threads, "Worker threads for trial loops")
      ->envname("MIRRORJAC_THREADS");
  app.add_option("--A", config.A, "Delta strength (continuum)")->envname("MIRRORJAC_A");
  app.add_option("--N", config.N, "Truncation order (continuum)")->envname("MIRRORJAC_N");

  for (const char* name : kCommands) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!input.empty()) config.input_path = input;
  if (app.count("--M") > 0) config.M = M;
  if (app.count("--J") > 0) config.J = J;
  if (!out_path.empty()) config.output_path = out_path;
  config.format = format == "csv" ? Format::csv : Format::json;
  for (const std::string& t : tols) {
    const auto eq = t.find('=');
    double value = 0.0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument(t);
      value = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "error: --tol expects name=value, got '" << t << "'\n";
      return kExitUsage;
    }
    config.tolerances[t.substr(0, eq)] = value;
  }

  if (!config.output_path) return run(config, std::cout, std::cerr);
  std::ostringstream buffer;
  const int code = run(config, buffer, std::cerr);
  std::ofstream file(*config.output_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write " << *config.output_path << '\n';
    return kExitUsage;
  }
  file << buffer.str();
  return code;
}

}  // namespace mirrorjac::cli

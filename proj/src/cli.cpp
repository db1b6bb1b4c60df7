#include "rholab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rholab/fourier.hpp"
#include "rholab/mixing.hpp"
#include "rholab/rho_solver.hpp"
#include "rholab/spectral.hpp"
#include "rholab/sst.hpp"
#include "rholab/version.hpp"

namespace rholab::cli {

namespace {

using json = nlohmann::ordered_json;

std::string default_out_path() {
  if (const char* env = std::getenv("RHO_LAB_OUT"); env && *env) return env;
  return "results/records.jsonl";
}

std::string now_rfc3339() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

u64 entropy_seed() {
  std::random_device rd;
  return (static_cast<u64>(rd()) << 32) ^ static_cast<u64>(rd());
}

void append_record(const std::string& path, const json& record) {
  const std::filesystem::path file(path);
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream stream(file, std::ios::app);
  if (!stream) throw InvalidArgumentError("cannot open record file " + path);
  stream << record.dump() << '\n';
}

/// Path of the first field at which two json values differ, or empty.
std::string first_difference(const json& a, const json& b, const std::string& path) {
  if (a == b) return {};
  if (a.type() != b.type() || !a.is_structured() || a.size() != b.size())
    return path.empty() ? "outputs" : path;
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return path + "/" + it.key();
      const auto sub = first_difference(it.value(), b.at(it.key()), path + "/" + it.key());
      if (!sub.empty()) return sub;
    }
  } else if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto sub = first_difference(a[i], b[i], path + "/" + std::to_string(i));
      if (!sub.empty()) return sub;
    }
  }
  return path.empty() ? "outputs" : path;
}

double median_of(std::vector<u64> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0;
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return 0.5 * (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2]));
}

// ---- pure compute functions: params json + seed -> outputs json ----
// replay re-runs these with the recorded inputs, so the normal path and the
// replay path share one implementation.

json compute_solve(const json& prm, u64 seed) {
  const GroupInstance inst{prm.at("q").get<u64>(), prm.at("p").get<u64>(),
                           prm.at("x").get<u64>(), prm.at("y").get<u64>()};
  const SolveResult res = solve(inst, seed, prm.value("max_attempts", 64));
  return json{{"k", res.k}, {"attempts", res.attempts}};
}

json compute_collide(const json& prm, u64 seed) {
  const WalkParams params(OddModulus(prm.at("p").get<u64>()), prm.at("k").get<u64>());
  const CollisionStats stats = collision_experiment(
      params, prm.at("c").get<double>(), prm.at("trials").get<u64>(), seed);
  return json{{"bound", stats.bound_used},
              {"fraction_within_bound", stats.fraction_within_bound},
              {"proposition_floor", stats.proposition_floor},
              {"meets_floor", stats.meets_floor},
              {"median_steps", median_of(stats.steps_to_collision)}};
}

json compute_mix(const json& prm, u64 /*seed*/) {
  const u64 p = prm.at("p").get<u64>();
  const double eps = prm.at("eps").get<double>();
  const u64 max_steps = prm.value("max_steps", u64{100000});
  if (prm.value("block", false)) {
    return json{{"tau_blocks", tau_s_block(OddModulus(p), eps, max_steps)}};
  }
  const WalkParams params(OddModulus(p), prm.at("k").get<u64>());
  const MixingReport report = tau_s(params, eps, max_steps);
  u64 worst = 0;
  for (u64 x = 0; x < report.per_start_tau.size(); ++x) {
    if (report.per_start_tau[x] == report.tau) {
      worst = x;
      break;
    }
  }
  return json{{"tau", report.tau}, {"worst_start", worst}, {"sep_curve", report.sep_curve}};
}

json compute_spectral(const json& prm, u64 /*seed*/) {
  const u64 p = prm.at("p").get<u64>();
  const double eps = prm.value("eps", 0.5);
  const OddModulus modulus(p);
  const GapBounds bounds = gap_bounds(modulus);
  json out{{"lambda_k_bound", bounds.lambda_k_bound},
           {"lambda_r2_bound", bounds.lambda_r2_bound}};
  if (p <= 512) {
    const WalkParams params(modulus, prm.at("k").get<u64>());
    const double cong = congestion(modulus);
    const double gap_doubling = exact_gap(WalkKind::Doubling, params, GapMode::Dirichlet);
    const double gap_rho2 = exact_gap(WalkKind::RhoSquared, params, GapMode::PPStar);
    const u64 fill = fill_bound(gap_rho2, 1.0 / static_cast<double>(p), eps);
    out["congestion"] = cong;
    out["congestion_gap_bound"] = 1.0 / cong;
    out["gap_doubling_dirichlet"] = gap_doubling;
    out["gap_rho2_ppstar"] = gap_rho2;
    out["fill_tau_rho2"] = fill;
    out["rho_mixing_bound"] = 2 * fill;
  }
  return out;
}

json compute_sst(const json& prm, u64 seed) {
  const int m = prm.at("m").get<int>();
  const u64 k = prm.at("k").get<u64>();
  const u64 trials = prm.value("trials", u64{1000});
  const SstParams params = prm.contains("r") ? SstParams(m, k, prm.at("r").get<int>())
                                             : SstParams(m, k);
  const u64 budget = 9ULL * static_cast<u64>(m) * static_cast<u64>(params.r);

  std::vector<u64> grid;
  if (prm.contains("t_grid")) {
    grid = prm.at("t_grid").get<std::vector<u64>>();
  } else {
    grid = {budget / 4, budget / 2, budget, 2 * budget};
  }

  const auto outcomes = sst_trials(params, trials, seed);
  json tails = json::array();
  const double n = static_cast<double>(trials);
  for (u64 t : grid) {
    u64 exceed = 0;
    for (const SstOutcome& o : outcomes)
      if (o.stopping_time > t) ++exceed;
    const double phat = static_cast<double>(exceed) / n;
    const double z = 2.5758293035489004;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) /
                        (1 + z * z / n);
    tails.push_back(json{{"t", t}, {"estimate", phat}, {"half_width", half}});
  }
  return json{{"r", params.r}, {"budget", budget}, {"tails", tails}};
}

json compute_fourier(const json& prm, u64 /*seed*/) {
  const std::string mode = prm.value("mode", "table");
  if (mode == "pi") {
    const int t = prm.at("t").get<int>();
    json values = json::array();
    for (int j = 0; j < t; ++j) values.push_back(pi_product(j, t));
    return json{{"pi", values}};
  }
  if (mode == "separating") {
    const SeparatingStats stats =
        separating_stats(prm.at("t").get<int>(), prm.at("r").get<int>());
    return json{{"mean_direct_re", stats.mean_direct.real()},
                {"mean_direct_im", stats.mean_direct.imag()},
                {"second_direct", stats.second_direct},
                {"mean_closed", stats.mean_closed},
                {"second_closed", stats.second_closed},
                {"variance_closed", stats.variance_closed}};
  }
  const u64 p = prm.at("p").get<u64>();
  const int multiples = prm.value("multiples", 5);
  const OddModulus modulus(p);
  const FourierContext ctx(modulus);
  const ProbVector mu = block_increment_law(modulus);

  // March the block walk once to 2*multiples*m steps, sampling the l2 table
  // rows at s = m, 2m, ... and the separations at 2s.
  const u64 s_max = static_cast<u64>(multiples) * static_cast<u64>(ctx.m);
  std::vector<double> sep_at(2 * s_max + 1, 0.0);
  ProbVector v = point_mass(p, 0);
  sep_at[0] = distances(v).sep;
  for (u64 s = 1; s <= 2 * s_max; ++s) {
    v = pushforward_block(v, mu);
    sep_at[s] = distances(v).sep;
  }
  json rows = json::array();
  for (int mult = 1; mult <= multiples; ++mult) {
    const u64 s = static_cast<u64>(mult) * static_cast<u64>(ctx.m);
    rows.push_back(json{{"s", s},
                        {"exact_l2", exact_l2(modulus, s)},
                        {"l2_bound", l2_bound(s, ctx.m)},
                        {"sep_exact", sep_at[2 * s]}});
  }
  return json{{"m", ctx.m}, {"rows", rows}};
}

json compute_outputs(const std::string& command, const json& params, u64 seed) {
  if (command == "solve") return compute_solve(params, seed);
  if (command == "collide") return compute_collide(params, seed);
  if (command == "mix") return compute_mix(params, seed);
  if (command == "spectral") return compute_spectral(params, seed);
  if (command == "sst") return compute_sst(params, seed);
  if (command == "fourier") return compute_fourier(params, seed);
  throw InvalidArgumentError("unknown command in record: " + command);
}

// ---- output formatting ----

void print_scalar_table(const json& outputs, bool csv, std::ostream& out) {
  if (csv) {
    bool first = true;
    for (auto it = outputs.begin(); it != outputs.end(); ++it) {
      if (it.value().is_array()) continue;
      out << (first ? "" : ",") << it.key();
      first = false;
    }
    out << '\n';
    first = true;
    for (auto it = outputs.begin(); it != outputs.end(); ++it) {
      if (it.value().is_array()) continue;
      out << (first ? "" : ",") << it.value().dump();
      first = false;
    }
    out << '\n';
    return;
  }
  for (auto it = outputs.begin(); it != outputs.end(); ++it) {
    if (it.value().is_array()) continue;
    out << it.key() << " = " << it.value().dump() << '\n';
  }
}

void print_fourier_table(const json& params, const json& outputs, bool csv,
                         std::ostream& out) {
  if (!outputs.contains("rows")) {
    print_scalar_table(outputs, csv, out);
    return;
  }
  const u64 p = params.at("p").get<u64>();
  const int m = outputs.at("m").get<int>();
  if (csv) {
    out << "p,m,s,exact_l2,l2_bound,sep_exact\n";
    for (const auto& row : outputs.at("rows")) {
      out << p << ',' << m << ',' << row.at("s").get<u64>() << ','
          << row.at("exact_l2").dump() << ',' << row.at("l2_bound").dump() << ','
          << row.at("sep_exact").dump() << '\n';
    }
    return;
  }
  out << "p = " << p << ", m = " << m << '\n';
  out << std::left << std::setw(6) << "s" << std::setw(24) << "exact_l2" << std::setw(24)
      << "l2_bound" << "sep_exact" << '\n';
  for (const auto& row : outputs.at("rows")) {
    out << std::left << std::setw(6) << row.at("s").get<u64>() << std::setw(24)
        << row.at("exact_l2").dump() << std::setw(24) << row.at("l2_bound").dump()
        << row.at("sep_exact").dump() << '\n';
  }
}

void print_sst_table(const json& outputs, bool csv, std::ostream& out) {
  if (csv) {
    out << "t,estimate,half_width\n";
    for (const auto& row : outputs.at("tails")) {
      out << row.at("t").get<u64>() << ',' << row.at("estimate").dump() << ','
          << row.at("half_width").dump() << '\n';
    }
    return;
  }
  out << "r = " << outputs.at("r").get<int>() << ", budget = "
      << outputs.at("budget").get<u64>() << " steps\n";
  for (const auto& row : outputs.at("tails")) {
    out << "Pr[T > " << row.at("t").get<u64>() << "] = " << row.at("estimate").dump()
        << " (+/- " << row.at("half_width").dump() << ")\n";
  }
}

void print_outputs(const std::string& command, const json& params, const json& outputs,
                   bool csv, std::ostream& out) {
  if (command == "solve" && !csv) {
    out << "k = " << outputs.at("k").get<u64>() << '\n';
    return;
  }
  if (command == "fourier") {
    print_fourier_table(params, outputs, csv, out);
    return;
  }
  if (command == "sst") {
    print_sst_table(outputs, csv, out);
    return;
  }
  if (command == "mix" && !csv) {
    if (outputs.contains("tau"))
      out << "tau_s = " << outputs.at("tau").get<u64>() << '\n';
    else
      out << "tau_s_block = " << outputs.at("tau_blocks").get<u64>() << '\n';
    return;
  }
  print_scalar_table(outputs, csv, out);
}

int run_and_record(const std::string& command, const json& params, u64 seed,
                   const std::string& out_path, bool csv, std::ostream& out) {
  const std::string timestamp = now_rfc3339();
  const auto start = std::chrono::steady_clock::now();
  const json outputs = compute_outputs(command, params, seed);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  json record{{"command", command}, {"params", params},       {"seed", seed},
              {"timestamp", timestamp}, {"duration_ms", elapsed.count()},
              {"outputs", outputs},    {"version", kVersion}};
  append_record(out_path, record);
  print_outputs(command, params, outputs, csv, out);
  return 0;
}

int run_replay(const std::string& file, long line_number, std::ostream& out,
               std::ostream& err) {
  std::ifstream stream(file);
  if (!stream) {
    err << "replay: cannot open " << file << '\n';
    return 2;
  }
  std::string line;
  long current = 0;
  while (std::getline(stream, line)) {
    ++current;
    if (current == line_number) break;
  }
  if (current != line_number || line.empty()) {
    err << "replay: no line " << line_number << " in " << file << '\n';
    return 2;
  }
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    err << "replay: line " << line_number << " does not parse: " << e.what() << '\n';
    return 2;
  }
  if (!record.contains("command") || !record.contains("params") ||
      !record.contains("seed") || !record.contains("outputs")) {
    err << "replay: line " << line_number << " is missing record fields\n";
    return 2;
  }
  const json fresh = compute_outputs(record.at("command").get<std::string>(),
                                     record.at("params"), record.at("seed").get<u64>());
  const std::string diff = first_difference(fresh, record.at("outputs"), "");
  if (diff.empty()) {
    out << "replay OK: outputs match record\n";
    return 0;
  }
  err << "replay mismatch at " << diff << '\n';
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo experiments for the Pollard rho walk"};
  app.require_subcommand(1);

  struct Common {
    std::optional<u64> seed;
    std::string out_path = default_out_path();
    bool csv = false;
  };
  auto add_common = [](CLI::App* cmd, Common& common) {
    cmd->add_option("--seed", common.seed, "64-bit experiment seed (default: entropy)");
    cmd->add_option("--out", common.out_path, "record file (JSON lines, appended)");
    cmd->add_flag("--csv", common.csv, "print the table as CSV");
  };

  // solve
  Common solve_common;
  u64 opt_q = 0, opt_p = 0, opt_x = 0, opt_y = 0;
  int opt_max_attempts = 64;
  auto* cmd_solve = app.add_subcommand("solve", "recover k with x^k = y");
  cmd_solve->add_option("--q", opt_q, "ambient prime modulus")->required();
  cmd_solve->add_option("--p", opt_p, "prime subgroup order")->required();
  cmd_solve->add_option("--x", opt_x, "subgroup generator")->required();
  cmd_solve->add_option("--y", opt_y, "target element")->required();
  cmd_solve->add_option("--max-attempts", opt_max_attempts, "walk restarts allowed");
  add_common(cmd_solve, solve_common);

  // collide
  Common collide_common;
  u64 col_p = 0, col_k = 0, col_trials = 1000;
  double col_c = 1.0;
  auto* cmd_collide = app.add_subcommand("collide", "collision-time bound experiment");
  cmd_collide->add_option("--p", col_p, "cycle length (odd)")->required();
  cmd_collide->add_option("--k", col_k, "target exponent")->required();
  cmd_collide->add_option("--c", col_c, "confidence parameter c > 0");
  cmd_collide->add_option("--trials", col_trials, "number of independent walks");
  add_common(cmd_collide, collide_common);

  // mix
  Common mix_common;
  u64 mix_p = 0, mix_k = 0, mix_max_steps = 100000;
  double mix_eps = 0.5;
  bool mix_block = false;
  auto* cmd_mix = app.add_subcommand("mix", "exact separation mixing time");
  cmd_mix->add_option("--p", mix_p, "cycle length (odd)")->required();
  cmd_mix->add_option("--k", mix_k, "target exponent (rho walk only)");
  cmd_mix->add_option("--eps", mix_eps, "separation target");
  cmd_mix->add_flag("--block", mix_block, "mix the block walk instead of the rho walk");
  cmd_mix->add_option("--max-steps", mix_max_steps, "step budget");
  add_common(cmd_mix, mix_common);

  // spectral
  Common spectral_common;
  u64 sp_p = 0, sp_k = 0;
  double sp_eps = 0.5;
  auto* cmd_spectral = app.add_subcommand("spectral", "canonical paths and spectral gaps");
  cmd_spectral->add_option("--p", sp_p, "cycle length (odd)")->required();
  cmd_spectral->add_option("--k", sp_k, "target exponent");
  cmd_spectral->add_option("--eps", sp_eps, "separation target for the Fill bound");
  add_common(cmd_spectral, spectral_common);

  // sst
  Common sst_common;
  int sst_m = 0, sst_r = -1;
  u64 sst_k = 0, sst_trials_count = 1000;
  std::vector<u64> sst_grid;
  auto* cmd_sst = app.add_subcommand("sst", "strong stationary time tails");
  cmd_sst->add_option("--m", sst_m, "exponent with p = 2^m - 1")->required();
  cmd_sst->add_option("--k", sst_k, "target exponent")->required();
  cmd_sst->add_option("--r", sst_r, "repetitions per super-round (default: formula)");
  cmd_sst->add_option("--trials", sst_trials_count, "Monte Carlo trials");
  cmd_sst->add_option("--t", sst_grid, "tail evaluation points (repeatable)");
  add_common(cmd_sst, sst_common);

  // fourier
  Common fourier_common;
  u64 f_p = 0;
  int f_multiples = 5, f_t = 0, f_r = 0;
  std::string f_mode = "table";
  auto* cmd_fourier = app.add_subcommand("fourier", "transform-side bounds and tables");
  cmd_fourier->add_option("--mode", f_mode, "table | pi | separating")
      ->check(CLI::IsMember({"table", "pi", "separating"}));
  cmd_fourier->add_option("--p", f_p, "cycle length (table mode)");
  cmd_fourier->add_option("--multiples", f_multiples, "table rows: s = m..multiples*m");
  cmd_fourier->add_option("--t", f_t, "dyadic exponent with p = 2^t - 1");
  cmd_fourier->add_option("--r", f_r, "rounds (separating mode)");
  add_common(cmd_fourier, fourier_common);

  // replay
  std::string replay_file;
  long replay_line = 0;
  auto* cmd_replay = app.add_subcommand("replay", "re-run a recorded experiment");
  cmd_replay->add_option("--file", replay_file, "record file")->required();
  cmd_replay->add_option("--line", replay_line, "1-based line number")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (cmd_replay->parsed()) return run_replay(replay_file, replay_line, out, err);

    std::string command;
    json params;
    Common* common = nullptr;
    if (cmd_solve->parsed()) {
      command = "solve";
      params = {{"q", opt_q}, {"p", opt_p}, {"x", opt_x}, {"y", opt_y},
                {"max_attempts", opt_max_attempts}};
      common = &solve_common;
    } else if (cmd_collide->parsed()) {
      command = "collide";
      params = {{"p", col_p}, {"k", col_k}, {"c", col_c}, {"trials", col_trials}};
      common = &collide_common;
    } else if (cmd_mix->parsed()) {
      command = "mix";
      params = {{"p", mix_p}, {"eps", mix_eps}, {"block", mix_block},
                {"max_steps", mix_max_steps}};
      if (!mix_block) {
        if (cmd_mix->count("--k") == 0) {
          err << "mix: --k is required unless --block is set\n";
          return 2;
        }
        params["k"] = mix_k;
      }
      common = &mix_common;
    } else if (cmd_spectral->parsed()) {
      command = "spectral";
      if (sp_p <= 512 && cmd_spectral->count("--k") == 0) {
        err << "spectral: --k is required for p <= 512 (exact gaps)\n";
        return 2;
      }
      params = {{"p", sp_p}, {"k", sp_k}, {"eps", sp_eps}};
      common = &spectral_common;
    } else if (cmd_sst->parsed()) {
      command = "sst";
      params = {{"m", sst_m}, {"k", sst_k}, {"trials", sst_trials_count}};
      if (sst_r >= 1) params["r"] = sst_r;
      if (!sst_grid.empty()) params["t_grid"] = sst_grid;
      common = &sst_common;
    } else if (cmd_fourier->parsed()) {
      command = "fourier";
      params = {{"mode", f_mode}};
      if (f_mode == "table") {
        if (cmd_fourier->count("--p") == 0) {
          err << "fourier: --p is required in table mode\n";
          return 2;
        }
        params["p"] = f_p;
        params["multiples"] = f_multiples;
      } else {
        if (cmd_fourier->count("--t") == 0) {
          err << "fourier: --t is required in pi/separating mode\n";
          return 2;
        }
        params["t"] = f_t;
        if (f_mode == "separating") {
          if (cmd_fourier->count("--r") == 0) {
            err << "fourier: --r is required in separating mode\n";
            return 2;
          }
          params["r"] = f_r;
        }
      }
      common = &fourier_common;
    }

    const u64 seed = common->seed.value_or(entropy_seed());
    return run_and_record(command, params, seed, common->out_path, common->csv, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rholab::cli

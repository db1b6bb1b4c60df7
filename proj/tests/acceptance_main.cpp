// Acceptance suite: one line per criterion, exit code = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rholab/cli.hpp"
#include "rholab/fourier.hpp"
#include "rholab/mixing.hpp"
#include "rholab/rho_solver.hpp"
#include "rholab/spectral.hpp"
#include "rholab/sst.hpp"

using namespace rholab;

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", x);
  return buffer;
}

constexpr double kWilsonZ = 2.5758293035489004;

double wilson_half_width(u64 exceed, u64 trials) {
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(exceed) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  return kWilsonZ * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
}

// criterion 1: collision proposition at p = 1009
Check criterion_collision() {
  Check check;
  const WalkParams params{OddModulus(1009), 1008};
  const CollisionStats stats = collision_experiment(params, 1.0, 2000, 20240810);
  check.require(stats.fraction_within_bound >= stats.proposition_floor,
                "fraction >= 1 - e^{-1} - 3 sigma");
  check.note("fraction " + fmt(stats.fraction_within_bound) + " >= floor " +
             fmt(stats.proposition_floor) + ", bound " + std::to_string(stats.bound_used) +
             " steps");
  return check;
}

// criterion 2: mixing vs Fill chain at p = 31, k = 30
Check criterion_fill_chain() {
  Check check;
  const WalkParams params{OddModulus(31), 30};
  const u64 tau = tau_s(params, 0.5).tau;
  const double gap_rho2 = exact_gap(WalkKind::RhoSquared, params, GapMode::PPStar);
  const double gap_doubling = exact_gap(WalkKind::Doubling, params, GapMode::Dirichlet);
  const u64 fill = fill_bound(gap_rho2, 1.0 / 31.0, 0.5);
  check.require(tau <= 2 * fill, "tau_s <= 2 * fill bound");
  check.require(gap_doubling >= 1.0 / 50.0 - 1e-8, "doubling gap >= 1/50");
  check.require(gap_rho2 >= (2.0 / 81.0) * gap_doubling - 1e-8,
                "rho^2 gap >= (2/81) doubling gap");
  check.note("tau " + std::to_string(tau) + " <= 2*" + std::to_string(fill) +
             ", gaps " + fmt(gap_rho2) + " / " + fmt(gap_doubling));
  return check;
}

// criterion 3: canonical paths at p in {5, 7, 31, 101}
Check criterion_paths() {
  Check check;
  for (u64 p : {5ull, 7ull, 31ull, 101ull}) {
    const OddModulus modulus(p);
    const u64 n = static_cast<u64>(std::ceil(std::log2(static_cast<double>(p))));
    bool replays = true;
    for (u64 x = 0; x < p && replays; ++x) {
      for (u64 y = 0; y < p && replays; ++y) {
        u64 cur = x;
        const auto path = canonical_path(x, y, modulus);
        if (path.size() != n) replays = false;
        for (const PathEdge& e : path) {
          if (e.from != cur || e.to != (2 * cur + p - static_cast<u64>(e.c)) % p)
            replays = false;
          cur = e.to;
        }
        if (cur != y) replays = false;
      }
    }
    check.require(replays, "paths replay at p=" + std::to_string(p));
    const double cong = congestion(modulus);
    check.require(cong <= 2.0 * static_cast<double>(n * n) + 1e-8,
                  "congestion cap at p=" + std::to_string(p));
    const double gap =
        exact_gap(WalkKind::Doubling, WalkParams{modulus, 1}, GapMode::Dirichlet);
    check.require(1.0 / cong <= gap + 1e-8,
                  "1/congestion <= doubling gap at p=" + std::to_string(p));
  }
  check.note("all pairs replay; congestion within 2 ceil(log2 p)^2; gap chain holds");
  return check;
}

// criterion 4: strong stationary time at p in {7, 31}, k = p-1
Check criterion_sst() {
  Check check;
  for (int m : {3, 5}) {
    const u64 p = (u64{1} << m) - 1;
    const SstParams params(m, p - 1);
    const u64 trials = 10000;

    std::vector<u64> stopping;
    stopping.reserve(trials);
    u64 round_samples = 0, round_undefined = 0;
    for (u64 trial = 0; trial < trials; ++trial) {
      const SstTrace trace = sst_run(params, stream_seed(4000 + static_cast<u64>(m), trial));
      stopping.push_back(trace.stopping_time);
      for (const RoundRecord& round : trace.rounds) {
        round_samples += static_cast<u64>(m);
        round_undefined += static_cast<u64>(round.undefined_count);
      }
    }
    std::vector<u64> sorted = stopping;
    std::sort(sorted.begin(), sorted.end());
    const u64 t_max = sorted.back();

    // (a) exact worst-case separation under the Monte Carlo tail
    const WalkParams walk{OddModulus(p), p - 1};
    std::vector<double> sep(t_max + 1, 0.0);
    for (u64 x = 0; x < p; ++x) {
      ProbVector v = point_mass(p, x);
      for (u64 t = 0; t <= t_max; ++t) {
        sep[t] = std::max(sep[t], distances(v).sep);
        if (t < t_max) v = pushforward_rho(v, walk);
      }
    }
    bool dominated = true;
    for (u64 t = 0; t <= t_max; ++t) {
      const u64 exceed = static_cast<u64>(
          sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
      const double tail = static_cast<double>(exceed) / static_cast<double>(trials);
      if (sep[t] > tail + 3 * wilson_half_width(exceed, trials)) dominated = false;
    }
    check.require(dominated, "sep(t) <= Pr[T>t] + 3hw at p=" + std::to_string(p));

    // (b) undefined-bit rate per super-round
    const double expect = std::pow(7.0 / 9.0, params.r);
    const double freq =
        static_cast<double>(round_undefined) / static_cast<double>(round_samples);
    const double sigma =
        std::sqrt(expect * (1 - expect) / static_cast<double>(round_samples));
    check.require(std::abs(freq - expect) <= 3 * sigma,
                  "(7/9)^r rate at p=" + std::to_string(p));

    // (c) the stopping time meets its budget with probability > 1/2
    const u64 budget = sst_budget(m).steps;
    const u64 within = static_cast<u64>(
        std::upper_bound(sorted.begin(), sorted.end(), budget) - sorted.begin());
    const double frac = static_cast<double>(within) / static_cast<double>(trials);
    check.require(frac > 0.5 - 3 * std::sqrt(0.25 / static_cast<double>(trials)),
                  "Pr[T <= budget] > 1/2 at p=" + std::to_string(p));
    check.note("p=" + std::to_string(p) + ": Pr[T<=" + std::to_string(budget) +
               "] = " + fmt(frac) + ", undef rate " + fmt(freq) + " vs " + fmt(expect));
  }

  // (d) uniformity of the walk position at the stopping time, p = 7
  const SstParams params7(3, 6);
  std::vector<u64> counts(7, 0);
  const u64 big_trials = 100000;
  for (const SstOutcome& o : sst_trials(params7, big_trials, 8091))
    ++counts[o.final_position];
  double tv = 0;
  for (u64 j = 0; j < 7; ++j)
    tv += std::abs(static_cast<double>(counts[j]) / static_cast<double>(big_trials) -
                   1.0 / 7.0);
  tv /= 2;
  check.require(tv < 0.02, "tv(Y_T, uniform) < 0.02 at p=7");
  check.note("tv(Y_T) = " + fmt(tv));
  return check;
}

// criterion 5: transform-side bounds on the full grid
Check criterion_fourier() {
  Check check;
  for (u64 p : {7ull, 31ull, 127ull}) {
    const OddModulus modulus(p);
    const FourierContext ctx{modulus};
    for (int mult = 1; mult <= 5; ++mult) {
      const u64 s = static_cast<u64>(mult) * static_cast<u64>(ctx.m);
      // exact_l2 self-checks Plancherel to 1e-9 on every transform
      const double exact = exact_l2(modulus, s);
      check.require(exact <= l2_bound(s, ctx.m) + 1e-9,
                    "l2 bound at p=" + std::to_string(p) + ", s=" + std::to_string(s));
    }
    bool alternations_ok = true;
    for (int mult = 1; mult <= 5; ++mult) {
      const u64 s = static_cast<u64>(mult) * static_cast<u64>(ctx.m);
      for (u64 ell = 1; ell < p; ++ell) {
        const int phi = phi_s(ell, s, ctx);
        const AlternationBound bound = alternation_lower(ell, s, ctx);
        if (phi < bound.block_sum || phi < bound.single_window) alternations_ok = false;
      }
    }
    check.require(alternations_ok, "phi_s lower bounds at p=" + std::to_string(p));
  }
  check.note("l2, Plancherel and alternation bounds hold on p in {7,31,127}, s in m..5m");
  return check;
}

// criterion 6: increment-law closed forms
Check criterion_closed_forms() {
  Check check;
  const std::vector<double> a = increment_coefficients();
  check.require(std::abs(a[0] - (1.0 / 3.0 + 2.0 / 3.0 * a[1])) < 1e-12,
                "a_0 = 1/3 + (2/3) a_1");
  for (std::size_t j = 1; j + 1 < a.size(); ++j) {
    if (std::abs(a[j] - (a[j - 1] + a[j + 1]) / 3.0) >= 1e-12) {
      check.require(false, "a_k recurrence at k=" + std::to_string(j));
      break;
    }
  }

  const OddModulus p31(31);
  const ProbVector mu = block_increment_law(p31);
  double total = 0;
  for (double x : mu) total += x;
  check.require(std::abs(total - 1.0) < 1e-12, "folded law sums to 1");

  // million-block histogram at p = 31, k = 30
  Rng rng(6060842);
  std::vector<u64> histogram(31, 0);
  u64 ground = 0, blocks = 0;
  while (blocks < 1000000) {
    const u64 move = rng.below(3);
    if (move == 0) {
      ground = (ground + 1) % 31;
    } else if (move == 1) {
      ground = (ground + 30) % 31;
    } else {
      ++histogram[ground];
      ground = 0;
      ++blocks;
    }
  }
  double tv = 0;
  for (u64 j = 0; j < 31; ++j)
    tv += std::abs(static_cast<double>(histogram[j]) / 1e6 - mu[j]);
  tv /= 2;
  check.require(tv < 0.005, "folded law matches 1e6-block Monte Carlo");

  check.require(std::abs(g_transform(0.0) - 1.0) < 1e-12, "G(0) = 1");
  check.require(std::abs(g_transform(0.5) - 0.2) < 1e-12, "G(1/2) = 1/5");

  ProbVector law = point_mass(7, 0);
  const ProbVector mu7 = block_increment_law(OddModulus(7));
  for (int i = 0; i < 3; ++i) law = pushforward_block(law, mu7);
  const auto lawhat = dft_real(law);
  for (int j = 0; j < 3; ++j) {
    const u64 freq = (u64{1} << j) - 1;
    check.require(std::abs(lawhat[freq].real() - pi_product(j, 3)) < 1e-6 &&
                      std::abs(lawhat[freq].imag()) < 1e-6,
                  "Pi_" + std::to_string(j) + " matches the 3-block transform");
  }

  const SeparatingStats stats = separating_stats(3, 2);
  check.require(
      std::abs(stats.mean_direct - std::complex<double>{stats.mean_closed, 0}) < 1e-6,
      "separating mean closed form");
  check.require(std::abs(stats.second_direct - stats.second_closed) < 1e-6,
                "separating second moment closed form");
  check.note("recurrence, fold, MC tv " + fmt(tv) + ", G endpoints, Pi_j, moments");
  return check;
}

// criterion 7: solver end to end
Check criterion_solver() {
  Check check;
  Rng rng(1729);
  int small_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const u64 k_true = rng.below(11);
    const GroupInstance inst{23, 11, 2, mod_pow(2, k_true, 23)};
    const SolveResult res = solve(inst, rng.next());
    if (res.k == k_true && mod_pow(inst.x, res.k, inst.q) == inst.y) ++small_ok;
  }
  check.require(small_ok == 100, "100/100 at q=23, p=11");

  // q = 2027, p = 1013 (prime divisor of 2026), x = 4 = 2^2 has order 1013
  int large_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const u64 k_true = rng.below(1013);
    const GroupInstance inst{2027, 1013, 4, mod_pow(4, k_true, 2027)};
    const SolveResult res = solve(inst, rng.next());
    if (res.k == k_true && mod_pow(inst.x, res.k, inst.q) == inst.y) ++large_ok;
  }
  check.require(large_ok == 100, "100/100 at q=2027, p=1013");

  // degenerate-collision fixture: scan seeds until the first walk ends in
  // beta = b, forcing the retry path
  bool exercised = false;
  u64 fixture_seed = 0;
  for (u64 seed = 0; seed < 2000 && !exercised; ++seed) {
    const SolveResult res = solve({23, 11, 2, 13}, seed);
    if (res.k != 7) check.require(false, "fixture correctness");
    if (res.attempts >= 2) {
      exercised = true;
      fixture_seed = seed;
    }
  }
  check.require(exercised, "degenerate-collision retry exercised");
  check.note("200/200 instances verified; retry fixture at seed " +
             std::to_string(fixture_seed));
  return check;
}

// criterion 8: every recorded acceptance run replays bit-identically
Check criterion_determinism() {
  Check check;
  const auto dir = std::filesystem::temp_directory_path() / "rholab_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string records = (dir / "records.jsonl").string();

  const std::vector<std::vector<std::string>> commands{
      {"solve", "--q", "23", "--p", "11", "--x", "2", "--y", "13", "--seed", "42"},
      {"collide", "--p", "101", "--k", "17", "--c", "1", "--trials", "300", "--seed", "7"},
      {"mix", "--p", "7", "--k", "6", "--eps", "0.5", "--seed", "1"},
      {"mix", "--p", "7", "--block", "--seed", "1"},
      {"spectral", "--p", "31", "--k", "30", "--seed", "5"},
      {"sst", "--m", "3", "--k", "6", "--trials", "500", "--seed", "4"},
      {"fourier", "--p", "7", "--seed", "2"},
      {"fourier", "--mode", "pi", "--t", "3", "--seed", "2"},
      {"fourier", "--mode", "separating", "--t", "3", "--r", "2", "--seed", "2"},
  };
  int line = 0;
  for (std::vector<std::string> args : commands) {
    args.push_back("--out");
    args.push_back(records);
    std::ostringstream out, err;
    const int code = rholab::cli::run(args, out, err);
    ++line;
    check.require(code == 0, "record run " + std::to_string(line) + " (" + args[0] + ")");
  }
  for (int i = 1; i <= line; ++i) {
    std::ostringstream out, err;
    const int code = rholab::cli::run(
        {"replay", "--file", records, "--line", std::to_string(i)}, out, err);
    check.require(code == 0, "replay of line " + std::to_string(i) + ": " + err.str());
  }
  check.note(std::to_string(line) + " recorded runs, all replays bit-identical");
  std::filesystem::remove_all(dir);
  return check;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string label;
    std::function<Check()> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "collision proposition (p=1009, c=1, 2000 trials)", criterion_collision},
      {2, "mixing vs Fill chain (p=31, k=30)", criterion_fill_chain},
      {3, "canonical paths and congestion (p in {5,7,31,101})", criterion_paths},
      {4, "strong stationary time (p in {7,31}, k=p-1)", criterion_sst},
      {5, "transform-side bounds (p in {7,31,127})", criterion_fourier},
      {6, "increment-law closed forms", criterion_closed_forms},
      {7, "solver end-to-end (q=23 and q=2027)", criterion_solver},
      {8, "recorded runs replay bit-identically", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.fn();
    } catch (const std::exception& e) {
      check.pass = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << criterion.id << " ["
              << (check.pass ? "PASS" : "FAIL") << "] " << criterion.label << " -- "
              << check.detail << " (" << fmt(seconds) << "s)" << std::endl;
    if (!check.pass) ++failures;
  }
  if (failures == 0) {
    std::cout << "acceptance: all " << criteria.size() << " criteria pass" << std::endl;
  } else {
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  }
  return failures;
}

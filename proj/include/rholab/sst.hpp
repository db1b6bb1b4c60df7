#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "rholab/errors.hpp"
#include "rholab/modmath.hpp"

namespace rholab {

/// Parameters of the strong-stationary-time construction on p = 2^m - 1.
/// A super-round consumes s = r*m histories; the default repetition count is
/// r = ceil(3 ln m / ln(9/7)).
struct SstParams {
  SstParams(int m, u64 k);
  SstParams(int m, u64 k, int r);

  static int default_r(int m);

  u64 p() const noexcept { return (u64{1} << m) - 1; }
  int s() const noexcept { return r * m; }

  int m;
  u64 k;
  int r;
};

enum class HistoryClass { Special0, Special1, NotSpecial };

/// Classifies a history vector (the auxiliary symbols between doublings,
/// inclusive of the closing doubling symbol). (7) carries bit 0; a single
/// +1 move followed by any doubling symbol carries bit 1.
HistoryClass classify_history(std::span<const int> h);

struct RoundRecord {
  std::vector<std::int8_t> c;  // C_1..C_m; -1 = undefined
  int undefined_count = 0;
  bool all_ones = false;
  u64 closing_step = 0;
};

struct SstTrace {
  std::vector<int> symbols;       // R_1..R_T, each in [1..9]
  std::vector<u64> type3_steps;   // T_i: step index of the i-th doubling
  std::vector<u64> block_values;  // b_i: ground covered before the i-th doubling
  std::vector<RoundRecord> rounds;
  u64 stopping_time = 0;   // T: the doubling step closing the accepted round
  u64 final_position = 0;  // Y_T, walk started at 0
};

struct SstBudgetExceededError : Error {
  SstBudgetExceededError(u64 max_steps, std::shared_ptr<SstTrace> partial)
      : Error("BudgetExceeded",
              "no accepted super-round within " + std::to_string(max_steps) + " steps"),
        partial_trace(std::move(partial)) {}
  std::shared_ptr<SstTrace> partial_trace;
};

/// Simulates the walk driven by uniform symbols in [1..9] (1-3: +1, 4-6: +k,
/// 7-9: double) until the stopping rule accepts a super-round: all C_i
/// defined and not all equal to 1. All-ones rounds are discarded and the
/// process restarts, which removes the double weight the all-zero/all-one
/// bit patterns would put on position 0.
SstTrace sst_run(const SstParams& params, u64 seed, u64 max_steps = 10000000);

struct TailEstimate {
  double estimate = 0;    // empirical Pr[T > t]
  double half_width = 0;  // Wilson 99% half-width
  u64 trials = 0;
  u64 exceed_count = 0;
};

/// Monte Carlo tail of the stopping time over independent trials.
TailEstimate sst_tail(const SstParams& params, u64 t, u64 trials, u64 seed);

struct SstOutcome {
  u64 stopping_time;
  u64 final_position;
};

/// Batch of independent runs (stopping time and final position only).
std::vector<SstOutcome> sst_trials(const SstParams& params, u64 count, u64 seed);

struct SstBudget {
  int r;
  u64 steps;  // 9 * m * r; the stopping time lands within it w.p. > 1/2
};
SstBudget sst_budget(int m);

/// Run-length encoding used to serialize symbol streams.
std::vector<std::pair<int, int>> rle_encode(std::span<const int> symbols);
std::vector<int> rle_decode(std::span<const std::pair<int, int>> runs);

}  // namespace rholab

#include "rholab/sst.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rholab/rng.hpp"

namespace rholab {

namespace {

void validate_sst_m(int m) {
  if (m < 2 || m > 62) throw InvalidArgumentError("m must lie in [2, 62]");
}

}  // namespace

int SstParams::default_r(int m) {
  validate_sst_m(m);
  return static_cast<int>(std::ceil(3.0 * std::log(m) / std::log(9.0 / 7.0)));
}

SstParams::SstParams(int m_in, u64 k_in) : SstParams(m_in, k_in, default_r(m_in)) {}

SstParams::SstParams(int m_in, u64 k_in, int r_in) : m(m_in), k(k_in), r(r_in) {
  validate_sst_m(m);
  if (k < 1 || k >= p())
    throw InvalidArgumentError("k must lie in [1, p-1], got " + std::to_string(k));
  if (r < 1) throw InvalidArgumentError("r must be >= 1");
}

HistoryClass classify_history(std::span<const int> h) {
  if (h.empty() || h.back() < 7 || h.back() > 9) throw MalformedHistoryError();
  if (h.size() == 1 && h[0] == 7) return HistoryClass::Special0;
  if (h.size() == 2 && h[0] >= 1 && h[0] <= 3) return HistoryClass::Special1;
  return HistoryClass::NotSpecial;
}

SstTrace sst_run(const SstParams& params, u64 seed, u64 max_steps) {
  const u64 p = params.p();
  const int m = params.m;
  const int s = params.s();
  Rng rng(seed);

  SstTrace trace;
  std::vector<std::int8_t> c(m, -1);
  u64 y = 0;
  u64 ground = 0;
  int hist_len = 0;
  int first_sym = 0;
  int hist_in_round = 0;

  for (u64 t = 1; t <= max_steps; ++t) {
    const int symbol = static_cast<int>(rng.below(9)) + 1;
    trace.symbols.push_back(symbol);
    if (hist_len == 0) first_sym = symbol;
    ++hist_len;
    if (symbol <= 3) {
      y = (y + 1) % p;
      ground = (ground + 1) % p;
    } else if (symbol <= 6) {
      y = (y + params.k) % p;
      ground = (ground + params.k) % p;
    } else {
      y = (2 * y) % p;
      trace.type3_steps.push_back(t);
      trace.block_values.push_back(ground);
      // Special histories carry one fair bit: (7) -> 0, (+1 move, any
      // doubling) -> 1. Only the first special history in a Block counts.
      int bit = -1;
      if (hist_len == 1 && symbol == 7) bit = 0;
      if (hist_len == 2 && first_sym <= 3) bit = 1;
      const int block = hist_in_round % m;
      if (bit >= 0 && c[block] < 0) c[block] = static_cast<std::int8_t>(bit);
      ground = 0;
      hist_len = 0;
      ++hist_in_round;
      if (hist_in_round == s) {
        RoundRecord round;
        round.c = c;
        round.closing_step = t;
        bool defined = true;
        bool all_ones = true;
        for (std::int8_t bitval : c) {
          if (bitval < 0) {
            ++round.undefined_count;
            defined = false;
          }
          if (bitval != 1) all_ones = false;
        }
        round.all_ones = defined && all_ones;
        trace.rounds.push_back(std::move(round));
        if (defined && !trace.rounds.back().all_ones) {
          trace.stopping_time = t;
          trace.final_position = y;
          return trace;
        }
        std::fill(c.begin(), c.end(), static_cast<std::int8_t>(-1));
        hist_in_round = 0;
      }
    }
  }
  throw SstBudgetExceededError(max_steps, std::make_shared<SstTrace>(std::move(trace)));
}

std::vector<SstOutcome> sst_trials(const SstParams& params, u64 count, u64 seed) {
  std::vector<SstOutcome> outcomes;
  outcomes.reserve(count);
  for (u64 trial = 0; trial < count; ++trial) {
    const SstTrace trace = sst_run(params, stream_seed(seed, trial));
    outcomes.push_back(SstOutcome{trace.stopping_time, trace.final_position});
  }
  return outcomes;
}

TailEstimate sst_tail(const SstParams& params, u64 t, u64 trials, u64 seed) {
  if (trials < 100) throw InvalidArgumentError("tail estimation needs >= 100 trials");
  u64 exceed = 0;
  for (u64 trial = 0; trial < trials; ++trial) {
    if (sst_run(params, stream_seed(seed, trial)).stopping_time > t) ++exceed;
  }
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(exceed) / n;
  const double z = 2.5758293035489004;  // 99% two-sided normal quantile
  const double z2 = z * z;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return TailEstimate{phat, half, trials, exceed};
}

SstBudget sst_budget(int m) {
  const int r = SstParams::default_r(m);
  return SstBudget{r, 9ULL * static_cast<u64>(m) * static_cast<u64>(r)};
}

std::vector<std::pair<int, int>> rle_encode(std::span<const int> symbols) {
  std::vector<std::pair<int, int>> runs;
  for (int sym : symbols) {
    if (!runs.empty() && runs.back().first == sym) {
      ++runs.back().second;
    } else {
      runs.emplace_back(sym, 1);
    }
  }
  return runs;
}

std::vector<int> rle_decode(std::span<const std::pair<int, int>> runs) {
  std::vector<int> symbols;
  for (const auto& [sym, count] : runs) {
    symbols.insert(symbols.end(), static_cast<std::size_t>(count), sym);
  }
  return symbols;
}

}  // namespace rholab

#include "sqz/bank.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace sqz {

const char* fail_reason_name(FailReason r) {
  switch (r) {
    case FailReason::InitialAnchor: return "initial-anchor";
    case FailReason::Simulation: return "simulation";
    case FailReason::FaultPreservation: return "fault-preservation";
    case FailReason::RankDecrease: return "rank-decrease";
    case FailReason::WellFormedness: return "well-formedness";
  }
  return "?";
}

std::vector<State> Bank::states() const {
  std::vector<State> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.state);
  return out;
}

bool reach_filter(const Program& p, const State& s) {
  for (const auto& a : p.assumptions)
    if (!holds(p, s, *a)) return false;
  return true;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  const Program& p;
  const BankConfig& cfg;

  Value pick_pool() {
    std::uniform_int_distribution<std::size_t> d(0, cfg.elem_pool.size() - 1);
    return cfg.elem_pool[d(rng)];
  }

  std::vector<std::vector<Value>> sample_arrays(int len) {
    std::vector<std::vector<Value>> arrays(p.arrays.size());
    for (std::size_t i = 0; i < p.arrays.size(); ++i) {
      arrays[i].resize(static_cast<std::size_t>(len));
      for (auto& v : arrays[i]) v = pick_pool();
    }
    return arrays;
  }

  State sample_raw(int len) {
    State s;
    s.loc = Loc::Loop;
    s.arrays = sample_arrays(len);
    s.scalars.resize(p.scalars.size());
    for (std::size_t k = 0; k < p.scalars.size(); ++k) {
      if (p.scalars[k].kind == ScalarKind::Index) {
        std::uniform_int_distribution<Value> d(0, len);
        s.scalars[k] = d(rng);
      } else {
        s.scalars[k] = pick_pool();
      }
    }
    return s;
  }

  State sample_initial(int len) {
    State s = sample_raw(len);
    for (std::size_t k = 0; k < p.scalars.size(); ++k)
      if (p.init[k]) s.scalars[k] = *p.init[k];
    return s;
  }
};

}  // namespace

Bank generate_bank(const Program& p, const BankConfig& cfg) {
  Bank bank;
  std::unordered_set<State, StateHash> seen;
  int k = static_cast<int>(p.scalars.size());
  double dk = std::pow(static_cast<double>(cfg.scalar_samples), k);

  auto insert = [&](State s, std::optional<State> origin) {
    if (bank.entries.size() >= cfg.cap) return;
    if (seen.insert(s).second) bank.entries.push_back({std::move(s), std::move(origin)});
  };

  for (int len = 0; len <= cfg.max_len && bank.entries.size() < cfg.cap; ++len) {
    double pool_n = std::pow(static_cast<double>(cfg.elem_pool.size()), len);
    auto target = static_cast<std::size_t>(
        std::max(1.0, dk * pool_n / static_cast<double>(cfg.dilution)));
    target = std::min(target, cfg.cap - bank.entries.size());

    Sampler smp{std::mt19937_64(cfg.seed ^ (0x9e3779b97f4a7c15ull * (len + 1))), p, cfg};
    std::size_t inserted = 0;
    std::size_t attempts = 0, max_attempts = 8 * target + 64;
    while (inserted < target && attempts < max_attempts) {
      ++attempts;
      ++bank.raw_samples;
      // Every eighth attempt seeds an initial state and its successor.
      if (attempts % 8 == 0) {
        State s0 = smp.sample_initial(len);
        if (!is_initial(p, s0)) continue;
        std::size_t before = bank.entries.size();
        insert(s0, std::nullopt);
        try {
          State s1 = step(p, s0);
          if (reach_filter(p, s1)) insert(std::move(s1), s0);
        } catch (const OutOfBounds&) {
        }
        inserted += bank.entries.size() - before;
        continue;
      }
      State s0 = smp.sample_raw(len);
      if (!reach_filter(p, s0)) continue;
      try {
        State s1 = step(p, s0);
        if (s1.loc != Loc::Loop || !reach_filter(p, s1)) continue;
        State s2 = step(p, s1);
        if (!reach_filter(p, s2)) continue;
        std::size_t before = bank.entries.size();
        insert(std::move(s2), s0);
        inserted += bank.entries.size() - before;
      } catch (const OutOfBounds&) {
        // Raw junk drove a read out of range; discard the sample.
      }
    }
  }
  return bank;
}

Verdict phase1_check(const Program& p, const Squeezer& q, const std::vector<State>& bank,
                     const SimBounds& sb) {
  Verdict v;
  v.schedule.reserve(bank.size());
  for (const State& s : bank) {
    try {
      State img = apply(q, p, s);
      if (is_initial(p, s) && !is_initial(p, img)) {
        return {false, FailReason::InitialAnchor, s, {}};
      }
      if (!holds(p, s, *p.spec) && holds(p, img, *p.spec)) {
        return {false, FailReason::FaultPreservation, s, {}};
      }
      if (rank(s) > q.base_bound && rank(img) >= rank(s)) {
        return {false, FailReason::RankDecrease, s, {}};
      }
      bool found = false;
      // Successors of the squeezed state, extended on demand.
      std::vector<State> down{img};
      for (int n = 1; n <= sb.n_max && !found; ++n) {
        State sn = step_n(p, s, n);
        State up = apply(q, p, sn);
        for (int m = 0; m <= sb.m_max; ++m) {
          while (static_cast<int>(down.size()) <= m) down.push_back(step(p, down.back()));
          if (up == down[static_cast<std::size_t>(m)]) {
            v.schedule.emplace_back(n, m);
            found = true;
            break;
          }
        }
      }
      if (!found) return {false, FailReason::Simulation, s, {}};
    } catch (const OutOfBounds&) {
      return {false, FailReason::WellFormedness, s, {}};
    }
  }
  return v;
}

}  // namespace sqz

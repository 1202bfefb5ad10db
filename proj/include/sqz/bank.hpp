#pragma once

// Concrete state bank and phase-1 testing. The bank holds seeded random
// states that are two program steps downstream of some assumption-satisfying
// loop state (plus sampled initial states and their successors), so every
// bank member lies in the same reachability over-approximation the symbolic
// phases use. Phase 1 replays a candidate squeezer on every bank state and
// rejects on the first violated condition.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sqz/ir.hpp"
#include "sqz/squeezer.hpp"

namespace sqz {

struct BankConfig {
  std::vector<Value> elem_pool;  // p
  int scalar_samples = 3;        // d: per-variable branching factor in the size formula
  int max_len = 5;
  int dilution = 17;             // df
  std::size_t cap = 24386;
  std::uint64_t seed = 0x5eedba5e;
};

struct SimBounds {
  int n_max = 2;   // N >= 1
  int m_max = 1;   // M >= 0
  bool relaxed = false;  // any m' <= m may witness (no-op for the exhaustive grid search)
};

enum class FailReason {
  InitialAnchor,
  Simulation,
  FaultPreservation,
  RankDecrease,
  WellFormedness,
};

const char* fail_reason_name(FailReason r);

struct Verdict {
  bool pass = true;
  FailReason reason = FailReason::Simulation;
  std::optional<State> witness;
  // Witnessing (n, m) per bank state, in bank order (pass only).
  std::vector<std::pair<int, int>> schedule;
};

// A bank state plus the state it was stepped from (empty for sampled initial
// states), so membership in the reachability over-approximation is replayable.
struct BankEntry {
  State state;
  std::optional<State> origin;  // two steps upstream, or one for initial-successors
};

struct Bank {
  std::vector<BankEntry> entries;
  std::size_t raw_samples = 0;  // sampling attempts, for reports

  std::vector<State> states() const;
  std::size_t size() const { return entries.size(); }
};

// Assumption check only; the two-step part of the reachability filter is
// built into bank construction (concretely) and into the symbolic queries.
bool reach_filter(const Program& p, const State& s);

Bank generate_bank(const Program& p, const BankConfig& cfg);

Verdict phase1_check(const Program& p, const Squeezer& q, const std::vector<State>& bank,
                     const SimBounds& sb);

}  // namespace sqz

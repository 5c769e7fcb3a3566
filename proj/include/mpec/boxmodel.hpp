#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "mpec/circuit.hpp"
#include "mpec/level1.hpp"
#include "mpec/match.hpp"

namespace mpec::boxmodel {

// Abstract model of one level-2 EC box for a single error type, reduced to
// a single parallel block: three data lines, three ancilla lines, two
// rounds of pairwise coupling, then measurement and decoding. Errors and
// flags live at line granularity; physical faults enter as block outcomes
// (US/FS/FF/UF) assigned to event sites, costing their outcome weight --
// for a CNOT site the two touched lines may take any outcome pair as long
// as neither weight exceeds the number of physical errors spent there.

constexpr int kMaxFlagsPerLine = 16;

struct LineState {
  bool error = false;
  uint8_t nflags = 0;
  std::array<uint32_t, kMaxFlagsPerLine> flags{};

  void add_flag(uint32_t id) {
    if (nflags >= kMaxFlagsPerLine)
      throw std::length_error("too many flags on one line");
    flags[nflags++] = id;
  }
  bool has_flag(uint32_t id) const {
    for (int i = 0; i < nflags; ++i)
      if (flags[i] == id) return true;
    return false;
  }
  void remove_flag(uint32_t id) {
    for (int i = 0; i < nflags; ++i) {
      if (flags[i] == id) {
        flags[i] = flags[--nflags];
        return;
      }
    }
  }
};

struct BoxState {
  std::array<LineState, 3> data;
};

// Event sites inside the box. Single-line sites are (line, slot) with slot
// 0 before the first coupling round, 1 between rounds, 2 after the second;
// CNOT sites are (round, pair).
constexpr int kDataSite0 = 0;   // data line d, slot s -> d*3+s
constexpr int kAncSite0 = 9;    // ancilla pair p, slot s -> 9 + p*3+s
constexpr int kCnotSite0 = 18;  // round r, pair p -> 18 + r*3+p
constexpr int kSiteCount = 24;

constexpr bool site_is_cnot(int site) { return site >= kCnotSite0; }

struct SiteEvent {
  uint8_t site;
  BlockOutcome first;   // the single line, or the data side of a CNOT
  BlockOutcome second;  // the ancilla side of a CNOT
};

inline int event_cost(const SiteEvent& e) {
  if (!site_is_cnot(e.site)) return outcome_weight(e.first);
  int a = outcome_weight(e.first), b = outcome_weight(e.second);
  return a > b ? a : b;
}

struct BoxResult {
  uint8_t syndrome = 0;
  bool matched = false;
  int match_size = 0;
  bool used_fallback = false;
  int outgoing_weight = 0;  // c, by outcome weights of the leaving state
};

// Applies the incoming state and internal events, measures, decodes with
// the given decoder and clears observed flags. `state` holds the leaving
// data-line state afterwards (ancillas are consumed).
BoxResult run_box(BoxState& state, std::span<const SiteEvent> events,
                  Decoder mode, uint32_t& next_flag_id,
                  const MatchOptions& opts = {}, MatchTrace* trace = nullptr);

void apply_outcome(LineState& line, BlockOutcome o, uint32_t& next_flag_id);

// Minimum physical error count able to produce a line state / box state.
int line_weight(const LineState& line);
int state_weight(const BoxState& state);

// A state counts as correctable when an errorless EC cycle of the given
// kind leaves no error on any line; flags ride into that cycle and may be
// matched by it.
bool output_correctable(const BoxState& state, Decoder mode);

}  // namespace mpec::boxmodel

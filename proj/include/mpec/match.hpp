#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mpec {

// One flag visible on the ancilla lines at a level-2 measurement.
// `incidence` is the 3-bit syndrome pattern the flag would produce were it a
// real error: per pair, the parity of the ancilla lines carrying it.
// `carrier_mask` marks which data lines of the box currently carry the flag
// (bit per line); corrections target exactly these lines.
struct ObservedFlag {
  uint32_t id;
  uint8_t incidence;
  uint16_t carrier_mask;
};

struct MatchResult {
  bool matched = false;
  bool used_fallback = false;
  int size = 0;
  std::array<uint32_t, 3> ids{};
  uint16_t correction_mask = 0;  // data lines to correct (net, XOR of carriers)
};

struct MatchOptions {
  int max_size = 3;
};

// Trace of one decode decision, filled only when requested.
struct MatchTrace {
  uint8_t syndrome = 0;
  std::vector<ObservedFlag> observed;
  std::array<std::vector<std::array<uint32_t, 3>>, 3> candidates;  // per size-1
  MatchResult chosen;
};

// Searches subsets of distinct observed flags of size 1, then 2, then 3 for
// one whose binary-added incidence equals the syndrome. The first size class
// with a match wins; within it the match applying the fewest data-line
// corrections is preferred, remaining ties broken by the lexicographically
// smallest sorted id tuple. Returns matched=false when nothing of size
// <= max_size works (caller falls back to plain syndrome decoding).
MatchResult find_flag_match(uint8_t syndrome,
                            const std::vector<ObservedFlag>& observed,
                            const MatchOptions& opts = {},
                            MatchTrace* trace = nullptr);

}  // namespace mpec

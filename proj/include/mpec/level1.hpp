#pragma once

#include <cstdint>
#include <optional>

#include "mpec/circuit.hpp"
#include "mpec/pauli.hpp"

namespace mpec {

// Three syndrome bits per error type, one per ancilla pair. Bit p of the
// packed value compares the parities of lines p and (p+1)%3, i.e. packed
// order (s12, s23, s13) in 1-based naming.
struct Syndrome {
  uint8_t bits = 0;  // 3-bit pack

  bool nonzero() const { return bits != 0; }
};

inline uint8_t pack_syndrome(uint8_t s12, uint8_t s23, uint8_t s13) {
  return static_cast<uint8_t>((s12 & 1) | ((s23 & 1) << 1) | ((s13 & 1) << 2));
}

// Syndrome of a single error on line `l`: both pairs touching l flip.
inline uint8_t line_syndrome(int l) {
  uint8_t s = 0;
  for (int p = 0; p < 3; ++p) {
    if (grid::pair_first(p) == l || grid::pair_second(p) == l) s |= 1 << p;
  }
  return s;
}

// Odd-weight syndromes cannot arise from data errors alone; conventional
// decoding applies no correction on them.
inline bool parity_mismatch(uint8_t syndrome_bits) {
  return (__builtin_popcount(syndrome_bits) & 1) != 0;
}

// Conventional minimum-flip decoding: the unique line consistent with a
// single line error, none for zero or odd-weight syndromes.
std::optional<int> decode_syndrome(Syndrome s);

// Possible outcomes of one level-1 EC block, per error type. The block is
// flagged when it measured a nonzero syndrome; a failure means its output
// differs from the correct state by a logical operator.
enum class BlockOutcome : uint8_t { kUs = 0, kFs = 1, kFf = 2, kUf = 3 };

// Minimum number of physical errors needed to produce each outcome.
constexpr int outcome_weight(BlockOutcome o) { return static_cast<int>(o); }

BlockOutcome classify_outcome(bool flagged, bool logical_failure);

// Gauge-invariant residual summary of one line: for X errors the three
// column parities of the grid, for Z errors the row parities. The class
// (1,1,1) is a logical operator; any single set bit is one line error.
uint8_t line_class(const PauliFrame& frame, const LineInfo& line, ErrType type);

// Ideal decoding of a residual class: majority vote of the three parities.
inline bool class_is_logical(uint8_t cls) {
  return __builtin_popcount(cls) >= 2;
}

}  // namespace mpec

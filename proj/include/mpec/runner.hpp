#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpec/circuit.hpp"
#include "mpec/flags.hpp"
#include "mpec/level1.hpp"
#include "mpec/match.hpp"
#include "mpec/pauli.hpp"

namespace mpec {

// One injected fault: location index plus PauliBits (component 0 on q0,
// component 1 on q1 for CNOT locations). Fault lists must be sorted by
// location and hit each location at most once.
struct Fault {
  uint32_t loc;
  uint8_t pauli;
};

// A decode decision at one level-2 EC box half.
struct BoxDecision {
  ErrType type;
  uint8_t block;
  Section section;
  uint8_t syndrome;
  bool used_fallback = false;
  MatchTrace match;
  uint16_t correction_mask = 0;  // data lines corrected (bit R*3+C)
};

struct RunTrace {
  std::vector<BoxDecision> boxes;
  std::vector<FlagTraceEvent> flag_events;
  uint32_t flags_raised = 0;
};

// Executes trials against a fixed circuit. Owns all per-trial buffers, so a
// runner belongs to one thread; the circuit itself is shared read-only.
class TrialRunner {
 public:
  explicit TrialRunner(const Circuit& circuit);

  // Propagates the faults and all decoder frame updates through the
  // circuit, then judges the output: the trial fails when the residual
  // error acts as a logical X or Z on any output logical qubit. Returns
  // true on success.
  bool run(std::span<const Fault> faults, Decoder mode,
           RunTrace* trace = nullptr);

  const Circuit& circuit() const { return c_; }
  const PauliFrame& frame() const { return frame_; }
  const FlagState& flags() const { return flags_; }
  uint8_t meas_flip(uint16_t slot) const { return meas_[slot]; }

  bool line_has_logical(uint16_t line, ErrType type) const {
    return class_is_logical(line_class(frame_, c_.lines[line], type));
  }

 private:
  void decode_l1(const L1DecodePayload& p, uint32_t pos);
  void decode_l2(const L2DecodePayload& p, Decoder mode, uint32_t pos,
                 RunTrace* trace);
  bool judge(Decoder mode) const;

  const Circuit& c_;
  PauliFrame frame_;
  std::vector<uint8_t> meas_;
  FlagState flags_;
  std::vector<ObservedFlag> observed_;  // scratch
};

}  // namespace mpec

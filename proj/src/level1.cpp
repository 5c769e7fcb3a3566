#include "mpec/level1.hpp"

namespace mpec {

std::optional<int> decode_syndrome(Syndrome s) {
  // Indexed by (s12 | s23<<1 | s13<<2); -1 = clean, -2 = parity mismatch.
  static constexpr int8_t kTable[8] = {
      -1,  // 000
      -2,  // s12 only
      -2,  // s23 only
      1,   // s12,s23 -> line 1
      -2,  // s13 only
      0,   // s12,s13 -> line 0
      2,   // s23,s13 -> line 2
      -2,  // all three
  };
  int8_t r = kTable[s.bits & 7];
  if (r < 0) return std::nullopt;
  return r;
}

BlockOutcome classify_outcome(bool flagged, bool logical_failure) {
  if (flagged) return logical_failure ? BlockOutcome::kFf : BlockOutcome::kFs;
  return logical_failure ? BlockOutcome::kUf : BlockOutcome::kUs;
}

uint8_t line_class(const PauliFrame& frame, const LineInfo& line,
                   ErrType type) {
  uint8_t cls = 0;
  if (type == ErrType::kX) {
    for (int c = 0; c < 3; ++c) {
      uint8_t par = 0;
      for (int r = 0; r < 3; ++r) par ^= frame.x(line.qubits[r][c]);
      cls |= static_cast<uint8_t>((par & 1) << c);
    }
  } else {
    for (int r = 0; r < 3; ++r) {
      uint8_t par = 0;
      for (int c = 0; c < 3; ++c) par ^= frame.z(line.qubits[r][c]);
      cls |= static_cast<uint8_t>((par & 1) << r);
    }
  }
  return cls;
}

}  // namespace mpec

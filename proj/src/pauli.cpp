#include "mpec/pauli.hpp"

#include <stdexcept>

#include "mpec/circuit.hpp"

namespace mpec {

void apply_pauli(PauliFrame& frame, uint32_t qubit, SingleQubitPauli op) {
  if (qubit >= frame.size()) {
    throw std::out_of_range("apply_pauli: qubit index out of range");
  }
  uint8_t bits = static_cast<uint8_t>(op);
  frame.x(qubit) ^= bits & kX0 ? 1 : 0;
  frame.z(qubit) ^= bits & kZ0 ? 1 : 0;
}

void apply_pauli2(PauliFrame& frame, uint32_t q0, uint32_t q1, uint8_t bits) {
  if (q0 >= frame.size() || q1 >= frame.size()) {
    throw std::out_of_range("apply_pauli2: qubit index out of range");
  }
  frame.x(q0) ^= bits & kX0 ? 1 : 0;
  frame.z(q0) ^= bits & kZ0 ? 1 : 0;
  frame.x(q1) ^= bits & kX1 ? 1 : 0;
  frame.z(q1) ^= bits & kZ1 ? 1 : 0;
}

std::optional<uint8_t> propagate_location(PauliFrame& frame, const LocHot& loc) {
  switch (loc.kind) {
    case LocKind::kCnot:
      frame.x(loc.q1) ^= frame.x(loc.q0);
      frame.z(loc.q0) ^= frame.z(loc.q1);
      return std::nullopt;
    case LocKind::kPrepZ:
    case LocKind::kPrepX:
      frame.x(loc.q0) = 0;
      frame.z(loc.q0) = 0;
      return std::nullopt;
    case LocKind::kMeasZ:
      return frame.x(loc.q0);
    case LocKind::kMeasX:
      return frame.z(loc.q0);
    case LocKind::kMemory:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace mpec

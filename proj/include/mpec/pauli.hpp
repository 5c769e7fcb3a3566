#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mpec {

// Pauli component bits for a (possibly two-qubit) error. For single-qubit
// locations only kX0/kZ0 apply; CNOT locations use all four.
enum PauliBits : uint8_t {
  kX0 = 1,
  kZ0 = 2,
  kX1 = 4,
  kZ1 = 8,
};

enum class SingleQubitPauli : uint8_t { kX = kX0, kY = kX0 | kZ0, kZ = kZ0 };

// Classical record of accumulated X/Z errors, one bit of each per physical
// qubit. Y is both bits set. Signs and global phases are not tracked; the
// decoders only ever consume X/Z support.
class PauliFrame {
 public:
  PauliFrame() = default;
  explicit PauliFrame(uint32_t qubit_count)
      : x_(qubit_count, 0), z_(qubit_count, 0) {}

  uint32_t size() const { return static_cast<uint32_t>(x_.size()); }

  void clear() {
    std::fill(x_.begin(), x_.end(), uint8_t{0});
    std::fill(z_.begin(), z_.end(), uint8_t{0});
  }

  uint8_t x(uint32_t q) const { return x_[q]; }
  uint8_t z(uint32_t q) const { return z_[q]; }
  uint8_t& x(uint32_t q) { return x_[q]; }
  uint8_t& z(uint32_t q) { return z_[q]; }

  bool operator==(const PauliFrame&) const = default;

 private:
  std::vector<uint8_t> x_, z_;
};

struct LocHot;

// XOR-accumulates a Pauli onto a qubit. Applying the same Pauli twice
// cancels. Throws std::out_of_range on a bad index.
void apply_pauli(PauliFrame& frame, uint32_t qubit, SingleQubitPauli op);

// Two-qubit variant for CNOT locations; `bits` uses PauliBits with the 0
// component on `q0` and the 1 component on `q1`.
void apply_pauli2(PauliFrame& frame, uint32_t q0, uint32_t q1, uint8_t bits);

// Deterministic propagation of the frame through one location.
//   CNOT:   x(control) copies onto target, z(target) copies onto control.
//   Prep:   both bits of the prepared qubit are cleared.
//   MeasZ:  returns the x bit of the measured qubit (outcome flip).
//   MeasX:  returns the z bit.
//   Memory: no change.
std::optional<uint8_t> propagate_location(PauliFrame& frame, const LocHot& loc);

}  // namespace mpec

#pragma once

#include <cstdint>
#include <vector>

#include "mpec/circuit.hpp"

namespace mpec {

struct FlagOrigin {
  uint16_t line;
  ErrType type;
  uint32_t raise_pos;  // location index after which the flag was raised
};

struct FlagTraceEvent {
  enum Kind : uint8_t { kRaise, kCopy, kClear } kind;
  uint32_t id;
  uint16_t line;
  uint32_t pos;
};

// Classical flags riding alongside the quantum frame. A flag is raised on a
// level-1 qubit whenever its EC block measures a nonzero syndrome, carries a
// unique identity for the rest of the trial, and is copied between lines the
// same way the error it may represent would propagate. Flag state never
// feeds back into the PauliFrame.
class FlagState {
 public:
  void init(size_t line_count) {
    x_.resize(line_count);
    z_.resize(line_count);
  }

  void reset() {
    for (uint16_t l : touched_) {
      x_[l].clear();
      z_[l].clear();
    }
    touched_.clear();
    origins_.clear();
    trace_.clear();
    next_id_ = 0;
  }

  uint32_t raise(uint16_t line, ErrType type, uint32_t pos) {
    uint32_t id = next_id_++;
    set_of(line, type).push_back(id);
    touch(line);
    origins_.push_back({line, type, pos});
    if (tracing_) trace_.push_back({FlagTraceEvent::kRaise, id, line, pos});
    return id;
  }

  // Transversal CNOT between lines: X flags copy control -> target, Z flags
  // copy target -> control. A flag lands at most once per line per type.
  void copy_cnot(uint16_t control_line, uint16_t target_line, uint32_t pos) {
    copy_into(x_[control_line], x_[target_line], target_line, pos);
    copy_into(z_[target_line], z_[control_line], control_line, pos);
  }

  // Preparation resets a line: any flags riding it are dropped.
  void clear_line(uint16_t line) {
    x_[line].clear();
    z_[line].clear();
  }

  void remove(uint16_t line, ErrType type, uint32_t id, uint32_t pos) {
    auto& v = set_of(line, type);
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] == id) {
        v.erase(v.begin() + i);
        if (tracing_) trace_.push_back({FlagTraceEvent::kClear, id, line, pos});
        return;
      }
    }
  }

  bool has(uint16_t line, ErrType type, uint32_t id) const {
    const auto& v = type == ErrType::kX ? x_[line] : z_[line];
    for (uint32_t f : v)
      if (f == id) return true;
    return false;
  }

  const std::vector<uint32_t>& of(uint16_t line, ErrType type) const {
    return type == ErrType::kX ? x_[line] : z_[line];
  }

  uint32_t raised_count() const { return next_id_; }
  const std::vector<FlagOrigin>& origins() const { return origins_; }

  void set_tracing(bool on) { tracing_ = on; }
  const std::vector<FlagTraceEvent>& trace() const { return trace_; }

 private:
  std::vector<uint32_t>& set_of(uint16_t line, ErrType type) {
    return type == ErrType::kX ? x_[line] : z_[line];
  }

  void copy_into(const std::vector<uint32_t>& src, std::vector<uint32_t>& dst,
                 uint16_t dst_line, uint32_t pos) {
    for (uint32_t id : src) {
      bool present = false;
      for (uint32_t d : dst) {
        if (d == id) {
          present = true;
          break;
        }
      }
      if (!present) {
        dst.push_back(id);
        touch(dst_line);
        if (tracing_) trace_.push_back({FlagTraceEvent::kCopy, id, dst_line, pos});
      }
    }
  }

  void touch(uint16_t line) {
    for (uint16_t t : touched_)
      if (t == line) return;
    touched_.push_back(line);
  }

  std::vector<std::vector<uint32_t>> x_, z_;
  std::vector<uint16_t> touched_;
  std::vector<FlagOrigin> origins_;
  std::vector<FlagTraceEvent> trace_;
  uint32_t next_id_ = 0;
  bool tracing_ = false;
};

}  // namespace mpec

#include "mpec/runner.hpp"

#include <cstring>

#include "mpec/boxmodel.hpp"

namespace mpec {

namespace {

// Logical readout of a measured line: parity groups are grid columns for a
// Z-basis readout (X errors flip it) and grid rows for an X-basis one, and
// the decoded flip is the majority of the three group parities.
uint8_t logical_flip(const std::vector<uint8_t>& meas, const LineInfo& line,
                     ErrType type) {
  int ones = 0;
  for (int g = 0; g < 3; ++g) {
    uint8_t par = 0;
    for (int k = 0; k < 3; ++k) {
      uint16_t slot = type == ErrType::kX ? line.meas_slots[k][g]
                                          : line.meas_slots[g][k];
      par ^= meas[slot];
    }
    ones += par & 1;
  }
  return ones >= 2 ? 1 : 0;
}

// Data-line mask (bit R*3+C) of a conventional level-2 correction: X
// corrections blame a level-2 column, Z corrections a row.
uint16_t line_mask(ErrType type, int l) {
  uint16_t m = 0;
  for (int k = 0; k < 3; ++k)
    m |= type == ErrType::kX ? uint16_t{1} << (k * 3 + l)
                             : uint16_t{1} << (l * 3 + k);
  return m;
}

}  // namespace

TrialRunner::TrialRunner(const Circuit& circuit)
    : c_(circuit),
      frame_(circuit.qubit_count),
      meas_(circuit.meas_slot_count, 0) {
  flags_.init(circuit.lines.size());
}

bool TrialRunner::run(std::span<const Fault> faults, Decoder mode,
                      RunTrace* trace) {
  frame_.clear();
  if (!meas_.empty()) std::memset(meas_.data(), 0, meas_.size());
  flags_.reset();
  flags_.set_tracing(trace != nullptr);

  const LocHot* hot = c_.hot.data();
  const uint32_t n = static_cast<uint32_t>(c_.hot.size());

  // Everything before the first fault is a clean prefix: syndromes are zero
  // and every classical step is a no-op, so the walk may start at the fault.
  uint32_t start = faults.empty() ? n : faults.front().loc;
  if (trace) start = 0;

  size_t fi = 0;
  while (fi < faults.size() && faults[fi].loc < start) ++fi;
  size_t ei = 0;
  while (ei < c_.events.size() && c_.events[ei].pos < start) ++ei;

  for (uint32_t li = start; li < n; ++li) {
    const LocHot& h = hot[li];
    switch (h.kind) {
      case LocKind::kCnot:
        frame_.x(h.q1) ^= frame_.x(h.q0);
        frame_.z(h.q0) ^= frame_.z(h.q1);
        if (fi < faults.size() && faults[fi].loc == li) {
          uint8_t bits = faults[fi].pauli & h.inject_mask;
          ++fi;
          frame_.x(h.q0) ^= bits & kX0 ? 1 : 0;
          frame_.z(h.q0) ^= bits & kZ0 ? 1 : 0;
          frame_.x(h.q1) ^= bits & kX1 ? 1 : 0;
          frame_.z(h.q1) ^= bits & kZ1 ? 1 : 0;
        }
        break;
      case LocKind::kPrepZ:
      case LocKind::kPrepX:
        frame_.x(h.q0) = 0;
        frame_.z(h.q0) = 0;
        if (fi < faults.size() && faults[fi].loc == li) {
          uint8_t bits = faults[fi].pauli & h.inject_mask;
          ++fi;
          frame_.x(h.q0) ^= bits & kX0 ? 1 : 0;
          frame_.z(h.q0) ^= bits & kZ0 ? 1 : 0;
        }
        break;
      case LocKind::kMeasZ:
      case LocKind::kMeasX:
        if (fi < faults.size() && faults[fi].loc == li) {
          uint8_t bits = faults[fi].pauli & h.inject_mask;
          ++fi;
          frame_.x(h.q0) ^= bits & kX0 ? 1 : 0;
          frame_.z(h.q0) ^= bits & kZ0 ? 1 : 0;
        }
        meas_[h.meas_slot] =
            h.kind == LocKind::kMeasZ ? frame_.x(h.q0) : frame_.z(h.q0);
        break;
      case LocKind::kMemory:
        if (fi < faults.size() && faults[fi].loc == li) {
          uint8_t bits = faults[fi].pauli & h.inject_mask;
          ++fi;
          frame_.x(h.q0) ^= bits & kX0 ? 1 : 0;
          frame_.z(h.q0) ^= bits & kZ0 ? 1 : 0;
        }
        break;
    }

    while (ei < c_.events.size() && c_.events[ei].pos == li) {
      const Event& e = c_.events[ei];
      switch (e.kind) {
        case EventKind::kL1Decode:
          decode_l1(c_.l1_payloads[e.payload], li);
          break;
        case EventKind::kLineCnotFlags: {
          const LineCnotPayload& p = c_.cnot_payloads[e.payload];
          flags_.copy_cnot(p.control_line, p.target_line, li);
          break;
        }
        case EventKind::kL2Decode:
          decode_l2(c_.l2_payloads[e.payload], mode, li, trace);
          break;
      }
      ++ei;
    }
  }

  if (trace) trace->flags_raised = flags_.raised_count();
  if (trace) trace->flag_events = flags_.trace();
  return judge(mode);
}

void TrialRunner::decode_l1(const L1DecodePayload& p, uint32_t pos) {
  uint8_t s = 0;
  for (int pr = 0; pr < 3; ++pr) {
    uint8_t bit = 0;
    for (int g = 0; g < 3; ++g) bit ^= meas_[p.slots[g][pr]];
    s |= static_cast<uint8_t>((bit & 1) << pr);
  }
  if (!s) return;
  flags_.raise(p.line, p.type, pos);
  auto corr = decode_syndrome(Syndrome{s});
  if (!corr) return;
  for (int k = 0; k < 3; ++k) {
    uint16_t q = p.corr[*corr][k];
    if (p.type == ErrType::kX)
      frame_.x(q) ^= 1;
    else
      frame_.z(q) ^= 1;
  }
}

void TrialRunner::decode_l2(const L2DecodePayload& p, Decoder mode,
                            uint32_t pos, RunTrace* trace) {
  uint8_t syndrome = 0;
  for (int pr = 0; pr < 3; ++pr) {
    uint8_t bit = 0;
    for (int g = 0; g < 3; ++g)
      bit ^= logical_flip(meas_, c_.lines[p.anc_lines[g][pr]], p.type);
    syndrome |= static_cast<uint8_t>((bit & 1) << pr);
  }

  // Distinct flags on the ancilla lines, with the syndrome pattern each one
  // would produce and the data lines of this block that still carry it.
  observed_.clear();
  for (int g = 0; g < 3; ++g) {
    for (int pr = 0; pr < 3; ++pr) {
      for (uint32_t id : flags_.of(p.anc_lines[g][pr], p.type)) {
        ObservedFlag* f = nullptr;
        for (auto& o : observed_)
          if (o.id == id) {
            f = &o;
            break;
          }
        if (!f) {
          observed_.push_back({id, 0, 0});
          f = &observed_.back();
        }
        f->incidence ^= static_cast<uint8_t>(1 << pr);
      }
    }
  }
  for (auto& o : observed_) {
    for (int d = 0; d < 9; ++d) {
      uint16_t line = c_.data_lines[p.block][d / 3][d % 3];
      if (flags_.has(line, p.type, o.id)) o.carrier_mask |= 1 << d;
    }
  }

  uint16_t corr_mask = 0;
  bool fallback = false;
  MatchTrace* mtrace = nullptr;
  if (trace) {
    trace->boxes.push_back({});
    BoxDecision& bd = trace->boxes.back();
    bd.type = p.type;
    bd.block = p.block;
    bd.section = p.section;
    bd.syndrome = syndrome;
    bd.match.syndrome = syndrome;
    bd.match.observed = observed_;
    mtrace = &bd.match;
  }

  if (mode == Decoder::kStandard) {
    auto l = decode_syndrome(Syndrome{syndrome});
    if (l) corr_mask = line_mask(p.type, *l);
  } else {
    if (syndrome) {
      MatchResult m = find_flag_match(syndrome, observed_, {}, mtrace);
      if (m.matched) {
        corr_mask = m.correction_mask;
      } else {
        fallback = true;
        auto l = decode_syndrome(Syndrome{syndrome});
        if (l) corr_mask = line_mask(p.type, *l);
      }
    }
    // Flags seen on the ancillas are spent: established FF (corrected) or
    // FS, either way cleared from this block's data.
    for (const auto& o : observed_)
      for (int d = 0; d < 9; ++d)
        flags_.remove(c_.data_lines[p.block][d / 3][d % 3], p.type, o.id, pos);
  }

  for (int d = 0; d < 9; ++d) {
    if (!(corr_mask & (1 << d))) continue;
    const LineInfo& li = c_.lines[c_.data_lines[p.block][d / 3][d % 3]];
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col) {
        uint16_t q = li.qubits[r][col];
        if (p.type == ErrType::kX)
          frame_.x(q) ^= 1;
        else
          frame_.z(q) ^= 1;
      }
  }

  if (trace) {
    BoxDecision& bd = trace->boxes.back();
    bd.used_fallback = fallback;
    bd.correction_mask = corr_mask;
  }
}

// Success means an errorless error correction cycle applied to the output
// would produce the correct state. The residual per-line classes reduce,
// modulo the gauge group, to one line value per level-2 line; surviving
// flags reduce the same way (binary addition over parallel lines) and ride
// into the errorless cycle, which clears or consumes them exactly as a real
// box would.
bool TrialRunner::judge(Decoder mode) const {
  if (c_.block_count == 0) {
    // Standalone level-1 structure: no level-2 cycle exists, judge each
    // non-ancilla line directly.
    for (size_t l = 0; l < c_.lines.size(); ++l) {
      if (c_.lines[l].is_ancilla) continue;
      if (class_is_logical(line_class(frame_, c_.lines[l], ErrType::kX)) ||
          class_is_logical(line_class(frame_, c_.lines[l], ErrType::kZ)))
        return false;
    }
    return true;
  }
  for (uint8_t b = 0; b < c_.block_count; ++b) {
    for (ErrType type : {ErrType::kX, ErrType::kZ}) {
      boxmodel::BoxState reduced{};
      bool any = false;
      for (int i = 0; i < 3; ++i) {
        uint8_t par = 0;
        for (int j = 0; j < 3; ++j) {
          uint16_t line = type == ErrType::kX ? c_.data_lines[b][j][i]
                                              : c_.data_lines[b][i][j];
          par ^= class_is_logical(line_class(frame_, c_.lines[line], type));
        }
        reduced.data[i].error = (par & 1) != 0;
        any |= reduced.data[i].error;
      }
      if (mode == Decoder::kMpec) {
        // Distinct flag ids on this block's data lines, reduced by presence
        // parity across each level-2 line group.
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            uint16_t line = type == ErrType::kX ? c_.data_lines[b][j][i]
                                                : c_.data_lines[b][i][j];
            for (uint32_t id : flags_.of(line, type)) {
              if (reduced.data[i].has_flag(id))
                reduced.data[i].remove_flag(id);
              else
                reduced.data[i].add_flag(id);
              any = true;
            }
          }
        }
      }
      if (!any) continue;
      if (!boxmodel::output_correctable(reduced, mode)) return false;
    }
  }
  return true;
}

}  // namespace mpec

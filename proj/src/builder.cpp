#include <cassert>
#include <span>
#include <stdexcept>

#include "mpec/circuit.hpp"
#include "mpec/pauli.hpp"

namespace mpec {

namespace {

// Incremental circuit assembly with per-timestep bookkeeping. Idle alive
// qubits receive explicit Memory locations whenever any gate acts in the
// same timestep (fills are restricted to the blocks currently in scope so
// the two logical blocks, which run in parallel in time but are emitted
// sequentially, are filled exactly once). Transparency bits track which
// qubits sit in a computational (or conjugate) basis product state, where a
// Z (or X) component acts trivially; injection masks are frozen per
// location from that state.
class Builder {
 public:
  Circuit c;

  uint16_t new_qubit(uint16_t owner_line, bool alive_now) {
    uint16_t q = static_cast<uint16_t>(c.qubit_count++);
    alive_.push_back(alive_now ? 1 : 0);
    xt_.push_back(0);
    zt_.push_back(0);
    owner_.push_back(owner_line);
    touched_at_.push_back(0);
    fill_at_.push_back(0);
    fill_loc_.push_back(0);
    return q;
  }

  uint16_t new_line(uint8_t block, bool is_ancilla, bool alive_now) {
    uint16_t id = static_cast<uint16_t>(c.lines.size());
    c.lines.emplace_back();
    LineInfo& line = c.lines.back();
    line.block = block;
    line.is_ancilla = is_ancilla;
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col)
        line.qubits[r][col] = new_qubit(id, alive_now);
    return id;
  }

  void set_scope(bool b0, bool b1, bool unblocked) {
    scope_ = {b0, b1, unblocked};
  }
  void set_section(Section s) { section_ = s; }
  void set_level(uint8_t lv) { level_ = lv; }

  void begin_step() {
    assert(!in_step_);
    in_step_ = true;
    ++serial_;
  }

  uint32_t end_step() {
    assert(in_step_);
    uint32_t closed = serial_;
    for (uint32_t q = 0; q < c.qubit_count; ++q) {
      if (!alive_[q] || touched_at_[q] == serial_) continue;
      uint8_t blk = c.lines[owner_[q]].block;
      if (!scope_[blk == kNoBlock ? 2 : blk]) continue;
      uint32_t idx = emit(LocKind::kMemory, static_cast<uint16_t>(q));
      fill_at_[q] = serial_;
      fill_loc_[q] = idx;
    }
    ++clock_;
    in_step_ = false;
    return closed;
  }

  uint32_t fill_loc_in_step(uint16_t q, uint32_t serial) const {
    if (fill_at_[q] != serial) throw std::logic_error("no fill recorded");
    return fill_loc_[q];
  }

  uint32_t emit(LocKind kind, uint16_t q0, uint16_t q1 = 0,
                uint8_t pair = 0xff) {
    assert(in_step_);
    touch(q0);
    if (kind == LocKind::kCnot) touch(q1);

    LocHot hot{};
    hot.kind = kind;
    hot.q0 = q0;
    hot.q1 = q1;
    switch (kind) {
      case LocKind::kPrepZ:
        alive_[q0] = 1;
        xt_[q0] = 0;
        zt_[q0] = 1;
        hot.inject_mask = mask1(q0);
        break;
      case LocKind::kPrepX:
        alive_[q0] = 1;
        xt_[q0] = 1;
        zt_[q0] = 0;
        hot.inject_mask = mask1(q0);
        break;
      case LocKind::kMeasZ:
      case LocKind::kMeasX:
        hot.inject_mask = mask1(q0);
        alive_[q0] = 0;
        hot.meas_slot = static_cast<uint16_t>(c.meas_slot_count++);
        break;
      case LocKind::kCnot:
        zt_[q1] = zt_[q1] & zt_[q0];
        xt_[q0] = xt_[q0] & xt_[q1];
        hot.inject_mask =
            static_cast<uint8_t>(mask1(q0) | ((xt_[q1] ? 0 : kX1) | (zt_[q1] ? 0 : kZ1)));
        break;
      case LocKind::kMemory:
        hot.inject_mask = mask1(q0);
        break;
    }

    LocCold cold{};
    cold.timestep = clock_;
    cold.line = owner_[q0];
    cold.line2 = kind == LocKind::kCnot ? owner_[q1] : kNoLine;
    cold.level = level_;
    cold.block = c.lines[cold.line].block;
    cold.section = section_;
    cold.pair = pair;

    c.hot.push_back(hot);
    c.cold.push_back(cold);
    return static_cast<uint32_t>(c.hot.size() - 1);
  }

  void push_event(EventKind kind, uint32_t payload) {
    assert(!in_step_);
    c.events.push_back(
        {kind, static_cast<uint32_t>(c.hot.size() - 1), payload});
  }

  // One syndrome-extraction half on each line of `lines`, run in lockstep.
  void emit_l1ec_part(std::span<const uint16_t> lines, ErrType part) {
    set_level(1);
    struct PerLine {
      std::array<std::array<uint16_t, 3>, 3> sub;       // [group][pair]
      std::array<std::array<uint32_t, 3>, 3> meas_loc;  // [group][pair]
      std::array<std::array<uint32_t, 3>, 3> mem0;      // [row][col]
    };
    std::vector<PerLine> state(lines.size());

    for (size_t i = 0; i < lines.size(); ++i)
      for (int g = 0; g < 3; ++g)
        for (int p = 0; p < 3; ++p)
          state[i].sub[g][p] = new_qubit(lines[i], false);

    // preparation of the sub-ancillas; grid qubits idle
    begin_step();
    for (size_t i = 0; i < lines.size(); ++i)
      for (int g = 0; g < 3; ++g)
        for (int p = 0; p < 3; ++p)
          emit(part == ErrType::kX ? LocKind::kPrepZ : LocKind::kPrepX,
               state[i].sub[g][p], 0, static_cast<uint8_t>(p));
    uint32_t prep_serial = end_step();
    for (size_t i = 0; i < lines.size(); ++i) {
      const LineInfo& li = c.lines[lines[i]];
      for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
          state[i].mem0[r][col] = fill_loc_in_step(li.qubits[r][col], prep_serial);
    }

    // two rounds of pairwise coupling
    for (int round = 0; round < 2; ++round) {
      begin_step();
      for (size_t i = 0; i < lines.size(); ++i) {
        const LineInfo& li = c.lines[lines[i]];
        for (int g = 0; g < 3; ++g) {
          for (int p = 0; p < 3; ++p) {
            int partner = grid::coupled_line(p, round);
            if (part == ErrType::kX) {
              // group = grid row; data qubit (g, partner) controls the sub
              emit(LocKind::kCnot, li.qubits[g][partner], state[i].sub[g][p],
                   static_cast<uint8_t>(p));
            } else {
              // group = grid column; sub controls data qubit (partner, g)
              emit(LocKind::kCnot, state[i].sub[g][p], li.qubits[partner][g],
                   static_cast<uint8_t>(p));
            }
          }
        }
      }
      end_step();
    }

    // readout
    begin_step();
    for (size_t i = 0; i < lines.size(); ++i)
      for (int g = 0; g < 3; ++g)
        for (int p = 0; p < 3; ++p)
          state[i].meas_loc[g][p] =
              emit(part == ErrType::kX ? LocKind::kMeasZ : LocKind::kMeasX,
                   state[i].sub[g][p], 0, static_cast<uint8_t>(p));
    end_step();

    for (size_t i = 0; i < lines.size(); ++i) {
      const LineInfo& li = c.lines[lines[i]];
      L1DecodePayload payload{};
      payload.type = part;
      payload.line = lines[i];
      payload.block = li.block;
      payload.section = section_;
      for (int g = 0; g < 3; ++g)
        for (int p = 0; p < 3; ++p)
          payload.slots[g][p] = c.hot[state[i].meas_loc[g][p]].meas_slot;
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k)
          payload.corr[l][k] =
              part == ErrType::kX ? li.qubits[k][l] : li.qubits[l][k];
      uint32_t pid = static_cast<uint32_t>(c.l1_payloads.size());
      c.l1_payloads.push_back(payload);
      push_event(EventKind::kL1Decode, pid);

      Circuit::L1BlockRef ref{};
      ref.line = lines[i];
      ref.type = part;
      ref.section = section_;
      ref.block = li.block;
      ref.mem0_loc = state[i].mem0;
      ref.sub_meas_loc = state[i].meas_loc;
      ref.payload_index = pid;
      c.l1_blocks.push_back(ref);
    }
  }

  void emit_l1ec(std::span<const uint16_t> lines) {
    emit_l1ec_part(lines, ErrType::kX);
    emit_l1ec_part(lines, ErrType::kZ);
  }

  // One level-2 EC box on `block`: X syndrome extraction then Z, with fresh
  // ancilla lines and level-1 EC after every gadget.
  void emit_l2_box(uint8_t block, Section section) {
    set_section(section);
    set_scope(block == 0, block == 1, false);
    for (ErrType type : {ErrType::kX, ErrType::kZ}) {
      std::array<std::array<uint16_t, 3>, 3> anc{};  // [group][pair]
      std::vector<uint16_t> anc_flat;
      for (int g = 0; g < 3; ++g)
        for (int p = 0; p < 3; ++p) {
          anc[g][p] = new_line(block, true, false);
          anc_flat.push_back(anc[g][p]);
        }

      // transversal logical preparation
      set_level(2);
      begin_step();
      for (uint16_t a : anc_flat) {
        const LineInfo& li = c.lines[a];
        for (int r = 0; r < 3; ++r)
          for (int col = 0; col < 3; ++col)
            emit(type == ErrType::kX ? LocKind::kPrepZ : LocKind::kPrepX,
                 li.qubits[r][col]);
      }
      end_step();
      emit_l1ec(anc_flat);

      std::vector<uint16_t> all_lines;
      for (int g = 0; g < 3; ++g)
        for (int col = 0; col < 3; ++col)
          all_lines.push_back(c.data_lines[block][g][col]);
      all_lines.insert(all_lines.end(), anc_flat.begin(), anc_flat.end());

      for (int round = 0; round < 2; ++round) {
        set_level(2);
        begin_step();
        std::array<std::array<std::pair<uint16_t, uint16_t>, 3>, 3> pairs{};
        for (int g = 0; g < 3; ++g) {
          for (int p = 0; p < 3; ++p) {
            int partner = grid::coupled_line(p, round);
            uint16_t data_line, control_line, target_line;
            if (type == ErrType::kX) {
              // per level-2 row g: data column `partner` controls ancilla
              data_line = c.data_lines[block][g][partner];
              control_line = data_line;
              target_line = anc[g][p];
            } else {
              // per level-2 column g: ancilla controls data row `partner`
              data_line = c.data_lines[block][partner][g];
              control_line = anc[g][p];
              target_line = data_line;
            }
            const LineInfo& cl = c.lines[control_line];
            const LineInfo& tl = c.lines[target_line];
            uint32_t base = 0;
            for (int r = 0; r < 3; ++r)
              for (int col = 0; col < 3; ++col) {
                uint32_t idx = emit(LocKind::kCnot, cl.qubits[r][col],
                                    tl.qubits[r][col], static_cast<uint8_t>(p));
                if (r == 0 && col == 0) base = idx;
              }
            c.box_cnots.push_back({block, type, section,
                                   static_cast<uint8_t>(round),
                                   static_cast<uint8_t>(g),
                                   static_cast<uint8_t>(p), base});
            pairs[g][p] = {control_line, target_line};
          }
        }
        end_step();
        for (int g = 0; g < 3; ++g)
          for (int p = 0; p < 3; ++p) {
            uint32_t pid = static_cast<uint32_t>(c.cnot_payloads.size());
            c.cnot_payloads.push_back({pairs[g][p].first, pairs[g][p].second});
            push_event(EventKind::kLineCnotFlags, pid);
          }
        emit_l1ec(all_lines);
      }

      // transversal logical readout of the ancilla lines
      set_level(2);
      begin_step();
      for (uint16_t a : anc_flat) {
        LineInfo& li = c.lines[a];
        for (int r = 0; r < 3; ++r)
          for (int col = 0; col < 3; ++col) {
            uint32_t idx =
                emit(type == ErrType::kX ? LocKind::kMeasZ : LocKind::kMeasX,
                     li.qubits[r][col]);
            li.meas_slots[r][col] = c.hot[idx].meas_slot;
          }
        li.measured = true;
      }
      end_step();

      L2DecodePayload payload{};
      payload.type = type;
      payload.block = block;
      payload.section = section;
      payload.anc_lines = anc;
      uint32_t pid = static_cast<uint32_t>(c.l2_payloads.size());
      c.l2_payloads.push_back(payload);
      push_event(EventKind::kL2Decode, pid);
    }
  }

  void emit_l2_cnot_gadget() {
    set_section(Section::kGadget);
    set_scope(true, true, false);
    set_level(2);
    begin_step();
    std::array<uint16_t, 9> b0_lines{}, b1_lines{};
    for (int g = 0; g < 3; ++g)
      for (int col = 0; col < 3; ++col) {
        uint16_t lc = c.data_lines[0][g][col];
        uint16_t lt = c.data_lines[1][g][col];
        b0_lines[g * 3 + col] = lc;
        b1_lines[g * 3 + col] = lt;
        for (int r = 0; r < 3; ++r)
          for (int cc = 0; cc < 3; ++cc)
            emit(LocKind::kCnot, c.lines[lc].qubits[r][cc],
                 c.lines[lt].qubits[r][cc]);
      }
    end_step();
    for (int k = 0; k < 9; ++k) {
      uint32_t pid = static_cast<uint32_t>(c.cnot_payloads.size());
      c.cnot_payloads.push_back({b0_lines[k], b1_lines[k]});
      push_event(EventKind::kLineCnotFlags, pid);
    }
    std::vector<uint16_t> all_data;
    all_data.insert(all_data.end(), b0_lines.begin(), b0_lines.end());
    all_data.insert(all_data.end(), b1_lines.begin(), b1_lines.end());
    emit_l1ec(all_data);
  }

 private:
  uint8_t mask1(uint16_t q) const {
    return static_cast<uint8_t>((xt_[q] ? 0 : kX0) | (zt_[q] ? 0 : kZ0));
  }

  void touch(uint16_t q) {
    if (touched_at_[q] == serial_)
      throw std::logic_error("qubit scheduled twice in one timestep");
    touched_at_[q] = serial_;
  }

  std::vector<uint8_t> alive_, xt_, zt_;
  std::vector<uint16_t> owner_;
  std::vector<uint32_t> touched_at_, fill_at_, fill_loc_;
  uint32_t serial_ = 0;
  uint32_t clock_ = 0;
  bool in_step_ = false;
  std::array<bool, 3> scope_{{true, true, true}};
  Section section_ = Section::kNone;
  uint8_t level_ = 1;
};

}  // namespace

Circuit build_level1_ec(L1Kind kind) {
  Builder b;
  uint16_t line = b.new_line(kNoBlock, false, true);
  b.set_scope(false, false, true);
  std::array<uint16_t, 1> lines{line};
  if (kind == L1Kind::kXOnly || kind == L1Kind::kBoth)
    b.emit_l1ec_part(lines, ErrType::kX);
  if (kind == L1Kind::kZOnly || kind == L1Kind::kBoth)
    b.emit_l1ec_part(lines, ErrType::kZ);
  return std::move(b.c);
}

Circuit build_level2_cnot_exrec() {
  Builder b;
  b.c.block_count = 2;
  for (uint8_t block = 0; block < 2; ++block)
    for (int g = 0; g < 3; ++g)
      for (int col = 0; col < 3; ++col)
        b.c.data_lines[block][g][col] = b.new_line(block, false, true);

  b.emit_l2_box(0, Section::kLeadingEc);
  b.emit_l2_box(1, Section::kLeadingEc);
  b.emit_l2_cnot_gadget();
  b.emit_l2_box(0, Section::kTrailingEc);
  b.emit_l2_box(1, Section::kTrailingEc);
  return std::move(b.c);
}

std::vector<uint64_t> weight_schedule(int levels, Scheme scheme) {
  if (levels < 1) throw std::invalid_argument("weight_schedule: levels must be >= 1");
  std::vector<uint64_t> out;
  out.reserve(levels);
  for (int n = 1; n <= levels; ++n) {
    if (scheme == Scheme::kStandard) {
      out.push_back(uint64_t{1} << (n - 1));
    } else {
      // 1, 2, 5, 10, 25, 50, 125, ...: flagged and flag-consuming levels
      // alternate, so the distance multiplies by 2 and 5/2 in turn.
      uint64_t pow5 = 1;
      for (int k = 0; k < (n - 1) / 2; ++k) pow5 *= 5;
      out.push_back(n % 2 == 1 ? pow5 : 2 * pow5);
    }
  }
  return out;
}

}  // namespace mpec

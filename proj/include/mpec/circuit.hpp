#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mpec {

enum class LocKind : uint8_t { kPrepZ, kPrepX, kMeasZ, kMeasX, kCnot, kMemory };

// Which slice of the extended rectangle a location belongs to.
enum class Section : uint8_t { kLeadingEc, kGadget, kTrailingEc, kNone };

// Error type a structure detects / a flag represents.
enum class ErrType : uint8_t { kX = 0, kZ = 1 };

enum class Decoder : uint8_t { kStandard, kMpec };

constexpr uint16_t kNoLine = 0xffff;
constexpr uint16_t kNoSlot = 0xffff;
constexpr uint8_t kNoBlock = 0xff;

// Reference location count for this extended-rectangle construction,
// kept for comparison in census reports. The builder's own census is the
// one used everywhere a location count enters a computation.
constexpr uint32_t kReferenceExrecCensus = 72657;

constexpr const char* kBuilderVersion = "bs-mpec-1";

// Hot part of a location: everything the trial walker touches.
// inject_mask marks which Pauli components act nontrivially at this point
// (a Z drawn right after a Z-basis preparation is physically vacuous and is
// masked off at injection; conjugate rule for X).
struct LocHot {
  LocKind kind;
  uint8_t inject_mask;
  uint16_t q0 = 0;
  uint16_t q1 = 0;
  uint16_t meas_slot = kNoSlot;
};

// Cold metadata, parallel to the hot array. Used by census, serialization
// and tests only.
struct LocCold {
  uint32_t timestep = 0;
  uint16_t line = kNoLine;   // owning level-1 qubit
  uint16_t line2 = kNoLine;  // target line for transversal CNOTs
  uint8_t level = 1;         // 1 = inside level-1 EC machinery, 2 = gadget role
  uint8_t block = kNoBlock;
  Section section = Section::kNone;
  uint8_t pair = 0xff;       // ancilla pair id where applicable
};

// A level-1 qubit: a 3x3 grid of physical qubits plus, once it has been
// logically measured, the slots its transversal readout landed in.
struct LineInfo {
  std::array<std::array<uint16_t, 3>, 3> qubits{};      // [row][col]
  std::array<std::array<uint16_t, 3>, 3> meas_slots{};  // [row][col]
  uint8_t block = kNoBlock;
  bool is_ancilla = false;
  bool measured = false;

  LineInfo() {
    for (auto& r : meas_slots) r.fill(kNoSlot);
  }
};

enum class EventKind : uint8_t { kL1Decode, kLineCnotFlags, kL2Decode };

// Classical steps interleaved with the location list. An event fires after
// the walker has processed location index `pos`.
struct Event {
  EventKind kind;
  uint32_t pos;
  uint32_t payload;
};

// Syndrome extraction block of one level-1 EC half. slots[g][p] is the
// measurement slot of the ancilla coupling pair p in parallel group g
// (grid rows for X extraction, grid columns for Z). corr[l][k] are the
// three physical qubits flipped when the decoder blames line l.
struct L1DecodePayload {
  ErrType type;
  uint16_t line;
  uint8_t block = kNoBlock;
  Section section = Section::kNone;
  std::array<std::array<uint16_t, 3>, 3> slots{};
  std::array<std::array<uint16_t, 3>, 3> corr{};
};

struct LineCnotPayload {
  uint16_t control_line;
  uint16_t target_line;
};

// Level-2 decode step for one EC box half. anc_lines[R][p] is the ancilla
// line coupling level-2 pair p in parallel group R.
struct L2DecodePayload {
  ErrType type;
  uint8_t block;
  Section section;
  std::array<std::array<uint16_t, 3>, 3> anc_lines{};
};

struct CensusReport {
  std::array<uint64_t, 6> by_kind{};  // indexed by LocKind
  uint64_t total = 0;
  uint32_t qubits = 0;
  uint32_t meas_slots = 0;
};

struct Circuit {
  std::vector<LocHot> hot;
  std::vector<LocCold> cold;
  std::vector<Event> events;  // sorted by pos
  std::vector<L1DecodePayload> l1_payloads;
  std::vector<LineCnotPayload> cnot_payloads;
  std::vector<L2DecodePayload> l2_payloads;
  std::vector<LineInfo> lines;
  uint32_t qubit_count = 0;
  uint32_t meas_slot_count = 0;

  // Data lines of each logical block, [R][C] on the level-2 grid. Only
  // populated by the extended-rectangle builder.
  std::array<std::array<std::array<uint16_t, 3>, 3>, 2> data_lines{};
  uint8_t block_count = 0;

  // ---- lookup index (tests, golden replays) ----

  // One level-1 EC half, in emission order.
  struct L1BlockRef {
    uint16_t line;
    ErrType type;
    Section section = Section::kNone;
    uint8_t block = kNoBlock;
    // grid memory locations in the first timestep of the half, [row][col]
    std::array<std::array<uint32_t, 3>, 3> mem0_loc{};
    // sub-ancilla measurement locations, [parallel group][pair]
    std::array<std::array<uint32_t, 3>, 3> sub_meas_loc{};
    uint32_t payload_index = 0;
  };
  std::vector<L1BlockRef> l1_blocks;

  // One transversal CNOT inside a level-2 EC box; the 9 physical CNOTs sit
  // at base..base+8 in row-major grid order.
  struct BoxCnotRef {
    uint8_t block;
    ErrType type;
    Section section;
    uint8_t round;  // 0 or 1
    uint8_t group;  // parallel group R (X boxes) or C (Z boxes)
    uint8_t pair;
    uint32_t base;
  };
  std::vector<BoxCnotRef> box_cnots;

  size_t location_count() const { return hot.size(); }
  CensusReport census() const;
  uint64_t content_hash() const;
  std::string to_json() const;

  const L1BlockRef* find_l1_block(uint16_t line, ErrType type, Section section,
                                  int occurrence) const;
  const BoxCnotRef* find_box_cnot(uint8_t block, ErrType type, Section section,
                                  uint8_t round, uint8_t group, uint8_t pair) const;
};

// Grid conventions for the [[9,1,3]] layout. Rows and columns of the 3x3
// grid act as repetition codes: X errors are detected by comparing column
// parities (an even number of X on one column is benign), Z errors by
// comparing row parities. Pair p couples lines {p, (p+1)%3} so that the
// syndrome bit order is (s12, s23, s13) in 1-based naming.
namespace grid {
constexpr int pair_first(int p) { return p; }
constexpr int pair_second(int p) { return (p + 1) % 3; }
// Data line coupled by pair `p` in round `r` of a syndrome extraction.
constexpr int coupled_line(int p, int round) {
  return round == 0 ? pair_first(p) : pair_second(p);
}
}  // namespace grid

enum class L1Kind { kXOnly, kZOnly, kBoth };

// Syndrome extraction block(s) for a single level-1 qubit: three ancillas
// per parallel group, each coupled to a pair of grid qubits over two
// timesteps, then measured; groups run in parallel and their outcomes are
// added in binary per pair.
Circuit build_level1_ec(L1Kind kind);

// Full level-2 CNOT extended rectangle: leading EC boxes on both logical
// qubits, a transversal CNOT, trailing EC boxes. Every level-1 gadget
// inside an EC box is followed by a level-1 EC block.
Circuit build_level2_cnot_exrec();

enum class Scheme { kAlternatingMp, kStandard };

// Minimum physical error count producing logical failure, per level of
// concatenation.
std::vector<uint64_t> weight_schedule(int levels, Scheme scheme);

}  // namespace mpec

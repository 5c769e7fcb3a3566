#pragma once

#include <string>
#include <vector>

#include "mpec/boxmodel.hpp"
#include "mpec/circuit.hpp"
#include "mpec/rng.hpp"
#include "mpec/runner.hpp"

namespace mpec {

// ---- exhaustive box-case enumeration ----
//
// Checks the fault-tolerance condition of an EC box: whenever the incoming
// weight a plus the internal weight b is at most 4, the outgoing weight c
// must not exceed b. Incoming states and internal events are enumerated
// exhaustively at the abstract outcome level, one error type at a time, on
// the reduced single-block box.

struct EnumCaseRecord {
  std::array<BlockOutcome, 3> incoming;
  std::vector<boxmodel::SiteEvent> events;
  int a = 0, b = 0, c = 0;
  uint8_t syndrome = 0;
};

struct EnumReport {
  int max_weight = 4;
  uint64_t cases = 0;
  uint64_t condition_violations = 0;  // c > b with a + b <= 4
  uint64_t fs_only_failures = 0;      // all-US/FS configs must always succeed
  uint64_t failures_at_max = 0;       // box failures with a + b == max_weight
  bool found_masked_double_ff = false;  // FF,FF,FS incoming failure
  bool found_fs_pair_masks_uf = false;  // FS,FS,UF incoming: mp fails, std passes
  std::vector<EnumCaseRecord> violation_samples;
};

EnumReport enumerate_box_cases(int max_weight = 4,
                               const MatchOptions& opts = {});

// ---- golden case replays ----
//
// Fixed configurations with known verdicts, replayed both through the
// abstract box model and through the full physical extended rectangle.

enum class GoldenCase {
  kMaskedDoubleFf,     // two incoming FF masked by an FS: both decoders fail
  kFsPairMasksUf,      // FS pair matches a UF syndrome: mp fails, std passes
  kTripleFlagMatch,    // incoming FF + FF,FF CNOT pair: three-flag match wins
  kParityMismatchLeak, // FS + FF,UF CNOT pair: fallback, no correction, FF out
  kDoubleFfPairs,      // two FF,FF CNOT pairs: two-flag match, UF out
  kFsOnly,             // flags without failures never hurt
};

const char* golden_name(GoldenCase c);
std::vector<GoldenCase> all_golden_cases();

struct GoldenResult {
  GoldenCase which;
  bool ok = false;
  bool abstract_mp_pass = false, abstract_std_pass = false;
  bool phys_mp_pass = false, phys_std_pass = false;
  int match_size = 0;
  bool used_fallback = false;
  std::string detail;
};

GoldenResult replay_golden(const Circuit& exrec, GoldenCase which);
std::vector<GoldenResult> replay_all_goldens(const Circuit& exrec);

// ---- chain check ----
//
// Runs M consecutive EC boxes with identity gadgets at the abstract level.
// On schedules obeying b_n + b_{n+1} <= 4 with a clean initial state, every
// box must succeed and a_n + b_n <= 4 must hold at every step.

struct ChainReport {
  bool premise_ok = true;
  bool invariant_ok = true;
  bool all_succeeded = true;
  int max_a_plus_b = 0;
  uint64_t boxes_run = 0;
  uint64_t box_failures = 0;
  uint64_t schedules_run = 0;
};

bool chain_schedule_valid(std::span<const int> schedule);
ChainReport run_chain(std::span<const int> schedule, Rng& rng);
ChainReport chain_success_check(int boxes, int schedules, uint64_t seed);

// ---- physical realizations of abstract events ----
//
// Fault patterns that realize block outcomes in the extended rectangle,
// spending exactly the outcome weight (or the pairwise maximum for CNOT
// events). Used by the golden replays and the model-agreement tests.
namespace faultgen {

// An outcome entering block 0's trailing box, created inside the
// gadget-section EC of the given data line.
void incoming(const Circuit& c, uint16_t line, BlockOutcome o,
              std::vector<Fault>& out);

// An outcome pair on the (data, ancilla) lines of one transversal CNOT
// inside block 0's trailing X-extraction.
void box_cnot_pair(const Circuit& c, int round, int group, int pair,
                   BlockOutcome data_side, BlockOutcome anc_side,
                   std::vector<Fault>& out);

}  // namespace faultgen

}  // namespace mpec

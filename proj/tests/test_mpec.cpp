#include <doctest.h>
#include <stdexcept>

#include "mpec/boxmodel.hpp"
#include "mpec/match.hpp"
#include "mpec/rng.hpp"
#include "mpec/sim.hpp"
#include "test_util.hpp"

using namespace mpec;
using namespace mpec::testutil;

TEST_CASE("match search prefers the smallest class") {
  // the masking pattern: one flag alone explains the syndrome, a pair would
  // explain it too; the single must win
  std::vector<ObservedFlag> obs{
      {0, line_syndrome(0), 1 << 0},
      {1, line_syndrome(1), 1 << 1},
      {2, line_syndrome(2), 1 << 2},
  };
  uint8_t s = line_syndrome(2);
  auto m = find_flag_match(s, obs);
  REQUIRE(m.matched);
  CHECK(m.size == 1);
  CHECK(m.ids[0] == 2);
  CHECK(m.correction_mask == (1 << 2));
}

TEST_CASE("match search climbs to pairs and triples") {
  std::vector<ObservedFlag> obs{
      {4, line_syndrome(0), 1 << 0},
      {9, line_syndrome(1), 1 << 1},
  };
  uint8_t s = static_cast<uint8_t>(line_syndrome(0) ^ line_syndrome(1));
  auto m = find_flag_match(s, obs);
  REQUIRE(m.matched);
  CHECK(m.size == 2);
  CHECK(m.correction_mask == 0b011);

  obs.push_back({11, 0b001, 0});
  uint8_t s3 = static_cast<uint8_t>(s ^ 0b001);
  auto m3 = find_flag_match(s3, obs);
  REQUIRE(m3.matched);
  CHECK(m3.size == 3);

  auto capped = find_flag_match(s3, obs, MatchOptions{2});
  CHECK(!capped.matched);
}

TEST_CASE("ties break on fewest corrections then lowest ids") {
  SUBCASE("fewest data corrections wins") {
    std::vector<ObservedFlag> obs{
        {3, 0b110, 0b011},  // would correct two lines
        {7, 0b110, 0b000},  // pure ancilla flag: no data corrections
    };
    auto m = find_flag_match(0b110, obs);
    REQUIRE(m.matched);
    CHECK(m.ids[0] == 7);
    CHECK(m.correction_mask == 0);
  }
  SUBCASE("equal corrections: lexicographically smallest ids") {
    std::vector<ObservedFlag> obs{
        {12, 0b101, 0b001},
        {5, 0b101, 0b100},
    };
    auto m = find_flag_match(0b101, obs);
    REQUIRE(m.matched);
    CHECK(m.ids[0] == 5);
  }
}

TEST_CASE("zero syndrome never matches") {
  std::vector<ObservedFlag> obs{{0, 0b000, 0b001}};
  auto m = find_flag_match(0, obs);
  CHECK(!m.matched);
  // a flag whose incidence cancelled (copies hit the same bit twice)
  // cannot explain any nonzero syndrome alone
  auto m2 = find_flag_match(0b011, obs);
  CHECK(!m2.matched);
}

TEST_CASE("any returned match explains the syndrome exactly") {
  Rng rng(21);
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<ObservedFlag> obs;
    int n = 1 + rng.below(6);
    for (int k = 0; k < n; ++k)
      obs.push_back({static_cast<uint32_t>(k),
                     static_cast<uint8_t>(rng.below(8)),
                     static_cast<uint16_t>(rng.below(8))});
    uint8_t s = static_cast<uint8_t>(1 + rng.below(7));
    auto m = find_flag_match(s, obs);
    if (!m.matched) continue;
    uint8_t inc = 0;
    for (int k = 0; k < m.size; ++k)
      for (const auto& o : obs)
        if (o.id == m.ids[k]) inc ^= o.incidence;
    CHECK(inc == s);
  }
}

TEST_CASE("identical inputs give identical matches") {
  std::vector<ObservedFlag> obs{
      {2, 0b101, 0b001}, {8, 0b011, 0b010}, {5, 0b110, 0b100}};
  auto a = find_flag_match(0b110, obs);
  auto b = find_flag_match(0b110, obs);
  CHECK(a.matched == b.matched);
  CHECK(a.ids == b.ids);
  CHECK(a.correction_mask == b.correction_mask);
}

TEST_CASE("an entering flagged failure is matched and corrected") {
  auto c = build_level2_cnot_exrec();
  uint16_t line = c.data_lines[0][0][0];
  const auto* ref = c.find_l1_block(line, ErrType::kX, Section::kGadget, 0);
  std::vector<Fault> faults{{ref->mem0_loc[0][0], kX0},
                            {ref->mem0_loc[0][1], kX0}};
  TrialRunner runner(c);
  RunTrace trace;
  CHECK(runner.run(sorted(faults), Decoder::kMpec, &trace));
  const BoxDecision* bd = nullptr;
  for (const auto& b : trace.boxes)
    if (b.block == 0 && b.type == ErrType::kX &&
        b.section == Section::kTrailingEc)
      bd = &b;
  REQUIRE(bd != nullptr);
  CHECK(bd->syndrome == line_syndrome(0));
  REQUIRE(bd->match.chosen.matched);
  CHECK(bd->match.chosen.size == 1);
  CHECK(bd->correction_mask == 1);  // the entering line, nothing else
  CHECK(!runner.line_has_logical(line, ErrType::kX));
}

TEST_CASE("the z side mirrors the x side") {
  // two z faults in distinct grid rows: the gadget-section block
  // miscorrects onto the third row and flags, and the trailing z-extraction
  // matches the flag and repairs the line
  auto c = build_level2_cnot_exrec();
  uint16_t line = c.data_lines[0][1][2];
  const auto* ref = c.find_l1_block(line, ErrType::kZ, Section::kGadget, 0);
  REQUIRE(ref != nullptr);
  std::vector<Fault> faults{{ref->mem0_loc[0][0], kZ0},
                            {ref->mem0_loc[1][0], kZ0}};
  TrialRunner runner(c);
  RunTrace trace;
  CHECK(runner.run(sorted(faults), Decoder::kMpec, &trace));
  const BoxDecision* bd = nullptr;
  for (const auto& b : trace.boxes)
    if (b.block == 0 && b.type == ErrType::kZ &&
        b.section == Section::kTrailingEc)
      bd = &b;
  REQUIRE(bd != nullptr);
  REQUIRE(bd->match.chosen.matched);
  CHECK(bd->match.chosen.size == 1);
  CHECK(!runner.line_has_logical(line, ErrType::kZ));
  CHECK(runner.flags().of(line, ErrType::kZ).empty());  // observed, cleared
}

TEST_CASE("without flags both decoders agree everywhere") {
  auto c = build_level2_cnot_exrec();
  TrialRunner mp(c), sd(c);
  Rng rng(33);
  std::vector<Fault> faults;
  int compared = 0;
  for (int t = 0; t < 400; ++t) {
    Rng trial = Rng::for_trial(91, t);
    inject_fixed_weight(c, 1 + t % 2, trial, faults);
    RunTrace trace;
    bool mp_ok = mp.run(faults, Decoder::kMpec, &trace);
    bool sd_ok = sd.run(faults, Decoder::kStandard);
    if (trace.flags_raised == 0) {
      ++compared;
      CHECK(mp_ok == sd_ok);
      CHECK(mp.frame() == sd.frame());
    }
  }
  CHECK(compared > 0);
  (void)rng;
}

TEST_CASE("abstract box replays the masking and helping cases") {
  using namespace boxmodel;
  SUBCASE("two entering failures are both corrected") {
    BoxState st{};
    uint32_t next = 0;
    apply_outcome(st.data[0], BlockOutcome::kFf, next);
    apply_outcome(st.data[1], BlockOutcome::kFf, next);
    auto r = run_box(st, {}, Decoder::kMpec, next);
    CHECK(r.match_size == 2);
    CHECK(!st.data[0].error);
    CHECK(!st.data[1].error);
    CHECK(output_correctable(st, Decoder::kMpec));
  }
  SUBCASE("an entering unflagged failure falls back to plain decoding") {
    BoxState st{};
    uint32_t next = 0;
    apply_outcome(st.data[2], BlockOutcome::kUf, next);
    auto r = run_box(st, {}, Decoder::kMpec, next);
    CHECK(r.used_fallback);
    CHECK(!st.data[2].error);
  }
}

#include "mpec/verifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpec {

using boxmodel::apply_outcome;
using boxmodel::BoxState;
using boxmodel::output_correctable;
using boxmodel::run_box;
using boxmodel::SiteEvent;

namespace {

constexpr BlockOutcome kNontrivial[3] = {BlockOutcome::kFs, BlockOutcome::kFf,
                                         BlockOutcome::kUf};

bool all_us_fs(const std::array<BlockOutcome, 3>& incoming,
               const std::vector<SiteEvent>& events) {
  auto ok = [](BlockOutcome o) {
    return o == BlockOutcome::kUs || o == BlockOutcome::kFs;
  };
  for (BlockOutcome o : incoming)
    if (!ok(o)) return false;
  for (const SiteEvent& e : events) {
    if (!ok(e.first)) return false;
    if (boxmodel::site_is_cnot(e.site) && !ok(e.second)) return false;
  }
  return true;
}

bool incoming_is(const std::array<BlockOutcome, 3>& incoming,
                 std::array<BlockOutcome, 3> pattern) {
  std::array<int, 3> a{}, b{};
  for (int i = 0; i < 3; ++i) {
    a[i] = static_cast<int>(incoming[i]);
    b[i] = static_cast<int>(pattern[i]);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

struct EnumContext {
  int max_weight;
  MatchOptions opts;
  EnumReport report;
  std::array<BlockOutcome, 3> incoming{};
  int a = 0;
  std::vector<SiteEvent> events;
  int b = 0;
};

void evaluate(EnumContext& ctx) {
  BoxState st{};
  uint32_t next = 0;
  for (int d = 0; d < 3; ++d) apply_outcome(st.data[d], ctx.incoming[d], next);
  BoxState mp = st;
  auto res = run_box(mp, ctx.events, Decoder::kMpec, next, ctx.opts);
  ++ctx.report.cases;

  int total = ctx.a + ctx.b;
  if (total <= 4 && res.outgoing_weight > ctx.b) {
    ++ctx.report.condition_violations;
    if (ctx.report.violation_samples.size() < 16) {
      ctx.report.violation_samples.push_back({ctx.incoming, ctx.events, ctx.a,
                                              ctx.b, res.outgoing_weight,
                                              res.syndrome});
    }
  }

  bool correctable = output_correctable(mp, Decoder::kMpec);
  if (!correctable && all_us_fs(ctx.incoming, ctx.events))
    ++ctx.report.fs_only_failures;

  if (total == ctx.max_weight && !correctable) {
    ++ctx.report.failures_at_max;
    if (ctx.b == 0) {
      if (incoming_is(ctx.incoming, {BlockOutcome::kFf, BlockOutcome::kFf,
                                     BlockOutcome::kFs}))
        ctx.report.found_masked_double_ff = true;
      if (incoming_is(ctx.incoming, {BlockOutcome::kFs, BlockOutcome::kFs,
                                     BlockOutcome::kUf})) {
        BoxState sd{};
        uint32_t n2 = 0;
        for (int d = 0; d < 3; ++d)
          apply_outcome(sd.data[d], ctx.incoming[d], n2);
        run_box(sd, ctx.events, Decoder::kStandard, n2);
        if (output_correctable(sd, Decoder::kStandard))
          ctx.report.found_fs_pair_masks_uf = true;
      }
    }
  }
}

void dfs_sites(EnumContext& ctx, int site, int budget) {
  evaluate(ctx);
  if (budget <= 0) return;
  for (int s = site; s < boxmodel::kSiteCount; ++s) {
    if (!boxmodel::site_is_cnot(s)) {
      for (BlockOutcome o : kNontrivial) {
        int cost = outcome_weight(o);
        if (cost > budget) break;
        ctx.events.push_back({static_cast<uint8_t>(s), o, BlockOutcome::kUs});
        ctx.b += cost;
        dfs_sites(ctx, s + 1, budget - cost);
        ctx.b -= cost;
        ctx.events.pop_back();
      }
    } else {
      for (int f = 0; f < 4; ++f) {
        for (int g = 0; g < 4; ++g) {
          if (f == 0 && g == 0) continue;
          int cost = f > g ? f : g;
          if (cost > budget) continue;
          ctx.events.push_back({static_cast<uint8_t>(s),
                                static_cast<BlockOutcome>(f),
                                static_cast<BlockOutcome>(g)});
          ctx.b += cost;
          dfs_sites(ctx, s + 1, budget - cost);
          ctx.b -= cost;
          ctx.events.pop_back();
        }
      }
    }
  }
}

}  // namespace

EnumReport enumerate_box_cases(int max_weight, const MatchOptions& opts) {
  if (max_weight < 0) throw std::invalid_argument("max_weight must be >= 0");
  EnumContext ctx;
  ctx.max_weight = max_weight;
  ctx.opts = opts;
  ctx.report.max_weight = max_weight;

  for (int o0 = 0; o0 < 4; ++o0) {
    for (int o1 = 0; o1 < 4; ++o1) {
      for (int o2 = 0; o2 < 4; ++o2) {
        int a = o0 + o1 + o2;  // outcome weights equal their enum values
        if (a > max_weight) continue;
        ctx.incoming = {static_cast<BlockOutcome>(o0),
                        static_cast<BlockOutcome>(o1),
                        static_cast<BlockOutcome>(o2)};
        ctx.a = a;
        dfs_sites(ctx, 0, max_weight - a);
      }
    }
  }
  return ctx.report;
}

// ---- chain ----

bool chain_schedule_valid(std::span<const int> schedule) {
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 0 || schedule[i] > 4) return false;
    if (i + 1 < schedule.size() && schedule[i] + schedule[i + 1] > 4)
      return false;
  }
  return true;
}

namespace {

std::vector<SiteEvent> random_config(int b, Rng& rng) {
  std::vector<SiteEvent> cfg;
  std::array<bool, boxmodel::kSiteCount> used{};
  int need = b;
  while (need > 0) {
    int s = static_cast<int>(rng.below(boxmodel::kSiteCount));
    if (used[s]) continue;
    if (!boxmodel::site_is_cnot(s)) {
      int w = 1 + static_cast<int>(rng.below(std::min(3, need)));
      cfg.push_back({static_cast<uint8_t>(s), static_cast<BlockOutcome>(w),
                     BlockOutcome::kUs});
      need -= w;
    } else {
      int cap = std::min(3, need);
      int w1 = static_cast<int>(rng.below(cap + 1));
      int w2 = static_cast<int>(rng.below(cap + 1));
      if (w1 == 0 && w2 == 0) continue;
      cfg.push_back({static_cast<uint8_t>(s), static_cast<BlockOutcome>(w1),
                     static_cast<BlockOutcome>(w2)});
      need -= std::max(w1, w2);
    }
    used[s] = true;
  }
  return cfg;
}

void merge_into(ChainReport& agg, const ChainReport& r) {
  agg.premise_ok &= r.premise_ok;
  agg.invariant_ok &= r.invariant_ok;
  agg.all_succeeded &= r.all_succeeded;
  agg.max_a_plus_b = std::max(agg.max_a_plus_b, r.max_a_plus_b);
  agg.boxes_run += r.boxes_run;
  agg.box_failures += r.box_failures;
  agg.schedules_run += r.schedules_run;
}

}  // namespace

ChainReport run_chain(std::span<const int> schedule, Rng& rng) {
  ChainReport rep;
  rep.schedules_run = 1;
  rep.premise_ok = chain_schedule_valid(schedule);
  if (!rep.premise_ok) return rep;  // premise violation, nothing to test

  BoxState st{};
  uint32_t next_flag = 0;
  for (int bn : schedule) {
    int an = boxmodel::state_weight(st);
    rep.max_a_plus_b = std::max(rep.max_a_plus_b, an + bn);
    if (an + bn > 4) rep.invariant_ok = false;
    auto cfg = random_config(bn, rng);
    run_box(st, cfg, Decoder::kMpec, next_flag);
    ++rep.boxes_run;
    if (!output_correctable(st, Decoder::kMpec)) {
      rep.all_succeeded = false;
      ++rep.box_failures;
    }
  }
  return rep;
}

ChainReport chain_success_check(int boxes, int schedules, uint64_t seed) {
  ChainReport agg;
  agg.schedules_run = 0;
  Rng rng(seed);

  std::vector<int> alternating(boxes);
  for (int i = 0; i < boxes; ++i) alternating[i] = i % 2 == 0 ? 4 : 0;
  merge_into(agg, run_chain(alternating, rng));

  std::vector<int> schedule(boxes);
  for (int s = 0; s < schedules; ++s) {
    int prev = 0;
    for (int i = 0; i < boxes; ++i) {
      int cap = i == 0 ? 4 : 4 - prev;
      schedule[i] = static_cast<int>(rng.below(cap + 1));
      prev = schedule[i];
    }
    merge_into(agg, run_chain(schedule, rng));
  }
  return agg;
}

// ---- golden replays ----

const char* golden_name(GoldenCase c) {
  switch (c) {
    case GoldenCase::kMaskedDoubleFf: return "masked-double-ff";
    case GoldenCase::kFsPairMasksUf: return "fs-pair-masks-uf";
    case GoldenCase::kTripleFlagMatch: return "triple-flag-match";
    case GoldenCase::kParityMismatchLeak: return "parity-mismatch-leak";
    case GoldenCase::kDoubleFfPairs: return "double-ff-pairs";
    case GoldenCase::kFsOnly: return "fs-only";
  }
  return "?";
}

std::vector<GoldenCase> all_golden_cases() {
  return {GoldenCase::kMaskedDoubleFf,     GoldenCase::kFsPairMasksUf,
          GoldenCase::kTripleFlagMatch,    GoldenCase::kParityMismatchLeak,
          GoldenCase::kDoubleFfPairs,      GoldenCase::kFsOnly};
}

namespace faultgen {

// Two X errors in distinct columns of one grid row make the level-1 block
// miscorrect onto the third column and raise its flag: a flagged failure
// from two faults. One readout flip gives a flagged success; a full grid
// row of X flips all three column parities silently, an unflagged failure
// from three faults.
void incoming(const Circuit& c, uint16_t line, BlockOutcome o,
              std::vector<Fault>& out) {
  auto* ref = c.find_l1_block(line, ErrType::kX, Section::kGadget, 0);
  if (!ref) throw std::logic_error("gadget-section level-1 block not found");
  switch (o) {
    case BlockOutcome::kUs:
      break;
    case BlockOutcome::kFs:
      out.push_back({ref->sub_meas_loc[0][0], kX0});
      break;
    case BlockOutcome::kFf:
      out.push_back({ref->mem0_loc[0][0], kX0});
      out.push_back({ref->mem0_loc[0][1], kX0});
      break;
    case BlockOutcome::kUf:
      for (int col = 0; col < 3; ++col)
        out.push_back({ref->mem0_loc[0][col], kX0});
      break;
  }
}

void box_cnot_pair(const Circuit& c, int round, int group, int pair,
                   BlockOutcome data_side, BlockOutcome anc_side,
                   std::vector<Fault>& out) {
  auto* cn = c.find_box_cnot(0, ErrType::kX, Section::kTrailingEc,
                             static_cast<uint8_t>(round),
                             static_cast<uint8_t>(group),
                             static_cast<uint8_t>(pair));
  if (!cn) throw std::logic_error("box cnot not found");
  // Spend max(weight, weight) faults on the first transversal positions of
  // grid row zero; both-sided X components realize both outcomes at once.
  int wd = outcome_weight(data_side);
  int wa = outcome_weight(anc_side);
  int k = std::max(wd, wa);
  for (int j = 0; j < k; ++j) {
    uint8_t bits = 0;
    if (j < wd) bits |= kX0;
    if (j < wa) bits |= kX1;
    if (bits) out.push_back({cn->base + static_cast<uint32_t>(j), bits});
  }
}

}  // namespace faultgen

namespace {

const L2DecodePayload* find_l2_payload(const Circuit& c, uint8_t block,
                                       ErrType type, Section section) {
  for (const auto& p : c.l2_payloads)
    if (p.block == block && p.type == type && p.section == section) return &p;
  return nullptr;
}

const BoxDecision* trailing_x_decision(const RunTrace& trace) {
  for (const auto& bd : trace.boxes)
    if (bd.block == 0 && bd.type == ErrType::kX &&
        bd.section == Section::kTrailingEc)
      return &bd;
  return nullptr;
}

constexpr uint8_t cnot_site(int round, int pair) {
  return static_cast<uint8_t>(boxmodel::kCnotSite0 + round * 3 + pair);
}
constexpr uint8_t data_site(int line, int slot) {
  return static_cast<uint8_t>(line * 3 + slot);
}
constexpr uint8_t anc_site(int pair, int slot) {
  return static_cast<uint8_t>(boxmodel::kAncSite0 + pair * 3 + slot);
}

}  // namespace

GoldenResult replay_golden(const Circuit& c, GoldenCase which) {
  GoldenResult res;
  res.which = which;
  if (c.block_count != 2)
    throw std::invalid_argument("golden replays need the full exrec circuit");

  const uint16_t d00 = c.data_lines[0][0][0];
  const uint16_t d01 = c.data_lines[0][0][1];
  const uint16_t d02 = c.data_lines[0][0][2];

  std::array<BlockOutcome, 3> incoming{BlockOutcome::kUs, BlockOutcome::kUs,
                                       BlockOutcome::kUs};
  std::vector<SiteEvent> events;
  std::vector<Fault> faults;

  switch (which) {
    case GoldenCase::kMaskedDoubleFf:
      incoming = {BlockOutcome::kFf, BlockOutcome::kFf, BlockOutcome::kFs};
      faultgen::incoming(c, d00, BlockOutcome::kFf, faults);
      faultgen::incoming(c, d01, BlockOutcome::kFf, faults);
      faultgen::incoming(c, d02, BlockOutcome::kFs, faults);
      break;
    case GoldenCase::kFsPairMasksUf:
      incoming = {BlockOutcome::kFs, BlockOutcome::kFs, BlockOutcome::kUf};
      faultgen::incoming(c, d00, BlockOutcome::kFs, faults);
      faultgen::incoming(c, d01, BlockOutcome::kFs, faults);
      faultgen::incoming(c, d02, BlockOutcome::kUf, faults);
      break;
    case GoldenCase::kTripleFlagMatch:
      incoming = {BlockOutcome::kFf, BlockOutcome::kUs, BlockOutcome::kUs};
      events.push_back({cnot_site(0, 1), BlockOutcome::kFf, BlockOutcome::kFf});
      faultgen::incoming(c, d00, BlockOutcome::kFf, faults);
      faultgen::box_cnot_pair(c, 0, 0, 1, BlockOutcome::kFf, BlockOutcome::kFf,
                              faults);
      break;
    case GoldenCase::kParityMismatchLeak:
      incoming = {BlockOutcome::kFs, BlockOutcome::kUs, BlockOutcome::kUs};
      events.push_back({cnot_site(1, 1), BlockOutcome::kFf, BlockOutcome::kUf});
      faultgen::incoming(c, d00, BlockOutcome::kFs, faults);
      faultgen::box_cnot_pair(c, 1, 0, 1, BlockOutcome::kFf, BlockOutcome::kUf,
                              faults);
      break;
    case GoldenCase::kDoubleFfPairs:
      events.push_back({cnot_site(0, 0), BlockOutcome::kFf, BlockOutcome::kFf});
      events.push_back({cnot_site(0, 1), BlockOutcome::kFf, BlockOutcome::kFf});
      for (int pair = 0; pair < 2; ++pair)
        faultgen::box_cnot_pair(c, 0, 0, pair, BlockOutcome::kFf,
                                BlockOutcome::kFf, faults);
      break;
    case GoldenCase::kFsOnly: {
      incoming = {BlockOutcome::kFs, BlockOutcome::kUs, BlockOutcome::kUs};
      events.push_back({data_site(1, 1), BlockOutcome::kFs, BlockOutcome::kUs});
      events.push_back({anc_site(0, 0), BlockOutcome::kFs, BlockOutcome::kUs});
      events.push_back({cnot_site(0, 2), BlockOutcome::kFs, BlockOutcome::kFs});
      faultgen::incoming(c, d00, BlockOutcome::kFs, faults);
      auto* d1ec = c.find_l1_block(d01, ErrType::kX, Section::kTrailingEc, 0);
      faults.push_back({d1ec->sub_meas_loc[0][0], kX0});
      auto* l2p = find_l2_payload(c, 0, ErrType::kX, Section::kTrailingEc);
      auto* aec = c.find_l1_block(l2p->anc_lines[0][0], ErrType::kX,
                                  Section::kTrailingEc, 0);
      faults.push_back({aec->sub_meas_loc[0][0], kX0});
      faultgen::box_cnot_pair(c, 0, 0, 2, BlockOutcome::kFs, BlockOutcome::kFs,
                              faults);
      break;
    }
  }

  // abstract replay, both decoders
  BoxState st{};
  uint32_t next = 0;
  for (int d = 0; d < 3; ++d) apply_outcome(st.data[d], incoming[d], next);
  BoxState mp = st, sd = st;
  uint32_t next_sd = next;
  auto rmp = run_box(mp, events, Decoder::kMpec, next);
  run_box(sd, events, Decoder::kStandard, next_sd);
  res.abstract_mp_pass = output_correctable(mp, Decoder::kMpec);
  res.abstract_std_pass = output_correctable(sd, Decoder::kStandard);

  // physical replay
  std::sort(faults.begin(), faults.end(),
            [](const Fault& a, const Fault& b) { return a.loc < b.loc; });
  TrialRunner runner(c);
  RunTrace trace;
  res.phys_mp_pass = runner.run(faults, Decoder::kMpec, &trace);
  const BoxDecision* bd = trailing_x_decision(trace);
  if (bd) {
    res.match_size = bd->match.chosen.matched ? bd->match.chosen.size : 0;
    res.used_fallback = bd->used_fallback;
  }

  TrialRunner runner_std(c);
  res.phys_std_pass = runner_std.run(faults, Decoder::kStandard);

  bool ok = res.abstract_mp_pass == res.phys_mp_pass &&
            res.abstract_std_pass == res.phys_std_pass;
  std::string why;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      why += why.empty() ? what : std::string("; ") + what;
    }
  };

  switch (which) {
    case GoldenCase::kMaskedDoubleFf:
      expect(!res.phys_mp_pass, "mp must fail");
      expect(!res.phys_std_pass, "std must fail");
      expect(res.match_size == 1, "single-flag match preferred");
      expect(rmp.match_size == 1, "abstract single-flag match");
      break;
    case GoldenCase::kFsPairMasksUf:
      expect(!res.phys_mp_pass, "mp must fail");
      expect(res.phys_std_pass, "std must pass");
      expect(res.match_size == 2, "two-flag match chosen");
      break;
    case GoldenCase::kTripleFlagMatch:
      expect(res.phys_mp_pass, "mp must pass");
      expect(res.match_size == 3, "three-flag match chosen");
      expect(rmp.match_size == 3, "abstract three-flag match");
      break;
    case GoldenCase::kParityMismatchLeak: {
      expect(res.phys_mp_pass, "mp must pass");
      expect(res.used_fallback, "fallback taken");
      expect(bd && bd->correction_mask == 0, "no correction on mismatch");
      expect(runner.line_has_logical(d02, ErrType::kX), "error leaves");
      expect(!runner.flags().of(d02, ErrType::kX).empty(), "its flag leaves");
      expect(runner.flags().of(d00, ErrType::kX).empty(), "observed flag cleared");
      expect(rmp.used_fallback, "abstract fallback");
      break;
    }
    case GoldenCase::kDoubleFfPairs:
      expect(res.phys_mp_pass, "mp must pass");
      expect(res.match_size == 2, "two-flag match chosen");
      expect(runner.line_has_logical(d01, ErrType::kX), "error leaves");
      expect(runner.flags().of(d01, ErrType::kX).empty(),
             "leaving error is unflagged");
      break;
    case GoldenCase::kFsOnly:
      expect(res.phys_mp_pass, "mp must pass");
      expect(res.phys_std_pass, "std must pass");
      break;
  }

  res.ok = ok;
  res.detail = why;
  return res;
}

std::vector<GoldenResult> replay_all_goldens(const Circuit& exrec) {
  std::vector<GoldenResult> out;
  for (GoldenCase gc : all_golden_cases()) out.push_back(replay_golden(exrec, gc));
  return out;
}

}  // namespace mpec

#include "mpec/boxmodel.hpp"

#include <bit>
#include <vector>

namespace mpec::boxmodel {

void apply_outcome(LineState& line, BlockOutcome o, uint32_t& next_flag_id) {
  switch (o) {
    case BlockOutcome::kUs:
      break;
    case BlockOutcome::kFs:
      line.add_flag(next_flag_id++);
      break;
    case BlockOutcome::kFf:
      line.add_flag(next_flag_id++);
      line.error ^= 1;
      break;
    case BlockOutcome::kUf:
      line.error ^= 1;
      break;
  }
}

int line_weight(const LineState& line) {
  // k flags alone cost k (that many FS); an error costs 3 bare (UF) or
  // turns one flag into an FF (2) with the rest staying FS.
  if (!line.error) return line.nflags;
  return line.nflags == 0 ? 3 : line.nflags + 1;
}

int state_weight(const BoxState& state) {
  return line_weight(state.data[0]) + line_weight(state.data[1]) +
         line_weight(state.data[2]);
}

BoxResult run_box(BoxState& state, std::span<const SiteEvent> events,
                  Decoder mode, uint32_t& next_flag_id,
                  const MatchOptions& opts, MatchTrace* trace) {
  std::array<LineState, 3> anc{};

  auto singles_at = [&](int slot) {
    for (const SiteEvent& e : events) {
      if (site_is_cnot(e.site)) continue;
      int s = e.site % 3;
      if (s != slot) continue;
      if (e.site < kAncSite0)
        apply_outcome(state.data[e.site / 3], e.first, next_flag_id);
      else
        apply_outcome(anc[(e.site - kAncSite0) / 3], e.first, next_flag_id);
    }
  };

  auto round = [&](int r) {
    for (int p = 0; p < 3; ++p) {
      int d = grid::coupled_line(p, r);
      // data controls ancilla: errors and flags copy down
      anc[p].error ^= state.data[d].error;
      for (int i = 0; i < state.data[d].nflags; ++i)
        if (!anc[p].has_flag(state.data[d].flags[i]))
          anc[p].add_flag(state.data[d].flags[i]);
    }
    for (const SiteEvent& e : events) {
      if (!site_is_cnot(e.site)) continue;
      int idx = e.site - kCnotSite0;
      if (idx / 3 != r) continue;
      int p = idx % 3;
      apply_outcome(state.data[grid::coupled_line(p, r)], e.first, next_flag_id);
      apply_outcome(anc[p], e.second, next_flag_id);
    }
  };

  singles_at(0);
  round(0);
  singles_at(1);
  round(1);
  singles_at(2);

  BoxResult result;
  for (int p = 0; p < 3; ++p)
    result.syndrome |= static_cast<uint8_t>((anc[p].error ? 1 : 0) << p);

  // observed flags with incidence and data carriers
  std::vector<ObservedFlag> observed;
  for (int p = 0; p < 3; ++p) {
    for (int i = 0; i < anc[p].nflags; ++i) {
      uint32_t id = anc[p].flags[i];
      ObservedFlag* f = nullptr;
      for (auto& o : observed)
        if (o.id == id) {
          f = &o;
          break;
        }
      if (!f) {
        observed.push_back({id, 0, 0});
        f = &observed.back();
      }
      f->incidence ^= static_cast<uint8_t>(1 << p);
    }
  }
  for (auto& o : observed)
    for (int d = 0; d < 3; ++d)
      if (state.data[d].has_flag(o.id)) o.carrier_mask |= 1 << d;

  uint16_t corr_mask = 0;
  if (mode == Decoder::kStandard) {
    auto l = decode_syndrome(Syndrome{result.syndrome});
    if (l) corr_mask = static_cast<uint16_t>(1 << *l);
  } else {
    if (result.syndrome) {
      MatchResult m = find_flag_match(result.syndrome, observed, opts, trace);
      if (m.matched) {
        result.matched = true;
        result.match_size = m.size;
        corr_mask = m.correction_mask;
      } else {
        result.used_fallback = true;
        auto l = decode_syndrome(Syndrome{result.syndrome});
        if (l) corr_mask = static_cast<uint16_t>(1 << *l);
      }
    }
    for (const auto& o : observed)
      for (int d = 0; d < 3; ++d) state.data[d].remove_flag(o.id);
  }

  for (int d = 0; d < 3; ++d)
    if (corr_mask & (1 << d)) state.data[d].error ^= 1;

  result.outgoing_weight = state_weight(state);
  return result;
}

bool output_correctable(const BoxState& state, Decoder mode) {
  BoxState copy = state;
  uint32_t dummy = 1u << 30;
  run_box(copy, {}, mode, dummy);
  return !copy.data[0].error && !copy.data[1].error && !copy.data[2].error;
}

}  // namespace mpec::boxmodel

#include "mpec/match.hpp"

#include <algorithm>
#include <bit>

namespace mpec {

namespace {

struct Candidate {
  int corrections;
  std::array<uint32_t, 3> ids;
  uint16_t mask;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.corrections != b.corrections) return a.corrections < b.corrections;
  return a.ids < b.ids;
}

}  // namespace

MatchResult find_flag_match(uint8_t syndrome,
                            const std::vector<ObservedFlag>& observed,
                            const MatchOptions& opts, MatchTrace* trace) {
  std::vector<ObservedFlag> fl = observed;
  std::sort(fl.begin(), fl.end(),
            [](const ObservedFlag& a, const ObservedFlag& b) { return a.id < b.id; });
  if (trace) {
    trace->syndrome = syndrome;
    trace->observed = fl;
  }

  const int n = static_cast<int>(fl.size());
  MatchResult result;
  if (syndrome == 0) return result;  // nothing to explain

  for (int size = 1; size <= opts.max_size && size <= 3; ++size) {
    bool any = false;
    Candidate best{};
    auto consider = [&](std::array<uint32_t, 3> ids, uint8_t inc, uint16_t mask) {
      if (inc != syndrome) return;
      Candidate c{std::popcount(mask), ids, mask};
      if (trace) trace->candidates[size - 1].push_back(ids);
      if (!any || better(c, best)) {
        best = c;
        any = true;
      }
    };

    if (size == 1) {
      for (int i = 0; i < n; ++i)
        consider({fl[i].id, 0, 0}, fl[i].incidence, fl[i].carrier_mask);
    } else if (size == 2) {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          consider({fl[i].id, fl[j].id, 0},
                   static_cast<uint8_t>(fl[i].incidence ^ fl[j].incidence),
                   static_cast<uint16_t>(fl[i].carrier_mask ^ fl[j].carrier_mask));
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k)
            consider({fl[i].id, fl[j].id, fl[k].id},
                     static_cast<uint8_t>(fl[i].incidence ^ fl[j].incidence ^
                                          fl[k].incidence),
                     static_cast<uint16_t>(fl[i].carrier_mask ^
                                           fl[j].carrier_mask ^
                                           fl[k].carrier_mask));
    }

    if (any) {
      result.matched = true;
      result.size = size;
      result.ids = best.ids;
      result.correction_mask = best.mask;
      if (trace) trace->chosen = result;
      return result;
    }
  }
  if (trace) trace->chosen = result;
  return result;
}

}  // namespace mpec

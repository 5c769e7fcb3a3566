#include "mpec/circuit.hpp"

#include <json.hpp>

namespace mpec {

namespace {

const char* kind_name(LocKind k) {
  switch (k) {
    case LocKind::kPrepZ: return "prep_z";
    case LocKind::kPrepX: return "prep_x";
    case LocKind::kMeasZ: return "meas_z";
    case LocKind::kMeasX: return "meas_x";
    case LocKind::kCnot: return "cnot";
    case LocKind::kMemory: return "memory";
  }
  return "?";
}

const char* section_name(Section s) {
  switch (s) {
    case Section::kLeadingEc: return "leading_ec";
    case Section::kGadget: return "gadget";
    case Section::kTrailingEc: return "trailing_ec";
    case Section::kNone: return "none";
  }
  return "?";
}

}  // namespace

CensusReport Circuit::census() const {
  CensusReport r;
  for (const LocHot& h : hot) ++r.by_kind[static_cast<size_t>(h.kind)];
  r.total = hot.size();
  r.qubits = qubit_count;
  r.meas_slots = meas_slot_count;
  return r;
}

uint64_t Circuit::content_hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(hot.size());
  for (const LocHot& l : hot) {
    mix(static_cast<uint64_t>(l.kind) | (uint64_t{l.inject_mask} << 8) |
        (uint64_t{l.q0} << 16) | (uint64_t{l.q1} << 32) |
        (uint64_t{l.meas_slot} << 48));
  }
  for (const Event& e : events)
    mix(static_cast<uint64_t>(e.kind) | (uint64_t{e.pos} << 8) |
        (uint64_t{e.payload} << 40));
  mix(qubit_count);
  return h;
}

std::string Circuit::to_json() const {
  nlohmann::json j;
  j["builder_version"] = kBuilderVersion;
  j["qubit_count"] = qubit_count;
  j["content_hash"] = content_hash();
  auto cens = census();
  j["census"] = {{"total", cens.total}};
  for (size_t k = 0; k < 6; ++k)
    j["census"][kind_name(static_cast<LocKind>(k))] = cens.by_kind[k];

  nlohmann::json locs = nlohmann::json::array();
  for (size_t i = 0; i < hot.size(); ++i) {
    const LocHot& h = hot[i];
    const LocCold& cd = cold[i];
    nlohmann::json l;
    l["kind"] = kind_name(h.kind);
    l["t"] = cd.timestep;
    l["q"] = h.kind == LocKind::kCnot
                 ? nlohmann::json::array({h.q0, h.q1})
                 : nlohmann::json::array({h.q0});
    if (h.meas_slot != kNoSlot) l["slot"] = h.meas_slot;
    l["mask"] = h.inject_mask;
    l["line"] = cd.line;
    if (cd.line2 != kNoLine) l["line2"] = cd.line2;
    l["level"] = cd.level;
    l["section"] = section_name(cd.section);
    if (cd.block != kNoBlock) l["block"] = cd.block;
    if (cd.pair != 0xff) l["pair"] = cd.pair;
    locs.push_back(std::move(l));
  }
  j["locations"] = std::move(locs);
  return j.dump(1);
}

const Circuit::L1BlockRef* Circuit::find_l1_block(uint16_t line, ErrType type,
                                                  Section section,
                                                  int occurrence) const {
  int seen = 0;
  for (const auto& ref : l1_blocks) {
    if (ref.line == line && ref.type == type && ref.section == section) {
      if (seen == occurrence) return &ref;
      ++seen;
    }
  }
  return nullptr;
}

const Circuit::BoxCnotRef* Circuit::find_box_cnot(uint8_t block, ErrType type,
                                                  Section section,
                                                  uint8_t round, uint8_t group,
                                                  uint8_t pair) const {
  for (const auto& ref : box_cnots) {
    if (ref.block == block && ref.type == type && ref.section == section &&
        ref.round == round && ref.group == group && ref.pair == pair)
      return &ref;
  }
  return nullptr;
}

}  // namespace mpec

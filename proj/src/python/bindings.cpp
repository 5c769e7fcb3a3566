#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "mpec/sim.hpp"
#include "mpec/verifier.hpp"

namespace py = pybind11;
using namespace mpec;

namespace {

// One shared extended rectangle; construction is deterministic and the
// circuit is immutable, so every call can reuse it.
const Circuit& exrec() {
  static const Circuit c = build_level2_cnot_exrec();
  return c;
}

Decoder parse_decoder(const std::string& name) {
  if (name == "standard") return Decoder::kStandard;
  if (name == "mpec") return Decoder::kMpec;
  throw std::invalid_argument("decoder must be 'standard' or 'mpec'");
}

py::dict point_dict(const RatePoint& pt) {
  py::dict d;
  d["mode"] = mode_name(pt.mode);
  d["decoder"] = decoder_name(pt.decoder);
  d["p_or_i"] = pt.x;
  d["trials"] = pt.trials;
  d["failures"] = pt.failures;
  d["rate"] = pt.rate;
  d["sigma"] = pt.sigma;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Simulator and decoders for message-passing error correction on the "
      "concatenated [[9,1,3]] Bacon-Shor code";

  m.def("census", [] {
    auto cens = exrec().census();
    py::dict d;
    d["total"] = cens.total;
    d["prep_z"] = cens.by_kind[0];
    d["prep_x"] = cens.by_kind[1];
    d["meas_z"] = cens.by_kind[2];
    d["meas_x"] = cens.by_kind[3];
    d["cnot"] = cens.by_kind[4];
    d["memory"] = cens.by_kind[5];
    d["qubits"] = cens.qubits;
    d["reference_census"] = kReferenceExrecCensus;
    d["deviation_ratio"] =
        static_cast<double>(cens.total) / kReferenceExrecCensus;
    d["content_hash"] = exrec().content_hash();
    d["builder_version"] = kBuilderVersion;
    return d;
  });

  m.def(
      "weight_schedule",
      [](int levels, const std::string& scheme) {
        Scheme s;
        if (scheme == "alternating-mp")
          s = Scheme::kAlternatingMp;
        else if (scheme == "standard")
          s = Scheme::kStandard;
        else
          throw std::invalid_argument(
              "scheme must be 'alternating-mp' or 'standard'");
        return weight_schedule(levels, s);
      },
      py::arg("levels"), py::arg("scheme"),
      "Minimum error counts for logical failure per concatenation level");

  m.def(
      "estimate_fixed",
      [](int weight, const std::string& decoder, uint64_t trials,
         uint64_t seed, int workers) {
        RateQuery q;
        q.mode = Mode::kFixedWeight;
        q.weight = weight;
        q.decoder = parse_decoder(decoder);
        q.trials = trials;
        q.seed = seed;
        q.workers = workers;
        return point_dict(estimate_rate(exrec(), q));
      },
      py::arg("weight"), py::arg("decoder"), py::arg("trials"),
      py::arg("seed"), py::arg("workers") = 1,
      "Failure rate with exactly `weight` errors placed at random locations");

  m.def(
      "estimate_direct",
      [](double p, const std::string& decoder, uint64_t trials, uint64_t seed,
         int workers) {
        RateQuery q;
        q.mode = Mode::kDirect;
        q.p = p;
        q.decoder = parse_decoder(decoder);
        q.trials = trials;
        q.seed = seed;
        q.workers = workers;
        return point_dict(estimate_rate(exrec(), q));
      },
      py::arg("p"), py::arg("decoder"), py::arg("trials"), py::arg("seed"),
      py::arg("workers") = 1,
      "Failure rate with independent per-location errors at rate p");

  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        SweepConfig cfg = parse_sweep_config(config_json);
        auto points = run_sweep(exrec(), cfg);
        py::list rows;
        for (const auto& pt : points) rows.append(point_dict(pt));
        return rows;
      },
      py::arg("config_json"), "Run a sweep from a JSON config string");

  m.def(
      "run_trial",
      [](const std::vector<std::pair<uint32_t, uint8_t>>& faults,
         const std::string& decoder) {
        std::vector<Fault> fl;
        for (auto [loc, pauli] : faults) fl.push_back({loc, pauli});
        std::sort(fl.begin(), fl.end(),
                  [](const Fault& a, const Fault& b) { return a.loc < b.loc; });
        TrialRunner runner(exrec());
        RunTrace trace;
        bool ok = runner.run(fl, parse_decoder(decoder), &trace);
        py::dict d;
        d["success"] = ok;
        d["flags_raised"] = trace.flags_raised;
        py::list flag_events;
        for (const auto& ev : trace.flag_events) {
          py::dict e;
          e["kind"] = ev.kind == FlagTraceEvent::kRaise  ? "raise"
                      : ev.kind == FlagTraceEvent::kCopy ? "copy"
                                                         : "clear";
          e["id"] = ev.id;
          e["line"] = ev.line;
          e["pos"] = ev.pos;
          flag_events.append(e);
        }
        d["flag_events"] = flag_events;
        py::list boxes;
        for (const auto& bd : trace.boxes) {
          py::dict b;
          b["type"] = bd.type == ErrType::kX ? "X" : "Z";
          b["block"] = bd.block;
          b["syndrome"] = bd.syndrome;
          b["fallback"] = bd.used_fallback;
          b["matched"] = bd.match.chosen.matched;
          b["match_size"] = bd.match.chosen.size;
          b["correction_mask"] = bd.correction_mask;
          boxes.append(b);
        }
        d["boxes"] = boxes;
        return d;
      },
      py::arg("faults"), py::arg("decoder"),
      "Run one trial with explicit (location, pauli-bits) faults");

  m.def(
      "failure_polynomial",
      [](const std::vector<double>& r, double p, int truncation,
         py::object locations) {
        uint64_t n = locations.is_none() ? exrec().hot.size()
                                         : locations.cast<uint64_t>();
        return failure_polynomial(r, n, p, truncation);
      },
      py::arg("r"), py::arg("p"), py::arg("truncation") = 12,
      py::arg("locations") = py::none());

  m.def(
      "improvement_ratio",
      [](const std::vector<double>& r_std, const std::vector<double>& r_mp,
         double p, int truncation, py::object locations) {
        uint64_t n = locations.is_none() ? exrec().hot.size()
                                         : locations.cast<uint64_t>();
        auto rr = improvement_ratio(r_std, r_mp, n, p, truncation);
        py::dict d;
        d["leading"] = rr.leading;
        d["full"] = rr.full;
        return d;
      },
      py::arg("r_std"), py::arg("r_mp"), py::arg("p"),
      py::arg("truncation") = 12, py::arg("locations") = py::none());

  m.def(
      "enumerate_box_cases",
      [](int max_weight) {
        auto rep = enumerate_box_cases(max_weight);
        py::dict d;
        d["max_weight"] = rep.max_weight;
        d["cases"] = rep.cases;
        d["condition_violations"] = rep.condition_violations;
        d["fs_only_failures"] = rep.fs_only_failures;
        d["failures_at_max"] = rep.failures_at_max;
        d["found_masked_double_ff"] = rep.found_masked_double_ff;
        d["found_fs_pair_masks_uf"] = rep.found_fs_pair_masks_uf;
        return d;
      },
      py::arg("max_weight") = 4,
      "Exhaustive abstract box-case check of the c <= b condition");

  m.def(
      "replay_golden",
      [](const std::string& name) {
        for (GoldenCase gc : all_golden_cases()) {
          if (name == golden_name(gc)) {
            auto r = replay_golden(exrec(), gc);
            py::dict d;
            d["name"] = golden_name(r.which);
            d["ok"] = r.ok;
            d["abstract_mp_pass"] = r.abstract_mp_pass;
            d["abstract_std_pass"] = r.abstract_std_pass;
            d["phys_mp_pass"] = r.phys_mp_pass;
            d["phys_std_pass"] = r.phys_std_pass;
            d["match_size"] = r.match_size;
            d["used_fallback"] = r.used_fallback;
            d["detail"] = r.detail;
            return d;
          }
        }
        throw std::invalid_argument("unknown golden case: " + name);
      },
      py::arg("name"));

  m.def("golden_cases", [] {
    py::list names;
    for (GoldenCase gc : all_golden_cases()) names.append(golden_name(gc));
    return names;
  });

  m.def(
      "chain_check",
      [](int boxes, int schedules, uint64_t seed) {
        auto rep = chain_success_check(boxes, schedules, seed);
        py::dict d;
        d["premise_ok"] = rep.premise_ok;
        d["invariant_ok"] = rep.invariant_ok;
        d["all_succeeded"] = rep.all_succeeded;
        d["max_a_plus_b"] = rep.max_a_plus_b;
        d["boxes_run"] = rep.boxes_run;
        d["box_failures"] = rep.box_failures;
        d["schedules_run"] = rep.schedules_run;
        return d;
      },
      py::arg("boxes") = 100, py::arg("schedules") = 1000,
      py::arg("seed") = 2024);

  m.def("decode_syndrome", [](uint8_t s12, uint8_t s23, uint8_t s13) {
    auto r = decode_syndrome(Syndrome{pack_syndrome(s12, s23, s13)});
    return r ? py::cast(*r) : py::none().cast<py::object>();
  });

  m.attr("__version__") = "0.1.0";
  m.attr("builder_version") = kBuilderVersion;
}

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpec/circuit.hpp"
#include "mpec/rng.hpp"
#include "mpec/runner.hpp"

namespace mpec {

enum class Mode : uint8_t { kDirect, kFixedWeight };

// Draws a uniformly random nontrivial Pauli for a location kind: X, Y or Z
// on single-qubit locations, one of the 15 two-qubit products on a CNOT.
uint8_t draw_pauli(LocKind kind, Rng& rng);

// Independent faults: each location faults with probability p. Preparation
// faults land after the preparation, measurement faults before the readout.
// Output is sorted by location.
void inject_errors(const Circuit& c, double p, Rng& rng,
                   std::vector<Fault>& out);

// Exactly `weight` faults at distinct uniformly chosen locations.
void inject_fixed_weight(const Circuit& c, int weight, Rng& rng,
                         std::vector<Fault>& out);

struct RateQuery {
  Mode mode = Mode::kFixedWeight;
  Decoder decoder = Decoder::kMpec;
  double p = 0;     // direct mode
  int weight = 0;   // fixed-weight mode
  uint64_t trials = 0;
  uint64_t seed = 0;
  int workers = 1;
};

struct RatePoint {
  Mode mode;
  Decoder decoder;
  double x = 0;  // p or i
  uint64_t trials = 0;
  uint64_t failures = 0;
  double rate = 0;
  double sigma = 0;  // sqrt(r(1-r)/trials)
};

// Monte Carlo estimate. Per-trial RNG streams are derived from (seed, trial
// index), so the result is bit-identical for any worker count.
RatePoint estimate_rate(const Circuit& c, const RateQuery& q);

// ---- failure polynomial ----

// p2(p) = sum_i r_i C(N,i) p^i (1-p)^(N-i), truncated; r_i beyond the
// truncation are treated as zero. Evaluated with log-domain binomial terms.
double failure_polynomial(std::span<const double> r, uint64_t locations,
                          double p, int truncation);

struct CurveBand {
  double mean = 0, lo = 0, hi = 0;
};

// Band from propagating +-2 sigma on each r_i (clamped to [0,1]).
CurveBand failure_polynomial_band(std::span<const double> r,
                                  std::span<const double> sigma,
                                  uint64_t locations, double p,
                                  int truncation);

struct RatioResult {
  double leading = 0;  // (r4_std / r5_mp) * 5 / (N p)
  double full = 0;     // polynomial quotient
};

RatioResult improvement_ratio(std::span<const double> r_std,
                              std::span<const double> r_mp,
                              uint64_t locations, double p, int truncation);

// Two-sided ~2 sigma interval on a Monte Carlo rate; exact Poisson bounds at
// low counts where the normal approximation is meaningless.
struct RateBand {
  double lo = 0, hi = 0;
};
RateBand rate_band_2sigma(uint64_t failures, uint64_t trials);

// ---- sweep driver (CLI / bindings) ----

struct SweepConfig {
  uint64_t seed = 1;
  int workers = 1;
  int truncation = 12;
  Mode mode = Mode::kFixedWeight;
  std::vector<Decoder> decoders;
  std::vector<double> p_values;
  std::vector<int> i_values;
  uint64_t trials = 0;
  std::string out_csv;
  std::string out_manifest;
  std::string raw;  // config echo for the manifest
};

// Parses and validates the JSON config; throws std::invalid_argument with a
// diagnostic on bad input.
SweepConfig parse_sweep_config(const std::string& json_text);

std::vector<RatePoint> run_sweep(const Circuit& c, const SweepConfig& cfg);

std::string points_to_csv(const std::vector<RatePoint>& points);
int64_t unix_ms_now();
std::string sweep_manifest_json(const Circuit& c, const SweepConfig& cfg,
                                const std::string& csv_path,
                                int64_t started_unix_ms);

// r-table extracted from fixed-weight sweep rows: r[i] and sigma[i] for one
// decoder, dense over 0..truncation. Throws when a needed r_i is missing.
struct RTable {
  std::vector<double> r, sigma;
};
std::map<Decoder, RTable> parse_rtable_csv(const std::string& csv_text,
                                           int truncation);

const char* mode_name(Mode m);
const char* decoder_name(Decoder d);

}  // namespace mpec

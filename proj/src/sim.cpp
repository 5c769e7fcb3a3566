#include "mpec/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace mpec {

uint8_t draw_pauli(LocKind kind, Rng& rng) {
  if (kind == LocKind::kCnot)
    return static_cast<uint8_t>(1 + rng.below(15));
  return static_cast<uint8_t>(1 + rng.below(3));  // 1=X, 2=Z, 3=Y
}

void inject_errors(const Circuit& c, double p, Rng& rng,
                   std::vector<Fault>& out) {
  out.clear();
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0, 1]");
  const uint32_t n = static_cast<uint32_t>(c.hot.size());
  if (p == 0) return;
  if (p == 1) {
    for (uint32_t i = 0; i < n; ++i)
      out.push_back({i, draw_pauli(c.hot[i].kind, rng)});
    return;
  }
  // geometric gaps between faulted locations
  const double log1mp = std::log1p(-p);
  uint64_t i = 0;
  while (true) {
    double u = 1.0 - rng.uniform();  // (0, 1]
    uint64_t gap = static_cast<uint64_t>(std::log(u) / log1mp);
    i += gap;
    if (i >= n) break;
    uint32_t loc = static_cast<uint32_t>(i);
    out.push_back({loc, draw_pauli(c.hot[loc].kind, rng)});
    ++i;
  }
}

void inject_fixed_weight(const Circuit& c, int weight, Rng& rng,
                         std::vector<Fault>& out) {
  out.clear();
  const uint32_t n = static_cast<uint32_t>(c.hot.size());
  if (weight < 0 || static_cast<uint32_t>(weight) > n)
    throw std::invalid_argument("weight must lie in [0, location count]");
  // distinct locations, uniform without replacement
  for (int k = 0; k < weight; ++k) {
    uint32_t v;
    bool fresh;
    do {
      v = static_cast<uint32_t>(rng.below(n));
      fresh = true;
      for (const Fault& f : out)
        if (f.loc == v) {
          fresh = false;
          break;
        }
    } while (!fresh);
    out.push_back({v, 0});
  }
  std::sort(out.begin(), out.end(),
            [](const Fault& a, const Fault& b) { return a.loc < b.loc; });
  for (Fault& f : out) f.pauli = draw_pauli(c.hot[f.loc].kind, rng);
}

RatePoint estimate_rate(const Circuit& c, const RateQuery& q) {
  if (q.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (q.mode == Mode::kDirect && (q.p < 0 || q.p > 1))
    throw std::invalid_argument("p must lie in [0, 1]");

  const int workers = std::max(1, q.workers);
  std::vector<uint64_t> failures(workers, 0);
  const uint64_t chunk = (q.trials + workers - 1) / workers;

  auto work = [&](int w) {
    TrialRunner runner(c);
    std::vector<Fault> faults;
    faults.reserve(64);
    uint64_t lo = w * chunk;
    uint64_t hi = std::min(q.trials, lo + chunk);
    uint64_t local = 0;
    for (uint64_t t = lo; t < hi; ++t) {
      Rng rng = Rng::for_trial(q.seed, t);
      if (q.mode == Mode::kDirect)
        inject_errors(c, q.p, rng, faults);
      else
        inject_fixed_weight(c, q.weight, rng, faults);
      if (!runner.run(faults, q.decoder)) ++local;
    }
    failures[w] = local;
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  RatePoint pt;
  pt.mode = q.mode;
  pt.decoder = q.decoder;
  pt.x = q.mode == Mode::kDirect ? q.p : q.weight;
  pt.trials = q.trials;
  for (uint64_t f : failures) pt.failures += f;
  pt.rate = static_cast<double>(pt.failures) / static_cast<double>(pt.trials);
  pt.sigma = std::sqrt(pt.rate * (1.0 - pt.rate) / static_cast<double>(pt.trials));
  return pt;
}

// ---- failure polynomial ----

namespace {

double log_choose(uint64_t n, uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

}  // namespace

double failure_polynomial(std::span<const double> r, uint64_t locations,
                          double p, int truncation) {
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0, 1]");
  if (p == 0) return 0;
  const int imax = std::min<int>(truncation, static_cast<int>(locations));
  const double lp = std::log(p);
  const double l1mp = p < 1 ? std::log1p(-p) : 0;
  double sum = 0;
  for (int i = 0; i <= imax; ++i) {
    double ri = i < static_cast<int>(r.size()) ? r[i] : 0.0;
    if (ri <= 0) continue;
    double lt = log_choose(locations, i) + i * lp +
                (p < 1 ? (static_cast<double>(locations - i)) * l1mp : 0);
    if (p == 1 && static_cast<uint64_t>(i) != locations) continue;
    sum += ri * std::exp(lt);
  }
  return std::min(sum, 1.0);
}

CurveBand failure_polynomial_band(std::span<const double> r,
                                  std::span<const double> sigma,
                                  uint64_t locations, double p,
                                  int truncation) {
  std::vector<double> lo(r.begin(), r.end()), hi(r.begin(), r.end());
  for (size_t i = 0; i < r.size(); ++i) {
    double s = i < sigma.size() ? sigma[i] : 0.0;
    lo[i] = std::max(0.0, r[i] - 2 * s);
    hi[i] = std::min(1.0, r[i] + 2 * s);
  }
  CurveBand band;
  band.mean = failure_polynomial(r, locations, p, truncation);
  band.lo = failure_polynomial(lo, locations, p, truncation);
  band.hi = failure_polynomial(hi, locations, p, truncation);
  return band;
}

RatioResult improvement_ratio(std::span<const double> r_std,
                              std::span<const double> r_mp,
                              uint64_t locations, double p, int truncation) {
  if (r_std.size() < 5 || r_mp.size() < 6)
    throw std::invalid_argument("need r_4 (standard) and r_5 (mp)");
  if (r_mp[5] <= 0) throw std::domain_error("r_5 of the mp decoder is zero");
  if (p <= 0) throw std::invalid_argument("p must be positive");
  RatioResult out;
  out.leading = (r_std[4] / r_mp[5]) * 5.0 /
                (static_cast<double>(locations) * p);
  double denom = failure_polynomial(r_mp, locations, p, truncation);
  if (denom <= 0) throw std::domain_error("mp failure polynomial is zero");
  out.full = failure_polynomial(r_std, locations, p, truncation) / denom;
  return out;
}

RateBand rate_band_2sigma(uint64_t failures, uint64_t trials) {
  const double n = static_cast<double>(trials);
  const double k = static_cast<double>(failures);
  if (failures >= 100) {
    double r = k / n;
    double s = std::sqrt(r * (1 - r) / n);
    return {std::max(0.0, r - 2 * s), std::min(1.0, r + 2 * s)};
  }
  // Exact two-sided Poisson interval at the 2-sigma tail mass each side.
  const double tail = 0.022750131948179195;
  auto cdf = [](double lambda, uint64_t kk) {
    double term = std::exp(-lambda);
    double sum = term;
    for (uint64_t j = 1; j <= kk; ++j) {
      term *= lambda / static_cast<double>(j);
      sum += term;
    }
    return sum;
  };
  auto solve = [&](auto f, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (f(mid))
        hi = mid;
      else
        lo = mid;
    }
    return 0.5 * (lo + hi);
  };
  double hi = solve([&](double l) { return cdf(l, failures) <= tail; }, 0.0,
                    k + 10 * std::sqrt(k + 1) + 20);
  double lo = 0;
  if (failures > 0) {
    // largest lambda with P(X >= k) <= tail, i.e. P(X <= k-1) >= 1 - tail
    lo = solve([&](double l) { return cdf(l, failures - 1) < 1 - tail; }, 0.0,
               k + 10 * std::sqrt(k + 1) + 20);
  }
  return {lo / n, std::min(1.0, hi / n)};
}

// ---- sweep driver ----

const char* mode_name(Mode m) {
  return m == Mode::kDirect ? "direct" : "fixed";
}
const char* decoder_name(Decoder d) {
  return d == Decoder::kStandard ? "standard" : "mpec";
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  SweepConfig cfg;
  cfg.raw = j.dump();
  try {
    cfg.seed = j.value("seed", uint64_t{1});
    cfg.workers = j.value("workers", 1);
    cfg.truncation = j.value("truncation", 12);
    cfg.trials = j.value("trials", uint64_t{0});
    std::string mode = j.value("mode", "fixed");
    if (mode == "direct")
      cfg.mode = Mode::kDirect;
    else if (mode == "fixed")
      cfg.mode = Mode::kFixedWeight;
    else
      throw std::invalid_argument("mode must be 'direct' or 'fixed'");
    std::string dec = j.value("decoder", "both");
    if (dec == "standard")
      cfg.decoders = {Decoder::kStandard};
    else if (dec == "mpec")
      cfg.decoders = {Decoder::kMpec};
    else if (dec == "both")
      cfg.decoders = {Decoder::kStandard, Decoder::kMpec};
    else
      throw std::invalid_argument("decoder must be standard|mpec|both");
    if (j.contains("p")) {
      if (j["p"].is_array())
        cfg.p_values = j["p"].get<std::vector<double>>();
      else
        cfg.p_values = {j["p"].get<double>()};
    }
    if (j.contains("i")) {
      if (j["i"].is_array())
        cfg.i_values = j["i"].get<std::vector<int>>();
      else
        cfg.i_values = {j["i"].get<int>()};
    }
    if (j.contains("i_range")) {
      auto rng = j["i_range"].get<std::vector<int>>();
      if (rng.size() != 2 || rng[0] > rng[1])
        throw std::invalid_argument("i_range must be [lo, hi]");
      cfg.i_values.clear();
      for (int i = rng[0]; i <= rng[1]; ++i) cfg.i_values.push_back(i);
    }
    cfg.out_csv = j.value("out_csv", "");
    cfg.out_manifest = j.value("out_manifest", "");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") + e.what());
  }

  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.mode == Mode::kDirect) {
    if (cfg.p_values.empty())
      throw std::invalid_argument("direct mode needs p values");
    for (double p : cfg.p_values)
      if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0, 1]");
  } else {
    if (cfg.i_values.empty())
      throw std::invalid_argument("fixed mode needs i values");
    for (int i : cfg.i_values) {
      if (i < 0) throw std::invalid_argument("i must be >= 0");
      if (i > cfg.truncation)
        throw std::invalid_argument("truncation must cover every i");
    }
  }
  return cfg;
}

std::vector<RatePoint> run_sweep(const Circuit& c, const SweepConfig& cfg) {
  std::vector<RatePoint> points;
  uint64_t point_index = 0;
  for (Decoder dec : cfg.decoders) {
    if (cfg.mode == Mode::kDirect) {
      for (double p : cfg.p_values) {
        RateQuery q{cfg.mode, dec, p, 0, cfg.trials,
                    Rng::mix(cfg.seed ^ (0x5851f42d4c957f2dULL *
                                                     (point_index + 1))),
                    cfg.workers};
        points.push_back(estimate_rate(c, q));
        ++point_index;
      }
    } else {
      for (int i : cfg.i_values) {
        RateQuery q{cfg.mode, dec, 0, i, cfg.trials,
                    Rng::mix(cfg.seed ^ (0x5851f42d4c957f2dULL *
                                                     (point_index + 1))),
                    cfg.workers};
        points.push_back(estimate_rate(c, q));
        ++point_index;
      }
    }
  }
  return points;
}

std::string points_to_csv(const std::vector<RatePoint>& points) {
  std::string out = "mode,decoder,p_or_i,trials,failures,rate,sigma\n";
  char buf[256];
  for (const RatePoint& pt : points) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%llu,%llu,%.17g,%.17g\n",
                  mode_name(pt.mode), decoder_name(pt.decoder), pt.x,
                  static_cast<unsigned long long>(pt.trials),
                  static_cast<unsigned long long>(pt.failures), pt.rate,
                  pt.sigma);
    out += buf;
  }
  return out;
}

std::string sweep_manifest_json(const Circuit& c, const SweepConfig& cfg,
                                const std::string& csv_path,
                                int64_t started_unix_ms) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(cfg.raw);
  j["seed"] = cfg.seed;
  j["census_n"] = c.hot.size();
  j["builder_version"] = kBuilderVersion;
  j["circuit_hash"] = c.content_hash();
  j["reference_census"] = kReferenceExrecCensus;
  j["started_unix_ms"] = started_unix_ms;
  j["finished_unix_ms"] = unix_ms_now();
  j["outputs"] = {csv_path};
  return j.dump(1);
}

int64_t unix_ms_now() {
  auto now = std::chrono::system_clock::now().time_since_epoch();
  return std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
}

std::map<Decoder, RTable> parse_rtable_csv(const std::string& csv_text,
                                           int truncation) {
  std::map<Decoder, RTable> tables;
  std::map<Decoder, std::vector<bool>> seen;
  size_t pos = 0;
  bool header = true;
  while (pos < csv_text.size()) {
    size_t end = csv_text.find('\n', pos);
    if (end == std::string::npos) end = csv_text.size();
    std::string line = csv_text.substr(pos, end - pos);
    pos = end + 1;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    size_t p0 = 0;
    while (true) {
      size_t comma = line.find(',', p0);
      f.push_back(line.substr(p0, comma - p0));
      if (comma == std::string::npos) break;
      p0 = comma + 1;
    }
    if (f.size() != 7) throw std::invalid_argument("bad r-table row: " + line);
    if (f[0] != "fixed") continue;
    Decoder dec;
    if (f[1] == "standard")
      dec = Decoder::kStandard;
    else if (f[1] == "mpec")
      dec = Decoder::kMpec;
    else
      throw std::invalid_argument("bad decoder in r-table: " + f[1]);
    int i = static_cast<int>(std::stod(f[2]));
    if (i < 0) throw std::invalid_argument("negative i in r-table");
    auto& table = tables[dec];
    auto& have = seen[dec];
    if (static_cast<size_t>(i) >= table.r.size()) {
      table.r.resize(i + 1, 0.0);
      table.sigma.resize(i + 1, 0.0);
      have.resize(i + 1, false);
    }
    table.r[i] = std::stod(f[5]);
    table.sigma[i] = std::stod(f[6]);
    have[i] = true;
  }
  for (auto& [dec, table] : tables) {
    auto& have = seen[dec];
    for (int i = 0; i <= truncation; ++i) {
      if (static_cast<size_t>(i) >= have.size() || !have[i])
        throw std::invalid_argument("r-table is missing i=" + std::to_string(i) +
                                    " for " + decoder_name(dec));
    }
    table.r.resize(truncation + 1);
    table.sigma.resize(truncation + 1);
  }
  if (tables.empty()) throw std::invalid_argument("r-table has no fixed rows");
  return tables;
}

}  // namespace mpec

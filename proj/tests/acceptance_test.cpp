// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. Budgets and tolerances are fixed here; reruns are bit-identical
// because every Monte Carlo measurement pins its seed.

#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "mpec/sim.hpp"
#include "mpec/verifier.hpp"

using namespace mpec;

namespace {

int g_failures = 0;

void verdict(int criterion, bool pass, const char* what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL",
              criterion, what, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Budget {
  int weight;
  uint64_t trials;
  uint64_t seed_std, seed_mp;
};

// Fixed-weight budgets. The two headline weights get large budgets: the
// malignant-set densities sit near 1.5e-7 per trial, so 3.2e7 trials give
// better than 99% power to observe them while a clean result at the same
// budget bounds the rate below ~1.4e-7 at 99% confidence.
constexpr uint64_t kHeadline = 32000000;
const Budget kBudgets[] = {
    {0, 100000, 101010, 101030},  {1, 100000, 101011, 101031},
    {2, 100000, 101012, 101032},  {3, 100000, 101013, 101033},
    {4, kHeadline, 101001, 101002},
    {5, 2000000, 101004, 0},      {5, kHeadline, 0, 101003},
    {6, 4000000, 101016, 101036}, {7, 3000000, 101017, 101037},
    {8, 1500000, 101018, 101038}, {9, 1000000, 101019, 101039},
    {10, 600000, 101020, 101040}, {11, 400000, 101021, 101041},
    {12, 300000, 101022, 101042},
};
constexpr int kTruncation = 12;

struct DirectPoint {
  double p;
  uint64_t trials;
  uint64_t seed_std, seed_mp;
};
const DirectPoint kDirectPoints[] = {
    {4e-5, 1000000, 101050, 101060},
    {1e-4, 400000, 101051, 101061},
    {3e-4, 100000, 101052, 101062},
    {1e-3, 100000, 101053, 101063},
};

// The reconstruction only tracks direct estimates where the binomial mass
// is covered, so the curve-consistency table extends well past the
// low-p truncation: at p = 1e-3 the weight sits around i = N p = 50.
constexpr int kExtendedTruncation = 80;
uint64_t extended_trials(int i) {
  if (i <= 16) return 50000;
  if (i <= 24) return 40000;
  if (i <= 40) return 30000;
  return 20000;
}

RatePoint measure(const Circuit& c, Mode mode, Decoder dec, double p, int i,
                  uint64_t trials, uint64_t seed) {
  RateQuery q;
  q.mode = mode;
  q.decoder = dec;
  q.p = p;
  q.weight = i;
  q.trials = trials;
  q.seed = seed;
  q.workers = 1;
  auto pt = estimate_rate(c, q);
  std::printf("  measured %s %s %s=%g: %" PRIu64 "/%" PRIu64 " (rate %.3g)\n",
              mode_name(mode), decoder_name(dec),
              mode == Mode::kDirect ? "p" : "i", pt.x, pt.failures, pt.trials,
              pt.rate);
  std::fflush(stdout);
  return pt;
}

bool bands_overlap(double lo1, double hi1, double lo2, double hi2) {
  return lo1 <= hi2 && lo2 <= hi1;
}

}  // namespace

int main() {
  std::printf("building level-2 CNOT extended rectangle...\n");
  auto c = build_level2_cnot_exrec();
  auto cens = c.census();
  const uint64_t n_locations = cens.total;
  std::printf("census N = %" PRIu64 " (reference %u, ratio %.4f), qubits %u\n",
              n_locations, kReferenceExrecCensus,
              double(n_locations) / kReferenceExrecCensus, cens.qubits);
  std::fflush(stdout);

  // ---- fixed-weight r-table ----
  RTable table_std, table_mp;
  table_std.r.assign(kExtendedTruncation + 1, 0.0);
  table_std.sigma.assign(kExtendedTruncation + 1, 0.0);
  table_mp = table_std;
  std::vector<RatePoint> fixed_std(kTruncation + 1), fixed_mp(kTruncation + 1);
  for (const Budget& b : kBudgets) {
    if (b.seed_std) {
      auto pt = measure(c, Mode::kFixedWeight, Decoder::kStandard, 0, b.weight,
                        b.trials, b.seed_std);
      fixed_std[b.weight] = pt;
      table_std.r[b.weight] = pt.rate;
      table_std.sigma[b.weight] = pt.sigma;
    }
    if (b.seed_mp) {
      auto pt = measure(c, Mode::kFixedWeight, Decoder::kMpec, 0, b.weight,
                        b.trials, b.seed_mp);
      fixed_mp[b.weight] = pt;
      table_mp.r[b.weight] = pt.rate;
      table_mp.sigma[b.weight] = pt.sigma;
    }
  }
  for (int i = kTruncation + 1; i <= kExtendedTruncation; ++i) {
    auto pt_std = measure(c, Mode::kFixedWeight, Decoder::kStandard, 0, i,
                          extended_trials(i), 102000 + i);
    table_std.r[i] = pt_std.rate;
    table_std.sigma[i] = pt_std.sigma;
    auto pt_mp = measure(c, Mode::kFixedWeight, Decoder::kMpec, 0, i,
                         extended_trials(i), 103000 + i);
    table_mp.r[i] = pt_mp.rate;
    table_mp.sigma[i] = pt_mp.sigma;
  }

  // ---- criterion 1: weight-4 correction ----
  {
    const auto& mp = fixed_mp[4];
    const auto& sd = fixed_std[4];
    bool mp_ok = mp.failures == 0 && mp.trials >= 1000000;
    bool sd_ok = sd.failures > 0 && sd.trials >= 1000000;
    double power_floor = 4.6052 / static_cast<double>(sd.trials);
    verdict(1, mp_ok && sd_ok, "all weight-4 sets corrected by mp, not by standard",
            fmt("mp %" PRIu64 "/%" PRIu64 ", std %" PRIu64 "/%" PRIu64
                "; budget detects rates >= %.2g at 99%%",
                mp.failures, mp.trials, sd.failures, sd.trials, power_floor));
  }

  // ---- criterion 2: distance floor ----
  {
    uint64_t low_failures = 0;
    for (int i = 1; i <= 3; ++i)
      low_failures += fixed_std[i].failures + fixed_mp[i].failures;

    std::printf("  exhaustive single-fault sweep...\n");
    std::fflush(stdout);
    uint64_t sweep_failures = 0, sweep_trials = 0;
    TrialRunner runner(c);
    for (uint32_t li = 0; li < c.hot.size(); ++li) {
      int npaulis = c.hot[li].kind == LocKind::kCnot ? 15 : 3;
      for (int pl = 1; pl <= npaulis; ++pl) {
        Fault f{li, static_cast<uint8_t>(pl)};
        ++sweep_trials;
        if (!runner.run({&f, 1}, Decoder::kMpec)) ++sweep_failures;
        if (!runner.run({&f, 1}, Decoder::kStandard)) ++sweep_failures;
      }
    }
    verdict(2, low_failures == 0 && sweep_failures == 0,
            "no failures at weight <= 3 and under every single fault",
            fmt("weights 1-3: %" PRIu64 " failures over 6x1e5; single-fault "
                "sweep: %" PRIu64 " failures over %" PRIu64 " x2 decoders",
                low_failures, sweep_failures, sweep_trials));
  }

  // ---- criterion 3: fault-tolerance condition ----
  {
    auto rep4 = enumerate_box_cases(4);
    auto rep5 = enumerate_box_cases(5);
    bool ok = rep4.condition_violations == 0 && rep4.failures_at_max == 0 &&
              rep4.fs_only_failures == 0 && rep5.condition_violations == 0 &&
              rep5.found_masked_double_ff && rep5.found_fs_pair_masks_uf;
    verdict(3, ok, "c <= b over all a+b <= 4, tight at five",
            fmt("%" PRIu64 " cases at <=4 with %" PRIu64
                " violations; weight-5 masking patterns found: %s/%s",
                rep4.cases, rep4.condition_violations,
                rep5.found_masked_double_ff ? "yes" : "no",
                rep5.found_fs_pair_masks_uf ? "yes" : "no"));
  }

  // ---- criterion 4: golden replays ----
  {
    auto results = replay_all_goldens(c);
    bool ok = true;
    std::string detail;
    for (const auto& r : results) {
      ok = ok && r.ok;
      detail += fmt("%s%s:%s", detail.empty() ? "" : " ", golden_name(r.which),
                    r.ok ? "ok" : "FAIL");
    }
    verdict(4, ok, "golden configurations reproduce their verdicts", detail);
  }

  // ---- criterion 5: chain theorem ----
  {
    auto rep = chain_success_check(100, 1000, 101070);
    bool ok = rep.premise_ok && rep.invariant_ok && rep.all_succeeded;
    verdict(5, ok, "chains of 100 boxes never fail under the premise",
            fmt("%" PRIu64 " schedules, %" PRIu64 " boxes, %" PRIu64
                " failures, max a+b = %d",
                rep.schedules_run, rep.boxes_run, rep.box_failures,
                rep.max_a_plus_b));
  }

  // ---- criterion 6: direct vs reconstructed curve ----
  {
    bool ok = true;
    std::string detail;
    for (const DirectPoint& dp : kDirectPoints) {
      for (Decoder dec : {Decoder::kStandard, Decoder::kMpec}) {
        auto pt = measure(c, Mode::kDirect, dec, dp.p, 0, dp.trials,
                          dec == Decoder::kStandard ? dp.seed_std : dp.seed_mp);
        const RTable& table =
            dec == Decoder::kStandard ? table_std : table_mp;
        auto band = failure_polynomial_band(table.r, table.sigma, n_locations,
                                            dp.p, kExtendedTruncation);
        auto direct = rate_band_2sigma(pt.failures, pt.trials);
        bool here = bands_overlap(direct.lo, direct.hi, band.lo, band.hi);
        ok = ok && here;
        detail += fmt("%sp=%g/%s:%s", detail.empty() ? "" : " ", dp.p,
                      decoder_name(dec), here ? "ok" : "DISJOINT");
      }
    }
    verdict(6, ok, "direct estimates agree with the failure polynomial",
            detail);
  }

  // ---- criterion 7: improvement scaling ----
  {
    bool ok = true;
    std::string detail;
    if (table_std.r[4] <= 0 || table_mp.r[5] <= 0) {
      ok = false;
      detail = "r4(std) or r5(mp) measured zero; quotient undefined";
    } else {
      for (double p : {1e-5, 1e-6}) {
        auto rr = improvement_ratio(table_std.r, table_mp.r, n_locations, p,
                                    kTruncation);
        double form_ratio = rr.full / rr.leading;
        bool here = form_ratio > 0.5 && form_ratio < 2.0;
        ok = ok && here;
        detail += fmt("%sp=%g: full/leading=%.3f%s", detail.empty() ? "" : " ",
                      p, form_ratio, here ? "" : " OUT-OF-FORM");
      }
      double soft_const = (table_std.r[4] / table_mp.r[5]) * 5.0 / n_locations;
      detail += fmt("; quotient ~ %.2g/p (soft target 1e-4/p)", soft_const);
    }
    verdict(7, ok, "failure-rate quotient follows the leading form", detail);
  }

  // ---- criterion 8: reproducibility ----
  {
    SweepConfig cfg = parse_sweep_config(
        R"({"mode":"direct","p":[3e-4],"trials":20000,"seed":101080,)"
        R"("decoder":"both","workers":1})");
    auto csv1 = points_to_csv(run_sweep(c, cfg));
    auto csv2 = points_to_csv(run_sweep(c, cfg));
    cfg.workers = 3;
    auto csv3 = points_to_csv(run_sweep(c, cfg));
    bool ok = csv1 == csv2 && csv1 == csv3;
    verdict(8, ok, "seeded runs are byte-identical across worker counts",
            fmt("%zu-byte CSV, rerun %s, workers=3 %s", csv1.size(),
                csv1 == csv2 ? "identical" : "DIFFERS",
                csv1 == csv3 ? "identical" : "DIFFERS"));
  }

  std::printf("\nmeasured r-table (i, standard, mp):\n");
  for (int i = 0; i <= kExtendedTruncation; ++i)
    std::printf("  %2d  %.4g  %.4g\n", i, table_std.r[i], table_mp.r[i]);
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

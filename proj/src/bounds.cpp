#include <algorithm>
#include <cmath>

#include "bbnet/analysis.hpp"
#include "bbnet/errors.hpp"
#include "bbnet/rng.hpp"
#include "bbnet/sampler.hpp"

namespace bbnet::analysis {

BoundConstants calibrate_constants(const EnumerationTable& table,
                                   const CalibrationOptions& opts) {
  if (table.params().input != 0) {
    throw domain_error("constant calibration expects a table built on input 0");
  }
  BoundConstants c;

  c.c0 = table.complexity_proxy(0);
  c.provenance["c0"] = "shortest program emitting 0, from the enumeration";

  c.c_l = machine::kLiteralOverheadBits;
  c.provenance["c_l"] = "terminal opcode field width, the VM's literal-encoding overhead";

  c.eps = 1.0;
  c.provenance["eps"] = "folded into the fallback's factor 2 on the lg lg term";

  // Smallest complexity among producible outputs.
  double c2 = 1e18;
  for (const auto& e : table.entries()) {
    if (e.first_run.halted) {
      c2 = std::min(c2, static_cast<double>(
                            table.complexity_proxy(e.first_run.value - 1)));
    }
  }
  c.c2 = c2;
  c.provenance["c2"] = "min proxy complexity over outputs the enumeration can produce";

  // Isolated-run complexity overhead: proxy(final) <= c1 + |p| + A(w) + A(c).
  double c1 = 0.0;
  const double a_w = table.complexity_proxy(table.params().input);
  for (const auto& e : table.entries()) {
    for (std::uint32_t cy = 1; cy <= opts.cycle_range && cy <= e.halted_cycles; ++cy) {
      const double lhs = table.complexity_proxy(e.cycle_values[cy - 1]);
      const double rhs = e.program.bit_length() + a_w +
                         static_cast<double>(table.complexity_proxy(cy));
      c1 = std::max(c1, lhs - rhs);
    }
  }
  c.c1 = std::ceil(c1);
  c.provenance["c1"] = "max deficit of proxy(iso final) - |p| - A(w) - A(c) over the "
                       "enumerated halting set, c in 1..6";

  // Max-fitness floor: proxy(max cycle-1 value) >= lg N - c4 on a sampled
  // ladder with fresh populations.
  double c4 = 0.0;
  for (std::uint64_t seed : opts.seeds) {
    for (std::uint32_t n : opts.ladder) {
      auto pop = machine::sample_population(n, derive_seed(seed, "c4-ladder", n));
      Value best = 0;
      for (const auto& p : pop.members) {
        best = std::max(best,
                        machine::run_bounded(p, 0, table.params().step_limit).value);
      }
      const double deficit =
          std::log2(static_cast<double>(n)) -
          static_cast<double>(table.complexity_proxy(best));
      c4 = std::max(c4, deficit);
    }
  }
  c.c4 = std::ceil(std::max(0.0, c4));
  c.provenance["c4"] = "max deficit of lg N - proxy(max cycle-1 output) over the "
                       "calibration ladder, rounded up";

  // Schedule overhead: A(c(x)) <= c_c + A(x) over the experiment range.
  double c_c = 0.0;
  for (std::uint64_t x = 2; x <= opts.schedule_x_max; ++x) {
    const double lhs = table.complexity_proxy(opts.schedule(x));
    const double rhs = table.complexity_proxy(x);
    c_c = std::max(c_c, lhs - rhs);
  }
  c.c5 = c_c + c.c_l + c.c1 + c.c4 - c.c0;
  c.provenance["c5"] = "c_c + c_l + c1 + c4 - c0 with c_c the schedule complexity "
                       "overhead (" + std::to_string(c_c) + " for " +
                       opts.schedule.to_string() + ")";

  c.c3 = 0.0;
  c.provenance["c3"] = "spare; no evaluated expression uses it";

  c.c6 = 1.0;
  c.provenance["c6"] = "headroom constant of the growth-domination hypothesis; "
                       "informational only";

  double c_bb = 0.0;
  double c_omega = 0.0;
  for (std::uint32_t k = machine::kOpBits; k <= table.params().max_len_bits;
       k += machine::kOpBits) {
    auto bb = table.busy_beaver(k);
    if (!bb.witness) continue;
    c_bb = std::max(c_bb, static_cast<double>(bb.witness->bit_length()) - k);
    c_omega = std::max(c_omega, static_cast<double>(k) -
                                    table.complexity_proxy(bb.value - 1));
  }
  c.c_bb = std::max(0.0, c_bb);
  c.c_omega = std::max(0.0, c_omega);
  c.provenance["c_bb"] = "max witness length minus k over the enumerated range";
  c.provenance["c_omega"] = "max of k - proxy(BB(k)) over the enumerated range";

  c.eps2 = table.omega(opts.cycle_range);
  c.provenance["eps2"] = "measured halting-mass floor over the calibrated cycle range";

  return c;
}

BoundConstants default_constants() {
  // Frozen from the shipped calibration: K=14, step limit 1e5, input 0,
  // identity schedule, ladder 2^6..2^12 x 5 seeds. The drift test
  // recomputes these.
  BoundConstants c;
  c.c0 = 3.0;
  c.c1 = 0.0;
  c.c2 = 3.0;
  c.c3 = 0.0;
  c.c4 = 1.0;
  c.c5 = 1.0;
  c.c6 = 1.0;
  c.c_l = 3.0;
  c.c_bb = 0.0;
  c.c_omega = 2.0;
  c.eps = 1.0;
  c.eps2 = 0.22607421875;  // exact dyadic: the K=14 halting mass at c=6
  c.provenance["frozen"] = "see calibrate_constants; regenerated by the drift test";
  return c;
}

}  // namespace bbnet::analysis

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smalleig/global.hpp"
#include "smalleig/matrix.hpp"
#include "smalleig/verify.hpp"

namespace smalleig::battery {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Shared fixture: a certified-shattered Hessenberg instance with measured
// minimum spectral-measure mass and oracle spectrum.
struct ShatteredInstance {
  HessenbergMatrix H;
  GlobalData global;
  double p_min;
  std::vector<Complex> spectrum;
};

ShatteredInstance make_shattered_instance(int n, RngStream& rng);

// Acceptance criteria. `scale` in (0, 1] shrinks trial counts (statistical
// margins widen accordingly); 1.0 is the acceptance-gate configuration.
CheckResult criterion_end_to_end(double scale, std::uint64_t seed);      // C1
CheckResult criterion_distspec_bracket(double scale, std::uint64_t seed);// C2
CheckResult criterion_oneeig_trace(double scale, std::uint64_t seed);    // C3
CheckResult criterion_decouple(double scale, std::uint64_t seed);        // C4
CheckResult criterion_net_covering(double scale, std::uint64_t seed);    // C5
CheckResult criterion_anticoncentration(double scale, std::uint64_t seed); // C6
CheckResult criterion_precision_formulas(double scale, std::uint64_t seed); // C7
CheckResult criterion_cost_model(double scale, std::uint64_t seed);      // C8
CheckResult criterion_tail_bounds(double scale, std::uint64_t seed);     // C9
CheckResult criterion_functional_calculus(double scale, std::uint64_t seed); // C10

// All criteria in order C1..C10.
std::vector<CheckResult> run_battery(double scale, std::uint64_t seed);

}  // namespace smalleig::battery

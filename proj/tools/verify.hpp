#pragma once

#include <cstdint>
#include <optional>

#include "destab/torus.hpp"

namespace destab::cli {

struct GridOracle {
    std::size_t samples_total = 0;
    std::size_t samples_feasible = 0;
    double best = 0;        // smallest feasible sampled value
    bool beats_exact = false;  // sampled value below exact min by > 1e-9
};

/// Floating-point sphere sampling oracle for the torus weight minimum:
/// draws unit directions, keeps those inside the support cone and compares
/// <tau,s> against the exact optimum. Sound in one direction only: a
/// sample may never beat the exact minimum beyond the tolerance.
GridOracle torus_grid_oracle(const WeightSystem& ws, const StabilityParam& tau,
                             const InnerProduct& q, const SupportVector& v,
                             const SignedSquare& exact_min, std::size_t samples,
                             std::uint64_t seed);

/// Exhaustive active-set sweep: every KKT-certified candidate must be the
/// same ray as the claimed optimum.
bool torus_unique_optimal(const WeightSystem& ws, const StabilityParam& tau,
                          const InnerProduct& q, const SupportVector& v, const Ray& claimed);

} // namespace destab::cli

#include "verify.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace destab::cli {

GridOracle torus_grid_oracle(const WeightSystem& ws, const StabilityParam& tau,
                             const InnerProduct& q, const SupportVector& v,
                             const SignedSquare& exact_min, std::size_t samples,
                             std::uint64_t seed) {
    const std::size_t n = ws.dim;
    std::vector<std::vector<double>> chis;
    for (const auto& label : v.support()) {
        const Vec& chi = ws.find(label)->chi;
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = rat_to_double(chi[i]);
        chis.push_back(std::move(c));
    }
    std::vector<double> tf(n);
    for (std::size_t i = 0; i < n; ++i) tf[i] = rat_to_double(tau.tau[i]);
    std::vector<std::vector<double>> gf(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gf[i][j] = rat_to_double(q.gram().at(i, j));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    GridOracle out;
    out.samples_total = samples;
    const double exact = exact_min.to_double();
    bool have = false;
    std::vector<double> s(n);
    for (std::size_t it = 0; it < samples; ++it) {
        double nsq = 0;
        for (std::size_t i = 0; i < n; ++i) s[i] = gauss(rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) nsq += s[i] * gf[i][j] * s[j];
        if (nsq <= 0) continue;
        double inv = 1.0 / std::sqrt(nsq);
        for (std::size_t i = 0; i < n; ++i) s[i] *= inv;
        bool feasible = true;
        for (const auto& chi : chis) {
            double d = 0;
            for (std::size_t i = 0; i < n; ++i) d += chi[i] * s[i];
            if (d > 0) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        ++out.samples_feasible;
        double val = 0;
        for (std::size_t i = 0; i < n; ++i) val += tf[i] * s[i];
        if (!have || val < out.best) {
            out.best = val;
            have = true;
        }
    }
    if (have && out.best < exact - 1e-9) out.beats_exact = true;
    return out;
}

bool torus_unique_optimal(const WeightSystem& ws, const StabilityParam& tau,
                          const InnerProduct& q, const SupportVector& v, const Ray& claimed) {
    PolyhedralCone cone = support_cone(ws, v);
    Vec w = vec_scale(Rat(-1), q.solve(tau.tau));
    auto candidates = enumerate_kkt_projections(q, cone, w);
    if (candidates.empty()) return false;
    auto prim = claimed.primitive();
    for (const auto& c : candidates) {
        if (c.point.is_zero()) return false;  // claimed optimum must be the projection
        if (c.point.primitive() != prim) return false;
    }
    return true;
}

} // namespace destab::cli

#pragma once

#include <vector>

#include "destab/linalg.hpp"
#include "destab/signed_square.hpp"

namespace destab {

// Factorization problem Hom(V,V0) with GL(V) acting by f . u^{-1}; the
// quotient is a Grassmannian exactly when t > 0.
struct HomProblem {
    Mat f;  // r0 x r
    Rat t = 1;

    void validate() const;
};

struct HomOptimal {
    bool semistable = false;
    std::size_t kernel_dim = 0;
    Mat kernel;           // r x k, columns a kernel basis
    Mat neg_projector;    // -(projector onto ker f), the unnormalized ray
    SignedSquare lambda_inf;  // -t sqrt(k)
};

/// Closed-form optimal destabilizer: semistable iff ker f = 0, otherwise
/// the negative kernel projector with lambda_inf^2 = t^2 dim ker f.
HomOptimal hom_optimal(const HomProblem& p);

/// Reduces the problem through a kernel-adapted diagonal torus and checks
/// the torus solver reproduces the closed form exactly.
bool hom_cross_check(const HomProblem& p);

// Chain of maps V_1 -> V_2 -> ... -> V_{m+1}; the quotient is a flag
// manifold when every t_i > 0.
struct ChainProblem {
    std::vector<Mat> maps;  // maps[i]: dim V_{i+2} x dim V_{i+1} ... f_i as (i+1)x(i) block
    std::vector<Rat> t;

    void validate() const;
    std::size_t length() const { return maps.size(); }
    std::size_t dim_v(std::size_t i) const;  // dim V_{i+1}, i in [0, m]
};

struct ChainInvariants {
    std::vector<Mat> w_bases;      // W_i = im(f_m ... f_i), basis columns in V
    std::vector<std::size_t> rho;  // rk(f_m ... f_i)
    std::vector<Mat> e_bases;      // E_i = ker(f_m ... f_i), basis columns in V_i
};

ChainInvariants chain_invariants(const ChainProblem& p);

/// Semistable (equivalently stable) iff every f_i is injective.
bool chain_semistable(const ChainProblem& p);

struct ChainLimit {
    std::vector<Mat> induced_maps;  // induced injective maps on V_i / E_i
    bool stable = false;
    std::vector<std::size_t> rho;
    std::vector<Mat> flag_bases;    // the flag (W_1,...,W_m) in V
    bool monotone_dims = true;      // d_1 <= ... <= d_m as the quotient expects
};

/// Limit object of a non-semistable chain: the quotient maps on V_i/E_i,
/// which are always injective.
ChainLimit chain_limit(const ChainProblem& p);

} // namespace destab

#pragma once

// Randomized lower bounds on operator norms: the maximum of
// ||T u||_r / ||u||_q over seeded probe fields.  A lower-bound protocol,
// never a claim about the true norm.

#include <functional>
#include <string>

#include "fiolab/core/norms.hpp"

namespace fiolab {

struct NormEstimate {
    double lower_bound = 0.0;
    std::string witness;           // descriptor of the maximizing probe
    bool flagged_unbounded = false;  // some ratio exceeded 1e12
};

inline NormEstimate estimate_operator_norm(
    const std::function<Field(const Field&)>& apply, double q, double r, int trials,
    std::uint64_t seed, const std::function<Field(std::uint64_t)>& probe_factory,
    const std::string& family_name = "probe") {
    if (trials < 8) throw std::invalid_argument("estimate_operator_norm: need >= 8 trials");

    NormEstimate est;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t probe_seed = seed * 1000003ull + static_cast<std::uint64_t>(t);
        const Field u = probe_factory(probe_seed);
        const double nu = lp_norm(u, q);
        if (nu == 0.0) continue;
        const double ratio = lp_norm(apply(u), r) / nu;
        if (ratio > 1e12) {
            est.flagged_unbounded = true;
            continue;
        }
        if (ratio > est.lower_bound) {
            est.lower_bound = ratio;
            est.witness = family_name + "#" + std::to_string(t) +
                          " seed=" + std::to_string(probe_seed);
        }
    }
    return est;
}

}  // namespace fiolab

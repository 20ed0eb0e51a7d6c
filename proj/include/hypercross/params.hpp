#pragma once

// Parameterization of one recovery experiment and the operator generating vectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kernels.hpp"

namespace hypercross {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// 1/p with 1/inf = 0.
inline double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }
inline double pos_part(double v) { return v > 0.0 ? v : 0.0; }

/// Number of leading entries equal to the minimum of an ascending vector.
inline int multiplicity(const std::vector<double>& r)
{
    require(!r.empty(), "multiplicity: empty vector");
    int mu = 0;
    for (double v : r)
        if (std::abs(v - r.front()) <= 1e-12 * std::max(1.0, std::abs(r.front()))) ++mu;
    return mu;
}

struct RecoveryParams {
    std::vector<double> r{1.5, 1.5};
    double p = 2.0;
    double q = 2.0;
    double theta = inf;
    int L = 2;
    std::vector<double> eta{1.0, 1.0};
    int m = 4;

    [[nodiscard]] int dim() const { return static_cast<int>(r.size()); }
    [[nodiscard]] int mu() const { return multiplicity(r); }
    [[nodiscard]] double r1() const { return r.front(); }

    /// (1/p - 1)_+
    [[nodiscard]] double sigma_p() const { return pos_part(inv(p) - 1.0); }
    /// (1/min(p, theta) - 1)_+
    [[nodiscard]] double sigma_p_theta() const { return pos_part(std::max(inv(p), inv(theta)) - 1.0); }

    void validate() const
    {
        require(!r.empty(), "RecoveryParams: r must be nonempty");
        require(std::is_sorted(r.begin(), r.end()), "RecoveryParams: r must be ascending");
        require(p > 0.0 && q > 0.0 && theta > 0.0, "RecoveryParams: p, q, theta must be positive");
        for (double v : r) require(v > inv(p), "RecoveryParams: r must exceed 1/p componentwise");
        require(L >= 1 && L <= kMaxKernelOrder, "RecoveryParams: L must lie in [1, 16]");
        require(eta.size() == r.size(), "RecoveryParams: eta and r must have equal length");
        for (double v : eta) require(v > 0.0, "RecoveryParams: eta must be positive");
        require(*std::min_element(eta.begin(), eta.end()) == eta.front(), "RecoveryParams: eta_1 must be minimal");
        require(m >= 0, "RecoveryParams: m must be nonnegative");
    }
};

/// eta = r - 1/p + 1/q
inline std::vector<double> eta_for_Lq(const std::vector<double>& r, double p, double q)
{
    require(p <= q, "eta_for_Lq: requires p <= q");
    std::vector<double> eta;
    for (double v : r) {
        require(v > inv(p), "eta_for_Lq: requires r > 1/p");
        eta.push_back(v - inv(p) + inv(q));
    }
    return eta;
}

/// nu_s = r_s for s <= mu, (r_1 + r_s)/2 otherwise.
inline std::vector<double> midpoint_nu(const std::vector<double>& r)
{
    const int mu = multiplicity(r);
    std::vector<double> nu(r);
    for (std::size_t s = static_cast<std::size_t>(mu); s < r.size(); ++s) nu[s] = 0.5 * (r.front() + r[s]);
    return nu;
}

/// eta = nu - 1/p (L_infinity error).
inline std::vector<double> eta_for_Linf(const std::vector<double>& r, double p)
{
    require(std::is_sorted(r.begin(), r.end()), "eta_for_Linf: r must be ascending");
    std::vector<double> eta = midpoint_nu(r);
    for (double& v : eta) {
        v -= inv(p);
        require(v > 0.0, "eta_for_Linf: requires r > 1/p");
    }
    return eta;
}

/// eta = nu - 1/p + 1/q (Besov classes).
inline std::vector<double> eta_for_besov(const std::vector<double>& r, double p, double q)
{
    require(std::is_sorted(r.begin(), r.end()), "eta_for_besov: r must be ascending");
    require(p <= q, "eta_for_besov: requires p <= q");
    std::vector<double> eta = midpoint_nu(r);
    for (double& v : eta) {
        require(v > inv(p), "eta_for_besov: requires r > 1/p");
        v += inv(q) - inv(p);
    }
    return eta;
}

} // namespace hypercross

#pragma once

// Convergence sweeps of the Smolyak interpolant over m and log-linear rate fits.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "atlas.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "smolyak.hpp"
#include "test_functions.hpp"

namespace hypercross {

enum class ErrorMethod { automatic, parseval, quadrature };

inline const char* to_string(ErrorMethod e)
{
    switch (e) {
    case ErrorMethod::automatic: return "auto";
    case ErrorMethod::parseval: return "parseval";
    case ErrorMethod::quadrature: return "quadrature";
    }
    return "?";
}

struct ConvergenceSpec {
    Space space = Space::B;
    std::vector<double> r{1.5, 1.5};
    double p = 2.0;
    double q = 2.0;
    double theta = inf; // ignored for W
    int L = 2;
    std::vector<double> eta; // empty: derived from (space, r, p, q)
    int m_min = 4;
    int m_max = 9;
    QuadratureSpec quad;
    ErrorMethod error = ErrorMethod::automatic;
    int threads = 1;
};

struct SweepPoint {
    int m = 0;
    std::uint64_t n_nodes = 0;
    double error = 0.0;
    double alpha_rolling = std::numeric_limits<double>::quiet_NaN(); // log2(e_{m-1}/e_m)
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

struct RateReport {
    std::vector<SweepPoint> points;
    std::vector<double> eta;
    ErrorMethod error_method = ErrorMethod::parseval;
    bool exact = false;
    double alpha_hat = std::numeric_limits<double>::quiet_NaN();
    double alpha_stderr = std::numeric_limits<double>::quiet_NaN();
    /// alpha fitted against n / (log2 n)^{mu-1} after removing the predicted log factor
    double alpha_hat_n = std::numeric_limits<double>::quiet_NaN();
    double alpha_theory = 0.0;
    double beta_theory = 0.0;
    int mu = 1;
    AtlasEntry atlas; // rho_lin entry for the sweep parameters

    /// "exact" or the atlas status
    [[nodiscard]] std::string status() const { return exact ? "exact" : to_string(atlas.status); }
};

/// Ordinary least squares y ~ intercept + slope x.
inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size() && x.size() >= 2, "least_squares: need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx > 0.0, "least_squares: x values must not all coincide");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (x.size() > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e = y[i] - fit.intercept - fit.slope * x[i];
            ssr += e * e;
        }
        fit.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
    }
    return fit;
}

/// Upper-bound exponents of the Smolyak interpolant error in m-form,
/// e_m <~ 2^{-alpha m} m^{(mu-1) beta}.
inline std::pair<double, double> predicted_rate(Space space, double r1, double p, double q, double theta)
{
    if (std::isinf(q)) return {r1 - inv(p), space == Space::B ? 0.0 : pos_part(1.0 - inv(p))};
    const double alpha = r1 - inv(p) + inv(q);
    if (space == Space::B) return {alpha, pos_part(inv(q) - inv(theta))};
    return {alpha, 0.0};
}

inline std::vector<double> sweep_eta(const ConvergenceSpec& s)
{
    if (!s.eta.empty()) return s.eta;
    if (s.space == Space::B) return eta_for_besov(s.r, s.p, s.q);
    if (std::isinf(s.q)) return eta_for_Linf(s.r, s.p);
    return eta_for_Lq(s.r, s.p, s.q);
}

inline RecoveryParams sweep_params(const ConvergenceSpec& s, int m)
{
    RecoveryParams rp;
    rp.r = s.r;
    rp.p = s.p;
    rp.q = s.q;
    rp.theta = s.space == Space::W ? 2.0 : s.theta;
    rp.L = s.L;
    rp.eta = sweep_eta(s);
    rp.m = m;
    rp.validate();
    return rp;
}

/// Error of the interpolant at a single level m.
inline SweepPoint convergence_point(const TestFunction& f, const ConvergenceSpec& s, int m, ErrorMethod method)
{
    const RecoveryParams rp = sweep_params(s, m);
    const IndexSet set = build_index_set(rp);
    const SparseGrid grid(set);
    const SampleStore store = f.samples(grid);
    const TrigPoly approx = smolyak_coefficients(rp, store);
    SweepPoint pt;
    pt.m = m;
    pt.n_nodes = grid.size();
    pt.error = method == ErrorMethod::parseval ? parseval_error(f, approx) : lq_error(f, approx, s.q, s.quad);
    return pt;
}

inline RateReport run_convergence(const TestFunction& f, const ConvergenceSpec& s)
{
    require(static_cast<int>(s.r.size()) == f.dim(), "run_convergence: r has wrong dimension");
    require(s.m_max - s.m_min + 1 >= 4, "run_convergence: fewer than 4 m values in the sweep");
    require(s.m_min >= 0, "run_convergence: m_min must be nonnegative");
    const double rmax = *std::max_element(s.r.begin(), s.r.end());
    require(f.belongs_to(s.space, rmax, s.p, s.theta),
            "run_convergence: test function declares no membership in the requested space");

    RateReport rep;
    rep.eta = sweep_eta(s);
    rep.mu = multiplicity(s.r);
    rep.error_method = s.error;
    if (s.error == ErrorMethod::automatic) rep.error_method = s.q == 2.0 ? ErrorMethod::parseval : ErrorMethod::quadrature;
    require(rep.error_method != ErrorMethod::parseval || s.q == 2.0, "run_convergence: parseval error needs q = 2");

    const int count = s.m_max - s.m_min + 1;
    rep.points.resize(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                rep.points[static_cast<std::size_t>(i)] = convergence_point(f, s, s.m_min + i, rep.error_method);
            } catch (...) {
                failures[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    const int nt = std::max(1, std::min(s.threads, count));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : failures)
        if (e) std::rethrow_exception(e);

    for (std::size_t i = 1; i < rep.points.size(); ++i) {
        const double a = rep.points[i - 1].error, b = rep.points[i].error;
        if (a > 0.0 && b > 0.0) rep.points[i].alpha_rolling = std::log2(a / b);
    }

    const double r1 = s.r.front();
    std::tie(rep.alpha_theory, rep.beta_theory) = predicted_rate(s.space, r1, s.p, s.q, s.theta);
    rep.atlas = atlas_lookup(AtlasQuery{s.p, s.q, s.space == Space::W ? 2.0 : s.theta, r1, rep.mu, s.space, WidthKind::rho_lin});

    const double floor = 1e-12 * std::max(1.0, std::sqrt(f.norm_sq()));
    for (const auto& pt : rep.points)
        if (pt.error <= floor) rep.exact = true;
    if (rep.exact) return rep;

    std::vector<double> xm, ym, xn, yn;
    for (const auto& pt : rep.points) {
        xm.push_back(pt.m);
        ym.push_back(std::log2(pt.error));
        const double ln = std::log2(static_cast<double>(pt.n_nodes));
        const double lg = ln > 1.0 ? std::log2(ln) : 0.0;
        xn.push_back(ln - (rep.mu - 1) * lg);
        yn.push_back(ym.back() - (rep.mu - 1) * rep.beta_theory * lg);
    }
    const LinearFit fm = least_squares(xm, ym);
    rep.alpha_hat = -fm.slope;
    rep.alpha_stderr = fm.slope_stderr;
    rep.alpha_hat_n = -least_squares(xn, yn).slope;
    return rep;
}

} // namespace hypercross

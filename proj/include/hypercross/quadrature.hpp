#pragma once

// L_q error of a trigonometric polynomial approximation against a test function.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fft.hpp"
#include "params.hpp"
#include "test_functions.hpp"
#include "trig_poly.hpp"

namespace hypercross {

enum class QuadratureMode { tensor_grid, monte_carlo, dense_max };

inline const char* to_string(QuadratureMode m)
{
    switch (m) {
    case QuadratureMode::tensor_grid: return "tensor_grid";
    case QuadratureMode::monte_carlo: return "monte_carlo";
    case QuadratureMode::dense_max: return "dense_max";
    }
    return "?";
}

/// resolution: points per direction for the grid modes (0 = automatic),
/// resolution[0] = number of samples for monte_carlo.
struct QuadratureSpec {
    QuadratureMode mode = QuadratureMode::tensor_grid;
    std::vector<std::int64_t> resolution;
    std::uint64_t seed = 1;
};

/// Smallest power of two >= 8 * (max frequency) per direction, at least 16.
inline std::vector<std::int64_t> auto_resolution(const std::vector<std::int64_t>& max_freq)
{
    std::vector<std::int64_t> n;
    for (auto k : max_freq) {
        std::int64_t v = 16;
        while (v < 8 * k) v *= 2;
        n.push_back(v);
    }
    return n;
}

namespace detail {

/// Resolution per direction after applying the automatic default and the anti-alias guard.
inline std::vector<std::int64_t> checked_resolution(const QuadratureSpec& quad, const TrigPoly& approx)
{
    const auto kmax = approx.max_abs_frequency();
    std::vector<std::int64_t> n = quad.resolution;
    if (n.empty() || (n.size() == 1 && n[0] == 0)) return auto_resolution(kmax);
    if (n.size() == 1) n.assign(kmax.size(), n[0]);
    require(n.size() == kmax.size(), "QuadratureSpec: resolution has wrong dimension");
    for (std::size_t i = 0; i < n.size(); ++i)
        require(n[i] >= 4 * std::max<std::int64_t>(kmax[i], 1),
                "QuadratureSpec: resolution must be at least 4x the finest frequency in every direction");
    return n;
}

/// Values of p at x_t = -pi + 2pi(t + shift)/n (row-major) by inverse FFT.
inline std::vector<complex> poly_on_grid(const TrigPoly& p, const std::vector<std::int64_t>& n, double shift)
{
    const std::size_t d = n.size();
    std::size_t total = 1;
    for (auto v : n) total *= static_cast<std::size_t>(v);
    std::vector<complex> a(total, 0.0);
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t i = d; i-- > 1;) stride[i - 1] = stride[i] * static_cast<std::size_t>(n[i]);
    for (const auto& [k, c] : p) {
        std::size_t flat = 0;
        double phase = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            flat += static_cast<std::size_t>(((k[i] % n[i]) + n[i]) % n[i]) * stride[i];
            phase += static_cast<double>(k[i]) * (-std::numbers::pi + two_pi * shift / static_cast<double>(n[i]));
        }
        a[flat] += c * std::polar(1.0, phase);
    }
    std::vector<std::size_t> dims(n.begin(), n.end());
    fft_nd(a, dims, FftDirection::inverse);
    return a;
}

/// Values of f on the same grid.
inline std::vector<complex> function_on_grid(const TestFunction& f, const std::vector<std::int64_t>& n, double shift)
{
    const std::size_t d = n.size();
    auto node = [&](std::size_t i, std::int64_t t) {
        return -std::numbers::pi + two_pi * (static_cast<double>(t) + shift) / static_cast<double>(n[i]);
    };
    if (!f.product_form()) {
        const auto kmax = f.poly().max_abs_frequency();
        bool fits = true;
        for (std::size_t i = 0; i < d; ++i) fits = fits && 2 * kmax[i] < n[i];
        if (fits) return poly_on_grid(f.poly(), n, shift);
        std::size_t total = 1;
        for (auto v : n) total *= static_cast<std::size_t>(v);
        std::vector<complex> out(total);
        std::vector<std::int64_t> t(d, 0);
        std::vector<double> x(d);
        for (std::size_t flat = 0; flat < total; ++flat) {
            for (std::size_t i = 0; i < d; ++i) x[i] = node(i, t[i]);
            out[flat] = f(x);
            for (std::size_t i = d; i-- > 0;) {
                if (++t[i] < n[i]) break;
                t[i] = 0;
            }
        }
        return out;
    }
    std::vector<complex> out{f.scale()};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<complex> axis(static_cast<std::size_t>(n[i]));
        for (std::int64_t t = 0; t < n[i]; ++t) axis[static_cast<std::size_t>(t)] = f.factor().value(node(i, t)).value;
        std::vector<complex> next;
        next.reserve(out.size() * axis.size());
        for (const auto& a : out)
            for (const auto& b : axis) next.push_back(a * b);
        out = std::move(next);
    }
    return out;
}

inline double power_mean(const std::vector<complex>& e, double q)
{
    if (std::isinf(q)) {
        double m = 0.0;
        for (const auto& v : e) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : e) s += std::pow(std::abs(v), q);
    return std::pow(s / static_cast<double>(e.size()), 1.0 / q);
}

} // namespace detail

/// ||f - approx||_q with respect to the normalized measure on [-pi, pi)^d.
inline double lq_error(const TestFunction& f, const TrigPoly& approx, double q, const QuadratureSpec& quad)
{
    require(q > 0.0, "lq_error: q must be positive");
    require(approx.dim() == f.dim(), "lq_error: dimension mismatch");
    switch (quad.mode) {
    case QuadratureMode::tensor_grid:
    case QuadratureMode::dense_max: {
        const auto n = detail::checked_resolution(quad, approx);
        if (quad.mode == QuadratureMode::dense_max) require(std::isinf(q), "lq_error: dense_max is for q = inf");
        // Midpoint-shifted grid; dense_max adds the node-aligned grid as well.
        std::vector<double> shifts{0.5};
        if (quad.mode == QuadratureMode::dense_max) shifts.push_back(0.0);
        double result = 0.0;
        for (double shift : shifts) {
            auto a = detail::poly_on_grid(approx, n, shift);
            const auto b = detail::function_on_grid(f, n, shift);
            for (std::size_t t = 0; t < a.size(); ++t) a[t] = b[t] - a[t];
            result = std::max(result, detail::power_mean(a, q));
        }
        return result;
    }
    case QuadratureMode::monte_carlo: {
        require(!quad.resolution.empty() && quad.resolution[0] > 0, "lq_error: monte_carlo needs a sample count");
        std::mt19937_64 rng(quad.seed);
        std::uniform_real_distribution<double> ux(-std::numbers::pi, std::numbers::pi);
        std::vector<complex> e(static_cast<std::size_t>(quad.resolution[0]));
        std::vector<double> x(static_cast<std::size_t>(f.dim()));
        for (auto& v : e) {
            for (auto& xi : x) xi = ux(rng);
            v = f(x) - approx.evaluate(x);
        }
        return detail::power_mean(e, q);
    }
    }
    return 0.0;
}

/// ||f - approx||_2 from coefficients: ||f||^2 - sum_{supp} |f^|^2 + sum_{supp} |f^ - a^|^2.
/// Polynomial f is handled by subtracting coefficient maps directly.
inline double parseval_error(const TestFunction& f, const TrigPoly& approx)
{
    require(approx.dim() == f.dim(), "parseval_error: dimension mismatch");
    if (!f.product_form()) return std::sqrt((f.poly() - approx).l2_norm_squared());
    CompensatedSum outside, inside;
    outside.add(f.norm_sq());
    for (const auto& [k, c] : approx) {
        const complex fk = f.coefficient(k);
        outside.add(-std::norm(fk));
        inside.add(std::norm(fk - c));
    }
    return std::sqrt(std::max(0.0, outside.value().real()) + inside.value().real());
}

} // namespace hypercross

#pragma once

// Sampling operators I^L_j on the dyadic grids x_u = 2 pi u / 2^j,
// u = -2^{j-1} .. 2^{j-1} - 1, and their Fourier-side description.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fft.hpp"
#include "kernels.hpp"
#include "trig_poly.hpp"

namespace hypercross {

inline std::int64_t grid_size(int j) { return std::int64_t{1} << j; }

/// Smallest u index at level j.
inline std::int64_t grid_first(int j) { return j == 0 ? 0 : -(std::int64_t{1} << (j - 1)); }

inline double grid_node(int j, std::int64_t u) { return std::ldexp(two_pi * static_cast<double>(u), -j); }

inline std::vector<double> grid_nodes(int j)
{
    require(j >= 0 && j <= 40, "grid_nodes: level out of range");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(grid_size(j)));
    for (std::int64_t u = grid_first(j), n = 0; n < grid_size(j); ++u, ++n) out.push_back(grid_node(j, u));
    return out;
}

struct UnivariateSamples {
    int level = 0;
    std::vector<complex> values; // ascending u

    UnivariateSamples() : values(1, 0.0) {}
    UnivariateSamples(int j, std::vector<complex> v) : level(j), values(std::move(v))
    {
        require(j >= 0, "UnivariateSamples: negative level");
        require(static_cast<std::int64_t>(values.size()) == grid_size(j), "UnivariateSamples: length must be 2^j");
    }

    template <class F>
    static UnivariateSamples sample(int j, F&& f)
    {
        std::vector<complex> v;
        for (double x : grid_nodes(j)) v.emplace_back(f(x));
        return {j, std::move(v)};
    }

    [[nodiscard]] complex at(std::int64_t u) const { return values.at(static_cast<std::size_t>(u - grid_first(level))); }

    /// Restriction to level j-1 (x^{j-1}_u = x^j_{2u}).
    [[nodiscard]] UnivariateSamples coarsen() const
    {
        require(level >= 1, "UnivariateSamples: cannot coarsen level 0");
        std::vector<complex> v;
        v.reserve(values.size() / 2);
        // level 0 holds only u = 0, which sits at index 1 of the level-1 array
        for (std::size_t n = (level == 1 ? 1 : 0); n < values.size(); n += 2) v.push_back(values[n]);
        return {level - 1, std::move(v)};
    }
};

/// Frequencies reproduced exactly by I^L_j: |k| <= 2^{j-L}.
struct DyadicBlock {
    int order = 0;
    int level = 0;

    [[nodiscard]] double radius() const { return std::ldexp(1.0, level - order); }
    [[nodiscard]] bool contains(std::int64_t k) const { return std::abs(static_cast<double>(k)) <= radius(); }
};

/// Largest R with every |k| <= R reproduced by I^L_j (the L = 1 window is one-sided).
inline std::int64_t reproduced_radius(int L, int j)
{
    if (L == 1) return j == 0 ? 0 : (std::int64_t{1} << (j - 1)) - 1;
    return j < L ? 0 : std::int64_t{1} << (j - L);
}

/// If x sits on a level-j node, returns its u index.
inline std::optional<std::int64_t> node_index(int j, double x)
{
    x = reduce_to_torus(x);
    const double t = std::ldexp(x / two_pi, j);
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-12) return std::nullopt;
    auto u = static_cast<std::int64_t>(r);
    if (u >= grid_first(j) + grid_size(j)) u -= grid_size(j);
    return u;
}

inline complex interpolate_1d(int L, const UnivariateSamples& s, double x)
{
    if (auto u = node_index(s.level, x)) return s.at(*u);
    const KernelSpec spec(L, s.level);
    complex acc = 0.0;
    std::int64_t u = grid_first(s.level);
    for (const auto& v : s.values) {
        if (v != complex(0.0)) acc += v * eval_periodized_kernel(spec, x - grid_node(s.level, u));
        ++u;
    }
    return acc;
}

namespace detail {

/// Per-dimension factor 2^{-j} window(l) e^{-i x_u l} folded into FFT bins.
struct AxisSpectrum {
    std::vector<std::int64_t> freq;
    std::vector<std::size_t> bin;
    std::vector<double> weight;
};

inline AxisSpectrum axis_spectrum(int L, int j)
{
    AxisSpectrum a;
    const std::int64_t n = grid_size(j);
    const double norm = std::ldexp(1.0, -j);
    for (std::int64_t l : window_support(L, j)) {
        const double sign = (n == 1 || l % 2 == 0) ? 1.0 : -1.0;
        a.freq.push_back(l);
        a.bin.push_back(static_cast<std::size_t>(((l % n) + n) % n));
        a.weight.push_back(sign * norm * frequency_window(L, j, l));
    }
    return a;
}

} // namespace detail

/// Coefficients of the tensor interpolant I^L_{levels} from full-grid samples
/// (row-major, ascending u per axis). Calls sink(k, c) for each frequency.
template <class Sink>
void for_each_tensor_coefficient(int L, std::span<const int> levels, std::vector<complex> values, Sink&& sink)
{
    const std::size_t d = levels.size();
    std::vector<std::size_t> dims(d);
    for (std::size_t i = 0; i < d; ++i) dims[i] = static_cast<std::size_t>(grid_size(levels[i]));
    fft_nd(values, dims, FftDirection::forward);

    std::vector<detail::AxisSpectrum> axes;
    axes.reserve(d);
    for (std::size_t i = 0; i < d; ++i) axes.push_back(detail::axis_spectrum(L, levels[i]));
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t i = d; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

    std::vector<std::size_t> pos(d, 0);
    Frequency k(d);
    while (true) {
        double w = 1.0;
        std::size_t flat = 0;
        for (std::size_t i = 0; i < d; ++i) {
            w *= axes[i].weight[pos[i]];
            flat += axes[i].bin[pos[i]] * stride[i];
            k[i] = axes[i].freq[pos[i]];
        }
        if (w != 0.0) sink(static_cast<const Frequency&>(k), w * values[flat]);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (++pos[i] < axes[i].freq.size()) break;
            pos[i] = 0;
            if (i == 0) return;
        }
        if (d == 0) return;
    }
}

inline TrigPoly interpolant_coefficients(int L, const UnivariateSamples& s)
{
    TrigPoly out(1);
    const int levels[1] = {s.level};
    for_each_tensor_coefficient(L, levels, s.values, [&](const Frequency& k, complex c) { out.add(k, c); });
    return out.prune();
}

/// I^L_j[f](x) - I^L_{j-1}[f](x); coarse must be the restriction of fine.
inline complex block_difference(int L, const UnivariateSamples& fine, const UnivariateSamples& coarse, double x)
{
    require(fine.level == coarse.level + 1, "block_difference: levels must differ by one");
    const UnivariateSamples r = fine.coarsen();
    require(r.values == coarse.values, "block_difference: coarse samples are not the restriction of fine samples");
    return interpolate_1d(L, fine, x) - interpolate_1d(L, coarse, x);
}

/// Base case j = 0: I^L_0[f](x).
inline complex block_difference(int L, const UnivariateSamples& fine, double x)
{
    require(fine.level == 0, "block_difference: coarse samples required for j > 0");
    return interpolate_1d(L, fine, x);
}

} // namespace hypercross

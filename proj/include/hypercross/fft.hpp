#pragma once

// Tensor-product discrete Fourier transforms on row-major arrays.
// Backed by Eigen's FFT module (kissfft backend).

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace hypercross {

enum class FftDirection { forward, inverse };

/// In-place unnormalized multidimensional DFT over a row-major array.
/// forward uses e^{-i 2pi n k / N}, inverse uses e^{+i 2pi n k / N}; neither scales.
inline void fft_nd(std::vector<std::complex<double>>& data, std::span<const std::size_t> dims,
                   FftDirection dir)
{
    std::size_t total = 1;
    for (auto n : dims) total *= n;
    if (total != data.size()) throw std::invalid_argument("fft_nd: dims do not match data size");

    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);

    std::vector<std::complex<double>> line, out;
    std::size_t stride = total;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) {
        const std::size_t n = dims[axis];
        stride /= n;
        if (n == 1) continue;
        line.resize(n);
        out.resize(n);
        const std::size_t block = n * stride;
        for (std::size_t outer = 0; outer < total; outer += block) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const std::size_t base = outer + inner;
                for (std::size_t t = 0; t < n; ++t) line[t] = data[base + t * stride];
                if (dir == FftDirection::forward)
                    fft.fwd(out.data(), line.data(), static_cast<Eigen::Index>(n));
                else
                    fft.inv(out.data(), line.data(), static_cast<Eigen::Index>(n));
                for (std::size_t t = 0; t < n; ++t) data[base + t * stride] = out[t];
            }
        }
    }
}

inline void fft_1d(std::vector<std::complex<double>>& data, FftDirection dir)
{
    const std::size_t dims[1] = {data.size()};
    fft_nd(data, dims, dir);
}

} // namespace hypercross

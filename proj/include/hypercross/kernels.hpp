#pragma once

// Univariate fundamental interpolants on dyadic equispaced grids.
//
// K^L(x) = prod_{l=1..L} sinc(2^{-l} x) is band limited to |xi| < 1 - 2^{-L}.
// Its 2pi-periodization at dyadic dilation 2^j is the level-j interpolation
// kernel. For L = 1 the periodization diverges and the (shifted) Dirichlet
// kernel 2^{-j} sum_{k=-2^{j-1}}^{2^{j-1}-1} e^{ikx} is used instead.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypercross {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Largest kernel order with an exactly representable cot-derivative table.
inline constexpr int kMaxKernelOrder = 16;
/// Largest order for which the Fourier window is tabulated.
inline constexpr int kMaxWindowOrder = 14;

class contract_violation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const char* what)
{
    if (!ok) throw contract_violation(what);
}

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw contract_violation(what);
}

struct KernelSpec {
    int order = 2; // L
    int level = 0; // j

    KernelSpec() = default;
    KernelSpec(int L, int j) : order(L), level(j)
    {
        require(L >= 1 && L <= kMaxKernelOrder, "KernelSpec: order must lie in [1, 16]");
        require(j >= 0 && j <= 60, "KernelSpec: level must lie in [0, 60]");
    }

    [[nodiscard]] bool is_dirichlet() const { return order == 1; }
};

/// Reduce x to the fundamental domain [-pi, pi).
inline double reduce_to_torus(double x)
{
    if (x >= -std::numbers::pi && x < std::numbers::pi) return x;
    double y = x - two_pi * std::floor((x + std::numbers::pi) / two_pi);
    if (y >= std::numbers::pi) y -= two_pi;
    if (y < -std::numbers::pi) y += two_pi;
    return y;
}

inline double sinc(double x)
{
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

inline double eval_sinc_product(int L, double x)
{
    double prod = 1.0;
    double scale = 0.5;
    for (int l = 1; l <= L; ++l, scale *= 0.5) prod *= sinc(scale * x);
    return prod;
}

// ---------------------------------------------------------------------------
// Exact derivative table of (1/2) cot(x/2) as polynomials in c = cot(x/2).

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d)
    {
        require(d != 0, "Rational: zero denominator");
        normalize();
    }

    void normalize()
    {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        const std::int64_t g = std::gcd(a.den, b.den);
        std::int64_t l1 = 0, l2 = 0, n = 0, d = 0;
        if (__builtin_mul_overflow(a.num, b.den / g, &l1) || __builtin_mul_overflow(b.num, a.den / g, &l2) ||
            __builtin_add_overflow(l1, l2, &n) || __builtin_mul_overflow(a.den / g, b.den, &d))
            throw std::overflow_error("Rational: overflow in addition");
        return {n, d};
    }

    friend Rational operator*(const Rational& a, const Rational& b)
    {
        Rational x(a.num, b.den);
        Rational y(b.num, a.den);
        std::int64_t n = 0, d = 0;
        if (__builtin_mul_overflow(x.num, y.num, &n) || __builtin_mul_overflow(x.den, y.den, &d))
            throw std::overflow_error("Rational: overflow in multiplication");
        return {n, d};
    }
};

/// Row n holds the coefficients (ascending powers of c = cot(x/2)) of the
/// n-th derivative of (1/2) cot(x/2). Uses d/dx c = -(1 + c^2)/2.
class CotDerivTable {
public:
    static const CotDerivTable& instance()
    {
        static const CotDerivTable table(kMaxKernelOrder);
        return table;
    }

    [[nodiscard]] int size() const { return static_cast<int>(rows_.size()); }

    [[nodiscard]] std::span<const Rational> coefficients(int n) const
    {
        require(n >= 0 && n < size(), "CotDerivTable: order out of range");
        return rows_[static_cast<std::size_t>(n)];
    }

    /// Value of the n-th derivative of (1/2)cot(x/2) given c = cot(x/2).
    [[nodiscard]] double evaluate(int n, double c) const
    {
        const auto& row = values_[static_cast<std::size_t>(n)];
        double acc = 0.0;
        for (auto it = row.rbegin(); it != row.rend(); ++it) acc = acc * c + *it;
        return acc;
    }

    /// Applies one derivative to a polynomial in c.
    static std::vector<Rational> differentiate(std::span<const Rational> p)
    {
        // d/dx sum a_k c^k = sum k a_k c^{k-1} * (-(1 + c^2)/2)
        std::vector<Rational> out(p.size() + 1);
        const Rational minus_half(-1, 2);
        for (std::size_t k = 1; k < p.size(); ++k) {
            const Rational d = p[k] * Rational(static_cast<std::int64_t>(k)) * minus_half;
            out[k - 1] = out[k - 1] + d;
            out[k + 1] = out[k + 1] + d;
        }
        while (out.size() > 1 && out.back().num == 0) out.pop_back();
        return out;
    }

private:
    explicit CotDerivTable(int orders)
    {
        rows_.push_back({Rational(0), Rational(1, 2)});
        for (int n = 1; n < orders; ++n) rows_.push_back(differentiate(rows_.back()));
        for (const auto& row : rows_) {
            std::vector<double> v;
            for (const auto& r : row) v.push_back(r.value());
            values_.push_back(std::move(v));
        }
    }

    std::vector<std::vector<Rational>> rows_;
    std::vector<std::vector<double>> values_;
};

/// sum_{k in Z} (x + 2 pi k)^{-L} for 0 < |x| <= pi via the cot-derivative identity.
inline double periodic_power_sum(int L, double x)
{
    const auto& table = CotDerivTable::instance();
    const double c = 1.0 / std::tan(0.5 * x);
    double factorial = 1.0;
    for (int i = 2; i < L; ++i) factorial *= i;
    const double sign = ((L - 1) % 2 == 0) ? 1.0 : -1.0;
    return table.evaluate(L - 1, c) / (sign * factorial);
}

/// sum_{k != 0} (x + 2 pi k)^{-L}, Taylor expanded to degree 4 around x = 0.
inline double periodic_power_sum_regular_part(int L, double x)
{
    double acc = 0.0;
    double xn = 1.0;
    double binom = 1.0; // C(L+n-1, n)
    for (int n = 0; n <= 4; ++n) {
        const int s = L + n;
        if (s % 2 == 0) {
            const double z = 2.0 * std::riemann_zeta(static_cast<double>(s));
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom * xn * z * std::pow(two_pi, -s);
        }
        xn *= x;
        binom = binom * (L + n) / (n + 1);
    }
    return acc;
}

/// Level-j interpolation kernel of order L, evaluated at x (any real; reduced mod 2pi).
inline complex eval_periodized_kernel(const KernelSpec& spec, double x)
{
    const int L = spec.order;
    const int j = spec.level;
    x = reduce_to_torus(x);

    if (L == 1) {
        if (j == 0) return {1.0, 0.0};
        // 2^{-j} sum_{k=-2^{j-1}}^{2^{j-1}-1} e^{ikx} = e^{-ix/2} sin(2^{j-1}x) / (2^j sin(x/2))
        const double half_n = std::ldexp(1.0, j - 1);
        const double amp = sinc(half_n * x) / sinc(0.5 * x);
        return std::polar(amp, -0.5 * x);
    }

    // For j < L the sine factors are only 2^{L-j}-periodic in the shift index k,
    // so the lattice is split into M = 2^{L-j} residue classes.
    const int split = std::max(0, L - j);
    const double M = std::ldexp(1.0, split);
    const double scale = std::ldexp(1.0, L * (L + 1) / 2 - j * L - split * L);
    double acc = 0.0;
    for (std::int64_t k0 = 0; k0 < (std::int64_t{1} << split); ++k0) {
        const double t = x + two_pi * static_cast<double>(k0);
        double sines = 1.0;
        for (int l = 1; l <= L; ++l) sines *= std::sin(std::ldexp(t, j - l));
        const double z = t / M;
        if (k0 == 0 && std::abs(x) < std::ldexp(1e-6, -j)) {
            // x^{-L} part gives the sinc product; the rest is regular at 0.
            acc += eval_sinc_product(L, std::ldexp(x, j)) + sines * scale * periodic_power_sum_regular_part(L, z);
        } else {
            acc += sines * scale * periodic_power_sum(L, z);
        }
    }
    return {acc, 0.0};
}

inline complex eval_periodized_kernel(int L, int j, double x)
{
    return eval_periodized_kernel(KernelSpec(L, j), x);
}

// ---------------------------------------------------------------------------
// Fourier window FK^L / sqrt(2pi): the density of the sum of independent
// uniforms on [-2^{-l}, 2^{-l}], l = 1..L, scaled to height 1 at the origin.

class PiecewisePolynomial {
public:
    PiecewisePolynomial() = default;
    PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> polys)
        : breaks_(std::move(breaks)), polys_(std::move(polys))
    {
        require(breaks_.size() == polys_.size() + 1, "PiecewisePolynomial: breaks/pieces mismatch");
    }

    [[nodiscard]] const std::vector<double>& breakpoints() const { return breaks_; }
    [[nodiscard]] const std::vector<std::vector<double>>& pieces() const { return polys_; }

    /// Polynomials are stored in local coordinates t = xi - breakpoints()[i].
    [[nodiscard]] double operator()(double xi) const
    {
        if (polys_.empty() || xi < breaks_.front() || xi > breaks_.back()) return 0.0;
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), xi);
        std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
        i = (i == 0) ? 0 : i - 1;
        if (i >= polys_.size()) i = polys_.size() - 1;
        return horner(polys_[i], xi - breaks_[i]);
    }

    [[nodiscard]] double integral() const
    {
        double total = 0.0;
        for (std::size_t i = 0; i < polys_.size(); ++i)
            total += horner(antiderivative(polys_[i]), breaks_[i + 1] - breaks_[i]);
        return total;
    }

    /// (g * c chi_{[-a, a]})(xi) = c (G(xi + a) - G(xi - a)).
    [[nodiscard]] PiecewisePolynomial convolve_box(double half_width, double height) const
    {
        const std::size_t n = polys_.size();
        std::vector<std::vector<double>> anti(n);
        std::vector<double> offset(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            anti[i] = antiderivative(polys_[i]);
            anti[i][0] = offset[i];
            offset[i + 1] = horner(anti[i], breaks_[i + 1] - breaks_[i]);
        }

        std::vector<double> nb;
        nb.reserve(2 * breaks_.size());
        for (double b : breaks_) {
            nb.push_back(b - half_width);
            nb.push_back(b + half_width);
        }
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());

        // G(point + shift) as a polynomial in s = xi - origin.
        auto antiderivative_at = [&](double point, double origin) -> std::vector<double> {
            if (point < breaks_.front()) return {0.0};
            if (point >= breaks_.back()) return {offset[n]};
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), point);
            const std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
            return taylor_shift(anti[i], origin - breaks_[i]);
        };

        std::vector<std::vector<double>> np;
        np.reserve(nb.size() - 1);
        for (std::size_t k = 0; k + 1 < nb.size(); ++k) {
            const double mid = 0.5 * (nb[k] + nb[k + 1]);
            auto right = antiderivative_at(mid + half_width, nb[k] + half_width);
            auto left = antiderivative_at(mid - half_width, nb[k] - half_width);
            std::vector<double> piece(std::max(right.size(), left.size()), 0.0);
            for (std::size_t t = 0; t < right.size(); ++t) piece[t] += height * right[t];
            for (std::size_t t = 0; t < left.size(); ++t) piece[t] -= height * left[t];
            np.push_back(std::move(piece));
        }
        return {std::move(nb), std::move(np)};
    }

    static double horner(const std::vector<double>& p, double t)
    {
        double acc = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    static std::vector<double> antiderivative(const std::vector<double>& p)
    {
        std::vector<double> out(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k] / static_cast<double>(k + 1);
        return out;
    }

    /// q(t) = p(t + s)
    static std::vector<double> taylor_shift(std::vector<double> p, double s)
    {
        const std::size_t n = p.size();
        if (n < 2 || s == 0.0) return p;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t k = n - 2 + 1; k-- > i;) p[k] += s * p[k + 1];
        return p;
    }

private:
    std::vector<double> breaks_;
    std::vector<std::vector<double>> polys_;
};

class FourierWindow {
public:
    explicit FourierWindow(int L) : order_(L)
    {
        require(L >= 2 && L <= kMaxWindowOrder, "FourierWindow: order must lie in [2, 14]");
        PiecewisePolynomial g({-0.5, 0.5}, {{1.0}});
        for (int l = 2; l <= L; ++l) g = g.convolve_box(std::ldexp(1.0, -l), std::ldexp(1.0, l - 1));
        density_ = std::move(g);
    }

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] const PiecewisePolynomial& density() const { return density_; }

    /// Right end of the plateau where the window equals 1.
    [[nodiscard]] double plateau() const { return std::ldexp(1.0, -order_); }
    /// The window vanishes for |xi| >= support().
    [[nodiscard]] double support() const { return 1.0 - std::ldexp(1.0, -order_); }

    [[nodiscard]] double operator()(double xi) const
    {
        const double a = std::abs(xi);
        if (a <= plateau()) return 1.0;
        if (a >= support()) return 0.0;
        return density_(a);
    }

private:
    int order_;
    PiecewisePolynomial density_;
};

inline const FourierWindow& fourier_window(int L)
{
    require(L >= 2 && L <= kMaxWindowOrder, "fourier_window: order must lie in [2, 14]");
    static std::array<std::once_flag, kMaxWindowOrder + 1> flags;
    static std::array<std::unique_ptr<FourierWindow>, kMaxWindowOrder + 1> windows;
    const auto idx = static_cast<std::size_t>(L);
    std::call_once(flags[idx], [&] { windows[idx] = std::make_unique<FourierWindow>(L); });
    return *windows[idx];
}

/// FK^L(xi) / sqrt(2 pi)
inline double eval_fourier_window(int L, double xi)
{
    return fourier_window(L)(xi);
}

/// Indicator of l in [-2^{j-1}, 2^{j-1} - 1]; {0} for j = 0.
inline int dirichlet_window(int j, std::int64_t l)
{
    require(j >= 0 && j <= 62, "dirichlet_window: level out of range");
    if (j == 0) return l == 0 ? 1 : 0;
    const std::int64_t half = std::int64_t{1} << (j - 1);
    return (l >= -half && l <= half - 1) ? 1 : 0;
}

/// Multiplier applied to the level-j DFT at frequency l (window of I^L_j).
inline double frequency_window(int L, int j, std::int64_t l)
{
    if (L == 1) return dirichlet_window(j, l);
    return eval_fourier_window(L, std::ldexp(static_cast<double>(l), -j));
}

/// Frequencies l with nonzero window at level j, ascending.
inline std::vector<std::int64_t> window_support(int L, int j)
{
    std::vector<std::int64_t> out;
    if (L == 1) {
        if (j == 0) return {0};
        const std::int64_t half = std::int64_t{1} << (j - 1);
        for (std::int64_t l = -half; l < half; ++l) out.push_back(l);
        return out;
    }
    const std::int64_t n = std::int64_t{1} << j;
    for (std::int64_t l = -n; l <= n; ++l)
        if (frequency_window(L, j, l) != 0.0) out.push_back(l);
    return out;
}

} // namespace hypercross

#include <gtest/gtest.h>

#include <random>

#include "hypercross/kernels.hpp"
#include "oracles.hpp"

using namespace hypercross;

TEST(SincProduct, Values)
{
    EXPECT_EQ(eval_sinc_product(3, 0.0), 1.0);
    EXPECT_NEAR(eval_sinc_product(1, std::numbers::pi), 2.0 / std::numbers::pi, 1e-15);
    EXPECT_NEAR(eval_sinc_product(2, 4.0 * std::numbers::pi), 0.0, 1e-15);
}

TEST(CotDerivTable, LowOrders)
{
    const auto& t = CotDerivTable::instance();
    // (1/2)cot -> -(1 + c^2)/4 -> (c + c^3)/4
    auto r1 = t.coefficients(1);
    ASSERT_EQ(r1.size(), 3u);
    EXPECT_EQ(r1[0], Rational(-1, 4));
    EXPECT_EQ(r1[1], Rational(0));
    EXPECT_EQ(r1[2], Rational(-1, 4));
    auto r2 = t.coefficients(2);
    ASSERT_EQ(r2.size(), 4u);
    EXPECT_EQ(r2[1], Rational(1, 4));
    EXPECT_EQ(r2[3], Rational(1, 4));
}

TEST(CotDerivTable, RecurrenceConsistent)
{
    const auto& t = CotDerivTable::instance();
    for (int n = 0; n + 1 < t.size(); ++n) {
        auto next = CotDerivTable::differentiate(t.coefficients(n));
        auto stored = t.coefficients(n + 1);
        ASSERT_EQ(next.size(), stored.size());
        for (std::size_t k = 0; k < next.size(); ++k) EXPECT_EQ(next[k], stored[k]);
    }
}

TEST(CotDerivTable, MatchesFiniteDifferences)
{
    const auto& t = CotDerivTable::instance();
    const double x = 1.1, h = 1e-4;
    auto f = [&](int n, double y) { return t.evaluate(n, 1.0 / std::tan(0.5 * y)); };
    for (int n = 0; n < 6; ++n) {
        const double fd = (f(n, x + h) - f(n, x - h)) / (2 * h);
        EXPECT_NEAR(fd, f(n + 1, x), 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST(PeriodizedKernel, OriginIsOne)
{
    for (int L = 1; L <= 5; ++L)
        for (int j = 0; j <= 10; ++j) EXPECT_NEAR(std::abs(eval_periodized_kernel(L, j, 0.0) - 1.0), 0.0, 1e-14);
}

TEST(PeriodizedKernel, L2Level1AtHalfPi)
{
    // Series value; the level-1 sines are not 2pi-periodic, so the two-factor
    // closed form valid for j >= 2 does not apply here.
    const double series = oracle::periodization_series(2, 1, std::numbers::pi / 2);
    EXPECT_NEAR(series, 0.5, 1e-9);
    EXPECT_NEAR(eval_periodized_kernel(2, 1, std::numbers::pi / 2).real(), series, 1e-12);
}

TEST(PeriodizedKernel, L2ExplicitFormForLargeLevels)
{
    for (int j = 2; j <= 8; ++j)
        for (double x : {0.3, -1.2, 2.9}) {
            const double s = std::sin(x / 2);
            const double expected =
                2.0 * std::sin(std::ldexp(x, j - 1)) * std::sin(std::ldexp(x, j - 2)) / (std::ldexp(1.0, 2 * j) * s * s);
            EXPECT_NEAR(eval_periodized_kernel(2, j, x).real(), expected, 1e-14);
        }
}

TEST(PeriodizedKernel, FundamentalInterpolant)
{
    for (int L : {1, 2, 3})
        for (int j = 0; j <= 8; ++j) {
            const std::int64_t n = std::int64_t{1} << j;
            for (std::int64_t u = (j == 0 ? 0 : -n / 2); u < (j == 0 ? 1 : n / 2); ++u) {
                const double x = 2.0 * std::numbers::pi * u / n;
                EXPECT_LT(std::abs(eval_periodized_kernel(L, j, x) - (u == 0 ? 1.0 : 0.0)), 1e-10)
                    << "L=" << L << " j=" << j << " u=" << u;
            }
        }
}

TEST(PeriodizedKernel, AtPiFollowsSeries)
{
    // x = pi is the node u = -2^{j-1}; the kernel vanishes there for j >= 1.
    for (int L : {2, 3})
        for (int j = 1; j <= 6; ++j) {
            const double k = eval_periodized_kernel(L, j, std::numbers::pi).real();
            EXPECT_NEAR(k, 0.0, 1e-12);
            EXPECT_NEAR(k, oracle::periodization_series(L, j, std::numbers::pi), 1e-9);
            EXPECT_GT(std::abs(k - 1.0), 0.5);
        }
}

TEST(PeriodizedKernel, ClosedFormMatchesSeries)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-std::numbers::pi, std::numbers::pi);
    for (int L : {2, 3, 4})
        for (int j = 0; j <= 6; ++j)
            for (int t = 0; t < 20; ++t) {
                const double x = ux(rng);
                EXPECT_NEAR(eval_periodized_kernel(L, j, x).real(), oracle::periodization_series(L, j, x, 2000), 1e-9)
                    << "L=" << L << " j=" << j << " x=" << x;
            }
}

TEST(PeriodizedKernel, NearSingularBranchIsContinuous)
{
    for (int L : {2, 3, 4})
        for (int j : {0, 3, 7}) {
            const double edge = std::ldexp(1e-6, -j);
            const double inside = eval_periodized_kernel(L, j, edge * 0.999999).real();
            const double outside = eval_periodized_kernel(L, j, edge * 1.000001).real();
            EXPECT_NEAR(inside, outside, 1e-9);
            EXPECT_NEAR(inside, oracle::periodization_series(L, j, edge), 1e-9);
        }
}

TEST(PeriodizedKernel, DirichletMatchesDirectSum)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-std::numbers::pi, std::numbers::pi);
    for (int j = 0; j <= 9; ++j)
        for (int t = 0; t < 50; ++t) {
            const double x = ux(rng);
            EXPECT_LT(std::abs(eval_periodized_kernel(1, j, x) - oracle::dirichlet_direct(j, x)), 1e-12);
        }
}

TEST(PeriodizedKernel, EvenAndPeriodic)
{
    for (int L : {2, 3})
        for (int j : {0, 2, 5})
            for (double x : {0.1, 1.3, 3.0}) {
                const double v = eval_periodized_kernel(L, j, x).real();
                EXPECT_NEAR(v, eval_periodized_kernel(L, j, -x).real(), 1e-13);
                EXPECT_NEAR(v, eval_periodized_kernel(L, j, x + 2 * std::numbers::pi).real(), 1e-12);
            }
}

TEST(PeriodizedKernel, DecayBound)
{
    // One constant for all levels. The envelope is set by the unperiodized
    // sinc product, sup_y |K^L(y)| (1 + |y|)^L, plus the level-0 kernel, which
    // is identically 1 for L >= 2 and contributes (1 + pi)^L.
    for (int L : {2, 3}) {
        double envelope = 0.0;
        for (int t = 0; t <= 400000; ++t) {
            const double y = 200.0 * t / 400000.0;
            envelope = std::max(envelope, std::abs(oracle::sinc_product(L, y)) * std::pow(1 + y, L));
        }
        envelope = std::max(envelope, std::pow(1 + std::numbers::pi, L));
        double worst = 0.0;
        for (int j = 0; j <= 10; ++j)
            for (int t = 0; t <= 4000; ++t) {
                const double x = -std::numbers::pi + 2 * std::numbers::pi * t / 4000.0;
                worst = std::max(worst, std::abs(eval_periodized_kernel(L, j, x)) * std::pow(1 + std::ldexp(std::abs(x), j), L));
            }
        EXPECT_LE(worst, 1.05 * envelope) << "L=" << L;
        if (L == 2) EXPECT_LE(worst, 50.0);
    }
    EXPECT_NEAR(eval_periodized_kernel(3, 0, 2.0).real(), 1.0, 1e-14);
}

TEST(FourierWindow, Examples)
{
    EXPECT_EQ(eval_fourier_window(2, 0.2), 1.0);
    EXPECT_EQ(eval_fourier_window(2, 0.8), 0.0);
    EXPECT_NEAR(eval_fourier_window(2, 0.5), 0.5, 1e-15);
    EXPECT_NEAR(eval_fourier_window(2, 0.5), oracle::window_quadrature(2, 0.5), 1e-8);
}

TEST(FourierWindow, PlateauSupportAndSymmetry)
{
    for (int L = 2; L <= 8; ++L) {
        const auto& w = fourier_window(L);
        EXPECT_EQ(w(std::ldexp(1.0, -L)), 1.0);
        EXPECT_EQ(w(1.0 - std::ldexp(1.0, -L)), 0.0);
        EXPECT_NEAR(w.density().integral(), 1.0, 1e-13);
        for (double xi : {0.3, 0.41, 0.6, 0.77})
            if (xi < w.support()) EXPECT_NEAR(w(xi), w(-xi), 1e-15);
        // density is the raw piecewise polynomial and must agree with the plateau
        EXPECT_NEAR(w.density()(0.0), 1.0, 1e-13);
        EXPECT_NEAR(w.density()(0.5 * std::ldexp(1.0, -L)), 1.0, 1e-13);
    }
}

TEST(FourierWindow, BreakpointsAreDyadic)
{
    for (int L = 2; L <= 8; ++L)
        for (double b : fourier_window(L).density().breakpoints()) {
            const double scaled = std::ldexp(b, L);
            EXPECT_EQ(scaled, std::round(scaled));
        }
}

TEST(FourierWindow, Smoothness)
{
    // C^{L-2}: the (L-2)-th divided difference is continuous at every breakpoint.
    for (int L = 2; L <= 6; ++L) {
        const auto& w = fourier_window(L).density();
        const double h = 1e-4;
        for (double b : w.breakpoints()) {
            EXPECT_NEAR(w(b - 1e-9), w(b + 1e-9), 1e-7);
            if (L >= 3) {
                auto d1 = [&](double x) { return (w(x + h) - w(x - h)) / (2 * h); };
                EXPECT_NEAR(d1(b - 3 * h), d1(b + 3 * h), 1e-2 * std::ldexp(1.0, L));
            }
        }
    }
}

TEST(FourierWindow, MatchesQuadrature)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int L : {2, 3}) {
        const auto& br = fourier_window(L).density().breakpoints();
        int tested = 0;
        while (tested < 50) {
            const double xi = u(rng);
            bool near = false;
            for (double b : br)
                for (double s : {1.0, -1.0})
                    if (std::abs(std::abs(xi) - s * b) < 0.01) near = true;
            if (near || std::abs(xi) < 0.01) continue;
            EXPECT_NEAR(eval_fourier_window(L, xi), oracle::window_quadrature(L, xi), 1e-8) << "L=" << L << " xi=" << xi;
            ++tested;
        }
    }
}

TEST(FourierWindow, BoxConvolutionOracleL3)
{
    // (chi_{1/2} * 2 chi_{1/4} * 4 chi_{1/8})(xi) by midpoint integration over the two inner boxes.
    auto trap = [](double t) { return std::clamp(2.0 * (0.75 - std::abs(t)), 0.0, 1.0); };
    for (double xi : {0.0, 0.2, 0.35, 0.5, 0.7, 0.86}) {
        const int n = 20000;
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y = -0.125 + 0.25 * (i + 0.5) / n;
            s += 4.0 * trap(xi - y) * 0.25 / n;
        }
        EXPECT_NEAR(eval_fourier_window(3, xi), s, 1e-8);
    }
}

TEST(DirichletWindow, Examples)
{
    EXPECT_EQ(dirichlet_window(3, -4), 1);
    EXPECT_EQ(dirichlet_window(3, 4), 0);
    EXPECT_EQ(dirichlet_window(3, 3), 1);
    EXPECT_EQ(dirichlet_window(0, 0), 1);
    EXPECT_EQ(dirichlet_window(0, 1), 0);
}

TEST(KernelSpec, Validation)
{
    EXPECT_THROW(KernelSpec(0, 1), std::invalid_argument);
    EXPECT_THROW(KernelSpec(2, -1), std::invalid_argument);
    EXPECT_TRUE(KernelSpec(1, 3).is_dirichlet());
    EXPECT_THROW(eval_fourier_window(1, 0.0), std::invalid_argument);
}

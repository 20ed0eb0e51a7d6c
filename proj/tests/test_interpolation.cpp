#include <gtest/gtest.h>

#include <random>

#include "hypercross/interpolation.hpp"
#include "oracles.hpp"

using namespace hypercross;

namespace {

using Spectrum = std::map<std::int64_t, complex>;

complex eval_spectrum(const Spectrum& s, double x)
{
    complex v = 0.0;
    for (const auto& [k, c] : s) v += c * std::polar(1.0, static_cast<double>(k) * x);
    return v;
}

Spectrum random_spectrum(std::mt19937_64& rng, std::int64_t kmax, int terms)
{
    std::uniform_int_distribution<std::int64_t> uk(-kmax, kmax);
    std::normal_distribution<double> g;
    Spectrum s;
    for (int t = 0; t < terms; ++t) s[uk(rng)] += complex(g(rng), g(rng));
    return s;
}

UnivariateSamples sample(const Spectrum& s, int j)
{
    return UnivariateSamples::sample(j, [&](double x) { return eval_spectrum(s, x); });
}

std::int64_t exact_radius(int L, int j)
{
    return L == 1 ? (j == 0 ? 0 : (std::int64_t{1} << (j - 1)) - 1)
                  : static_cast<std::int64_t>(std::floor(std::ldexp(1.0, j - L)));
}

} // namespace

TEST(GridNodes, Examples)
{
    EXPECT_EQ(grid_nodes(0), std::vector<double>{0.0});
    EXPECT_EQ(grid_nodes(1), (std::vector<double>{-std::numbers::pi, 0.0}));
    const auto g3 = grid_nodes(3);
    ASSERT_EQ(g3.size(), 8u);
    EXPECT_EQ(g3.front(), -std::numbers::pi);
    for (std::size_t i = 1; i < g3.size(); ++i) EXPECT_NEAR(g3[i] - g3[i - 1], std::numbers::pi / 4, 1e-15);
}

TEST(Interpolate1d, ConstantReproduced)
{
    for (int L : {1, 2, 3})
        for (int j : {0, 1, 4})
            for (double x : {-2.0, 0.1, 1.7}) {
                const auto s = UnivariateSamples::sample(j, [](double) { return complex(1.0); });
                EXPECT_NEAR(std::abs(interpolate_1d(L, s, x) - 1.0), 0.0, 1e-12);
            }
}

TEST(Interpolate1d, ExponentialReproduced)
{
    const auto s = UnivariateSamples::sample(4, [](double x) { return std::polar(1.0, x); });
    EXPECT_LT(std::abs(interpolate_1d(2, s, 0.3) - std::polar(1.0, 0.3)), 1e-12);
}

TEST(Interpolate1d, ExactAtNodes)
{
    std::mt19937_64 rng(1);
    const auto spec = random_spectrum(rng, 40, 10);
    const auto s = sample(spec, 5);
    for (int L : {1, 2, 3})
        for (std::int64_t u = -16; u < 16; ++u) EXPECT_EQ(interpolate_1d(L, s, grid_node(5, u)), s.at(u));
}

TEST(Interpolate1d, ReproductionRandom)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ux(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> uj(0, 8), uL(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int L = uL(rng), j = uj(rng);
        const auto spec = random_spectrum(rng, exact_radius(L, j), 6);
        const auto s = sample(spec, j);
        for (int t = 0; t < 50; ++t) {
            const double x = ux(rng);
            ASSERT_LT(std::abs(interpolate_1d(L, s, x) - eval_spectrum(spec, x)), 1e-10) << "L=" << L << " j=" << j;
        }
    }
}

TEST(Interpolate1d, Linearity)
{
    std::mt19937_64 rng(4);
    const auto f = random_spectrum(rng, 100, 10), g = random_spectrum(rng, 100, 10);
    const complex a(1.3, -0.2), b(-0.7, 0.5);
    const auto sf = sample(f, 6), sg = sample(g, 6);
    std::vector<complex> mix(sf.values.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * sf.values[i] + b * sg.values[i];
    const UnivariateSamples sm(6, mix);
    for (int L : {1, 2, 3})
        for (double x : {0.11, -2.5, 3.0}) {
            const complex lhs = interpolate_1d(L, sm, x);
            const complex rhs = a * interpolate_1d(L, sf, x) + b * interpolate_1d(L, sg, x);
            EXPECT_LT(std::abs(lhs - rhs), 1e-12);
        }
}

TEST(InterpolantCoefficients, ReproducesMonomials)
{
    for (int L : {1, 2, 3})
        for (int j = 0; j <= 7; ++j) {
            const std::int64_t R = exact_radius(L, j);
            for (std::int64_t k = -R; k <= R; ++k) {
                const auto s = UnivariateSamples::sample(j, [&](double x) { return std::polar(1.0, k * x); });
                const auto p = interpolant_coefficients(L, s);
                EXPECT_LT(std::abs(p[{k}] - 1.0), 1e-12);
                double rest = 0.0;
                for (const auto& [f, c] : p)
                    if (f[0] != k) rest = std::max(rest, std::abs(c));
                EXPECT_LT(rest, 1e-12);
            }
        }
}

TEST(InterpolantCoefficients, AliasOfShiftedMonomial)
{
    const int j = 5, L = 2;
    const std::int64_t n = 32;
    for (std::int64_t l : {-20, -9, 0, 5, 12, 23}) {
        const auto s = UnivariateSamples::sample(j, [&](double x) { return std::polar(1.0, (l + n) * x); });
        const auto p = interpolant_coefficients(L, s);
        EXPECT_NEAR(std::abs(p[{l}] - frequency_window(L, j, l)), 0.0, 1e-12);
    }
}

TEST(InterpolantCoefficients, ZeroSamplesGiveEmpty)
{
    const UnivariateSamples s(4, std::vector<complex>(16, 0.0));
    EXPECT_TRUE(interpolant_coefficients(2, s).empty());
}

TEST(InterpolantCoefficients, AliasFormula)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> uj(0, 7), uL(1, 3), un(1, 30);
    for (int trial = 0; trial < 100; ++trial) {
        const int L = uL(rng), j = uj(rng);
        const auto spec = random_spectrum(rng, std::int64_t{1} << (j + 2), un(rng));
        const auto p = interpolant_coefficients(L, sample(spec, j));
        const auto support = window_support(L, j);
        const auto fold = oracle::alias_fold(spec, j, support, [&](std::int64_t l) { return frequency_window(L, j, l); });
        for (std::int64_t l : support) {
            const auto it = fold.find(l);
            const complex expect = it == fold.end() ? complex(0.0) : it->second;
            ASSERT_LT(std::abs(p[{l}] - expect), 1e-10) << "L=" << L << " j=" << j << " l=" << l;
        }
        for (const auto& [k, c] : p) EXPECT_TRUE(std::find(support.begin(), support.end(), k[0]) != support.end());
    }
}

TEST(InterpolantCoefficients, FrequencyConfinementAndConsistency)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ux(-std::numbers::pi, std::numbers::pi);
    for (int L : {1, 2, 3})
        for (int j : {0, 1, 3, 6}) {
            const auto spec = random_spectrum(rng, 200, 20);
            const auto s = sample(spec, j);
            const auto p = interpolant_coefficients(L, s);
            const double bound = std::ldexp(1.0, j);
            for (const auto& [k, c] : p) {
                EXPECT_LE(std::abs(static_cast<double>(k[0])), bound);
                if (L >= 2) {
                    EXPECT_LT(std::abs(static_cast<double>(k[0])), bound * (1.0 - std::ldexp(1.0, -L)));
                }
            }
            for (int t = 0; t < 20; ++t) {
                const double x = ux(rng);
                const double x1[1] = {x};
                EXPECT_LT(std::abs(p.evaluate(x1) - interpolate_1d(L, s, x)), 1e-10);
            }
        }
}

TEST(BlockDifference, VanishesOnCoarseSpace)
{
    std::mt19937_64 rng(8);
    for (int L : {1, 2, 3})
        for (int j = 1; j <= 7; ++j) {
            const auto spec = random_spectrum(rng, exact_radius(L, j - 1), 5);
            const auto fine = sample(spec, j);
            const auto coarse = fine.coarsen();
            for (double x : {0.2, -1.4, 2.8}) EXPECT_LT(std::abs(block_difference(L, fine, coarse, x)), 1e-10);
        }
}

TEST(BlockDifference, BaseCaseAndNonzero)
{
    const auto c = UnivariateSamples::sample(0, [](double) { return complex(2.5); });
    EXPECT_LT(std::abs(block_difference(2, c, 0.7) - 2.5 * eval_periodized_kernel(2, 0, 0.7)), 1e-14);

    const int L = 2, j = 5;
    const std::int64_t k = 8; // 2^{j-1-L} < 8 <= 2^{j-L}
    auto f = [&](double x) { return std::polar(1.0, k * x); };
    const auto fine = UnivariateSamples::sample(j, f);
    const auto coarse = fine.coarsen();
    for (double x : {0.3, 1.9}) {
        complex direct_coarse = 0.0;
        for (std::int64_t u = -8; u < 8; ++u) direct_coarse += f(grid_node(j - 1, u)) * eval_periodized_kernel(L, j - 1, x - grid_node(j - 1, u));
        const complex expect = f(x) - direct_coarse;
        EXPECT_GT(std::abs(expect), 1e-3);
        EXPECT_LT(std::abs(block_difference(L, fine, coarse, x) - expect), 1e-12);
    }
}

TEST(BlockDifference, Contracts)
{
    const UnivariateSamples a(3, std::vector<complex>(8, 1.0));
    const UnivariateSamples b(1, std::vector<complex>(2, 1.0));
    EXPECT_THROW(block_difference(2, a, b, 0.0), std::invalid_argument);
    const UnivariateSamples c(2, std::vector<complex>{1.0, 2.0, 3.0, 4.0});
    EXPECT_THROW(block_difference(2, a, c, 0.0), std::invalid_argument);
    EXPECT_THROW(UnivariateSamples(3, std::vector<complex>(7)), std::invalid_argument);
}

TEST(DyadicBlock, Membership)
{
    const DyadicBlock b{2, 5};
    EXPECT_TRUE(b.contains(8));
    EXPECT_TRUE(b.contains(-8));
    EXPECT_FALSE(b.contains(9));
    const DyadicBlock b0{0, 5};
    for (std::int64_t k = -8; k <= 8; ++k) EXPECT_TRUE(b0.contains(k));
}

#pragma once

// Catalog of test functions with known Fourier coefficients and declared
// mixed smoothness. Product-form kinds are tensor products of one univariate
// factor; trigpoly wraps an explicit TrigPoly.

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "interpolation.hpp"
#include "params.hpp"
#include "smolyak.hpp"
#include "trig_poly.hpp"

namespace hypercross {

enum class Space { W, F, B };

inline const char* to_string(Space s)
{
    switch (s) {
    case Space::W: return "W";
    case Space::F: return "F";
    case Space::B: return "B";
    }
    return "?";
}

/// f lies in S^r_{p,theta}X (r isotropic across directions).
struct Membership {
    Space space = Space::B;
    double r = 0.0;
    double p = 2.0;
    double theta = inf;
};

struct CertifiedValue {
    complex value;
    double bound = 0.0; // |value - f(x)| <= bound, up to rounding
};

namespace detail {

/// sum_{n >= 0} (b + n)^{-t}, t > 1, b > 0.
inline double hurwitz_tail(double t, double b)
{
    double head = 0.0;
    while (b < 16.0) {
        head += std::pow(b, -t);
        b += 1.0;
    }
    const double bt = std::pow(b, -t);
    return head + b * bt / (t - 1.0) + 0.5 * bt + t * bt / (12.0 * b) -
           t * (t + 1.0) * (t + 2.0) * bt / (720.0 * b * b * b) +
           t * (t + 1.0) * (t + 2.0) * (t + 3.0) * (t + 4.0) * bt / (30240.0 * std::pow(b, 5));
}

/// B_n(t) from the Bernoulli numbers (n even).
inline double bernoulli_polynomial(int n, double t)
{
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        double bk;
        if (k == 1)
            bk = -0.5;
        else if (k % 2 == 1)
            continue;
        else
            bk = boost::math::bernoulli_b2n<double>(k / 2);
        acc += boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k)) * bk *
               std::pow(t, n - k);
    }
    return acc;
}

} // namespace detail

/// Univariate even factor g with g^(0) = c0 and |g^(k)|^2 = amp |k|^{-decay}
/// for k != 0 on the lattice k = start mod step (zero elsewhere).
class Factor1d {
public:
    enum class Kind { one, hat, korobov };

    static Factor1d one() { return Factor1d(Kind::one, 0.0); }
    static Factor1d hat() { return Factor1d(Kind::hat, 0.0); }
    static Factor1d korobov(double s)
    {
        require(s > 1.0, "korobov: decay exponent must exceed 1");
        return Factor1d(Kind::korobov, s);
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double decay_exponent() const { return s_; }

    [[nodiscard]] double coefficient(std::int64_t k) const
    {
        const double a = std::abs(static_cast<double>(k));
        switch (kind_) {
        case Kind::one: return k == 0 ? 1.0 : 0.0;
        case Kind::hat:
            if (k == 0) return 0.5;
            return (k % 2 != 0) ? 2.0 / (std::numbers::pi * std::numbers::pi * a * a) : 0.0;
        case Kind::korobov: return k == 0 ? 1.0 : std::pow(a, -s_);
        }
        return 0.0;
    }

    [[nodiscard]] CertifiedValue value(double x) const
    {
        const double pi = std::numbers::pi;
        x = reduce_to_torus(x);
        switch (kind_) {
        case Kind::one: return {1.0, 0.0};
        case Kind::hat: return {1.0 - std::abs(x) / pi, 0.0};
        case Kind::korobov: return korobov_value(x);
        }
        return {};
    }

    /// sum_k |g^(k)|^2
    [[nodiscard]] double norm_sq() const
    {
        switch (kind_) {
        case Kind::one: return 1.0;
        case Kind::hat: return 1.0 / 3.0;
        case Kind::korobov: return 1.0 + 2.0 * std::riemann_zeta(2.0 * s_);
        }
        return 0.0;
    }

    /// sum over |k| in [a, b) of |g^(k)|^2 (b = inf allowed), a >= 1.
    [[nodiscard]] double band_sq(double a, double b) const
    {
        if (kind_ == Kind::one) return 0.0;
        return 2.0 * amp() * (lattice_power_tail(decay(), a) - (std::isinf(b) ? 0.0 : lattice_power_tail(decay(), b)));
    }

    /// sum_{k in block j} |g^(k)|^2, block 0 = {0}, block j = {2^{j-1} <= |k| < 2^j}.
    [[nodiscard]] double block_sq(int j) const
    {
        if (j == 0) return std::norm(coefficient(0));
        return band_sq(std::ldexp(1.0, j - 1), std::ldexp(1.0, j));
    }

    /// sum_k |g^(k)|^2 (1 + k^2)^r, +inf when divergent.
    [[nodiscard]] double weighted_sq(double r) const
    {
        double acc = std::norm(coefficient(0));
        if (kind_ == Kind::one) return acc;
        const double t = decay() - 2.0 * r;
        if (t <= 1.0) return inf;
        constexpr std::int64_t K = 4096;
        for (std::int64_t k = 1; k < K; ++k) {
            const double c = coefficient(k);
            if (c != 0.0) acc += 2.0 * c * c * std::pow(1.0 + static_cast<double>(k * k), r);
        }
        // (1 + k^2)^r = k^{2r} sum_n binom(r, n) k^{-2n}
        double binom = 1.0, tail = 0.0;
        for (int n = 0; n < 8; ++n) {
            tail += binom * lattice_power_tail(t + 2.0 * n, static_cast<double>(K));
            binom *= (r - n) / (n + 1.0);
        }
        return acc + 2.0 * amp() * tail;
    }

private:
    Factor1d(Kind k, double s) : kind_(k), s_(s) {}

    [[nodiscard]] double amp() const
    {
        const double pi2 = std::numbers::pi * std::numbers::pi;
        return kind_ == Kind::hat ? 4.0 / (pi2 * pi2) : 1.0;
    }
    [[nodiscard]] double decay() const { return kind_ == Kind::hat ? 4.0 : 2.0 * s_; }
    [[nodiscard]] std::int64_t step() const { return kind_ == Kind::hat ? 2 : 1; }

    /// sum of k^{-t} over lattice k >= a
    [[nodiscard]] double lattice_power_tail(double t, double a) const
    {
        const auto st = static_cast<double>(step());
        double k0 = std::ceil(a);
        if (step() == 2 && std::fmod(k0, 2.0) == 0.0) k0 += 1.0;
        return std::pow(st, -t) * detail::hurwitz_tail(t, k0 / st);
    }

    // g(x) = 1 + 2 sum_{k>=1} cos(kx) k^{-s}
    [[nodiscard]] CertifiedValue korobov_value(double x) const
    {
        const double pi = std::numbers::pi;
        const double rs = std::round(s_);
        if (rs == s_ && static_cast<int>(rs) % 2 == 0 && rs <= 12.0) {
            const int n = static_cast<int>(rs) / 2;
            const double t = std::abs(x) / (2.0 * pi);
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            double fact = 1.0;
            for (int i = 2; i <= 2 * n; ++i) fact *= i;
            const double series = sign * std::pow(2.0 * pi, 2 * n) / (2.0 * fact) * detail::bernoulli_polynomial(2 * n, t);
            return {1.0 + 2.0 * series, 0.0};
        }
        if (x == 0.0) return {1.0 + 2.0 * std::riemann_zeta(s_), 0.0};
        // Truncated series; the Abel summation bound a_{K+1}/|sin(x/2)| is used
        // when it beats the integral bound.
        const double sx = std::abs(std::sin(0.5 * x));
        auto bound = [&](double K) {
            const double integral = std::pow(K, 1.0 - s_) / (s_ - 1.0);
            const double abel = sx > 0.0 ? std::pow(K + 1.0, -s_) / sx : inf;
            return 2.0 * std::min(integral, abel);
        };
        std::int64_t K = 1024;
        while (bound(static_cast<double>(K)) > 1e-12 && K < (std::int64_t{1} << 22)) K *= 2;
        double acc = 0.0;
        for (std::int64_t k = K; k >= 1; --k) acc += std::cos(static_cast<double>(k) * x) * std::pow(static_cast<double>(k), -s_);
        return {1.0 + 2.0 * acc, bound(static_cast<double>(K))};
    }

    Kind kind_;
    double s_;
};

enum class FunctionKind { constant, hat_tensor, korobov, trigpoly };

inline const char* to_string(FunctionKind k)
{
    switch (k) {
    case FunctionKind::constant: return "constant";
    case FunctionKind::hat_tensor: return "hat_tensor";
    case FunctionKind::korobov: return "korobov";
    case FunctionKind::trigpoly: return "trigpoly";
    }
    return "?";
}

/// Korobov functions are declared this far inside their smoothness class.
inline constexpr double kKorobovMargin = 0.05;

class TestFunction {
public:
    static TestFunction constant(int d, complex c = 1.0)
    {
        TestFunction f(FunctionKind::constant, d);
        f.scale_ = c;
        f.factor_ = std::make_shared<Factor1d>(Factor1d::one());
        return f;
    }

    /// prod_i (1 - |x_i|/pi); kinks at 0 and pi.
    static TestFunction hat_tensor(int d)
    {
        TestFunction f(FunctionKind::hat_tensor, d);
        f.factor_ = std::make_shared<Factor1d>(Factor1d::hat());
        f.memberships_ = {{Space::B, 1.5, 2.0, inf}, {Space::W, 1.5 - 0.05, 2.0, 2.0}, {Space::B, 2.0, 1.0, inf}};
        return f;
    }

    /// prod_i (1 + 2 sum_{k>=1} cos(k x_i) k^{-s})
    static TestFunction korobov(int d, double s)
    {
        TestFunction f(FunctionKind::korobov, d);
        f.factor_ = std::make_shared<Factor1d>(Factor1d::korobov(s));
        f.memberships_ = {{Space::W, s - 0.5 - kKorobovMargin, 2.0, 2.0}, {Space::B, s - 0.5, 2.0, inf}};
        return f;
    }

    static TestFunction trigpoly(TrigPoly p)
    {
        TestFunction f(FunctionKind::trigpoly, p.dim());
        f.poly_ = std::make_shared<TrigPoly>(std::move(p));
        return f;
    }

    /// Random polynomial with frequencies in the union of the blocks reproduced
    /// by I^L_j over the index set.
    static TestFunction random_cross_trigpoly(const IndexSet& set, int L, int terms, std::uint64_t seed)
    {
        require(terms >= 1 && !set.members().empty(), "random_cross_trigpoly: needs terms and a nonempty set");
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        TrigPoly p(set.dim());
        for (int t = 0; t < terms; ++t) {
            const auto& j = set.members()[std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(rng)];
            Frequency k(j.size());
            for (std::size_t i = 0; i < j.size(); ++i) {
                const auto R = reproduced_radius(L, j[i]);
                k[i] = std::uniform_int_distribution<std::int64_t>(-R, R)(rng);
            }
            p.add(k, complex(g(rng), g(rng)));
        }
        return trigpoly(std::move(p));
    }

    [[nodiscard]] FunctionKind kind() const { return kind_; }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] bool product_form() const { return factor_ != nullptr; }
    [[nodiscard]] const Factor1d& factor() const
    {
        require(product_form(), "TestFunction: not of product form");
        return *factor_;
    }
    [[nodiscard]] complex scale() const { return scale_; }
    [[nodiscard]] const TrigPoly& poly() const
    {
        require(poly_ != nullptr, "TestFunction: not a trigonometric polynomial");
        return *poly_;
    }

    /// Trigonometric polynomials (including constants) belong to every space.
    [[nodiscard]] bool smooth() const { return kind_ == FunctionKind::constant || kind_ == FunctionKind::trigpoly; }
    [[nodiscard]] const std::vector<Membership>& memberships() const { return memberships_; }

    /// Declared membership or one implied by monotonicity in r and theta.
    [[nodiscard]] bool belongs_to(Space space, double r, double p, double theta) const
    {
        if (smooth()) return true;
        for (const auto& m : memberships_) {
            const Space ms = m.space == Space::W ? Space::F : m.space;
            const Space qs = space == Space::W ? Space::F : space;
            const double mt = m.space == Space::W ? 2.0 : m.theta;
            const double qt = space == Space::W ? 2.0 : theta;
            if (ms != qs || m.p != p) continue;
            if (r < m.r - 1e-12 || (std::abs(r - m.r) <= 1e-12 && qt >= mt)) return true;
        }
        return false;
    }

    [[nodiscard]] std::string name() const
    {
        std::string s = to_string(kind_);
        if (kind_ == FunctionKind::korobov) {
            std::ostringstream os;
            os << "(s=" << factor_->decay_exponent() << ')';
            s += os.str();
        }
        return s;
    }

    [[nodiscard]] complex coefficient(const Frequency& k) const
    {
        require(static_cast<int>(k.size()) == dim_, "TestFunction: frequency has wrong dimension");
        if (poly_) return (*poly_)[k];
        complex c = scale_;
        for (auto v : k) c *= factor_->coefficient(v);
        return c;
    }

    [[nodiscard]] CertifiedValue evaluate(std::span<const double> x) const
    {
        require(static_cast<int>(x.size()) == dim_, "TestFunction: point has wrong dimension");
        if (poly_) return {poly_->evaluate(x), 0.0};
        std::vector<CertifiedValue> v;
        for (double xi : x) v.push_back(factor_->value(xi));
        return combine(v);
    }

    [[nodiscard]] complex operator()(std::span<const double> x) const { return evaluate(x).value; }

    /// a * f, keeping the declared memberships.
    [[nodiscard]] TestFunction scaled(complex a) const
    {
        TestFunction g = *this;
        if (poly_)
            g.poly_ = std::make_shared<const TrigPoly>(a * *poly_);
        else
            g.scale_ *= a;
        return g;
    }

    /// ||f||_2^2 with normalized measure.
    [[nodiscard]] double norm_sq() const
    {
        if (poly_) return poly_->l2_norm_squared();
        return std::norm(scale_) * std::pow(factor_->norm_sq(), dim_);
    }

    /// Sample values at every node of a grid, with per-axis caching for product forms.
    [[nodiscard]] std::vector<complex> grid_values(const SparseGrid& grid) const
    {
        std::vector<complex> out;
        out.reserve(grid.size());
        if (poly_) {
            for (const auto& n : grid.nodes()) out.push_back(poly_->evaluate(n.x));
            return out;
        }
        std::map<double, complex> cache;
        for (const auto& n : grid.nodes()) {
            complex v = scale_;
            for (double xi : n.x) {
                auto it = cache.find(xi);
                if (it == cache.end()) it = cache.emplace(xi, factor_->value(xi).value).first;
                v *= it->second;
            }
            out.push_back(v);
        }
        return out;
    }

    [[nodiscard]] SampleStore samples(const SparseGrid& grid) const { return SampleStore(grid, grid_values(grid)); }

private:
    TestFunction(FunctionKind k, int d) : kind_(k), dim_(d) { require(d >= 1, "TestFunction: dimension must be positive"); }

    [[nodiscard]] CertifiedValue combine(const std::vector<CertifiedValue>& v) const
    {
        // |prod a_i - prod b_i| <= prod(|b_i| + e_i) - prod |b_i|
        complex val = scale_;
        double hi = std::abs(scale_), lo = std::abs(scale_);
        for (const auto& c : v) {
            val *= c.value;
            hi *= std::abs(c.value) + c.bound;
            lo *= std::abs(c.value);
        }
        return {val, hi - lo};
    }

    FunctionKind kind_;
    int dim_;
    complex scale_ = 1.0;
    std::shared_ptr<const Factor1d> factor_;
    std::shared_ptr<const TrigPoly> poly_;
    std::vector<Membership> memberships_;
};

} // namespace hypercross

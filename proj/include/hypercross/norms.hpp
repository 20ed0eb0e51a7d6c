#pragma once

// Discrete Littlewood-Paley type norms built from the sampling blocks q^L_j,
// and reference norms computed from exact Fourier coefficients.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "fft.hpp"
#include "interpolation.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "smolyak.hpp"
#include "test_functions.hpp"

namespace hypercross {

struct NormSpec {
    Space space = Space::W;
    std::vector<double> r{2.0, 2.0};
    double p = 2.0;
    double theta = 2.0; // ignored for W
    int L = 2;
    int jmax = 6;
    /// Resolution for the non-Parseval cases (0 = automatic).
    std::int64_t resolution = 0;

    [[nodiscard]] double effective_theta() const { return space == Space::W ? 2.0 : theta; }
};

struct NormResult {
    double value = 0.0;
    bool in_domain = true;
    std::string note;
};

/// Parameter domain of the block characterizations; empty string when satisfied.
inline std::string norm_domain_violation(const NormSpec& s)
{
    const double th = s.effective_theta();
    const double r1 = *std::min_element(s.r.begin(), s.r.end());
    std::string why;
    auto add = [&](const std::string& w) { why += (why.empty() ? "" : "; ") + w; };
    if (s.space == Space::B) {
        if (!(s.L > inv(s.p))) add("needs L > 1/p");
        if (!(r1 > inv(s.p))) add("needs r > 1/p");
    } else {
        if (!(s.L > std::max(inv(s.p), inv(th)))) add("needs L > max(1/p, 1/theta)");
        if (s.L == 1 && std::isinf(th)) add("L = 1 needs theta < inf");
        if (!(r1 > std::max(inv(s.p), inv(th)))) add("needs r > max(1/p, 1/theta)");
        if (s.space == Space::W && !(s.p > 1.0)) add("W needs p > 1");
    }
    return why;
}

/// All levels with |l|_inf <= J.
inline IndexSet box_index_set(int d, int J)
{
    require(d >= 1 && J >= 0, "box_index_set: invalid arguments");
    std::vector<MultiIndex> members;
    MultiIndex l(static_cast<std::size_t>(d), 0);
    while (true) {
        members.push_back(l);
        int i = d - 1;
        for (; i >= 0; --i) {
            if (++l[i] <= J) break;
            l[i] = 0;
        }
        if (i < 0) break;
    }
    return IndexSet(d, std::move(members));
}

namespace detail {

/// Dense coefficient box with per-axis frequency range [-h_i, h_i].
struct SpectrumBox {
    std::vector<std::int64_t> half;
    std::vector<complex> data;

    explicit SpectrumBox(std::vector<std::int64_t> h) : half(std::move(h))
    {
        std::size_t total = 1;
        for (auto v : half) total *= static_cast<std::size_t>(2 * v + 1);
        data.assign(total, 0.0);
    }

    [[nodiscard]] std::size_t index(const Frequency& k) const
    {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < half.size(); ++i) flat = flat * static_cast<std::size_t>(2 * half[i] + 1) + static_cast<std::size_t>(k[i] + half[i]);
        return flat;
    }

    /// Adds s * other, where other's box is contained in this one.
    void accumulate(const SpectrumBox& other, double s)
    {
        const std::size_t d = half.size();
        Frequency k(d);
        for (std::size_t i = 0; i < d; ++i) k[i] = -other.half[i];
        for (const auto& v : other.data) {
            if (v != complex(0.0)) data[index(k)] += s * v;
            for (std::size_t i = d; i-- > 0;) {
                if (++k[i] <= other.half[i]) break;
                k[i] = -other.half[i];
            }
        }
    }

    template <class F>
    void for_each(F&& fn) const
    {
        const std::size_t d = half.size();
        Frequency k(d);
        for (std::size_t i = 0; i < d; ++i) k[i] = -half[i];
        for (const auto& v : data) {
            fn(static_cast<const Frequency&>(k), v);
            for (std::size_t i = d; i-- > 0;) {
                if (++k[i] <= half[i]) break;
                k[i] = -half[i];
            }
        }
    }
};

} // namespace detail

/// The blocks q^L_j[f], |j|_inf <= J, from samples on the full level-(J,...,J) grid.
/// Level spectra are computed once; each block is assembled by inclusion-exclusion.
class BlockDecomposition {
public:
    BlockDecomposition(int L, const SampleStore& store, int J) : L_(L), J_(J), d_(store.grid().dim())
    {
        require(L >= 1 && L <= kMaxWindowOrder, "BlockDecomposition: L out of range");
        const MultiIndex top(static_cast<std::size_t>(d_), J);
        require(store.covers(top), "BlockDecomposition: samples must cover the full level-J grid");
        std::size_t budget = 0;
        for (const auto& l : box_index_set(d_, J)) {
            detail::SpectrumBox box(half_widths(l));
            budget += box.data.size();
            require(budget <= 40'000'000, "BlockDecomposition: spectrum storage too large; lower jmax");
            for_each_tensor_coefficient(L, l, store.level_values(l), [&](const Frequency& k, complex c) { box.data[box.index(k)] += c; });
            levels_.emplace(l, std::move(box));
        }
    }

    [[nodiscard]] int dim() const { return d_; }
    [[nodiscard]] int jmax() const { return J_; }

    /// Dense coefficients of q^L_j.
    [[nodiscard]] detail::SpectrumBox block(const MultiIndex& j) const
    {
        detail::SpectrumBox out(half_widths(j));
        for (unsigned mask = 0; mask < (1u << d_); ++mask) {
            MultiIndex l = j;
            double sign = 1.0;
            bool skip = false;
            for (int i = 0; i < d_; ++i)
                if (mask & (1u << i)) {
                    if (--l[i] < 0) skip = true;
                    sign = -sign;
                }
            if (!skip) out.accumulate(levels_.at(l), sign);
        }
        return out;
    }

    [[nodiscard]] TrigPoly block_poly(const MultiIndex& j, double rel = 1e-14) const
    {
        TrigPoly p(d_);
        block(j).for_each([&](const Frequency& k, complex c) { p.add(k, c); });
        return p.prune(rel);
    }

    /// ||q_j||_2^2
    [[nodiscard]] double l2_sq(const MultiIndex& j) const
    {
        double s = 0.0;
        for (const auto& v : block(j).data) s += std::norm(v);
        return s;
    }

    /// q_j at the midpoint-shifted tensor grid with n points per direction.
    [[nodiscard]] std::vector<complex> on_grid(const MultiIndex& j, std::int64_t n) const
    {
        const auto b = block(j);
        std::vector<std::int64_t> res(static_cast<std::size_t>(d_), n);
        std::size_t total = 1;
        for (auto v : res) total *= static_cast<std::size_t>(v);
        std::vector<complex> a(total, 0.0);
        b.for_each([&](const Frequency& k, complex c) {
            if (c == complex(0.0)) return;
            std::size_t flat = 0;
            double phase = 0.0;
            for (int i = 0; i < d_; ++i) {
                flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(((k[i] % n) + n) % n);
                phase += static_cast<double>(k[i]) * (-std::numbers::pi + std::numbers::pi / static_cast<double>(n));
            }
            a[flat] += c * std::polar(1.0, phase);
        });
        std::vector<std::size_t> dims(static_cast<std::size_t>(d_), static_cast<std::size_t>(n));
        fft_nd(a, dims, FftDirection::inverse);
        return a;
    }

    /// Grid resolution satisfying the anti-alias guard for every block.
    [[nodiscard]] std::int64_t default_resolution() const { return std::max<std::int64_t>(16, std::int64_t{8} << J_); }

private:
    [[nodiscard]] std::vector<std::int64_t> half_widths(const MultiIndex& l) const
    {
        std::vector<std::int64_t> h;
        for (int v : l) h.push_back(std::int64_t{1} << v);
        return h;
    }

    int L_;
    int J_;
    int d_;
    std::map<MultiIndex, detail::SpectrumBox> levels_;
};

namespace detail {

inline double weight(const std::vector<double>& r, const MultiIndex& j)
{
    double e = 0.0;
    for (std::size_t i = 0; i < j.size(); ++i) e += r[i] * j[i];
    return std::exp2(e);
}

/// (sum a_i^theta)^{1/theta} or max for theta = inf.
inline double ell_theta(const std::vector<double>& a, double theta)
{
    if (std::isinf(theta)) return a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
    double s = 0.0;
    for (double v : a) s += std::pow(v, theta);
    return std::pow(s, 1.0 / theta);
}

inline std::vector<double> broadcast(const std::vector<double>& r, int d)
{
    if (static_cast<int>(r.size()) == d) return r;
    require(r.size() == 1, "smoothness vector has wrong dimension");
    return std::vector<double>(static_cast<std::size_t>(d), r[0]);
}

} // namespace detail

/// Discrete F or B norm from the blocks with |j|_inf <= jmax (W = F with theta = 2).
/// Out-of-domain parameters are computed anyway and flagged.
inline NormResult discrete_norm(const BlockDecomposition& blocks, const NormSpec& spec)
{
    require(spec.jmax <= blocks.jmax(), "discrete_norm: jmax exceeds the decomposition");
    require(spec.p > 0.0 && spec.effective_theta() > 0.0, "discrete_norm: p and theta must be positive");
    const int d = blocks.dim();
    const auto r = detail::broadcast(spec.r, d);
    const double p = spec.p, th = spec.effective_theta();

    NormResult res;
    res.note = norm_domain_violation(spec);
    res.in_domain = res.note.empty();
    const IndexSet levels = box_index_set(d, spec.jmax);

    const bool parseval = p == 2.0 && (spec.space == Space::B || th == 2.0);
    if (parseval) {
        std::vector<double> a;
        for (const auto& j : levels) a.push_back(detail::weight(r, j) * std::sqrt(blocks.l2_sq(j)));
        res.value = detail::ell_theta(a, th);
        return res;
    }

    const std::int64_t n = spec.resolution > 0 ? spec.resolution : blocks.default_resolution();
    require(n >= (std::int64_t{4} << spec.jmax), "discrete_norm: resolution must be at least 4x the finest block frequency");
    if (spec.space == Space::B) {
        std::vector<double> a;
        for (const auto& j : levels) a.push_back(detail::weight(r, j) * detail::power_mean(blocks.on_grid(j, n), p));
        res.value = detail::ell_theta(a, th);
        return res;
    }
    // F: pointwise ell_theta over j, then L_p.
    std::vector<double> acc;
    for (const auto& j : levels) {
        const auto v = blocks.on_grid(j, n);
        const double w = detail::weight(r, j);
        if (acc.empty()) acc.assign(v.size(), 0.0);
        for (std::size_t t = 0; t < v.size(); ++t) {
            const double a = w * std::abs(v[t]);
            acc[t] = std::isinf(th) ? std::max(acc[t], a) : acc[t] + std::pow(a, th);
        }
    }
    std::vector<complex> g(acc.size());
    for (std::size_t t = 0; t < acc.size(); ++t) g[t] = std::isinf(th) ? acc[t] : std::pow(acc[t], 1.0 / th);
    res.value = detail::power_mean(g, p);
    return res;
}

inline NormResult discrete_norm(const TestFunction& f, const NormSpec& spec)
{
    const SparseGrid grid(box_index_set(f.dim(), spec.jmax));
    const SampleStore store = f.samples(grid);
    return discrete_norm(BlockDecomposition(spec.L, store, spec.jmax), spec);
}

inline NormResult discrete_lp_norm_F(const SampleStore& store, const std::vector<double>& r, double p, double theta,
                                     int L, int jmax)
{
    return discrete_norm(BlockDecomposition(L, store, jmax), NormSpec{Space::F, r, p, theta, L, jmax});
}

inline NormResult discrete_lp_norm_B(const SampleStore& store, const std::vector<double>& r, double p, double theta,
                                     int L, int jmax)
{
    return discrete_norm(BlockDecomposition(L, store, jmax), NormSpec{Space::B, r, p, theta, L, jmax});
}

/// Relative change of the discrete norm from jmax to jmax + 1.
inline double truncation_change(const TestFunction& f, NormSpec spec)
{
    const double a = discrete_norm(f, spec).value;
    ++spec.jmax;
    const double b = discrete_norm(f, spec).value;
    if (a == 0.0 && b == 0.0) return 0.0;
    return std::abs(b - a) / std::max(std::abs(a), std::abs(b));
}

// Reference norms. The dyadic decomposition uses sharp cutoffs
// block 0 = {0}, block j = {2^{j-1} <= |k| < 2^j} instead of a smooth
// decomposition of unity; only ratios against the discrete norms are meaningful.

struct ReferenceOptions {
    /// Largest block level per direction for the quadrature-based cases.
    int jref = 7;
    /// Blocks per direction summed exactly in the separable Parseval cases.
    int jsum = 60;
};

namespace detail {

inline std::vector<complex> block_on_axis(const Factor1d& g, int j, std::int64_t n)
{
    std::vector<complex> a(static_cast<std::size_t>(n), 0.0);
    const std::int64_t lo = j == 0 ? 0 : std::int64_t{1} << (j - 1);
    const std::int64_t hi = j == 0 ? 1 : std::int64_t{1} << j;
    for (std::int64_t k = lo; k < hi; ++k)
        for (std::int64_t s : {std::int64_t{1}, std::int64_t{-1}}) {
            if (k == 0 && s < 0) continue;
            const std::int64_t kk = s * k;
            const double phase = static_cast<double>(kk) * (-std::numbers::pi + std::numbers::pi / static_cast<double>(n));
            a[static_cast<std::size_t>(((kk % n) + n) % n)] += g.coefficient(kk) * std::polar(1.0, phase);
        }
    fft_1d(a, FftDirection::inverse);
    return a;
}

inline int block_of(std::int64_t k)
{
    std::int64_t a = k < 0 ? -k : k;
    int j = 0;
    while (a > 0) {
        a >>= 1;
        ++j;
    }
    return j;
}

} // namespace detail

/// Norm of f in S^r_{p,theta}X from its exact Fourier coefficients.
inline NormResult reference_norm(const TestFunction& f, Space space, const std::vector<double>& r_in, double p,
                                 double theta, const ReferenceOptions& opt = {})
{
    const int d = f.dim();
    const auto r = detail::broadcast(r_in, d);
    const double th = space == Space::W ? 2.0 : theta;
    NormResult res;
    res.note = "sharp dyadic cutoffs";

    // Weighted l2 (Parseval) form for p = theta = 2.
    if (p == 2.0 && th == 2.0) {
        res.note = "exact weighted l2";
        if (!f.product_form()) {
            double s = 0.0;
            for (const auto& [k, c] : f.poly()) {
                double w = 1.0;
                for (int i = 0; i < d; ++i) w *= std::pow(1.0 + static_cast<double>(k[i] * k[i]), r[i]);
                s += w * std::norm(c);
            }
            res.value = std::sqrt(s);
            return res;
        }
        double s = std::norm(f.scale());
        for (int i = 0; i < d; ++i) s *= f.factor().weighted_sq(r[i]);
        res.value = std::sqrt(s);
        return res;
    }

    // Finite polynomials: blocks are finite.
    if (!f.product_form()) {
        std::map<MultiIndex, TrigPoly> blocks;
        for (const auto& [k, c] : f.poly()) {
            MultiIndex j(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) j[i] = detail::block_of(k[i]);
            blocks.try_emplace(j, d).first->second.add(k, c);
        }
        const auto kmax = f.poly().max_abs_frequency();
        QuadratureSpec quad;
        quad.resolution = auto_resolution(kmax);
        const auto zero = TestFunction::constant(d, 0.0);
        if (space == Space::B || p == 2.0) {
            std::vector<double> a;
            for (const auto& [j, b] : blocks) {
                const double nb = p == 2.0 ? std::sqrt(b.l2_norm_squared()) : lq_error(zero, -1.0 * b, p, quad);
                a.push_back(detail::weight(r, j) * nb);
            }
            if (space == Space::B) {
                res.value = detail::ell_theta(a, th);
                return res;
            }
        }
        std::vector<double> acc;
        for (const auto& [j, b] : blocks) {
            const auto v = detail::poly_on_grid(b, quad.resolution, 0.5);
            const double w = detail::weight(r, j);
            if (acc.empty()) acc.assign(v.size(), 0.0);
            for (std::size_t t = 0; t < v.size(); ++t) {
                const double a = w * std::abs(v[t]);
                acc[t] = std::isinf(th) ? std::max(acc[t], a) : acc[t] + std::pow(a, th);
            }
        }
        std::vector<complex> g(acc.size());
        for (std::size_t t = 0; t < acc.size(); ++t) g[t] = std::isinf(th) ? acc[t] : std::pow(acc[t], 1.0 / th);
        res.value = detail::power_mean(g, p);
        return res;
    }

    // Product form, B: ||delta_j f||_p factorizes, so the sum over j does too.
    const Factor1d& g = f.factor();
    const double sc = std::abs(f.scale());
    if (space == Space::B) {
        double value = sc;
        for (int i = 0; i < d; ++i) {
            std::vector<double> a;
            const int jtop = p == 2.0 ? opt.jsum : opt.jref;
            for (int j = 0; j <= jtop; ++j) {
                double nb;
                if (p == 2.0) {
                    nb = std::sqrt(g.block_sq(j));
                } else {
                    const std::int64_t n = std::max<std::int64_t>(16, std::int64_t{8} << j);
                    nb = detail::power_mean(detail::block_on_axis(g, j, n), p);
                }
                a.push_back(std::exp2(r[i] * j) * nb);
            }
            if (!std::isinf(th) && a.size() > 2 && std::pow(a.back(), th) > 1e-6 * std::pow(detail::ell_theta(a, th), th)) {
                res.note += "; series not converged (f outside the space or truncated)";
                if (p == 2.0) value = inf;
            }
            value *= detail::ell_theta(a, th);
        }
        res.value = value;
        if (p != 2.0) res.note += "; truncated at jref";
        return res;
    }

    // Product form, F: pointwise sum over blocks on a tensor grid, truncated at jref.
    const std::int64_t n = std::max<std::int64_t>(16, std::int64_t{8} << opt.jref);
    std::vector<std::vector<complex>> axis;
    for (int j = 0; j <= opt.jref; ++j) axis.push_back(detail::block_on_axis(g, j, n));
    const IndexSet levels = box_index_set(d, opt.jref);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
    std::vector<double> acc(total, 0.0);
    for (const auto& j : levels) {
        const double w = sc * detail::weight(r, j);
        std::vector<std::size_t> t(static_cast<std::size_t>(d), 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            double v = w;
            for (int i = 0; i < d; ++i) v *= std::abs(axis[static_cast<std::size_t>(j[i])][t[i]]);
            acc[flat] = std::isinf(th) ? std::max(acc[flat], v) : acc[flat] + std::pow(v, th);
            for (std::size_t i = t.size(); i-- > 0;) {
                if (++t[i] < static_cast<std::size_t>(n)) break;
                t[i] = 0;
            }
        }
    }
    std::vector<complex> gv(total);
    for (std::size_t i = 0; i < total; ++i) gv[i] = std::isinf(th) ? acc[i] : std::pow(acc[i], 1.0 / th);
    res.value = detail::power_mean(gv, p);
    res.note += "; truncated at jref";
    return res;
}

struct EquivalenceReport {
    std::vector<double> ratios; // discrete / reference per function
    double min = 0.0;
    double max = 0.0;
    bool in_domain = true;
    std::string note;

    [[nodiscard]] double spread() const { return min > 0.0 ? max / min : inf; }
};

inline EquivalenceReport equivalence_ratio(const std::vector<TestFunction>& fs, const NormSpec& spec,
                                           const ReferenceOptions& opt = {})
{
    require(!fs.empty(), "equivalence_ratio: empty function set");
    EquivalenceReport rep;
    for (const auto& f : fs) {
        const auto disc = discrete_norm(f, spec);
        const auto ref = reference_norm(f, spec.space, spec.r, spec.p, spec.theta, opt);
        rep.in_domain = rep.in_domain && disc.in_domain;
        if (!disc.in_domain) rep.note = disc.note;
        rep.ratios.push_back(disc.value / ref.value);
    }
    rep.min = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    rep.max = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    return rep;
}

} // namespace hypercross

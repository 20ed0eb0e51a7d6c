#pragma once

// Known asymptotic orders of sampling, linear, Gelfand and Kolmogorov widths
// for embeddings of mixed smoothness spaces into L_q, stored as data.
//
// Rates follow the convention
//     width_n ~ ((log n)^{mu-1} / n)^alpha * (log n)^{(mu-1) beta}.
// Regions for one (space, width kind) are pairwise disjoint; a tuple matching
// no region is reported as open.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "params.hpp"
#include "test_functions.hpp"

namespace hypercross {

enum class WidthKind { rho_lin, rho, lambda, gelfand, kolmogorov };
enum class RateStatus { sharp, upper_only, open };

inline const char* to_string(WidthKind w)
{
    switch (w) {
    case WidthKind::rho_lin: return "rho_lin";
    case WidthKind::rho: return "rho";
    case WidthKind::lambda: return "lambda";
    case WidthKind::gelfand: return "gelfand";
    case WidthKind::kolmogorov: return "kolmogorov";
    }
    return "?";
}

inline const char* to_string(RateStatus s)
{
    switch (s) {
    case RateStatus::sharp: return "sharp";
    case RateStatus::upper_only: return "upper_only";
    case RateStatus::open: return "open";
    }
    return "?";
}

struct AtlasQuery {
    double p = 2.0;
    double q = 4.0;
    double theta = inf; // ignored for W
    double r = 1.0;     // r_1
    int mu = 1;
    Space space = Space::W;
    WidthKind kind = WidthKind::rho_lin;
};

struct AtlasEntry {
    std::string region; // identifier, "open" when nothing matched
    RateStatus status = RateStatus::open;
    bool has_rate = false; // alpha/beta meaningful (an upper bound when status != sharp)
    double alpha = 0.0;
    double beta = 0.0;
    std::string citation;
    std::string bounds; // one-sided statements for open regions
};

struct AtlasRegion {
    std::string id;
    Space space;
    WidthKind kind;
    RateStatus status;
    std::function<bool(const AtlasQuery&)> applies;
    std::function<double(const AtlasQuery&)> alpha; // empty: no rate
    std::function<double(const AtlasQuery&)> beta;
    std::string citation;
    std::string bounds;
};

namespace cite {
inline const std::string lin_F_sharp =
    "linear sampling widths, Triebel-Lizorkin scale: sharp for 1<p<q<=2, 1<=theta<=inf or 2<=p<q<inf, theta>=2 (Smolyak interpolation upper bound, linear width lower bound)";
inline const std::string lin_F_upper = "Smolyak interpolation upper bound, Triebel-Lizorkin scale, 0<p<q<inf, r>1/p";
inline const std::string lin_F_inf = "Smolyak interpolation upper bound in L_inf, Triebel-Lizorkin scale, 0<p<inf, r>1/p";
inline const std::string lin_F_gap =
    "linear sampling widths, Triebel-Lizorkin scale, 1<p<2<q<inf: linear widths are of smaller order (univariate lower bound)";
inline const std::string lin_B_inf_sharp =
    "linear sampling widths, Nikol'skij-Besov scale theta=inf: sharp for 1<p<q<=2 or 2<=p<q<inf";
inline const std::string lin_B_theta_sharp = "linear sampling widths, Besov scale: sharp for 1<p<q<=2, 1<=theta<inf";
inline const std::string lin_B_upper = "Smolyak interpolation upper bound, Besov scale, 0<p<q<=inf, 0<theta<=inf, r>1/p";
inline const std::string lin_B_gap =
    "linear sampling widths, Nikol'skij-Besov scale theta=inf, 1<p<2<q<inf: linear widths are of smaller order (univariate lower bound)";
inline const std::string question_mark = "p>=q: question-marked region, not treated";
inline const std::string rho_W_sharp =
    "sampling widths, Sobolev scale: sharp for 2<=p<q<inf, linear algorithms optimal (Gelfand width lower bound)";
inline const std::string rho_B_sharp =
    "sampling widths, Nikol'skij-Besov scale theta=inf: sharp for 2<=p<q<inf, linear algorithms optimal (Gelfand width lower bound)";
inline const std::string rho_upper = "sampling widths bounded by linear sampling widths";
inline const std::string rho_gap = "sampling widths, 1<p<2<q<inf: Gelfand widths are of smaller order (univariate lower bound)";
inline const std::string lambda_W_a = "linear widths, Sobolev scale: q<=2 or p>=2";
inline const std::string lambda_W_b = "linear widths, Sobolev scale: 1/p+1/q>=1, q>2";
inline const std::string lambda_W_c = "linear widths, Sobolev scale: 1/p+1/q<1, p<2";
inline const std::string lambda_W_inf = "linear widths, Sobolev scale into L_inf: 1<p<=2, r>1";
inline const std::string lambda_F = "linear widths, Triebel-Lizorkin scale: 1<p<q<=2, 1<=theta<=inf or 2<=p<q<inf, theta>=2";
inline const std::string lambda_B = "linear widths, Nikol'skij-Besov scale theta=inf: 1<p<q<=2 or 2<=p<q<inf";
inline const std::string gelfand_W = "Gelfand widths, Sobolev scale: duality with Kolmogorov widths and lifting";
inline const std::string gelfand_B_a = "Gelfand widths, Nikol'skij-Besov scale theta=inf: 1/p+1/q<1, p<2, r>1-1/q";
inline const std::string gelfand_B_b = "Gelfand widths, Nikol'skij-Besov scale theta=inf: 2<=p<q";
inline const std::string kolmogorov_W = "Kolmogorov widths, Sobolev scale";
} // namespace cite

namespace detail {

inline bool finite(double v) { return !std::isinf(v); }
inline bool upper_triangle(const AtlasQuery& a) { return 1.0 < a.p && a.p < a.q && a.q <= 2.0; }
inline bool lower_triangle(const AtlasQuery& a) { return 2.0 <= a.p && a.p < a.q && finite(a.q); }
inline bool middle(const AtlasQuery& a) { return 1.0 < a.p && a.p < 2.0 && 2.0 < a.q && finite(a.q); }
inline double theta_of(const AtlasQuery& a) { return a.space == Space::W ? 2.0 : a.theta; }

/// Smoothness condition of the 1<p<2<q gap statements.
inline bool gap_smoothness(const AtlasQuery& a)
{
    return inv(a.p) + inv(a.q) >= 1.0 ? a.r > inv(a.p) : a.r > std::max(inv(a.p), 1.0 - inv(a.q));
}

inline double main_rate(const AtlasQuery& a) { return a.r - inv(a.p) + inv(a.q); }

} // namespace detail

inline const std::vector<AtlasRegion>& atlas_regions()
{
    using detail::finite;
    using detail::main_rate;
    static const std::vector<AtlasRegion> regions = [] {
        std::vector<AtlasRegion> v;
        auto zero = [](const AtlasQuery&) { return 0.0; };
        auto inv_q = [](const AtlasQuery& a) { return inv(a.q); };
        const std::string gap_bounds = "lambda_n = o(rho_n^lin): lambda_n << n^-(r-1/p+1/q) <~ rho_n^lin";
        const std::string rho_gap_bounds = "c_n = o(rho_n): c_n << n^-(r-1/p+1/q) <~ rho_n";

        // Linear sampling widths, W and F.
        for (Space s : {Space::W, Space::F}) {
            auto th = detail::theta_of;
            auto fsharp = [th](const AtlasQuery& a) {
                return a.r > inv(a.p) && ((detail::upper_triangle(a) && th(a) >= 1.0) ||
                                          (detail::lower_triangle(a) && th(a) >= 2.0));
            };
            auto fgap = [th, fsharp](const AtlasQuery& a) {
                return !fsharp(a) && detail::middle(a) && th(a) >= 1.0 && detail::gap_smoothness(a);
            };
            auto wdomain = [s](const AtlasQuery& a) { return s != Space::W || a.p > 1.0; };
            v.push_back({std::string(to_string(s)) + ".rho_lin.sharp", s, WidthKind::rho_lin, RateStatus::sharp,
                         [=](const AtlasQuery& a) { return wdomain(a) && fsharp(a); }, main_rate, zero, cite::lin_F_sharp, ""});
            v.push_back({std::string(to_string(s)) + ".rho_lin.gap", s, WidthKind::rho_lin, RateStatus::open,
                         [=](const AtlasQuery& a) { return wdomain(a) && fgap(a); }, main_rate, zero, cite::lin_F_gap, gap_bounds});
            v.push_back({std::string(to_string(s)) + ".rho_lin.upper", s, WidthKind::rho_lin, RateStatus::upper_only,
                         [=](const AtlasQuery& a) {
                             return wdomain(a) && 0.0 < a.p && a.p < a.q && finite(a.q) && a.r > inv(a.p) && !fsharp(a) && !fgap(a);
                         },
                         main_rate, zero, cite::lin_F_upper, ""});
            v.push_back({std::string(to_string(s)) + ".rho_lin.inf", s, WidthKind::rho_lin, RateStatus::upper_only,
                         [=](const AtlasQuery& a) { return wdomain(a) && !finite(a.q) && finite(a.p) && a.r > inv(a.p); },
                         [](const AtlasQuery& a) { return a.r - inv(a.p); },
                         [](const AtlasQuery& a) { return pos_part(1.0 - inv(a.p)); }, cite::lin_F_inf, ""});
        }

        // Linear sampling widths, B.
        {
            auto binf_sharp = [](const AtlasQuery& a) {
                return std::isinf(a.theta) && a.r > inv(a.p) && (detail::upper_triangle(a) || detail::lower_triangle(a));
            };
            auto bth_sharp = [](const AtlasQuery& a) {
                return finite(a.theta) && a.theta >= 1.0 && a.r > inv(a.p) && detail::upper_triangle(a);
            };
            auto bgap = [](const AtlasQuery& a) { return std::isinf(a.theta) && detail::middle(a) && detail::gap_smoothness(a); };
            auto beta_b = [](const AtlasQuery& a) { return pos_part(inv(a.q) - inv(a.theta)); };
            v.push_back({"B.rho_lin.sharp_inf", Space::B, WidthKind::rho_lin, RateStatus::sharp, binf_sharp, main_rate,
                         [](const AtlasQuery& a) { return inv(a.q); }, cite::lin_B_inf_sharp, ""});
            v.push_back({"B.rho_lin.sharp_theta", Space::B, WidthKind::rho_lin, RateStatus::sharp, bth_sharp, main_rate, beta_b,
                         cite::lin_B_theta_sharp, ""});
            v.push_back({"B.rho_lin.gap", Space::B, WidthKind::rho_lin, RateStatus::open, bgap, main_rate, beta_b, cite::lin_B_gap,
                         gap_bounds});
            v.push_back({"B.rho_lin.upper", Space::B, WidthKind::rho_lin, RateStatus::upper_only,
                         [=](const AtlasQuery& a) {
                             return 0.0 < a.p && a.p < a.q && a.r > inv(a.p) && !binf_sharp(a) && !bth_sharp(a) && !bgap(a);
                         },
                         main_rate, beta_b, cite::lin_B_upper, ""});
        }

        // The question-marked region p >= q, stated as open for all three scales.
        for (Space s : {Space::W, Space::F, Space::B})
            for (WidthKind w : {WidthKind::rho_lin, WidthKind::rho})
                v.push_back({std::string(to_string(s)) + "." + to_string(w) + ".question_mark", s, w, RateStatus::open,
                             [](const AtlasQuery& a) { return a.p >= a.q; }, {}, {}, cite::question_mark, ""});

        // Sampling widths (possibly non-linear reconstruction), W and B with theta = inf.
        for (Space s : {Space::W, Space::B}) {
            auto ok = [s](const AtlasQuery& a) { return s == Space::W ? a.p > 1.0 : std::isinf(a.theta); };
            auto beta = s == Space::W ? std::function<double(const AtlasQuery&)>(zero) : std::function<double(const AtlasQuery&)>(inv_q);
            const std::string name = to_string(s);
            v.push_back({name + ".rho.sharp", s, WidthKind::rho, RateStatus::sharp,
                         [=](const AtlasQuery& a) { return ok(a) && detail::lower_triangle(a) && a.r > inv(a.p); }, main_rate, beta,
                         s == Space::W ? cite::rho_W_sharp : cite::rho_B_sharp, ""});
            v.push_back({name + ".rho.gap", s, WidthKind::rho, RateStatus::open,
                         [=](const AtlasQuery& a) {
                             return ok(a) && detail::middle(a) && a.r > std::max(inv(a.p), 1.0 - inv(a.q));
                         },
                         main_rate, beta, cite::rho_gap, rho_gap_bounds});
            v.push_back({name + ".rho.upper", s, WidthKind::rho, RateStatus::upper_only,
                         [=](const AtlasQuery& a) { return ok(a) && detail::upper_triangle(a) && a.r > inv(a.p); }, main_rate, beta,
                         cite::rho_upper, ""});
        }

        // Linear widths.
        v.push_back({"W.lambda.a", Space::W, WidthKind::lambda, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return 1.0 < a.p && finite(a.p) && 1.0 <= a.q && finite(a.q) && a.r > pos_part(inv(a.p) - inv(a.q)) &&
                                (a.q <= 2.0 || a.p >= 2.0);
                     },
                     [](const AtlasQuery& a) { return a.r - pos_part(inv(a.p) - inv(a.q)); }, zero, cite::lambda_W_a, ""});
        v.push_back({"W.lambda.b", Space::W, WidthKind::lambda, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return 1.0 < a.p && a.p < 2.0 && 2.0 < a.q && finite(a.q) && inv(a.p) + inv(a.q) >= 1.0 && a.r > inv(a.p);
                     },
                     [](const AtlasQuery& a) { return a.r - inv(a.p) + 0.5; }, zero, cite::lambda_W_b, ""});
        v.push_back({"W.lambda.c", Space::W, WidthKind::lambda, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return 1.0 < a.p && a.p < 2.0 && 2.0 < a.q && finite(a.q) && inv(a.p) + inv(a.q) < 1.0 &&
                                a.r > 1.0 - inv(a.q) && a.r > pos_part(inv(a.p) - inv(a.q));
                     },
                     [](const AtlasQuery& a) { return a.r - 0.5 + inv(a.q); }, zero, cite::lambda_W_c, ""});
        // n^{-(r-1/2)} (log n)^{(mu-1) r} = ((log n)^{mu-1}/n)^{r-1/2} (log n)^{(mu-1)/2}
        v.push_back({"W.lambda.inf", Space::W, WidthKind::lambda, RateStatus::sharp,
                     [](const AtlasQuery& a) { return 1.0 < a.p && a.p <= 2.0 && !finite(a.q) && a.r > 1.0; },
                     [](const AtlasQuery& a) { return a.r - 0.5; }, [](const AtlasQuery&) { return 0.5; }, cite::lambda_W_inf, ""});
        v.push_back({"F.lambda", Space::F, WidthKind::lambda, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return a.r > inv(a.p) && ((detail::upper_triangle(a) && a.theta >= 1.0) ||
                                                   (detail::lower_triangle(a) && a.theta >= 2.0));
                     },
                     main_rate, zero, cite::lambda_F, ""});
        v.push_back({"B.lambda", Space::B, WidthKind::lambda, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return std::isinf(a.theta) && a.r > inv(a.p) && (detail::upper_triangle(a) || detail::lower_triangle(a));
                     },
                     main_rate, inv_q, cite::lambda_B, ""});

        // Gelfand widths.
        v.push_back({"W.gelfand", Space::W, WidthKind::gelfand, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         if (!(1.0 < a.p && finite(a.p) && 1.0 < a.q && finite(a.q))) return false;
                         double need;
                         if (detail::upper_triangle(a))
                             need = 0.5;
                         else if (a.p < 2.0 && 2.0 < a.q)
                             need = 1.0 - inv(a.q);
                         else
                             need = pos_part(inv(a.p) - inv(a.q));
                         return a.r > need;
                     },
                     [](const AtlasQuery& a) { return a.r - pos_part(std::min(inv(a.p), 0.5) - inv(a.q)); }, zero, cite::gelfand_W, ""});
        v.push_back({"B.gelfand.a", Space::B, WidthKind::gelfand, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return std::isinf(a.theta) && 1.0 < a.p && a.p < a.q && finite(a.q) && a.p < 2.0 &&
                                inv(a.p) + inv(a.q) < 1.0 && a.r > 1.0 - inv(a.q) && a.r > pos_part(inv(a.p) - inv(a.q));
                     },
                     [](const AtlasQuery& a) { return a.r - 0.5 + inv(a.q); }, inv_q, cite::gelfand_B_a, ""});
        v.push_back({"B.gelfand.b", Space::B, WidthKind::gelfand, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         return std::isinf(a.theta) && 2.0 <= a.p && a.p < a.q && finite(a.q) && a.r > pos_part(inv(a.p) - inv(a.q));
                     },
                     main_rate, inv_q, cite::gelfand_B_b, ""});

        // Kolmogorov widths.
        v.push_back({"W.kolmogorov", Space::W, WidthKind::kolmogorov, RateStatus::sharp,
                     [](const AtlasQuery& a) {
                         if (!(1.0 < a.p && finite(a.p) && 1.0 < a.q && finite(a.q))) return false;
                         const bool simple = (a.p <= a.q && a.q <= 2.0) || a.q <= a.p;
                         const double need = simple ? pos_part(inv(a.p) - inv(a.q)) : std::max(0.5, inv(a.p));
                         return a.r > need;
                     },
                     [](const AtlasQuery& a) { return a.r - pos_part(inv(a.p) - std::max(0.5, inv(a.q))); }, zero, cite::kolmogorov_W,
                     ""});
        return v;
    }();
    return regions;
}

inline std::vector<const AtlasRegion*> matching_regions(const AtlasQuery& a)
{
    std::vector<const AtlasRegion*> out;
    for (const auto& reg : atlas_regions())
        if (reg.space == a.space && reg.kind == a.kind && reg.applies(a)) out.push_back(&reg);
    return out;
}

inline AtlasEntry atlas_lookup(const AtlasQuery& a)
{
    require(a.p > 0.0 && a.q > 0.0 && a.theta > 0.0 && a.mu >= 1, "atlas_lookup: invalid parameters");
    const auto hits = matching_regions(a);
    require(hits.size() <= 1, "atlas_lookup: overlapping regions");
    AtlasEntry e;
    if (hits.empty()) {
        e.region = "open";
        e.citation = "no statement for this parameter tuple";
        return e;
    }
    const AtlasRegion& reg = *hits.front();
    e.region = reg.id;
    e.status = reg.status;
    e.citation = reg.citation;
    e.bounds = reg.bounds;
    if (reg.alpha) {
        e.has_rate = true;
        e.alpha = reg.alpha(a);
        e.beta = reg.beta ? reg.beta(a) : 0.0;
    }
    return e;
}

inline AtlasEntry atlas_lookup(double p, double q, double theta, double r, int mu, Space space, WidthKind kind)
{
    return atlas_lookup(AtlasQuery{p, q, theta, r, mu, space, kind});
}

} // namespace hypercross

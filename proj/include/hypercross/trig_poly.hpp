#pragma once

// Sparse multivariate trigonometric polynomials sum_k c_k e^{i k.x}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "kernels.hpp"

namespace hypercross {

using Frequency = std::vector<std::int64_t>;

class TrigPoly {
public:
    using map_type = std::map<Frequency, complex>;

    TrigPoly() = default;
    explicit TrigPoly(int dim) : dim_(dim) { require(dim >= 1, "TrigPoly: dimension must be positive"); }

    static TrigPoly monomial(const Frequency& k, complex c = 1.0)
    {
        TrigPoly p(static_cast<int>(k.size()));
        p.add(k, c);
        return p;
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
    [[nodiscard]] bool empty() const { return coeffs_.empty(); }
    [[nodiscard]] const map_type& coefficients() const { return coeffs_; }
    [[nodiscard]] auto begin() const { return coeffs_.begin(); }
    [[nodiscard]] auto end() const { return coeffs_.end(); }

    void add(const Frequency& k, complex c)
    {
        require(static_cast<int>(k.size()) == dim_, "TrigPoly: frequency has wrong dimension");
        if (c == complex(0.0)) return;
        coeffs_[k] += c;
    }

    [[nodiscard]] complex operator[](const Frequency& k) const
    {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? complex(0.0) : it->second;
    }

    [[nodiscard]] complex evaluate(std::span<const double> x) const
    {
        require(static_cast<int>(x.size()) == dim_, "TrigPoly: point has wrong dimension");
        complex acc = 0.0;
        for (const auto& [k, c] : coeffs_) {
            double phase = 0.0;
            for (int i = 0; i < dim_; ++i) phase += static_cast<double>(k[i]) * x[i];
            acc += c * std::polar(1.0, phase);
        }
        return acc;
    }

    [[nodiscard]] complex operator()(std::span<const double> x) const { return evaluate(x); }

    /// Drops coefficients below rel * max |c|.
    TrigPoly& prune(double rel = 1e-15)
    {
        double mx = 0.0;
        for (const auto& [k, c] : coeffs_) mx = std::max(mx, std::abs(c));
        const double cut = rel * mx;
        std::erase_if(coeffs_, [&](const auto& kv) { return std::abs(kv.second) <= cut; });
        return *this;
    }

    TrigPoly& operator+=(const TrigPoly& o)
    {
        require(o.dim_ == dim_, "TrigPoly: dimension mismatch");
        for (const auto& [k, c] : o.coeffs_) coeffs_[k] += c;
        return *this;
    }

    TrigPoly& operator-=(const TrigPoly& o)
    {
        require(o.dim_ == dim_, "TrigPoly: dimension mismatch");
        for (const auto& [k, c] : o.coeffs_) coeffs_[k] -= c;
        return *this;
    }

    TrigPoly& operator*=(complex a)
    {
        for (auto& kv : coeffs_) kv.second *= a;
        return *this;
    }

    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(complex s, TrigPoly a) { return a *= s; }

    /// Largest |k_i| per dimension (0 for the empty polynomial).
    [[nodiscard]] std::vector<std::int64_t> max_abs_frequency() const
    {
        std::vector<std::int64_t> out(static_cast<std::size_t>(dim_), 0);
        for (const auto& [k, c] : coeffs_)
            for (int i = 0; i < dim_; ++i) out[i] = std::max<std::int64_t>(out[i], k[i] < 0 ? -k[i] : k[i]);
        return out;
    }

    [[nodiscard]] double l2_norm_squared() const
    {
        double s = 0.0;
        for (const auto& [k, c] : coeffs_) s += std::norm(c);
        return s;
    }

    /// CSV with columns k1..kd,re,im.
    void write_csv(std::ostream& os) const
    {
        for (int i = 0; i < dim_; ++i) os << 'k' << (i + 1) << ',';
        os << "re,im\n";
        os << std::setprecision(17);
        for (const auto& [k, c] : coeffs_) {
            for (auto v : k) os << v << ',';
            os << c.real() << ',' << c.imag() << '\n';
        }
    }

private:
    int dim_ = 1;
    map_type coeffs_;
};

} // namespace hypercross

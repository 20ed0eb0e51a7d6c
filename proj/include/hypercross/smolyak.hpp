#pragma once

// Anisotropic Smolyak operator on nested dyadic grids.
//
//   T^{L,eta}_m f = sum_{j in Delta} q^L_j[f],   Delta = {j : eta.j <= m eta_1},
//   q^L_j = sum_{b in {-1,0}^d} (-1)^{|b|} I^L_{j+b}  (terms with j_i + b_i = -1 dropped).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "interpolation.hpp"
#include "kernels.hpp"
#include "params.hpp"
#include "trig_poly.hpp"

namespace hypercross {

using MultiIndex = std::vector<int>;

inline bool leq(const MultiIndex& a, const MultiIndex& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

class IndexSet {
public:
    IndexSet() = default;

    /// Arbitrary member list; sorted and checked for downward closure.
    IndexSet(int d, std::vector<MultiIndex> members) : dim_(d), members_(std::move(members))
    {
        require(d >= 1, "IndexSet: dimension must be positive");
        for (const auto& j : members_) {
            require(static_cast<int>(j.size()) == d, "IndexSet: member has wrong dimension");
            for (int v : j) require(v >= 0, "IndexSet: negative level");
        }
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        require(is_downward_closed(), "IndexSet: set is not downward closed");
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] const std::vector<MultiIndex>& members() const { return members_; }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }
    [[nodiscard]] const std::vector<double>& eta() const { return eta_; }
    [[nodiscard]] double threshold() const { return m_; }

    [[nodiscard]] bool contains(const MultiIndex& j) const
    {
        return std::binary_search(members_.begin(), members_.end(), j);
    }

    [[nodiscard]] bool is_downward_closed() const
    {
        for (const auto& j : members_) {
            MultiIndex k = j;
            for (int i = 0; i < dim_; ++i) {
                if (k[i] == 0) continue;
                --k[i];
                if (!contains(k)) return false;
                ++k[i];
            }
        }
        return true;
    }

    /// Largest level per direction.
    [[nodiscard]] MultiIndex max_levels() const
    {
        MultiIndex out(static_cast<std::size_t>(dim_), 0);
        for (const auto& j : members_)
            for (int i = 0; i < dim_; ++i) out[i] = std::max(out[i], j[i]);
        return out;
    }

    /// Combination coefficients c_l = sum_{b in {0,1}^d, l+b in Delta} (-1)^{|b|}.
    [[nodiscard]] std::vector<std::pair<MultiIndex, int>> combination_coefficients() const
    {
        std::vector<std::pair<MultiIndex, int>> out;
        for (const auto& l : members_) {
            int c = 0;
            for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
                MultiIndex k = l;
                int sign = 1;
                for (int i = 0; i < dim_; ++i)
                    if (mask & (1u << i)) {
                        ++k[i];
                        sign = -sign;
                    }
                if (contains(k)) c += sign;
            }
            if (c != 0) out.emplace_back(l, c);
        }
        return out;
    }

private:
    friend IndexSet build_index_set(const std::vector<double>& eta, double m, int d);

    int dim_ = 1;
    std::vector<MultiIndex> members_;
    std::vector<double> eta_;
    double m_ = 0.0;
};

/// {j in N_0^d : eta.j <= m eta_1}
inline IndexSet build_index_set(const std::vector<double>& eta, double m, int d)
{
    require(d >= 1, "build_index_set: dimension must be positive");
    require(static_cast<int>(eta.size()) == d, "build_index_set: eta must have length d");
    for (double v : eta) require(v > 0.0, "build_index_set: eta must be positive");
    require(std::is_sorted(eta.begin(), eta.end()), "build_index_set: eta must be ascending");
    require(m >= 0.0, "build_index_set: m must be nonnegative");

    const double budget = m * eta.front();
    const double slack = 1e-12 * std::max(1.0, budget);
    std::vector<MultiIndex> members;
    MultiIndex j(static_cast<std::size_t>(d), 0);
    std::function<void(int, double)> rec = [&](int i, double used) {
        if (i == d) {
            members.push_back(j);
            return;
        }
        for (int v = 0; used + v * eta[i] <= budget + slack; ++v) {
            j[i] = v;
            rec(i + 1, used + v * eta[i]);
        }
        j[i] = 0;
    };
    rec(0, 0.0);

    IndexSet set(d, std::move(members));
    set.eta_ = eta;
    set.m_ = m;
    return set;
}

inline IndexSet build_index_set(const RecoveryParams& params)
{
    return build_index_set(params.eta, params.m, params.dim());
}

// ---------------------------------------------------------------------------
// Sparse grids. A 1-d node u at level l has birth level 0 if u = 0 and
// otherwise the level at which it first appears (u odd at that level).

inline int birth_level(int l, std::int64_t u)
{
    if (u == 0) return 0;
    while (l > 0 && u % 2 == 0) {
        u /= 2;
        --l;
    }
    return l;
}

/// u indices first appearing at level b, ascending.
inline std::vector<std::int64_t> new_nodes(int b)
{
    if (b == 0) return {0};
    std::vector<std::int64_t> out;
    for (std::int64_t u = grid_first(b); u < -grid_first(b); ++u)
        if (u % 2 != 0) out.push_back(u);
    return out;
}

using NodeKey = std::vector<std::int64_t>;

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : k) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct GridNode {
    NodeKey key;          // u_i 2^{J_i - birth_i} at the finest level J
    std::vector<double> x;
    MultiIndex birth;
};

class SparseGrid {
public:
    explicit SparseGrid(const IndexSet& set) : dim_(set.dim()), finest_(set.max_levels())
    {
        require(set.is_downward_closed(), "sparse_grid: index set must be downward closed");
        const auto d = static_cast<std::size_t>(dim_);
        for (const auto& b : set) {
            std::vector<std::vector<std::int64_t>> axes(d);
            for (std::size_t i = 0; i < d; ++i) axes[i] = new_nodes(b[i]);
            std::vector<std::size_t> pos(d, 0);
            while (true) {
                GridNode n;
                n.birth = b;
                for (std::size_t i = 0; i < d; ++i) {
                    const std::int64_t u = axes[i][pos[i]];
                    n.key.push_back(u << (finest_[i] - b[i]));
                    n.x.push_back(grid_node(b[i], u));
                }
                index_.emplace(n.key, nodes_.size());
                nodes_.push_back(std::move(n));
                std::size_t i = d;
                bool done = false;
                while (true) {
                    --i;
                    if (++pos[i] < axes[i].size()) break;
                    pos[i] = 0;
                    if (i == 0) {
                        done = true;
                        break;
                    }
                }
                if (done) break;
            }
        }
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const std::vector<GridNode>& nodes() const { return nodes_; }
    [[nodiscard]] const MultiIndex& finest_levels() const { return finest_; }

    /// Canonical key of node (level l, index u) along direction i.
    [[nodiscard]] std::int64_t canonical(std::size_t i, int l, std::int64_t u) const
    {
        require(l <= finest_[i], "SparseGrid: level exceeds the grid");
        return u << (finest_[i] - l);
    }

    [[nodiscard]] const GridNode* find(const NodeKey& key) const
    {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : &nodes_[it->second];
    }

    [[nodiscard]] std::size_t position(const NodeKey& key) const
    {
        auto it = index_.find(key);
        require(it != index_.end(), "SparseGrid: node not in grid");
        return it->second;
    }

    /// CSV with columns x1..xd,level1..leveld (birth level per direction).
    void write_csv(std::ostream& os) const
    {
        for (int i = 0; i < dim_; ++i) os << 'x' << (i + 1) << ',';
        for (int i = 0; i < dim_; ++i) os << "level" << (i + 1) << (i + 1 < dim_ ? "," : "\n");
        os << std::setprecision(17);
        for (const auto& n : nodes_) {
            for (double v : n.x) os << v << ',';
            for (int i = 0; i < dim_; ++i) os << n.birth[i] << (i + 1 < dim_ ? "," : "\n");
        }
    }

private:
    int dim_;
    MultiIndex finest_;
    std::vector<GridNode> nodes_;
    std::unordered_map<NodeKey, std::size_t, NodeKeyHash> index_;
};

inline SparseGrid sparse_grid(const IndexSet& set) { return SparseGrid(set); }

/// Number of nodes of the sparse grid without materializing it.
inline std::uint64_t sparse_grid_size(const IndexSet& set)
{
    std::uint64_t total = 0;
    for (const auto& b : set) {
        std::uint64_t n = 1;
        for (int v : b) n *= (v == 0) ? 1 : (std::uint64_t{1} << (v - 1));
        total += n;
    }
    return total;
}

using PointFunction = std::function<complex(std::span<const double>)>;

/// One sample per geometric node of a sparse grid.
class SampleStore {
public:
    SampleStore(const SparseGrid& grid, const PointFunction& f) : grid_(&grid)
    {
        values_.reserve(grid.size());
        for (const auto& n : grid.nodes()) {
            values_.push_back(f(n.x));
            ++evaluations_;
        }
    }

    SampleStore(const SparseGrid& grid, std::vector<complex> values) : grid_(&grid), values_(std::move(values))
    {
        require(values_.size() == grid.size(), "SampleStore: one value per node required");
    }

    [[nodiscard]] const SparseGrid& grid() const { return *grid_; }
    [[nodiscard]] std::size_t evaluations() const { return evaluations_; }
    [[nodiscard]] const std::vector<complex>& values() const { return values_; }

    [[nodiscard]] bool covers(const MultiIndex& l) const
    {
        const auto& J = grid_->finest_levels();
        for (std::size_t i = 0; i < l.size(); ++i)
            if (l[i] > J[i]) return false;
        // The grid is a union of birth-level blocks over a downward-closed set, so the
        // level-l grid is present iff a node born exactly at l is.
        NodeKey key(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) key[i] = grid_->canonical(i, l[i], l[i] == 0 ? 0 : -1);
        return grid_->find(key) != nullptr;
    }

    /// Row-major samples of the full tensor grid at level l (ascending u per axis).
    [[nodiscard]] std::vector<complex> level_values(const MultiIndex& l) const
    {
        require(static_cast<int>(l.size()) == grid_->dim(), "SampleStore: level has wrong dimension");
        require(covers(l), "SampleStore: samples missing for requested level");
        const std::size_t d = l.size();
        std::size_t total = 1;
        for (int v : l) total *= static_cast<std::size_t>(grid_size(v));
        std::vector<complex> out(total);
        std::vector<std::int64_t> u(d);
        for (std::size_t i = 0; i < d; ++i) u[i] = grid_first(l[i]);
        NodeKey key(d);
        for (std::size_t flat = 0; flat < total; ++flat) {
            for (std::size_t i = 0; i < d; ++i) key[i] = grid_->canonical(i, l[i], u[i]);
            out[flat] = values_[grid_->position(key)];
            for (std::size_t i = d; i-- > 0;) {
                if (++u[i] < grid_first(l[i]) + grid_size(l[i])) break;
                u[i] = grid_first(l[i]);
            }
        }
        return out;
    }

private:
    const SparseGrid* grid_;
    std::vector<complex> values_;
    std::size_t evaluations_ = 0;
};

/// Deterministic compensated (Neumaier) summation of complex terms.
class CompensatedSum {
public:
    void add(complex v)
    {
        step(re_, cre_, v.real());
        step(im_, cim_, v.imag());
    }
    [[nodiscard]] complex value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void step(double& s, double& c, double v)
    {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

namespace detail {

/// Kernel values K^L_{pi,l}(x_i - x_u) for all u, cached per (direction, level) for one point.
class KernelCache {
public:
    KernelCache(int L, std::span<const double> x, const MultiIndex& max_levels) : L_(L), x_(x.begin(), x.end())
    {
        cache_.resize(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) cache_[i].resize(static_cast<std::size_t>(max_levels[i]) + 1);
    }

    const std::vector<complex>& get(std::size_t i, int l)
    {
        auto& slot = cache_[i][static_cast<std::size_t>(l)];
        if (slot.empty()) {
            slot.resize(static_cast<std::size_t>(grid_size(l)));
            if (auto hit = node_index(l, x_[i])) {
                std::fill(slot.begin(), slot.end(), complex(0.0));
                slot[static_cast<std::size_t>(*hit - grid_first(l))] = 1.0;
            } else {
                const KernelSpec spec(L_, l);
                std::int64_t u = grid_first(l);
                for (auto& v : slot) v = eval_periodized_kernel(spec, x_[i] - grid_node(l, u++));
            }
        }
        return slot;
    }

private:
    int L_;
    std::vector<double> x_;
    std::vector<std::vector<std::vector<complex>>> cache_;
};

/// Contracts row-major tensor samples against per-axis kernel vectors.
inline complex contract(std::vector<complex> data, const std::vector<const std::vector<complex>*>& axes)
{
    std::size_t len = data.size();
    for (std::size_t i = axes.size(); i-- > 0;) {
        const auto& k = *axes[i];
        const std::size_t n = k.size();
        const std::size_t outer = len / n;
        for (std::size_t o = 0; o < outer; ++o) {
            complex acc = 0.0;
            for (std::size_t t = 0; t < n; ++t) acc += data[o * n + t] * k[t];
            data[o] = acc;
        }
        len = outer;
    }
    return data[0];
}

/// I^L_l[f](x) by direct kernel summation.
inline complex tensor_interpolant(const SampleStore& store, const MultiIndex& l, KernelCache& cache)
{
    std::vector<const std::vector<complex>*> axes;
    for (std::size_t i = 0; i < l.size(); ++i) axes.push_back(&cache.get(i, l[i]));
    return contract(store.level_values(l), axes);
}

inline complex block_from_cache(const SampleStore& store, const MultiIndex& j, KernelCache& cache,
                                std::map<MultiIndex, complex>* memo)
{
    const int d = static_cast<int>(j.size());
    CompensatedSum sum;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        MultiIndex l = j;
        int sign = 1;
        bool skip = false;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) {
                if (--l[i] < 0) skip = true;
                sign = -sign;
            }
        if (skip) continue;
        complex v;
        if (memo) {
            auto it = memo->find(l);
            if (it == memo->end()) it = memo->emplace(l, tensor_interpolant(store, l, cache)).first;
            v = it->second;
        } else {
            v = tensor_interpolant(store, l, cache);
        }
        sum.add(static_cast<double>(sign) * v);
    }
    return sum.value();
}

} // namespace detail

/// q^L_j[f](x)
inline complex building_block_eval(int L, const MultiIndex& j, const SampleStore& store, std::span<const double> x)
{
    require(static_cast<int>(j.size()) == store.grid().dim() && x.size() == j.size(),
            "building_block_eval: dimension mismatch");
    detail::KernelCache cache(L, x, j);
    return detail::block_from_cache(store, j, cache, nullptr);
}

/// T^{L,eta}_m f(x) as the lexicographically ordered sum of building blocks.
inline complex smolyak_eval(int L, const IndexSet& set, const SampleStore& store, std::span<const double> x)
{
    require(static_cast<int>(x.size()) == set.dim(), "smolyak_eval: point has wrong dimension");
    detail::KernelCache cache(L, x, set.max_levels());
    std::map<MultiIndex, complex> memo;
    CompensatedSum sum;
    for (const auto& j : set) sum.add(detail::block_from_cache(store, j, cache, &memo));
    return sum.value();
}

inline complex smolyak_eval(const RecoveryParams& params, const SampleStore& store, std::span<const double> x)
{
    return smolyak_eval(params.L, build_index_set(params), store, x);
}

/// Coefficients of T^{L,eta}_m f, assembled from per-level tensor FFTs with
/// combination-technique weights.
inline TrigPoly smolyak_coefficients(int L, const IndexSet& set, const SampleStore& store)
{
    TrigPoly out(set.dim());
    for (const auto& [l, c] : set.combination_coefficients()) {
        const double w = static_cast<double>(c);
        for_each_tensor_coefficient(L, l, store.level_values(l),
                                    [&](const Frequency& k, complex v) { out.add(k, w * v); });
    }
    return out.prune(1e-15);
}

inline TrigPoly smolyak_coefficients(const RecoveryParams& params, const SampleStore& store)
{
    return smolyak_coefficients(params.L, build_index_set(params), store);
}

} // namespace hypercross

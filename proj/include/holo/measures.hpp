#pragma once

// Correlation measures on boundary interval configurations at d = 2:
// entanglement entropy, mutual information, the entanglement-wedge
// cross-section negativity proxy, and tripartite information. The union
// entropy of n intervals minimizes total geodesic length over the Catalan(n)
// non-crossing perfect matchings of the 2n endpoints.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "holo/minimal_surface.hpp"

namespace holo {

struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

// Ordered, strictly disjoint intervals on the boundary line.
class IntervalSet {
public:
    IntervalSet() = default;

    explicit IntervalSet(std::vector<Interval> intervals) : v_(std::move(intervals)) {
        for (const auto& iv : v_)
            if (!(iv.b > iv.a) || !std::isfinite(iv.a) || !std::isfinite(iv.b))
                throw DomainError("intervals must satisfy a < b with finite endpoints");
        std::sort(v_.begin(), v_.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });
        for (std::size_t i = 0; i + 1 < v_.size(); ++i)
            if (!(v_[i + 1].a > v_[i].b))
                throw DomainError("intervals must be strictly disjoint (positive gaps)");
    }

    static IntervalSet from_lengths_gaps(const std::vector<double>& lengths,
                                         const std::vector<double>& gaps, double origin = 0.0) {
        if (lengths.empty()) throw DomainError("need at least one interval length");
        if (lengths.size() > 1 && gaps.size() < lengths.size() - 1)
            throw DomainError("need a gap for every consecutive interval pair");
        std::vector<Interval> ivs;
        double x = origin;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            ivs.push_back({x, x + lengths[i]});
            x += lengths[i];
            if (i + 1 < lengths.size()) x += gaps[i];
        }
        return IntervalSet(std::move(ivs));
    }

    const std::vector<Interval>& intervals() const { return v_; }
    std::size_t size() const { return v_.size(); }
    const Interval& operator[](std::size_t i) const { return v_[i]; }

    std::vector<double> lengths() const {
        std::vector<double> out;
        for (const auto& iv : v_) out.push_back(iv.length());
        return out;
    }
    std::vector<double> gaps() const {
        std::vector<double> out;
        for (std::size_t i = 0; i + 1 < v_.size(); ++i) out.push_back(v_[i + 1].a - v_[i].b);
        return out;
    }

private:
    std::vector<Interval> v_;
};

enum class Phase { Connected, Disconnected };

inline const char* phase_name(Phase p) {
    return p == Phase::Connected ? "connected" : "disconnected";
}

struct MeasureResult {
    double value = 0.0;
    Phase phase = Phase::Disconnected;
    double cutoff = 0.0;
    std::uint64_t geometry_id = 0;
    double raw = 0.0;  // unclamped diagnostic: the connected-configuration competition value
};

// ---------------------------------------------------------------------------
// Strip-entropy memoization, keyed by (geometry hash, width, cutoff, rule).

struct EntropyKey {
    std::uint64_t geometry = 0;
    double width = 0.0;
    double cutoff = 0.0;
    int node_count = 0;
    double rel_tol = 0.0;
    bool operator==(const EntropyKey&) const = default;
};

struct EntropyKeyHash {
    std::size_t operator()(const EntropyKey& k) const {
        std::uint64_t h = fnv1a_mix(k.geometry, 0xcbf29ce484222325ull);
        h = fnv1a_mix(k.width, h);
        h = fnv1a_mix(k.cutoff, h);
        h = fnv1a_mix(k.node_count, h);
        h = fnv1a_mix(k.rel_tol, h);
        return static_cast<std::size_t>(h);
    }
};

struct CachedStrip {
    double z_star = 0.0;
    double area = 0.0;
    SurfaceBranch branch = SurfaceBranch::ConnectedU;
};

// Process-wide memo; concurrent reads, synchronized writes. An optional
// backing store (the on-disk cache) is consulted on miss and written through.
class EntropyCache {
public:
    static EntropyCache& global() {
        static EntropyCache cache;
        return cache;
    }

    std::optional<CachedStrip> get(const EntropyKey& key) const {
        {
            std::shared_lock lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        std::function<std::optional<CachedStrip>(const EntropyKey&)> load;
        {
            std::lock_guard lock(store_mutex_);
            load = load_;
        }
        if (load) {
            if (auto hit = load(key)) {
                std::unique_lock lock(mutex_);
                map_.emplace(key, *hit);
                return hit;
            }
        }
        return std::nullopt;
    }

    void put(const EntropyKey& key, const CachedStrip& value) {
        {
            std::unique_lock lock(mutex_);
            map_.insert_or_assign(key, value);
        }
        std::function<void(const EntropyKey&, const CachedStrip&)> save;
        {
            std::lock_guard lock(store_mutex_);
            save = save_;
        }
        if (save) save(key, value);
    }

    void set_store(std::function<std::optional<CachedStrip>(const EntropyKey&)> load,
                   std::function<void(const EntropyKey&, const CachedStrip&)> save) {
        std::lock_guard lock(store_mutex_);
        load_ = std::move(load);
        save_ = std::move(save);
    }

    void clear_store() { set_store(nullptr, nullptr); }

    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    mutable std::mutex store_mutex_;
    mutable std::unordered_map<EntropyKey, CachedStrip, EntropyKeyHash> map_;
    std::function<std::optional<CachedStrip>(const EntropyKey&)> load_;
    std::function<void(const EntropyKey&, const CachedStrip&)> save_;
};

inline StripEntropy cached_strip_entropy(const BulkGeometry& g, double width, double eps,
                                         const QuadratureSpec& quad = {},
                                         const UnitsConvention& units = {}) {
    const EntropyKey key{g.id_hash(), width, eps, quad.node_count, quad.rel_tol};
    if (auto hit = EntropyCache::global().get(key)) {
        const TurningPointSolution sol{hit->z_star, width, hit->area, eps, hit->branch};
        return {sol, hit->area / units.four_G_N};
    }
    const StripEntropy res = entropy_of_strip(g, width, eps, quad, units);
    EntropyCache::global().put(
        key, CachedStrip{res.surface.z_star, res.surface.area_reg, res.surface.branch});
    return res;
}

// ---------------------------------------------------------------------------

inline double entanglement_entropy_interval(const BulkGeometry& g, const Interval& iv, double eps,
                                            const QuadratureSpec& quad = {},
                                            const UnitsConvention& units = {}) {
    if (!(iv.b > iv.a)) throw DomainError("interval endpoints out of order");
    return cached_strip_entropy(g, iv.length(), eps, quad, units).entropy;
}

struct UnionEntropy {
    double value = 0.0;                         // minimal total entropy
    std::vector<std::pair<int, int>> matching;  // argmin endpoint pairing (2n endpoints)
    Phase phase = Phase::Disconnected;          // Connected iff the argmin is not the identity
};

// Minimal total entropy over the non-crossing perfect matchings of the 2n
// interval endpoints, each chord weighted by the strip entropy of its span.
// The identity pairing (each interval with itself) is enumerated first, so
// ties resolve to the disconnected phase.
inline UnionEntropy union_entropy_intervals(const BulkGeometry& g, const IntervalSet& set,
                                            double eps, const QuadratureSpec& quad = {},
                                            const UnitsConvention& units = {}) {
    if (g.d != 2) throw DomainError("union entropies are defined for d = 2 intervals");
    const std::size_t n = set.size();
    if (n == 0) throw DomainError("empty interval set");
    if (n > 8) throw DomainError("at most 8 intervals are supported");

    std::vector<double> pts;
    for (const auto& iv : set.intervals()) {
        pts.push_back(iv.a);
        pts.push_back(iv.b);
    }
    const int m = static_cast<int>(pts.size());

    // chord weights; only odd separations can appear in a non-crossing matching
    std::vector<std::vector<double>> w(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; j += 2)
            w[i][j] = cached_strip_entropy(g, pts[j] - pts[i], eps, quad, units).entropy;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> cur, best_match;
    std::vector<std::array<int, 2>> work{{0, m}};  // half-open endpoint ranges

    std::function<void(double)> dfs = [&](double sum) {
        if (work.empty()) {
            if (sum < best) {
                best = sum;
                best_match = cur;
            }
            return;
        }
        const auto range = work.back();
        work.pop_back();
        if (range[0] >= range[1]) {
            dfs(sum);
        } else {
            for (int j = range[0] + 1; j < range[1]; j += 2) {
                cur.emplace_back(range[0], j);
                work.push_back({range[0] + 1, j});
                work.push_back({j + 1, range[1]});
                dfs(sum + w[range[0]][j]);
                work.pop_back();
                work.pop_back();
                cur.pop_back();
            }
        }
        work.push_back(range);
    };
    dfs(0.0);

    std::sort(best_match.begin(), best_match.end());
    UnionEntropy out;
    out.value = best;
    out.matching = best_match;
    bool identity = true;
    for (std::size_t k = 0; k < best_match.size(); ++k)
        identity = identity && best_match[k] == std::make_pair(int(2 * k), int(2 * k + 1));
    out.phase = identity ? Phase::Disconnected : Phase::Connected;
    return out;
}

// I(A,B) = S_A + S_B - S_{A u B}, clamped at zero. The clamp is exact in the
// disconnected phase because the union then reuses the very same cached chord
// entropies. `raw` keeps the unclamped connected-configuration competition.
inline MeasureResult mutual_information(const BulkGeometry& g, const Interval& A,
                                        const Interval& B, double eps,
                                        const QuadratureSpec& quad = {},
                                        const UnitsConvention& units = {}) {
    const IntervalSet both({A, B});
    const double sa = cached_strip_entropy(g, A.length(), eps, quad, units).entropy;
    const double sb = cached_strip_entropy(g, B.length(), eps, quad, units).entropy;
    const UnionEntropy u = union_entropy_intervals(g, both, eps, quad, units);
    const Interval& lo = both[0];
    const Interval& hi = both[1];
    const double outer = cached_strip_entropy(g, hi.b - lo.a, eps, quad, units).entropy;
    const double inner = cached_strip_entropy(g, hi.a - lo.b, eps, quad, units).entropy;
    const double raw = sa + sb - (outer + inner);
    double value = sa + sb - u.value;
    if (value < 0.0) value = 0.0;
    return {value, u.phase, eps, g.id_hash(), raw};
}

namespace detail {

// The surface competition is cutoff-free (divergences cancel chord by chord),
// so phase questions may be settled at any admissible cutoff.
inline double phase_cutoff(const IntervalSet& set) {
    double smallest = std::numeric_limits<double>::infinity();
    const auto& v = set.intervals();
    for (std::size_t i = 0; i < v.size(); ++i) {
        smallest = std::min(smallest, v[i].length());
        if (i + 1 < v.size()) smallest = std::min(smallest, v[i + 1].a - v[i].b);
    }
    return std::min(1e-3, 0.01 * smallest);
}

}  // namespace detail

// Minimal separating surface inside the connected entanglement wedge of A and
// B, in length units. Zero in the disconnected phase. Behind a hard wall the
// outer extremal surface may saturate on the wall, in which case the
// cross-section drops from the inner geodesic straight down to the wall.
inline double entanglement_wedge_cross_section(const BulkGeometry& g, const Interval& A,
                                               const Interval& B,
                                               const QuadratureSpec& quad = {}) {
    if (g.d != 2) throw DomainError("the wedge cross-section is defined for d = 2 intervals");
    const IntervalSet both({A, B});
    const Interval& lo = both[0];
    const Interval& hi = both[1];
    const double eps = detail::phase_cutoff(both);
    const UnionEntropy u = union_entropy_intervals(g, both, eps, quad);
    if (u.phase == Phase::Disconnected) return 0.0;

    const BulkCurve inner = BulkCurve::rt_geodesic(g, lo.b, hi.a, quad);
    if (g.kind == GeometryKind::HardWall) {
        const StripEntropy outer_strip = cached_strip_entropy(g, hi.b - lo.a, eps, quad);
        if (outer_strip.surface.branch == SurfaceBranch::WallDisconnected)
            return g.L * std::log(g.z_w / inner.apex_depth());
    }
    const BulkCurve outer = BulkCurve::rt_geodesic(g, lo.a, hi.b, quad);
    return min_distance_between_curves(g, outer, inner, quad);
}

// Negativity proxy X = (3/2) E_W / four_G_N. This is a geometric surrogate:
// it vanishes exactly at the mutual-information transition and tracks the
// wedge cross-section, not a partial-transpose spectrum.
inline MeasureResult negativity_proxy(const BulkGeometry& g, const Interval& A, const Interval& B,
                                      const QuadratureSpec& quad = {},
                                      const UnitsConvention& units = {}) {
    const IntervalSet both({A, B});
    const double eps = detail::phase_cutoff(both);
    const UnionEntropy u = union_entropy_intervals(g, both, eps, quad);
    const double ew =
        (u.phase == Phase::Connected) ? entanglement_wedge_cross_section(g, A, B, quad) : 0.0;
    return {1.5 * ew / units.four_G_N, u.phase, eps, g.id_hash(), ew};
}

// I3 = I(A,B) + I(A,C) - I(A, B u C); non-positive for these geometric
// entropies (monogamy of mutual information).
inline double tripartite_information(const BulkGeometry& g, const Interval& A, const Interval& B,
                                     const Interval& C, double eps,
                                     const QuadratureSpec& quad = {},
                                     const UnitsConvention& units = {}) {
    const IntervalSet triple({A, B, C});
    const Interval& a = triple[0];
    const Interval& b = triple[1];
    const Interval& c = triple[2];
    const double iab = mutual_information(g, a, b, eps, quad, units).value;
    const double iac = mutual_information(g, a, c, eps, quad, units).value;
    const double sa = cached_strip_entropy(g, a.length(), eps, quad, units).entropy;
    const double sbc = union_entropy_intervals(g, IntervalSet({b, c}), eps, quad, units).value;
    const double sabc = union_entropy_intervals(g, triple, eps, quad, units).value;
    double iabc = sa + sbc - sabc;
    if (iabc < 0.0) iabc = 0.0;
    return iab + iac - iabc;
}

// M = -I3, reported as the multipartite-correlation series; clamped at zero
// against rounding dust.
inline double multipartite_correlation(const BulkGeometry& g, const Interval& A, const Interval& B,
                                       const Interval& C, double eps,
                                       const QuadratureSpec& quad = {},
                                       const UnitsConvention& units = {}) {
    return std::max(0.0, -tripartite_information(g, A, B, C, eps, quad, units));
}

}  // namespace holo

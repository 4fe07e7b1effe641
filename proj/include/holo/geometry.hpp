#pragma once

// Static planar bulk geometries
//
//     ds^2 = (L/z)^2 ( -f(z) dt^2 + dx_i^2 + dz^2 / f(z) )
//
// with the conformal boundary at z = 0 (UV) and the interior at large z (IR).
// The blackening factor f distinguishes the members of the family: identically
// one for the vacuum and the hard wall, 1 - (z/z_h)^d for the black brane, and
// a monotone-cubic interpolant of user samples for tabulated flows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "holo/errors.hpp"
#include "holo/util.hpp"

namespace holo {

enum class GeometryKind { PureAdS, BlackBrane, HardWall, Tabulated };

struct ProfileSample {
    double z = 0.0;
    double f = 1.0;
};

namespace detail {

// Fritsch-Carlson monotone cubic (PCHIP) through (z_i, f_i). Shape preserving:
// never overshoots the data, so a positive monotone profile stays positive.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    explicit MonotoneCubic(const std::vector<ProfileSample>& samples) {
        const std::size_t n = samples.size();
        z_.resize(n);
        f_.resize(n);
        m_.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            z_[i] = samples[i].z;
            f_[i] = samples[i].f;
        }
        if (n < 2) return;
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = z_[i + 1] - z_[i];
            delta[i] = (f_[i + 1] - f_[i]) / h[i];
        }
        if (n == 2) {
            m_[0] = m_[1] = delta[0];
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        m_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
        m_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    bool empty() const { return z_.size() < 2; }

    double operator()(double zq) const {
        auto it = std::upper_bound(z_.begin(), z_.end(), zq);
        std::size_t i = (it == z_.begin()) ? 0 : static_cast<std::size_t>(it - z_.begin()) - 1;
        if (i >= z_.size() - 1) i = z_.size() - 2;
        const double h = z_[i + 1] - z_[i];
        const double t = (zq - z_[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return f_[i] * (2.0 * t3 - 3.0 * t2 + 1.0) + h * m_[i] * (t3 - 2.0 * t2 + t) +
               f_[i + 1] * (-2.0 * t3 + 3.0 * t2) + h * m_[i + 1] * (t3 - t2);
    }

private:
    static double edge_slope(double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return m;
    }

    std::vector<double> z_, f_, m_;
};

}  // namespace detail

struct BulkGeometry {
    GeometryKind kind = GeometryKind::PureAdS;
    double L = 1.0;  // AdS radius
    int d = 2;       // boundary spacetime dimension; the bulk is d+1 dimensional
    double z_h = 0.0;  // horizon depth (BlackBrane only)
    double z_w = 0.0;  // wall depth (HardWall only)
    std::vector<ProfileSample> profile;  // (z, f) samples with increasing z (Tabulated only)

    static BulkGeometry pure_ads(int d = 2, double L = 1.0);
    static BulkGeometry black_brane(double z_h, int d = 2, double L = 1.0);
    static BulkGeometry hard_wall(double z_w, int d = 2, double L = 1.0);
    static BulkGeometry tabulated(std::vector<ProfileSample> profile, int d = 2, double L = 1.0);

    // Deepest usable depth: z_h, z_w, the last sample, or +inf for pure AdS.
    double max_depth() const {
        switch (kind) {
            case GeometryKind::BlackBrane: return z_h;
            case GeometryKind::HardWall: return z_w;
            case GeometryKind::Tabulated: return profile.empty() ? 0.0 : profile.back().z;
            default: return std::numeric_limits<double>::infinity();
        }
    }

    // Stable identity used by caches and emitted result metadata.
    std::uint64_t id_hash() const {
        std::uint64_t h = fnv1a_mix(static_cast<int>(kind), 0xcbf29ce484222325ull);
        h = fnv1a_mix(L, h);
        h = fnv1a_mix(d, h);
        h = fnv1a_mix(z_h, h);
        h = fnv1a_mix(z_w, h);
        for (const auto& s : profile) {
            h = fnv1a_mix(s.z, h);
            h = fnv1a_mix(s.f, h);
        }
        return h;
    }

    const char* kind_name() const {
        switch (kind) {
            case GeometryKind::PureAdS: return "pure_ads";
            case GeometryKind::BlackBrane: return "black_brane";
            case GeometryKind::HardWall: return "hard_wall";
            case GeometryKind::Tabulated: return "tabulated";
        }
        return "unknown";
    }
};

// Passes iff the declared invariants of the geometry family hold.
inline void validate_geometry(const BulkGeometry& g) {
    using Kind = GeometryError::Kind;
    if (!(g.L > 0.0))
        throw GeometryError(Kind::NonPositiveParameter, "AdS radius L must be positive");
    if (g.d < 2)
        throw GeometryError(Kind::NonPositiveParameter, "boundary dimension d must be at least 2");
    switch (g.kind) {
        case GeometryKind::PureAdS:
            break;
        case GeometryKind::BlackBrane:
            if (!(g.z_h > 0.0))
                throw GeometryError(Kind::NonPositiveParameter, "horizon depth z_h must be positive");
            break;
        case GeometryKind::HardWall:
            if (!(g.z_w > 0.0))
                throw GeometryError(Kind::NonPositiveParameter, "wall depth z_w must be positive");
            break;
        case GeometryKind::Tabulated: {
            if (g.profile.size() < 2)
                throw GeometryError(Kind::NonMonotoneProfile,
                                    "tabulated profile needs at least two samples");
            if (!(g.profile.front().z > 0.0))
                throw GeometryError(Kind::NonPositiveParameter, "profile depths must be positive");
            for (std::size_t i = 0; i + 1 < g.profile.size(); ++i)
                if (!(g.profile[i + 1].z > g.profile[i].z))
                    throw GeometryError(Kind::NonMonotoneProfile,
                                        "profile depths must increase strictly");
            if (!(std::abs(g.profile.front().f - 1.0) < 1e-6))
                throw GeometryError(Kind::NonAsymptoticallyAdS,
                                    "f must approach 1 at the smallest sampled depth");
            for (std::size_t i = 0; i + 1 < g.profile.size(); ++i)
                if (!(g.profile[i].f > 0.0))
                    throw GeometryError(Kind::NonPositiveParameter,
                                        "f must stay positive before the last sample");
            if (g.profile.back().f < 0.0)
                throw GeometryError(Kind::NonPositiveParameter, "f must not go negative");
            break;
        }
    }
}

inline BulkGeometry BulkGeometry::pure_ads(int d, double L) {
    BulkGeometry g;
    g.kind = GeometryKind::PureAdS;
    g.d = d;
    g.L = L;
    validate_geometry(g);
    return g;
}

inline BulkGeometry BulkGeometry::black_brane(double z_h, int d, double L) {
    BulkGeometry g;
    g.kind = GeometryKind::BlackBrane;
    g.z_h = z_h;
    g.d = d;
    g.L = L;
    validate_geometry(g);
    return g;
}

inline BulkGeometry BulkGeometry::hard_wall(double z_w, int d, double L) {
    BulkGeometry g;
    g.kind = GeometryKind::HardWall;
    g.z_w = z_w;
    g.d = d;
    g.L = L;
    validate_geometry(g);
    return g;
}

inline BulkGeometry BulkGeometry::tabulated(std::vector<ProfileSample> profile, int d, double L) {
    BulkGeometry g;
    g.kind = GeometryKind::Tabulated;
    g.profile = std::move(profile);
    g.d = d;
    g.L = L;
    validate_geometry(g);
    return g;
}

namespace detail {

// One-slot per-thread interpolant cache; sweeps hammer a single geometry.
inline const MonotoneCubic& profile_interp(const BulkGeometry& g) {
    thread_local std::uint64_t cached_id = 0;
    thread_local MonotoneCubic interp;
    const std::uint64_t id = g.id_hash();
    if (cached_id != id || interp.empty()) {
        interp = MonotoneCubic(g.profile);
        cached_id = id;
    }
    return interp;
}

}  // namespace detail

// f(z) for a validated geometry. Out-of-domain depths raise DomainError;
// tabulated profiles are never extrapolated.
inline double blackening_factor(const BulkGeometry& g, double z) {
    if (!(z > 0.0)) throw DomainError("blackening_factor: depth must be positive");
    switch (g.kind) {
        case GeometryKind::PureAdS:
            return 1.0;
        case GeometryKind::HardWall:
            if (z > g.z_w) throw DomainError("blackening_factor: depth beyond the wall");
            return 1.0;
        case GeometryKind::BlackBrane: {
            if (z > g.z_h) throw DomainError("blackening_factor: depth beyond the horizon");
            // 1 - (z/z_h)^d without cancellation near the horizon
            return -std::expm1(static_cast<double>(g.d) * std::log(z / g.z_h));
        }
        case GeometryKind::Tabulated: {
            if (g.profile.size() < 2 || z < g.profile.front().z || z > g.profile.back().z)
                throw DomainError("blackening_factor: depth outside the sampled profile");
            return detail::profile_interp(g)(z);
        }
    }
    throw DomainError("blackening_factor: unknown geometry kind");
}

// z_h when the geometry actually ends on a horizon; a wall is not a horizon.
inline std::optional<double> horizon_depth(const BulkGeometry& g) {
    switch (g.kind) {
        case GeometryKind::BlackBrane:
            return g.z_h;
        case GeometryKind::Tabulated:
            if (!g.profile.empty() && g.profile.back().f <= 0.0) return g.profile.back().z;
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

// Boundary energy scale dual to a bulk depth: mu = 1/z.
inline double energy_scale_of_depth(double z) {
    if (!(z > 0.0)) throw DomainError("energy_scale_of_depth: depth must be positive");
    return 1.0 / z;
}

struct UnitsConvention {
    double four_G_N = 1.0;  // 4 G_N; every entropy is (surface area) / four_G_N

    // c = 3L / (2 G_N); with the defaults an AdS3 vacuum interval gives
    // S = 2 ln(l/eps) and c = 6.
    double central_charge(double L = 1.0) const { return 6.0 * L / four_G_N; }
};

}  // namespace holo

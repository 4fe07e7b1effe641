#pragma once

// Minimal-surface engine for strips and intervals.
//
// A strip of width l has a connected extremal surface hanging to a turning
// depth z*, related to the width by
//
//     l(z*) = 2 int_0^{z*} (z/z*)^{d-1} / ( sqrt(f) sqrt(1 - (z/z*)^{2(d-1)}) ) dz .
//
// The integrable endpoint singularity is removed by the substitution
// z = z* sin(theta), after which plain Gauss-Legendre applies. The regularized
// area subtracts the pure AdS UV divergence analytically and adds it back as
// a closed-form counterterm in the cutoff eps, so the only eps dependence of
// a reported area is the exact 1/z^{d-1} boundary term. Constant-time-slice
// geodesics between bulk points use the hyperbolic closed form when f == 1
// and otherwise shoot on the conserved-momentum first integral.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "holo/geometry.hpp"
#include "holo/numerics.hpp"
#include "holo/quadrature.hpp"

namespace holo {

enum class SurfaceBranch { ConnectedU, WallDisconnected };

inline const char* branch_name(SurfaceBranch b) {
    return b == SurfaceBranch::ConnectedU ? "connected_u" : "wall_disconnected";
}

struct TurningPointSolution {
    double z_star = 0.0;   // deepest bulk point of the surface
    double width = 0.0;    // boundary width l
    double area_reg = 0.0; // regularized area per unit transverse volume (includes L^{d-1})
    double cutoff = 0.0;   // eps
    SurfaceBranch branch = SurfaceBranch::ConnectedU;
};

struct StripEntropy {
    TurningPointSolution surface;
    double entropy = 0.0;  // area_reg / four_G_N
};

namespace detail {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// f(z) with the boundary value continued above the first tabulated sample so
// integrands can reach z -> 0.
inline double bulk_f(const BulkGeometry& g, double z) {
    if (g.kind == GeometryKind::Tabulated && z < g.profile.front().z) return 1.0;
    return blackening_factor(g, z);
}

// sum_{j=0}^{d-2} s^{2j} = (1 - s^{2(d-1)}) / (1 - s^2)
inline double transverse_sum(double s2, int d) {
    double acc = 1.0;
    double p = 1.0;
    for (int j = 1; j <= d - 2; ++j) {
        p *= s2;
        acc += p;
    }
    return acc;
}

inline void require_connected_turning_point(const BulkGeometry& g, double z_star) {
    if (!(z_star > 0.0)) throw DomainError("turning point must be positive");
    switch (g.kind) {
        case GeometryKind::BlackBrane:
            if (z_star >= g.z_h) throw DomainError("turning point at or beyond the horizon");
            break;
        case GeometryKind::HardWall:
            if (z_star > g.z_w) throw DomainError("turning point beyond the wall");
            break;
        case GeometryKind::Tabulated:
            if (g.profile.size() < 2) throw DomainError("tabulated profile too short");
            if (z_star > g.profile.back().z)
                throw DomainError("turning point beyond the sampled profile");
            break;
        default:
            break;
    }
}

// Antiderivative of the UV counterterm density 1/z^{d-1}.
inline double uv_counterterm_primitive(double z, int d) {
    if (d == 2) return std::log(z);
    return -std::pow(z, 2 - d) / static_cast<double>(d - 2);
}

}  // namespace detail

// Boundary width subtended by a connected surface with turning depth z_star.
inline double width_of_turning_point(const BulkGeometry& g, double z_star,
                                     const QuadratureSpec& quad = {}) {
    detail::require_connected_turning_point(g, z_star);
    const int d = g.d;
    auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        const double f = detail::bulk_f(g, z_star * s);
        const double P = detail::transverse_sum(s * s, d);
        return detail::ipow(s, d - 1) / std::sqrt(f * P);
    };
    return 2.0 * z_star * integrate(integrand, 0.0, detail::kHalfPi, quad);
}

// Regularized connected-surface area at cutoff eps, per unit transverse
// volume. The eps dependence is carried entirely by the analytic counterterm,
// so vacuum answers like 2 ln(l/eps) hold exactly at finite eps.
inline double regularized_strip_area(const BulkGeometry& g, double z_star, double eps,
                                     const QuadratureSpec& quad = {}) {
    detail::require_connected_turning_point(g, z_star);
    if (!(eps > 0.0) || !(eps < z_star))
        throw DomainError("regularized_strip_area: cutoff must satisfy 0 < eps < z_star");
    const int d = g.d;
    auto body = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double f = detail::bulk_f(g, z_star * s);
        const double P = detail::transverse_sum(s * s, d);
        const double sd1 = detail::ipow(s, d - 1);
        const double q = sd1 * sd1;  // s^{2(d-1)}
        double diff;                 // 1/sqrt(f P) - cos(theta), cancellation-safe near theta = 0
        if (q < 0.5 && std::abs(f - 1.0) < 0.5) {
            diff = c * std::expm1(-0.5 * (std::log1p(f - 1.0) + std::log1p(-q)));
        } else {
            diff = 1.0 / std::sqrt(f * P) - c;
        }
        return diff / sd1;
    };
    const double finite =
        2.0 * std::pow(z_star, 2 - d) * integrate(body, 0.0, detail::kHalfPi, quad);
    const double counter = 2.0 * (detail::uv_counterterm_primitive(z_star, d) -
                                  detail::uv_counterterm_primitive(eps, d));
    return detail::ipow(g.L, d - 1) * (finite + counter);
}

namespace detail {

// Two straight drops from the cutoff to the wall (f == 1).
inline double wall_disconnected_area(const BulkGeometry& g, double eps) {
    if (!(eps > 0.0) || !(eps < g.z_w))
        throw DomainError("wall surface: cutoff must satisfy 0 < eps < z_w");
    const double a = 2.0 * (uv_counterterm_primitive(g.z_w, g.d) -
                            uv_counterterm_primitive(eps, g.d));
    return ipow(g.L, g.d - 1) * a;
}

// Invert width(z_star) = target on the connected branch by bracketed
// bisection. Returns nullopt when the geometry offers no connected branch at
// this width (possible only behind a hard wall).
inline std::optional<double> solve_turning_point(const BulkGeometry& g, double width,
                                                 const QuadratureSpec& quad) {
    if (!(width > 0.0)) throw DomainError("strip width must be positive");
    auto len = [&](double zs) { return width_of_turning_point(g, zs, quad); };
    const double lo = std::max(width * 1e-9, 1e-300);
    double hi = 0.0;
    switch (g.kind) {
        case GeometryKind::HardWall:
            hi = g.z_w;
            if (len(hi) < width) return std::nullopt;
            break;
        case GeometryKind::BlackBrane: {
            // The width diverges logarithmically toward the horizon; keep
            // halving the standoff until the target is bracketed.
            double standoff = 1e-6 * g.z_h;
            hi = g.z_h - standoff;
            while (len(hi) < width) {
                standoff /= 16.0;
                if (standoff < 32.0 * std::numeric_limits<double>::epsilon() * g.z_h)
                    throw NumericsError("strip inversion: width not reachable below the horizon");
                hi = g.z_h - standoff;
            }
            break;
        }
        case GeometryKind::Tabulated:
            hi = g.profile.back().z;
            if (len(hi) < width)
                throw NumericsError("strip inversion: width beyond the sampled profile");
            break;
        default: {  // pure AdS: width grows linearly with the turning depth
            hi = 10.0 * width;
            while (len(hi) < width) {
                hi *= 4.0;
                if (hi > 1e12 * width) throw NumericsError("strip inversion: failed to bracket");
            }
        }
    }
    if (len(lo) > width) throw NumericsError("strip inversion: lower bracket already too wide");
    // bisect to machine resolution: near a horizon dl/dz* is enormous, so any
    // slack in z* would show up magnified in the achieved width
    return bisect([&](double zs) { return len(zs) - width; }, lo, hi, 0.0);
}

// Tabulated profiles may make width(z_star) non-monotone; enumerate every
// connected candidate by a sign-change scan and return all brackets' roots.
inline std::vector<double> solve_turning_points_all(const BulkGeometry& g, double width,
                                                    const QuadratureSpec& quad) {
    auto len = [&](double zs) { return width_of_turning_point(g, zs, quad); };
    const double lo = std::max(width * 1e-9, g.profile.front().z * 1e-3);
    const double hi = g.profile.back().z;
    constexpr int kScan = 64;
    std::vector<double> roots;
    double prev_z = lo;
    double prev_v = len(prev_z) - width;
    for (int i = 1; i <= kScan; ++i) {
        const double z = lo + (hi - lo) * i / kScan;
        const double v = len(z) - width;
        if (prev_v == 0.0) roots.push_back(prev_z);
        else if ((prev_v < 0.0) != (v < 0.0))
            roots.push_back(bisect([&](double zs) { return len(zs) - width; }, prev_z, z,
                                   1e-13 * std::max(1.0, hi)));
        prev_z = z;
        prev_v = v;
    }
    return roots;
}

}  // namespace detail

// Global minimum over the admissible surface branches for a strip of the
// given width: the connected U-shaped surface, and behind a hard wall also
// the pair of straight drops onto the wall. Ties go to the connected branch.
inline StripEntropy entropy_of_strip(const BulkGeometry& g, double width, double eps,
                                     const QuadratureSpec& quad = {},
                                     const UnitsConvention& units = {}) {
    if (!(width > 0.0)) throw DomainError("entropy_of_strip: width must be positive");
    if (!(eps > 0.0)) throw DomainError("entropy_of_strip: cutoff must be positive");

    std::optional<TurningPointSolution> connected;
    if (g.kind == GeometryKind::Tabulated) {
        for (double zs : detail::solve_turning_points_all(g, width, quad)) {
            if (!(eps < zs)) throw DomainError("entropy_of_strip: cutoff reaches the turning point");
            const double area = regularized_strip_area(g, zs, eps, quad);
            if (!connected || area < connected->area_reg)
                connected = TurningPointSolution{zs, width, area, eps, SurfaceBranch::ConnectedU};
        }
    } else if (auto zs = detail::solve_turning_point(g, width, quad)) {
        if (!(eps < *zs)) throw DomainError("entropy_of_strip: cutoff reaches the turning point");
        connected = TurningPointSolution{*zs, width, regularized_strip_area(g, *zs, eps, quad),
                                         eps, SurfaceBranch::ConnectedU};
    }

    std::optional<TurningPointSolution> wall;
    if (g.kind == GeometryKind::HardWall)
        wall = TurningPointSolution{g.z_w, width, detail::wall_disconnected_area(g, eps), eps,
                                    SurfaceBranch::WallDisconnected};

    const TurningPointSolution* best = nullptr;
    if (connected && wall)
        best = (connected->area_reg <= wall->area_reg) ? &*connected : &*wall;
    else if (connected)
        best = &*connected;
    else if (wall)
        best = &*wall;
    else
        throw NumericsError("entropy_of_strip: no admissible surface branch");
    return {*best, best->area_reg / units.four_G_N};
}

struct BulkPoint {
    double x = 0.0;
    double z = 0.0;
};

namespace detail {

inline void require_inside_bulk(const BulkGeometry& g, const BulkPoint& p) {
    if (!(p.z > 0.0)) throw DomainError("bulk point must lie below the boundary");
    switch (g.kind) {
        case GeometryKind::BlackBrane:
            if (p.z >= g.z_h) throw DomainError("bulk point at or beyond the horizon");
            break;
        case GeometryKind::HardWall:
            if (p.z > g.z_w) throw DomainError("bulk point beyond the wall");
            break;
        case GeometryKind::Tabulated:
            if (p.z > g.profile.back().z)
                throw DomainError("bulk point beyond the sampled profile");
            break;
        default:
            break;
    }
}

inline double turning_angle(double z, double z_t) {
    return std::asin(std::min(1.0, z / z_t));
}

// Horizontal run of a slice geodesic with would-be turning depth z_t between
// the angles phi = asin(z/z_t) of its endpoints.
inline double geodesic_dx(const BulkGeometry& g, double z_t, double phi_lo, double phi_hi,
                          int nodes) {
    if (!(phi_hi > phi_lo)) return 0.0;
    return z_t * integrate_fixed(
                     [&](double phi) {
                         const double z = z_t * std::sin(phi);
                         return std::sin(phi) / std::sqrt(bulk_f(g, z));
                     },
                     phi_lo, phi_hi, nodes);
}

// Arc length between the angles phi = asin(z/z_t). The substitution
// w = ln tan(phi/2) absorbs the 1/sin(phi) boundary divergence exactly
// (dw = dphi/sin phi, sin phi = sech w), leaving a bounded integrand even for
// endpoints arbitrarily close to the boundary.
inline double geodesic_len(const BulkGeometry& g, double z_t, double phi_lo, double phi_hi,
                           const QuadratureSpec& quad) {
    if (!(phi_hi > phi_lo)) return 0.0;
    const double w_lo = std::log(std::tan(0.5 * phi_lo));
    const double w_hi = std::log(std::tan(0.5 * phi_hi));
    return integrate(
        [&](double w) { return 1.0 / std::sqrt(bulk_f(g, z_t / std::cosh(w))); }, w_lo, w_hi,
        quad);
}

}  // namespace detail

// Geodesic length between two bulk points on the constant-time slice
// (L/z)^2 (dx^2 + dz^2/f). Hyperbolic closed form when f == 1, otherwise a
// shooting solve on the conserved-momentum first integral.
inline double bulk_geodesic_distance(const BulkGeometry& g, BulkPoint p, BulkPoint q,
                                     const QuadratureSpec& quad = {}) {
    detail::require_inside_bulk(g, p);
    detail::require_inside_bulk(g, q);
    if (std::tie(q.x, q.z) < std::tie(p.x, p.z)) std::swap(p, q);  // exact symmetry
    const double dx = std::abs(q.x - p.x);
    if (dx == 0.0 && p.z == q.z) return 0.0;

    if (g.kind == GeometryKind::PureAdS || g.kind == GeometryKind::HardWall) {
        const double t = (dx * dx + (q.z - p.z) * (q.z - p.z)) / (2.0 * p.z * q.z);
        return g.L * std::log1p(t + std::sqrt(t * (2.0 + t)));  // arccosh(1 + t)
    }

    const double zs = std::min(p.z, q.z);
    const double zd = std::max(p.z, q.z);
    if (dx == 0.0) {
        // vertical line; u = ln z removes the 1/z weight
        return g.L * integrate([&](double u) { return 1.0 / std::sqrt(detail::bulk_f(g, std::exp(u))); },
                               std::log(zs), std::log(zd), quad);
    }

    constexpr int kRootNodes = 128;
    auto dx_over = [&](double z_t) {
        return detail::geodesic_dx(g, z_t, detail::turning_angle(zs, z_t), detail::kHalfPi,
                                   kRootNodes) +
               detail::geodesic_dx(g, z_t, detail::turning_angle(zd, z_t), detail::kHalfPi,
                                   kRootNodes);
    };
    auto dx_mono = [&](double z_t) {
        return detail::geodesic_dx(g, z_t, detail::turning_angle(zs, z_t),
                                   detail::turning_angle(zd, z_t), kRootNodes);
    };

    const double dx_apex = dx_over(zd);  // deeper point sitting at the turning depth
    double z_t = 0.0;
    bool over = false;
    if (dx >= dx_apex) {
        over = true;
        const double zmax = g.max_depth();
        double standoff = 0.5 * (zmax - zd);
        double hi = zmax - standoff;
        while (dx_over(hi) < dx) {
            standoff /= 16.0;
            hi = zmax - standoff;
            if (standoff < 32.0 * std::numeric_limits<double>::epsilon() * zmax)
                throw NumericsError("geodesic shooting: separation unreachable in this geometry");
        }
        z_t = (hi <= zd) ? zd
                         : brent_root([&](double zt) { return dx_over(zt) - dx; }, zd, hi,
                                      1e-13 * std::max(1.0, hi));
    } else {
        double hi = 2.0 * zd;
        while (dx_mono(hi) > dx) {
            hi *= 2.0;
            if (hi > 1e14) throw NumericsError("geodesic shooting: failed to bracket");
        }
        z_t = brent_root([&](double zt) { return dx_mono(zt) - dx; }, zd, hi,
                         1e-13 * std::max(1.0, hi));
    }

    double len = 0.0;
    if (over) {
        len = detail::geodesic_len(g, z_t, detail::turning_angle(zs, z_t), detail::kHalfPi, quad) +
              detail::geodesic_len(g, z_t, detail::turning_angle(zd, z_t), detail::kHalfPi, quad);
    } else {
        len = detail::geodesic_len(g, z_t, detail::turning_angle(zs, z_t),
                                   detail::turning_angle(zd, z_t), quad);
    }
    return g.L * len;
}

// A parametrized constant-time bulk curve, s in [0, 1].
class BulkCurve {
public:
    BulkCurve(std::function<BulkPoint(double)> eval, int samples, double apex = 0.0)
        : eval_(std::move(eval)), samples_(samples), apex_(apex) {
        if (samples_ < 64) throw DomainError("bulk curves must carry at least 64 samples");
    }

    // The boundary-anchored geodesic of the interval (x_left, x_right); the
    // connected extremal surface at d = 2.
    static BulkCurve rt_geodesic(const BulkGeometry& g, double x_left, double x_right,
                                 const QuadratureSpec& quad = {}, int samples = 96) {
        if (g.d != 2) throw DomainError("interval geodesics require d = 2");
        if (!(x_right > x_left)) throw DomainError("interval endpoints out of order");
        const double width = x_right - x_left;
        auto zs = detail::solve_turning_point(g, width, quad);
        if (!zs) throw DomainError("no connected geodesic for this interval");
        const double z_t = *zs;
        constexpr double pi = std::numbers::pi;
        std::function<BulkPoint(double)> eval;
        if (g.kind == GeometryKind::PureAdS || g.kind == GeometryKind::HardWall) {
            eval = [z_t, x_left, pi](double s) {
                const double phi = pi * s;
                return BulkPoint{x_left + z_t * (1.0 - std::cos(phi)),
                                 std::max(z_t * std::sin(phi), 1e-12)};
            };
        } else {
            BulkGeometry gc = g;
            eval = [gc, z_t, x_left, pi](double s) {
                const double phi = pi * s;
                const double x =
                    x_left + z_t * integrate_fixed(
                                       [&](double u) {
                                           return std::sin(u) /
                                                  std::sqrt(detail::bulk_f(gc, z_t * std::sin(u)));
                                       },
                                       0.0, phi, 256);
                return BulkPoint{x, std::max(z_t * std::sin(phi), 1e-12)};
            };
        }
        return BulkCurve(std::move(eval), samples, z_t);
    }

    BulkPoint at(double s) const { return eval_(std::clamp(s, 0.0, 1.0)); }
    int sample_count() const { return samples_; }
    double apex_depth() const { return apex_; }

private:
    std::function<BulkPoint(double)> eval_;
    int samples_;
    double apex_;
};

namespace detail {

inline double seg_cross(const BulkPoint& a, const BulkPoint& b, const BulkPoint& c) {
    return (b.x - a.x) * (c.z - a.z) - (b.z - a.z) * (c.x - a.x);
}

inline bool seg_on(const BulkPoint& a, const BulkPoint& b, const BulkPoint& c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.z, b.z) <= c.z && c.z <= std::max(a.z, b.z);
}

inline bool segments_intersect(const BulkPoint& p1, const BulkPoint& p2, const BulkPoint& p3,
                               const BulkPoint& p4) {
    const double d1 = seg_cross(p3, p4, p1);
    const double d2 = seg_cross(p3, p4, p2);
    const double d3 = seg_cross(p1, p2, p3);
    const double d4 = seg_cross(p1, p2, p4);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && seg_on(p3, p4, p1)) return true;
    if (d2 == 0 && seg_on(p3, p4, p2)) return true;
    if (d3 == 0 && seg_on(p1, p2, p3)) return true;
    if (d4 == 0 && seg_on(p1, p2, p4)) return true;
    return false;
}

inline bool polylines_intersect(const std::vector<BulkPoint>& a, const std::vector<BulkPoint>& b) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < b.size(); ++j)
            if (segments_intersect(a[i], a[i + 1], b[j], b[j + 1])) return true;
    return false;
}

}  // namespace detail

// Minimum geodesic distance between two disjoint curves: a coarse scan over
// the curves' samples, then alternating golden-section refinement on the two
// parameters until both steps are below 1e-10.
inline double min_distance_between_curves(const BulkGeometry& g, const BulkCurve& c1,
                                          const BulkCurve& c2, const QuadratureSpec& quad = {}) {
    const int n1 = c1.sample_count();
    const int n2 = c2.sample_count();
    if (n1 < 64 || n2 < 64)
        throw DomainError("min_distance_between_curves: need at least 64 samples per curve");

    std::vector<BulkPoint> a(n1), b(n2);
    for (int i = 0; i < n1; ++i) a[i] = c1.at(i / double(n1 - 1));
    for (int j = 0; j < n2; ++j) b[j] = c2.at(j / double(n2 - 1));
    if (detail::polylines_intersect(a, b))
        throw DomainError("min_distance_between_curves: curves intersect");

    QuadratureSpec coarse;
    coarse.node_count = 64;
    coarse.rel_tol = 1e-6;
    int bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const double dij = bulk_geodesic_distance(g, a[i], b[j], coarse);
            if (dij < best) {
                best = dij;
                bi = i;
                bj = j;
            }
        }
    }

    const double s_lo = std::max(0, bi - 1) / double(n1 - 1);
    const double s_hi = std::min(n1 - 1, bi + 1) / double(n1 - 1);
    const double t_lo = std::max(0, bj - 1) / double(n2 - 1);
    const double t_hi = std::min(n2 - 1, bj + 1) / double(n2 - 1);
    double s = bi / double(n1 - 1);
    double t = bj / double(n2 - 1);
    auto dist = [&](double ss, double tt) {
        return bulk_geodesic_distance(g, c1.at(ss), c2.at(tt), quad);
    };
    constexpr double kStep = 1e-10;
    for (int round = 0; round < 64; ++round) {
        const double s_new = golden_min([&](double ss) { return dist(ss, t); }, s_lo, s_hi, kStep);
        const double t_new = golden_min([&](double tt) { return dist(s_new, tt); }, t_lo, t_hi, kStep);
        const bool settled = std::abs(s_new - s) < kStep && std::abs(t_new - t) < kStep;
        s = s_new;
        t = t_new;
        if (settled) break;
    }
    const double result = dist(s, t);
    if (result < 1e-9) throw DomainError("min_distance_between_curves: curves touch");
    return result;
}

}  // namespace holo

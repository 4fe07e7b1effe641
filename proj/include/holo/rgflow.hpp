#pragma once

// Parameter sweeps along RG-flow proxies, transition location by bisection on
// the discrete phase tag, finite-difference rates, and the critical-exponent
// map nu = 1 / sqrt(m^2 + 1/L^2).

#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "holo/measures.hpp"

namespace holo {

enum class SweepParameter { GapSize, IntervalLength, HorizonDepth, WallDepth, ProbeDepth };

enum class MeasureKind { Entropy, MutualInformation, NegativityProxy, Multipartite };

struct MeasureSelection {
    bool entropy = false;
    bool mi = false;
    bool negativity = false;
    bool multipartite = false;

    bool any() const { return entropy || mi || negativity || multipartite; }

    static MeasureSelection of(MeasureKind k) {
        MeasureSelection s;
        switch (k) {
            case MeasureKind::Entropy: s.entropy = true; break;
            case MeasureKind::MutualInformation: s.mi = true; break;
            case MeasureKind::NegativityProxy: s.negativity = true; break;
            case MeasureKind::Multipartite: s.multipartite = true; break;
        }
        return s;
    }
};

struct ScanRecord {
    double parameter_value = 0.0;
    std::optional<double> entropy;
    std::optional<double> mi;
    std::optional<double> negativity_proxy;
    std::optional<double> multipartite;
    std::optional<double> rate;
    Phase phase = Phase::Disconnected;
    std::optional<std::string> error;
};

struct SweepSpec {
    SweepParameter parameter = SweepParameter::GapSize;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;  // grid points, endpoints included
    BulkGeometry geometry;
    IntervalSet intervals;
    double cutoff = 1e-2;
    QuadratureSpec quad{};
    UnitsConvention units{};
};

namespace detail {

struct SweepPoint {
    BulkGeometry geometry;
    IntervalSet intervals;
};

// Substitute the scan parameter into the fixed configuration. Gap sweeps keep
// the interval lengths, length sweeps keep the gaps, depth sweeps adjust the
// geometry, and probe-depth sweeps set every interval to the width subtended
// by a surface turning at that depth (the size dual to the scale mu = 1/z).
inline SweepPoint substitute(const SweepSpec& spec, double v) {
    BulkGeometry g = spec.geometry;
    std::vector<double> lengths = spec.intervals.lengths();
    std::vector<double> gaps = spec.intervals.gaps();
    const double origin = spec.intervals.size() ? spec.intervals[0].a : 0.0;
    switch (spec.parameter) {
        case SweepParameter::GapSize:
            if (!(v > 0.0)) throw DomainError("gap size must be positive");
            for (double& gp : gaps) gp = v;
            break;
        case SweepParameter::IntervalLength:
            if (!(v > 0.0)) throw DomainError("interval length must be positive");
            for (double& ln : lengths) ln = v;
            break;
        case SweepParameter::HorizonDepth:
            if (g.kind != GeometryKind::BlackBrane)
                throw DomainError("horizon-depth sweep requires a black brane");
            g.z_h = v;
            break;
        case SweepParameter::WallDepth:
            if (g.kind != GeometryKind::HardWall)
                throw DomainError("wall-depth sweep requires a hard wall");
            g.z_w = v;
            break;
        case SweepParameter::ProbeDepth: {
            const double w = width_of_turning_point(g, v, spec.quad);
            for (double& ln : lengths) ln = w;
            break;
        }
    }
    validate_geometry(g);
    return {std::move(g), IntervalSet::from_lengths_gaps(lengths, gaps, origin)};
}

inline ScanRecord evaluate_point(const SweepSpec& spec, double v, const MeasureSelection& sel) {
    ScanRecord rec;
    rec.parameter_value = v;
    try {
        const SweepPoint pt = substitute(spec, v);
        const BulkGeometry& g = pt.geometry;
        const IntervalSet& ivs = pt.intervals;
        std::optional<Phase> phase;
        if (sel.entropy) {
            const StripEntropy s =
                cached_strip_entropy(g, ivs[0].length(), spec.cutoff, spec.quad, spec.units);
            rec.entropy = s.entropy;
            phase = (s.surface.branch == SurfaceBranch::ConnectedU) ? Phase::Connected
                                                                    : Phase::Disconnected;
        }
        if (sel.mi || sel.negativity) {
            if (ivs.size() < 2) throw DomainError("bipartite measures need two intervals");
            const MeasureResult m =
                mutual_information(g, ivs[0], ivs[1], spec.cutoff, spec.quad, spec.units);
            if (sel.mi) rec.mi = m.value;
            phase = m.phase;  // the bipartite phase outranks the single-strip branch
            if (sel.negativity)
                rec.negativity_proxy =
                    negativity_proxy(g, ivs[0], ivs[1], spec.quad, spec.units).value;
        }
        if (sel.multipartite) {
            if (ivs.size() < 3) throw DomainError("multipartite measures need three intervals");
            rec.multipartite = multipartite_correlation(g, ivs[0], ivs[1], ivs[2], spec.cutoff,
                                                        spec.quad, spec.units);
            if (!phase)
                phase = union_entropy_intervals(g, IntervalSet({ivs[0], ivs[1], ivs[2]}),
                                                spec.cutoff, spec.quad, spec.units)
                            .phase;
        }
        rec.phase = phase.value_or(Phase::Disconnected);
    } catch (const Error& e) {
        rec.error = e.what();
    }
    return rec;
}

}  // namespace detail

// Evaluate the requested measures on the inclusive grid start..stop. Grid
// points are independent; with parallelism != 1 they are computed by a small
// worker pool and assembled in ascending order, so the output is bitwise
// identical to a serial run. Failed points carry a record-level error.
inline std::vector<ScanRecord> scan_measure(const SweepSpec& spec, const MeasureSelection& sel,
                                            int parallelism = 0) {
    if (spec.steps < 2) throw ScanError("a sweep needs at least 2 steps");
    if (!(spec.stop > spec.start)) throw ScanError("a sweep needs start < stop");
    if (!sel.any()) throw ScanError("no measures requested");

    const int n = spec.steps;
    std::vector<double> grid(n);
    const double h = (spec.stop - spec.start) / double(n - 1);
    for (int i = 0; i < n; ++i) grid[i] = spec.start + i * h;

    std::vector<ScanRecord> out(n);
    int workers = parallelism > 0 ? parallelism : int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) out[i] = detail::evaluate_point(spec, grid[i], sel);
    } else {
        std::atomic<int> next{0};
        auto run = [&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                out[i] = detail::evaluate_point(spec, grid[i], sel);
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    bool all_failed = true;
    for (const auto& r : out)
        if (!r.error) all_failed = false;
    if (all_failed)
        throw ScanError("every sweep point failed: " + out.front().error.value_or("unknown"));
    return out;
}

namespace detail {

inline Phase phase_at(const SweepSpec& spec, MeasureKind kind, double v) {
    const SweepPoint pt = substitute(spec, v);
    const BulkGeometry& g = pt.geometry;
    const IntervalSet& ivs = pt.intervals;
    switch (kind) {
        case MeasureKind::Entropy: {
            const StripEntropy s =
                cached_strip_entropy(g, ivs[0].length(), spec.cutoff, spec.quad, spec.units);
            return (s.surface.branch == SurfaceBranch::ConnectedU) ? Phase::Connected
                                                                   : Phase::Disconnected;
        }
        case MeasureKind::MutualInformation:
        case MeasureKind::NegativityProxy: {
            // the proxy inherits the mutual-information phase by construction
            if (ivs.size() < 2) throw DomainError("bipartite measures need two intervals");
            return mutual_information(g, ivs[0], ivs[1], spec.cutoff, spec.quad, spec.units).phase;
        }
        case MeasureKind::Multipartite: {
            if (ivs.size() < 3) throw DomainError("multipartite measures need three intervals");
            return union_entropy_intervals(g, IntervalSet({ivs[0], ivs[1], ivs[2]}), spec.cutoff,
                                           spec.quad, spec.units)
                .phase;
        }
    }
    throw DomainError("unknown measure kind");
}

}  // namespace detail

// Bisection on the discrete phase tag to absolute parameter tolerance 1e-8.
// The phase flip is sharp where measure magnitudes vanish continuously.
inline double locate_transition(const SweepSpec& spec, MeasureKind kind, double lo, double hi) {
    if (!(hi > lo)) throw BracketError("locate_transition: bracket endpoints out of order");
    const Phase plo = detail::phase_at(spec, kind, lo);
    const Phase phi = detail::phase_at(spec, kind, hi);
    if (plo == phi) throw BracketError("locate_transition: same phase at both bracket ends");
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (detail::phase_at(spec, kind, mid) == plo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Central differences in the interior, second-order one-sided at the ends.
// Requires at least 3 records on a uniform grid with the field present.
inline std::vector<ScanRecord> finite_difference_rate(std::vector<ScanRecord> records,
                                                      MeasureKind field) {
    const std::size_t n = records.size();
    if (n < 3) throw DomainError("finite differences need at least 3 records");
    auto value = [&](const ScanRecord& r) -> double {
        const std::optional<double>* p = nullptr;
        switch (field) {
            case MeasureKind::Entropy: p = &r.entropy; break;
            case MeasureKind::MutualInformation: p = &r.mi; break;
            case MeasureKind::NegativityProxy: p = &r.negativity_proxy; break;
            case MeasureKind::Multipartite: p = &r.multipartite; break;
        }
        if (!p || !p->has_value()) throw DomainError("record lacks the requested field");
        return **p;
    };
    for (const auto& r : records)
        if (r.error) throw DomainError("cannot differentiate a series with failed records");
    const double h = records[1].parameter_value - records[0].parameter_value;
    if (!(h != 0.0)) throw DomainError("degenerate grid spacing");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double hi = records[i + 1].parameter_value - records[i].parameter_value;
        if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw DomainError("finite differences need uniform spacing");
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = value(records[i]);
    records[0].rate = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) records[i].rate = (v[i + 1] - v[i - 1]) / (2.0 * h);
    records[n - 1].rate = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return records;
}

// nu = 1 / sqrt(m^2 + 1/L^2); below the stability bound the formula is
// undefined.
inline double critical_exponent(double m_squared, double L) {
    if (!(L > 0.0)) throw DomainError("critical_exponent: L must be positive");
    const double q = m_squared + 1.0 / (L * L);
    if (!(q > 0.0)) throw DomainError("critical_exponent: m^2 + 1/L^2 must be positive");
    return 1.0 / std::sqrt(q);
}

}  // namespace holo

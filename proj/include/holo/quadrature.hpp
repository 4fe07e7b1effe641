#pragma once

// Gauss-Legendre quadrature with a node-doubling convergence check. Every
// reported integral is accepted only once doubling the rule changes it by
// less than the requested relative tolerance.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "holo/errors.hpp"

namespace holo {

struct QuadratureSpec {
    int node_count = 256;  // starting rule size, at least 16
    enum class Substitution { TrigEndpoint } substitution = Substitution::TrigEndpoint;
    double rel_tol = 1e-9;
};

struct GaussLegendreRule {
    std::vector<double> node;    // on [-1, 1]
    std::vector<double> weight;
};

inline constexpr int kMaxQuadratureNodes = 1 << 14;

// Nodes and weights by Newton iteration on the Legendre recurrence; rules are
// built once and memoized.
inline const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    constexpr double pi = 3.141592653589793238462643383279502884;
    GaussLegendreRule rule;
    rule.node.resize(n);
    rule.weight.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        double x_prev;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (x * p1 - p2) / (x * x - 1.0);
            x_prev = x;
            x -= p1 / pp;
        } while (std::abs(x - x_prev) > 1e-15);
        rule.node[i] = -x;
        rule.node[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weight[i] = w;
        rule.weight[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

// Single fixed-size rule, no convergence check. Endpoints are never sampled.
template <typename F>
double integrate_fixed(F&& f, double a, double b, int n) {
    if (a == b) return 0.0;
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weight[i] * f(mid + half * rule.node[i]);
    return acc * half;
}

// Integrate f over [a, b], doubling the rule until two successive results
// agree to spec.rel_tol relative; NumericsError if the node cap is reached.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (!(b >= a)) throw DomainError("integrate: inverted range");
    if (a == b) return 0.0;
    int n = std::max(spec.node_count, 16);
    double prev = integrate_fixed(f, a, b, n);
    while (n < kMaxQuadratureNodes) {
        n *= 2;
        const double cur = integrate_fixed(f, a, b, n);
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        if (std::abs(cur - prev) <= spec.rel_tol * scale) return cur;
        prev = cur;
    }
    throw NumericsError("integrate: no convergence at " + std::to_string(kMaxQuadratureNodes) +
                        " nodes");
}

}  // namespace holo

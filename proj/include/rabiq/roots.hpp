// rabiq/roots.hpp - guarded scan-and-bisect root finder for condition functions
#pragma once

#include <rabiq/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rabiq {

template <class Real = double>
struct ScanConfig {
    Real step{Real(0.04)};           // sampling resolution between poles
    Real bisection_tol{Real(1e-12)}; // bracket width at which bisection stops
    Real pole_guard{Real(1e-6)};     // exclusion half-width around each pole
    int max_bisections{200};

    void validate() const {
        if (!(step > Real(0) && step < Real(0.25)))
            throw std::domain_error("scan step must lie in (0, 0.25)");
        if (!(bisection_tol > Real(0) && bisection_tol <= Real(1e-10)))
            throw std::domain_error("bisection tolerance must lie in (0, 1e-10]");
        if (!(pole_guard > Real(0))) throw std::domain_error("pole guard must be > 0");
        if (max_bisections < 60) throw std::domain_error("bisection iteration cap too small");
    }
};

template <class Real = double>
struct ScanResult {
    std::vector<Real> roots;                        // polished, ascending
    std::vector<Real> exceptional;                  // roots that landed inside a guard ring
    std::vector<std::pair<Real, Real>> unscanned;   // guard zones and failed evaluations
    std::vector<std::pair<std::pair<Real, Real>, int>> segment_counts;
    long evaluations{0};
};

// Samples f on [lo, hi] segmented at the supplied poles, with geometric
// refinement toward segment ends (roots crowd the poles near degeneracies),
// then bisects every sign change. Evaluations that throw or return NaN mark
// the surrounding interval unscanned instead of aborting the scan.
template <class Real, class F>
ScanResult<Real> scan_roots(F&& f, Real lo, Real hi, const ScanConfig<Real>& cfg = {},
                            const std::vector<Real>& poles = {}) {
    cfg.validate();
    if (!(hi > lo)) throw std::domain_error("scan range must be nonempty");
    const Real guard = cfg.pole_guard;
    ScanResult<Real> result;
    long evals = 0;
    auto safe_eval = [&](Real x) -> Real {
        ++evals;
        try {
            return static_cast<Real>(f(x));
        } catch (...) {
            return std::numeric_limits<Real>::quiet_NaN();
        }
    };

    std::vector<Real> ps;
    for (Real p : poles)
        if (p > lo - 1 && p < hi + 1) ps.push_back(p);
    std::sort(ps.begin(), ps.end());

    std::vector<Real> edges{lo};
    for (Real p : ps)
        if (p > lo && p < hi) edges.push_back(p);
    edges.push_back(hi);

    auto near_pole = [&](Real x, Real within) {
        for (Real p : ps)
            if (std::abs(x - p) < within) return true;
        return false;
    };

    struct Bracket {
        Real lo, hi, flo;
    };
    std::vector<Bracket> brackets;
    std::vector<Real> exact_hits;

    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        Real u = edges[e], v = edges[e + 1];
        if (near_pole(u, guard * Real(0.5))) {
            result.unscanned.emplace_back(u, std::min(u + guard, v));
            u += guard;
        }
        if (near_pole(v, guard * Real(0.5))) {
            result.unscanned.emplace_back(std::max(v - guard, u), v);
            v -= guard;
        }
        if (!(v > u)) continue;

        std::vector<Real> pts;
        const int base = std::max(3, static_cast<int>(std::ceil((v - u) / cfg.step)) + 1);
        pts.reserve(base + 16);
        for (int i = 0; i < base; ++i)
            pts.push_back(u + (v - u) * Real(i) / Real(base - 1));
        for (Real w = guard; w < Real(0.45) * (v - u); w *= 8) {
            pts.push_back(u + w);
            pts.push_back(v - w);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

        std::vector<Real> fv(pts.size());
        parallel_for(static_cast<int>(pts.size()), [&](int i) { fv[i] = safe_eval(pts[i]); });

        int seg_roots = 0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Real fu = fv[i], fw = fv[i + 1];
            if (std::isnan(fu) || std::isnan(fw)) {
                result.unscanned.emplace_back(pts[i], pts[i + 1]);
                continue;
            }
            if (fu == Real(0)) {
                exact_hits.push_back(pts[i]);
                ++seg_roots;
                continue;
            }
            if (fu * fw < Real(0)) {
                brackets.push_back({pts[i], pts[i + 1], fu});
                ++seg_roots;
            }
        }
        if (!pts.empty() && fv.back() == Real(0) && (pts.size() < 2 || fv[pts.size() - 2] != Real(0))) {
            exact_hits.push_back(pts.back());
            ++seg_roots;
        }
        result.segment_counts.push_back({{u, v}, seg_roots});
    }

    std::vector<Real> polished(brackets.size(),
                               std::numeric_limits<Real>::quiet_NaN());
    parallel_for(static_cast<int>(brackets.size()), [&](int bi) {
        Real blo = brackets[bi].lo, bhi = brackets[bi].hi, flo = brackets[bi].flo;
        for (int it = 0; it < cfg.max_bisections; ++it) {
            const Real mid = (blo + bhi) / 2;
            Real fm;
            try {
                fm = static_cast<Real>(f(mid));
            } catch (...) {
                fm = std::numeric_limits<Real>::quiet_NaN();
            }
            if (std::isnan(fm)) return;  // leaves NaN: recorded as unscanned below
            if (fm == Real(0) || bhi - blo < cfg.bisection_tol) break;
            if (flo * fm < Real(0)) {
                bhi = mid;
            } else {
                blo = mid;
                flo = fm;
            }
        }
        polished[bi] = (blo + bhi) / 2;
    });
    result.evaluations = evals + static_cast<long>(brackets.size()) * cfg.max_bisections;

    std::vector<Real> all = std::move(exact_hits);
    for (std::size_t bi = 0; bi < polished.size(); ++bi) {
        if (std::isnan(polished[bi])) {
            result.unscanned.emplace_back(brackets[bi].lo, brackets[bi].hi);
            continue;
        }
        all.push_back(polished[bi]);
    }
    std::sort(all.begin(), all.end());
    for (Real r : all) {
        if (near_pole(r, guard * (1 + Real(1e-6))))
            result.exceptional.push_back(r);
        else
            result.roots.push_back(r);
    }
    std::sort(result.unscanned.begin(), result.unscanned.end());
    return result;
}

// Occupancy of the unit intervals [n, n+1) covering [lo, hi); used for the
// interval-count diagnostics of the spectral scans.
template <class Real>
std::vector<int> unit_interval_counts(const std::vector<Real>& roots, int lo, int hi) {
    if (hi <= lo) throw std::domain_error("interval range must be nonempty");
    std::vector<int> counts(static_cast<std::size_t>(hi - lo), 0);
    for (Real r : roots) {
        const int n = static_cast<int>(std::floor(r));
        if (n >= lo && n < hi) counts[static_cast<std::size_t>(n - lo)]++;
    }
    return counts;
}

} // namespace rabiq

// rabiq/spectrum.hpp - spectral scans and exceptional (quasi-exact) points
#pragma once

#include <rabiq/heun.hpp>
#include <rabiq/model.hpp>
#include <rabiq/roots.hpp>
#include <rabiq/series.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace rabiq {

enum class LevelKind { regular, exceptional_degenerate, exceptional_candidate };

inline const char* to_string(LevelKind k) {
    switch (k) {
        case LevelKind::regular: return "regular";
        case LevelKind::exceptional_degenerate: return "exceptional-degenerate";
        default: return "exceptional-candidate";
    }
}

template <class Real = double>
struct Level {
    Real x{};       // shifted spectral variable seen by the scan
    Real energy{};  // physical units
    int parity{0};  // +1/-1 where parity is conserved, 0 otherwise
    TpClass tp_class{TpClass::p1};
    bool has_class{false};
    LevelKind kind{LevelKind::regular};

    std::string sector_label() const {
        if (has_class) return to_string(tp_class);
        if (parity > 0) return "P+";
        if (parity < 0) return "P-";
        return "A";
    }
};

template <class Real = double>
struct SpectrumOptions {
    int count{10};
    Real x_lo{std::numeric_limits<Real>::quiet_NaN()};  // NaN: derived from the model
    Real x_hi{std::numeric_limits<Real>::quiet_NaN()};
    ScanConfig<Real> scan{};
    Real series_tol{Real(1e-13)};
    Real exceptional_tol{Real(1e-9)};  // constraint residual flagging a baseline level
    int max_extensions{12};
};

namespace detail {

template <class Real>
void append_scan_levels(std::vector<Level<Real>>& out, const ScanResult<Real>& sr, Real omega,
                        Real energy_shift, int parity) {
    for (Real r : sr.roots)
        out.push_back({r, (r - energy_shift) * omega, parity, TpClass::p1, false,
                       LevelKind::regular});
    for (Real r : sr.exceptional)
        out.push_back({r, (r - energy_shift) * omega, parity, TpClass::p1, false,
                       LevelKind::exceptional_candidate});
}

// Scans one window of the spectral variable and returns all levels found
// inside it. energy_shift is the offset x - E in scaled units.
template <class Real>
std::vector<Level<Real>> scan_window(const BasicParams<Real>& p, Real lo, Real hi,
                                     const SpectrumOptions<Real>& opt) {
    const auto s = p.scaled();
    const Real delta = s.delta, g = s.g;
    std::vector<Level<Real>> out;

    if (p.variant == Variant::rabi || p.variant == Variant::anisotropic) {
        const Real lambda = (p.variant == Variant::anisotropic) ? s.lambda : Real(1);
        const Real shift =
            (p.variant == Variant::anisotropic) ? aniso_shift(delta, g, lambda) : g * g;
        std::vector<Real> poles =
            (p.variant == Variant::anisotropic)
                ? aniso_poles(delta, g, lambda, lo - 1, hi + 1, opt.scan.pole_guard)
                : std::vector<Real>{};
        if (p.variant == Variant::rabi)
            for (int n = 0; n <= static_cast<int>(std::ceil(hi)) + 1; ++n)
                poles.push_back(Real(n));

        for (int sign : {+1, -1}) {
            auto fn = [&](Real x) {
                return (p.variant == Variant::anisotropic)
                           ? aniso_g(x, sign, delta, g, lambda, opt.series_tol,
                                     opt.scan.pole_guard)
                                 .value
                           : braak_g(x, sign, delta, g, opt.series_tol, opt.scan.pole_guard)
                                 .value;
            };
            auto sr = scan_roots(fn, lo, hi, opt.scan, poles);
            // G_+ vanishes on the odd-parity levels, G_- on the even ones.
            append_scan_levels(out, sr, p.omega, shift, -sign);
        }

        if (p.variant == Variant::rabi) {
            // Levels pinned to the baseline E = n - g^2 sit on a pole of G and
            // are invisible to the scan; detect them from the pole constraint
            // and insert the degenerate pair directly.
            for (int n = std::max(1, static_cast<int>(std::ceil(lo)));
                 n <= static_cast<int>(std::floor(hi)); ++n) {
                if (std::abs(judd_constraint(n, delta, g)) >= opt.exceptional_tol) continue;
                const Real xn = Real(n);
                auto near = [&](const Level<Real>& l) {
                    return l.kind != LevelKind::exceptional_degenerate &&
                           std::abs(l.x - xn) < 10 * opt.scan.pole_guard;
                };
                out.erase(std::remove_if(out.begin(), out.end(), near), out.end());
                for (int par : {+1, -1})
                    out.push_back({xn, (xn - g * g) * p.omega, par, TpClass::p1, false,
                                   LevelKind::exceptional_degenerate});
            }
        }
    } else if (p.variant == Variant::asymmetric) {
        const Real eps = s.epsilon;
        std::vector<Real> poles;
        for (int n = 0; n <= static_cast<int>(std::ceil(hi + std::abs(eps))) + 1; ++n) {
            poles.push_back(Real(n) + eps);
            poles.push_back(Real(n) - eps);
        }
        auto fn = [&](Real x) {
            return asym_g(x, delta, g, eps, opt.series_tol, opt.scan.pole_guard).value;
        };
        auto sr = scan_roots(fn, lo, hi, opt.scan, poles);
        append_scan_levels(out, sr, p.omega, g * g, 0);

        for (int n = 1; n <= static_cast<int>(std::floor(hi + std::abs(eps))); ++n) {
            for (int sg : {+1, -1}) {
                const Real xp = Real(n) + Real(sg) * eps;
                if (xp < lo || xp > hi) continue;
                if (std::abs(asym_judd_constraint(n, sg, delta, g, eps)) >= opt.exceptional_tol)
                    continue;
                // Drop scanned roots swallowed by the pole, but keep levels
                // already inserted for a coinciding baseline (at eps = omega/2
                // two baselines cross at the same point and both count).
                auto near = [&](const Level<Real>& l) {
                    return l.kind != LevelKind::exceptional_degenerate &&
                           std::abs(l.x - xp) < 10 * opt.scan.pole_guard;
                };
                out.erase(std::remove_if(out.begin(), out.end(), near), out.end());
                out.push_back({xp, (xp - g * g) * p.omega, 0, TpClass::p1, false,
                               LevelKind::exceptional_degenerate});
            }
        }
    } else {  // two-photon: G_C is entire in E, scanned per invariant class
        const Real z = twophoton_z(g);
        for (TpClass cls : {TpClass::p1, TpClass::m1, TpClass::pi, TpClass::mi}) {
            auto fn = [&](Real e) { return twophoton_g(e, cls, delta, g, 256, z).value; };
            auto sr = scan_roots(fn, lo, hi, opt.scan, {});
            const int par = (cls == TpClass::p1 || cls == TpClass::m1) ? +1 : -1;
            for (Real r : sr.roots)
                out.push_back({r, r * p.omega, par, cls, true, LevelKind::regular});
            for (Real r : sr.exceptional)
                out.push_back({r, r * p.omega, par, cls, true,
                               LevelKind::exceptional_candidate});
        }
    }
    return out;
}

template <class Real>
Real default_x_lo(const BasicParams<Real>& p) {
    const auto s = p.scaled();
    switch (p.variant) {
        case Variant::rabi:
            return -s.delta - Real(0.5);
        case Variant::asymmetric:
            return -std::hypot(s.delta, s.epsilon) - Real(0.5);
        case Variant::anisotropic: {
            const Real reach = (1 + s.lambda) * (1 + s.lambda) * s.g * s.g;
            return -s.delta - reach - std::abs(aniso_shift(s.delta, s.g, s.lambda)) - 1;
        }
        default:
            return -s.delta - 1;
    }
}

} // namespace detail

// Lowest `count` levels by energy, found by scanning the variant's condition
// functions and inserting any baseline (pole-pinned) levels the scan cannot
// see. The window is widened until enough levels accumulate.
template <class Real>
std::vector<Level<Real>> regular_spectrum(const BasicParams<Real>& p,
                                          const SpectrumOptions<Real>& opt = {}) {
    p.validate();
    opt.scan.validate();
    if (!(p.g > Real(0))) throw std::domain_error("spectral scan requires g > 0");
    if (opt.count < 1) throw std::domain_error("level count must be >= 1");

    const Real lo = std::isnan(opt.x_lo) ? detail::default_x_lo(p) : opt.x_lo;
    Real span;
    if (p.variant == Variant::twophoton) {
        const Real sq = std::sqrt(1 - 4 * p.scaled().g * p.scaled().g);
        span = std::max(Real(2), Real(opt.count) * (sq / 4 + Real(0.05)) + 2);
    } else {
        span = Real(opt.count) * Real(0.75) + 3;
    }
    Real hi = std::isnan(opt.x_hi) ? lo + span : opt.x_hi;
    const bool fixed_hi = !std::isnan(opt.x_hi);

    for (int ext = 0;; ++ext) {
        auto levels = detail::scan_window(p, lo, hi, opt);
        std::stable_sort(levels.begin(), levels.end(),
                         [](const Level<Real>& a, const Level<Real>& b) {
                             return a.energy < b.energy;
                         });
        if (static_cast<int>(levels.size()) >= opt.count || fixed_hi) {
            if (!fixed_hi) levels.resize(static_cast<std::size_t>(opt.count));
            return levels;
        }
        if (ext >= opt.max_extensions)
            throw convergence_error("spectral scan window extension limit reached");
        hi += (p.variant == Variant::twophoton) ? std::max(Real(1), span / 2) : Real(4);
    }
}

// ---------------------------------------------------------------------------
// Exceptional (quasi-exact) points on the baselines E = n - g^2 (+ s*eps).

template <class Real = double>
struct JuddPoint {
    int n{};            // baseline index
    int s{0};           // baseline branch (asymmetric model only)
    Real g{};           // coupling at the crossing
    Real energy{};      // baseline energy in physical units
    Real constraint{};  // pole-constraint residual at g (should be ~0)
    Real truncation{};  // truncation-route residual at g (symmetric model)
};

// Degenerate baseline crossings of the symmetric model. Located as zeros of
// the pole constraint and confirmed against the independent series-truncation
// route; disagreement beyond 1e-9 is a hard numerical failure.
template <class Real>
std::vector<JuddPoint<Real>> judd_points(int n, Real delta, Real g_lo, Real g_hi,
                                         Real omega = Real(1),
                                         const ScanConfig<Real>& scan = {}) {
    if (!(omega > Real(0))) throw std::domain_error("omega must be > 0");
    if (!(delta >= Real(0))) throw std::domain_error("delta must be >= 0");
    if (n < 0) throw std::domain_error("baseline index must be >= 0");
    if (!(g_lo > Real(0) && g_hi > g_lo)) throw std::domain_error("need 0 < g_lo < g_hi");
    if (n == 0) return {};  // the constraint is identically 1 on the n = 0 baseline

    const Real dl = delta / omega;
    auto fk = [&](Real g) { return judd_constraint(n, dl, g / omega); };
    auto ft = [&](Real g) { return truncation_residual(n, dl, g / omega); };
    auto rk = scan_roots(fk, g_lo, g_hi, scan, {});
    auto rt = scan_roots(ft, g_lo, g_hi, scan, {});
    if (rk.roots.size() != rt.roots.size())
        throw convergence_error("exceptional-point routes found different root counts");

    std::vector<JuddPoint<Real>> out;
    for (Real gk : rk.roots) {
        Real best = std::numeric_limits<Real>::infinity();
        for (Real gt : rt.roots) best = std::min(best, std::abs(gk - gt));
        if (best > Real(1e-9) * std::max(Real(1), std::abs(gk)))
            throw convergence_error("exceptional-point routes disagree");
        const Real gs = gk / omega;
        out.push_back({n, 0, gk, (Real(n) - gs * gs) * omega, fk(gk), ft(gk)});
    }
    return out;
}

// Baseline crossings of the asymmetric model on E = n - g^2 + s*eps.
template <class Real>
std::vector<JuddPoint<Real>> asym_judd_points(int n, int s, Real delta, Real eps, Real g_lo,
                                              Real g_hi, Real omega = Real(1),
                                              const ScanConfig<Real>& scan = {}) {
    if (!(omega > Real(0))) throw std::domain_error("omega must be > 0");
    if (!(delta >= Real(0))) throw std::domain_error("delta must be >= 0");
    if (n < 0) throw std::domain_error("baseline index must be >= 0");
    if (s != 1 && s != -1) throw std::domain_error("baseline branch must be +1 or -1");
    if (!(g_lo > Real(0) && g_hi > g_lo)) throw std::domain_error("need 0 < g_lo < g_hi");
    if (n == 0) return {};

    const Real dl = delta / omega, el = eps / omega;
    auto fn = [&](Real g) { return asym_judd_constraint(n, s, dl, g / omega, el); };
    auto sr = scan_roots(fn, g_lo, g_hi, scan, {});
    std::vector<JuddPoint<Real>> out;
    for (Real gk : sr.roots) {
        const Real gs = gk / omega;
        out.push_back({n, s, gk, (Real(n) - gs * gs + Real(s) * el) * omega, fn(gk), Real(0)});
    }
    return out;
}

template <class Real = double>
struct TpExceptional {
    int n{};      // polynomial degree parameter of the closed form
    int family{};  // 1: E = -1/2 + (n + 1/2) s, 2: E = -1/2 + n s
    int branch{};  // distinguishes multiple g roots within one family
    Real g{};
    Real energy{};
};

// Closed-form exceptional couplings of the two-photon model for the tabulated
// low-lying cases; values outside (0, 1/2) are discarded as unphysical.
template <class Real>
std::vector<TpExceptional<Real>> twophoton_exceptional(int n, Real delta, int family,
                                                       Real omega = Real(1)) {
    if (!(omega > Real(0))) throw std::domain_error("omega must be > 0");
    if (!(delta >= Real(0))) throw std::domain_error("delta must be >= 0");
    const Real d = delta / omega, d2 = d * d;
    std::vector<std::pair<int, Real>> gsq;  // (branch, g^2)

    if (family == 1) {
        if (n == 2) {
            gsq.push_back({0, Real(1) / 6 - d2 / 24});
        } else if (n == 3) {
            gsq.push_back({0, Real(1) / 10 - d2 / 40});
        } else if (n == 4) {
            const Real b = Real(17) * d2 / 560 - Real(2) / 7;
            const Real c = d2 * d2 / 4480 - d2 / 224 + Real(1) / 70;
            const Real disc = b * b - 4 * c;
            if (disc >= Real(0)) {
                gsq.push_back({0, (-b - std::sqrt(disc)) / 2});
                gsq.push_back({1, (-b + std::sqrt(disc)) / 2});
            }
        } else {
            throw std::domain_error("no tabulated closed form for this degree");
        }
    } else if (family == 2) {
        if (n == 2) {
            gsq.push_back({0, (4 * d2 - 9) * (1 - 4 * d2) / (256 * d2)});
        } else if (n == 3) {
            gsq.push_back({0, (5 + 2 * d) * (3 - 2 * d) * (2 * d - 1) / (256 * d)});
            gsq.push_back({1, (5 - 2 * d) * (2 * d + 3) * (1 + 2 * d) / (256 * d)});
        } else {
            throw std::domain_error("no tabulated closed form for this degree");
        }
    } else {
        throw std::domain_error("exceptional family must be 1 or 2");
    }

    std::vector<TpExceptional<Real>> out;
    for (auto [br, u] : gsq) {
        if (!(u > Real(0)) || !std::isfinite(u)) continue;
        const Real g = std::sqrt(u);
        if (!(g < Real(0.5))) continue;
        const Real sq = std::sqrt(1 - 4 * u);
        const Real e = (family == 1) ? (-Real(0.5) + (Real(n) + Real(0.5)) * sq)
                                     : (-Real(0.5) + Real(n) * sq);
        out.push_back({n, family, br, g * omega, e * omega});
    }
    std::sort(out.begin(), out.end(),
              [](const TpExceptional<Real>& a, const TpExceptional<Real>& b) {
                  return a.g < b.g;
              });
    return out;
}

} // namespace rabiq

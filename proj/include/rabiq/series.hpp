// rabiq/series.hpp - three-term-recurrence G functions for all model variants
#pragma once

#include <rabiq/model.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rabiq {

// Evaluation point too close to a series pole; callers treat the location as
// an exceptional-point candidate rather than a root-polishing region.
struct pole_proximity_error : std::domain_error {
    using std::domain_error::domain_error;
};

template <class Real = double>
struct GEval {
    Real value{0};
    int terms{0};
    Real tail{0};  // largest late-term magnitude relative to the cap window
    bool converged{true};

    operator Real() const { return value; }
};

namespace detail {

// Rolling window of the last five term magnitudes for tail-based convergence.
template <class Real>
struct TailWindow {
    Real t[5]{};
    int n{0};

    void push(Real v) { t[n++ % 5] = v; }
    bool small(Real floor) const {
        if (n < 5) return false;
        Real m = 0;
        for (Real v : t) m = std::max(m, v);
        return m <= floor;
    }
    Real max() const {
        Real m = 0;
        for (Real v : t) m = std::max(m, v);
        return m;
    }
};

template <class Real>
void check_integer_pole(Real x, Real guard, const char* what) {
    const Real r = std::round(x);
    if (r >= Real(0) && std::abs(x - r) < guard) throw pole_proximity_error(what);
}

} // namespace detail

// ------------------------------------------------------------- linear model --

// Coefficients K_0..K_n of the z=0 series for the symmetric model:
// K_0 = 1, K_1 = Omega(0), m K_m = Omega(m-1) K_{m-1} - K_{m-2},
// Omega(m) = (m + 4g^2 - x - delta^2/(m - x)) / 2g, x = E + g^2.
template <class Real = double>
struct KSequence {
    std::vector<Real> k;
    Real x{0};
    Real pole_proximity{0};  // min over m <= n of |x - m|
};

template <class Real = double>
KSequence<Real> k_coeffs(Real x, Real delta, Real g, int n_terms, Real guard = Real(1e-6)) {
    if (n_terms < 1) throw std::domain_error("n_terms must be >= 1");
    if (!(g > Real(0))) throw std::domain_error("g must be > 0");
    detail::check_integer_pole(x, guard, "spectral variable within pole guard of an integer");
    const Real d2 = delta * delta;
    auto omega = [&](int m) { return (Real(m) + 4 * g * g - x - d2 / (Real(m) - x)) / (2 * g); };
    KSequence<Real> seq;
    seq.x = x;
    seq.k.resize(n_terms + 1);
    seq.k[0] = 1;
    seq.k[1] = omega(0);
    seq.pole_proximity = std::abs(x);
    for (int n = 2; n <= n_terms; ++n) {
        seq.k[n] = (omega(n - 1) * seq.k[n - 1] - seq.k[n - 2]) / Real(n);
        seq.pole_proximity = std::min(seq.pole_proximity, std::abs(x - Real(n - 1)));
    }
    seq.pole_proximity = std::min(seq.pole_proximity, std::abs(x - Real(n_terms)));
    return seq;
}

// G_±(x) = Σ K_n(x) (1 ∓ delta/(x-n)) g^n; zeros are the regular spectrum of
// the parity sector mapped to `sign` (calibration: sign=+1 <-> parity -1).
template <class Real = double>
GEval<Real> braak_g(Real x, int sign, Real delta, Real g, Real series_tol = Real(1e-13),
                    Real guard = Real(1e-6), int cap = 512) {
    if (sign != 1 && sign != -1) throw std::domain_error("sign must be +1 or -1");
    if (!(g > Real(0))) throw std::domain_error("g must be > 0");
    detail::check_integer_pole(x, guard, "spectral variable within pole guard of an integer");
    const Real d2 = delta * delta;
    auto omega = [&](int m) { return (Real(m) + 4 * g * g - x - d2 / (Real(m) - x)) / (2 * g); };
    Real km2 = 1, km1 = omega(0);
    GEval<Real> out;
    out.value = (1 - Real(sign) * delta / x);
    out.value += km1 * (1 - Real(sign) * delta / (x - 1)) * g;
    out.terms = 2;
    Real gn = g;
    detail::TailWindow<Real> tail;
    for (int n = 2; n < cap; ++n) {
        const Real kn = (omega(n - 1) * km1 - km2) / Real(n);
        gn *= g;
        const Real t = kn * (1 - Real(sign) * delta / (x - Real(n))) * gn;
        out.value += t;
        out.terms = n + 1;
        tail.push(std::abs(t));
        if (tail.small(series_tol * std::max(std::abs(out.value), Real(1e-300)))) {
            out.tail = tail.max();
            return out;
        }
        km2 = km1;
        km1 = kn;
    }
    out.tail = tail.max();
    out.converged = false;
    return out;
}

// Residual K_n(x=n) of the pole line E = n - g^2; a zero in g marks a
// two-fold degenerate exceptional point (the K-recurrence route).
template <class Real = double>
Real judd_constraint(int n, Real delta, Real g) {
    if (n < 0) throw std::domain_error("level index must be >= 0");
    if (!(g > Real(0))) throw std::domain_error("g must be > 0");
    if (n == 0) return 1;  // K_0 = 1, no zeros
    const Real x = Real(n);
    const Real d2 = delta * delta;
    auto omega = [&](int m) { return (Real(m) + 4 * g * g - x - d2 / (Real(m) - x)) / (2 * g); };
    Real km1 = 1, k = omega(0);
    for (int m = 2; m <= n; ++m) {
        const Real next = (omega(m - 1) * k - km1) / Real(m);
        km1 = k;
        k = next;
        if (m % 16 == 0) {
            const Real scale = std::max(std::abs(k), std::abs(km1));
            if (scale > Real(1e100)) {
                k /= scale;
                km1 /= scale;
            }
        }
    }
    return k;
}

// --------------------------------------------------------- asymmetric model --

// G_eps(x) = delta^2 Rbar+ Rbar- − R+ R-, with the two K sequences carrying
// bias shifts of opposite sign; poles at x = n ± eps.
template <class Real = double>
GEval<Real> asym_g(Real x, Real delta, Real g, Real eps, Real series_tol = Real(1e-13),
                   Real guard = Real(1e-6), int cap = 512) {
    if (!(g > Real(0))) throw std::domain_error("g must be > 0");
    for (int s : {+1, -1})
        detail::check_integer_pole(x - Real(s) * eps, guard,
                                   "spectral variable within pole guard of n ± eps");
    const Real d2 = delta * delta;
    GEval<Real> out;
    out.value = 0;
    out.terms = 0;
    Real parts[4];  // R+, Rbar+, R-, Rbar-
    for (int idx = 0; idx < 2; ++idx) {
        const Real se = (idx == 0 ? eps : -eps);
        auto omega = [&](int m) {
            return (Real(m) + 4 * g * g - x - se - d2 / (Real(m) - x + se)) / (2 * g);
        };
        Real km1 = 1, k = omega(0);
        Real r = 1 + k * g;
        Real rbar = 1 / (x - se) + k / (x - 1 - se) * g;
        Real gn = g;
        detail::TailWindow<Real> tail;
        bool done = false;
        for (int n = 2; n < cap; ++n) {
            const Real next = (omega(n - 1) * k - km1) / Real(n);
            km1 = k;
            k = next;
            gn *= g;
            r += k * gn;
            const Real t = k / (x - Real(n) - se) * gn;
            rbar += t;
            out.terms = std::max(out.terms, n + 1);
            tail.push(std::max(std::abs(t), std::abs(k * gn)));
            if (tail.small(series_tol *
                           std::max({std::abs(r), std::abs(rbar), Real(1e-300)}))) {
                done = true;
                break;
            }
        }
        if (!done) out.converged = false;
        out.tail = std::max(out.tail, tail.max());
        parts[2 * idx] = r;
        parts[2 * idx + 1] = rbar;
    }
    out.value = d2 * parts[1] * parts[3] - parts[0] * parts[2];
    return out;
}

// Residual of the shifted pole line E = n - g^2 + s*eps (s = ±1); a zero in g
// puts an eigenvalue exactly on the line.
template <class Real = double>
Real asym_judd_constraint(int n, int s, Real delta, Real g, Real eps) {
    if (n < 0) throw std::domain_error("level index must be >= 0");
    if (s != 1 && s != -1) throw std::domain_error("line sign must be +1 or -1");
    if (!(g > Real(0))) throw std::domain_error("g must be > 0");
    if (n == 0) return 1;
    const Real d2 = delta * delta;
    auto omega = [&](int m) {
        return (Real(m) + 4 * g * g - Real(n) - 2 * Real(s) * eps - d2 / Real(m - n)) / (2 * g);
    };
    Real km1 = 1, k = omega(0);
    for (int m = 1; m < n; ++m) {
        const Real next = (omega(m) * k - km1) / Real(m + 1);
        km1 = k;
        k = next;
        if ((m + 1) % 16 == 0) {
            const Real scale = std::max(std::abs(k), std::abs(km1));
            if (scale > Real(1e100)) {
                k /= scale;
                km1 /= scale;
            }
        }
    }
    return k;
}

// -------------------------------------------------------- anisotropic model --

// Spectral shift: roots of the anisotropic G live at x = E + g^2 λ − shift
// with shift = (1-λ)Δ/(1+λ); abar is the scaled recurrence offset.
template <class Real = double>
Real aniso_shift(Real delta, Real g, Real lambda) {
    return g * g * lambda - (1 - lambda) * delta / (1 + lambda);
}

template <class Real = double>
Real aniso_abar(Real delta, Real g, Real lambda) {
    return -((1 - lambda) * g * g + 2 * delta / (1 + lambda));
}

// Singular points of the anisotropic recurrence in x: the integers plus the
// offset family n + (1-λ)abar/2 (zeros of the a_n normalization).
template <class Real = double>
std::vector<Real> aniso_poles(Real delta, Real g, Real lambda, Real x_lo, Real x_hi,
                              Real guard = Real(1e-6)) {
    std::vector<Real> poles;
    for (int n = 0; n <= static_cast<int>(std::ceil(x_hi)) + 1; ++n) poles.push_back(Real(n));
    const Real off = (1 - lambda) * aniso_abar(delta, g, lambda) / 2;
    if (std::abs(off) > guard)
        for (int n = 0; n <= static_cast<int>(std::ceil(x_hi - off)) + 1; ++n)
            if (Real(n) + off > x_lo - 1) poles.push_back(Real(n) + off);
    std::sort(poles.begin(), poles.end());
    return poles;
}

// G_±^λ at z=0 in the scaled-coefficient form (λ=1 recovers the symmetric
// model; the sign=-1 branch is √λ times the printed G_-, same zero set).
template <class Real = double>
GEval<Real> aniso_g(Real x, int sign, Real delta, Real g, Real lambda,
                    Real series_tol = Real(1e-13), Real guard = Real(1e-6), int cap = 512) {
    if (sign != 1 && sign != -1) throw std::domain_error("sign must be +1 or -1");
    if (lambda < Real(0)) throw std::domain_error("lambda < 0 is outside the model domain");
    if (!(g > Real(0))) throw std::domain_error("g must be > 0");
    detail::check_integer_pole(x, guard, "spectral variable within pole guard of an integer");
    const Real abar = aniso_abar(delta, g, lambda);
    const Real off = (1 - lambda) * abar / 2;
    if (std::abs(off) > guard) {
        const Real r = std::round(x - off);
        if (r >= Real(0) && std::abs(x - off - r) < guard)
            throw pole_proximity_error("spectral variable within pole guard of the offset family");
    }
    const Real oml = 1 - lambda;
    auto at = [&](int n) { return Real(n + 1) * (2 + oml * abar / (Real(n) - x)); };
    auto bt = [&](int n) {
        return Real(n) + 4 * g * g * lambda - 2 * oml * delta / (1 + lambda) - x -
               lambda * abar * abar / (Real(n) - x) -
               oml * oml * g * g * Real(n) / (Real(n - 1) - x);
    };
    auto ct = [&](int n) { return -g * g * lambda * (2 + oml * abar / (Real(n - 1) - x)); };
    Real k0 = 1;
    Real k1 = bt(0) / at(0);
    Real s2 = k0 + k1;
    Real s1 = (lambda * abar * k0 + oml * k1) / (0 - x);
    GEval<Real> out;
    detail::TailWindow<Real> tail;
    bool done = false;
    for (int n = 1; n < cap; ++n) {
        const Real k2 = (bt(n) * k1 + ct(n) * k0) / at(n);
        s2 += k2;
        const Real t = (lambda * abar * k1 + oml * Real(n + 1) * k2) / (Real(n) - x);
        s1 += t;
        out.terms = n + 2;
        tail.push(std::max(std::abs(t), std::abs(k2)));
        if (tail.small(series_tol * std::max({std::abs(s1), std::abs(s2), Real(1e-300)}))) {
            done = true;
            break;
        }
        k0 = k1;
        k1 = k2;
    }
    if (!done) out.converged = false;
    out.tail = tail.max();
    out.value = (sign > 0) ? 2 * (s1 - s2) : 2 * (s1 + lambda * s2);
    return out;
}

// --------------------------------------------------------- two-photon model --

// Squeezing parameter of the two-photon transformation.
template <class Real = double>
Real twophoton_kappa(Real g) {
    if (!(g > Real(0) && g < Real(0.5))) throw std::domain_error("two-photon model requires 0 < g < omega/2");
    return (1 - std::sqrt(1 - 4 * g * g)) / (4 * g);
}

// Evaluation coordinate for the truncated two-photon G_C: far enough out to
// separate the growing and decaying envelopes, small enough that the fixed
// truncation still covers the series. Throws when both are impossible.
template <class Real = double>
Real twophoton_z(Real g, int ntrunc = 256) {
    const Real b = 1 / (4 * g);
    const Real kap = twophoton_kappa(g);
    Real z2 = std::min(Real(48) / (b - kap), Real(ntrunc) / (4 * b));
    z2 = std::min(z2, std::exp(Real(1200) / Real(ntrunc)));  // keep z^n representable
    if ((b - kap) * z2 < Real(24) * (1 - Real(1e-9)))
        throw convergence_error(
            "two-photon G evaluation cannot separate solution envelopes; raise the truncation order");
    return std::sqrt(z2);
}

// G_C(E) for symmetry class C at the auto-selected coordinate; fixed
// truncation order (the entire-function identity makes an adaptive tail
// criterion meaningless), so every root must be oracle-checked downstream.
template <class Real = double>
GEval<Real> twophoton_g(Real E, TpClass cls, Real delta, Real g, int ntrunc = 256,
                        Real z = Real(0)) {
    if (ntrunc < 16 || ntrunc % 2 != 0) throw std::domain_error("truncation order must be even and >= 16");
    if (z == Real(0)) z = twophoton_z(g, ntrunc);
    const Real kap = twophoton_kappa(g);
    const int par = (cls == TpClass::p1 || cls == TpClass::m1) ? 0 : 1;
    std::vector<Real> Q(ntrunc + 3, Real(0)), K(ntrunc + 3, Real(0));
    Q[par] = 1;
    K[par] = (cls == TpClass::p1 || cls == TpClass::pi) ? Real(1) : Real(-1);
    const Real a = 1 - 4 * g * kap;
    const Real b = 1 + 4 * g * kap;
    for (int n = par; n <= ntrunc; n += 2) {
        const Real den = g * Real(n + 2) * Real(n + 1);
        Q[n + 2] = (-(a * Real(n) - 2 * g * kap - E) * Q[n] - delta * K[n]) / den;
        const Real km2 = (n >= 2) ? K[n - 2] : Real(0);
        K[n + 2] = ((b * Real(n) + 2 * g * kap - E) * K[n] - 4 * kap * km2 + delta * Q[n]) / den;
    }
    Real s1 = 0, s2i = 0;
    Real zn = std::pow(z, Real(par));
    const Real z2 = z * z;
    Real sgn = 1;
    Real last = 0;
    for (int n = par; n <= ntrunc; n += 2) {
        s1 += Q[n] * zn;
        s2i += K[n] * sgn * zn;
        last = std::max(std::abs(Q[n] * zn), std::abs(K[n] * zn));
        zn *= z2;
        sgn = -sgn;
    }
    const Real e1 = std::exp(-kap * z * z);
    const Real e2 = std::exp(kap * z * z);
    GEval<Real> out;
    out.terms = ntrunc / 2 + 1;
    out.tail = last;
    switch (cls) {
        case TpClass::p1: out.value = e2 * s2i - e1 * s1; break;
        case TpClass::m1: out.value = e2 * s2i + e1 * s1; break;
        case TpClass::pi: out.value = -e2 * s2i + e1 * s1; break;
        case TpClass::mi: out.value = -e2 * s2i - e1 * s1; break;
    }
    return out;
}

// Bogoliubov-form two-photon condition G_{e,o}^± on the rescaled spectral
// variable x = (E + 1/2)/s - 1/2, s = sqrt(1-4g^2). The series is summed in
// the combined variable w_n = f_n L_n, which stays O(q^n); the separate
// factors overflow/underflow for large n.
template <class Real = double>
GEval<Real> twophoton_bog_g(Real x, int parity, int sign, Real delta, Real g,
                            Real series_tol = Real(1e-13), Real guard = Real(1e-6),
                            int cap = 512) {
    if (parity != 0 && parity != 1) throw std::domain_error("parity must be 0 or 1");
    if (sign != 1 && sign != -1) throw std::domain_error("sign must be +1 or -1");
    const Real s = std::sqrt(1 - 4 * g * g);
    const Real beta = 1 / s;
    const Real u = std::sqrt((beta + 1) / 2);
    const Real v = std::sqrt((beta - 1) / 2);
    const Real B = beta;  // = u^2 + v^2
    const Real D = u * v + g * B;
    const Real tau = v / u;
    {
        const Real r = std::round(x);
        if (r >= Real(parity) && std::abs(x - r) < guard &&
            (static_cast<long long>(r) - parity) % 2 == 0)
            throw pole_proximity_error("rescaled variable within pole guard of the chain");
    }
    const Real E = (x + Real(0.5)) * s - Real(0.5);
    auto omega = [&](int m) {
        return B * Real(m) + v * v + 2 * g * u * v * Real(2 * m + 1) - E -
               delta * delta * B / (Real(m) - x);
    };
    GEval<Real> out;
    Real wm2 = 0, w = 1;
    detail::TailWindow<Real> tail;
    Real acc = 0;
    bool done = false;
    for (int m = parity; m < cap; m += 2) {
        const Real t = w * (1 - Real(sign) * delta * B / (Real(m) - x));
        acc += t;
        out.terms = (m - parity) / 2 + 1;
        tail.push(std::abs(t));
        if (tail.small(series_tol * std::max(std::abs(acc), Real(1e-300))) &&
            m > parity + 10) {
            done = true;
            break;
        }
        const Real den = (parity == 0) ? Real(m + 2) : Real(m + 1);
        const Real hist = (parity == 0) ? Real(m - 1) : Real(m);
        const Real wnext = (omega(m) * tau / D * w - hist * tau * tau * wm2) / den;
        wm2 = w;
        w = wnext;
    }
    if (!done) out.converged = false;
    out.tail = tail.max();
    out.value = acc;
    return out;
}

// Symmetry class selected by each (parity, sign) branch of the Bogoliubov
// condition, fixed by matching root sets against the class-resolved oracle.
inline TpClass twophoton_bog_class(int parity, int sign) {
    if (parity == 0) return sign > 0 ? TpClass::m1 : TpClass::p1;
    return sign > 0 ? TpClass::mi : TpClass::pi;
}

// E <-> x maps for the Bogoliubov variable.
template <class Real = double>
Real twophoton_bog_x(Real E, Real g) {
    return (E + Real(0.5)) / std::sqrt(1 - 4 * g * g) - Real(0.5);
}

template <class Real = double>
Real twophoton_bog_energy(Real x, Real g) {
    return (x + Real(0.5)) * std::sqrt(1 - 4 * g * g) - Real(0.5);
}

} // namespace rabiq

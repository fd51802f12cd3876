// rabiq/heun.hpp - confluent Heun series and the Heun-based spectral conditions
#pragma once

#include <rabiq/model.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rabiq {

// Parameters of HC(alpha,beta,gamma,delta,eta; x), the Frobenius solution of
// the confluent Heun equation regular at x=0 with h_0 = 1.
template <class Real = double>
struct HeunParams {
    Real alpha{0}, beta{0}, gamma{0}, delta{0}, eta{0};

    Real mu() const { return delta + alpha * (beta + gamma + 2) / 2; }
    Real nu() const { return eta + beta / 2 + (gamma - alpha) * (beta + 1) / 2; }

    // Second local solution's parameter set: x^(-beta) HC(swapped params, x).
    HeunParams swapped() const { return {alpha, gamma, beta, -delta, eta + delta}; }
};

template <class Real = double>
struct HeunValue {
    Real value{0};
    Real derivative{0};  // d/dx of the series
    int terms{0};
    int truncated_at{-1};  // polynomial degree when the series terminates, else -1
};

// Sums h_n x^n with n(n+beta) h_n = [(n-1)(n+beta+gamma-alpha) + nu] h_{n-1}
//                                   + [alpha(n-2) + mu] h_{n-2}.
// Degenerate index n = -beta: h_n is free iff the inhomogeneity vanishes
// (series truncation); the truncating branch h_n = 0 is taken, otherwise the
// degenerate case is an error. Requires |x| < 1.
template <class Real = double>
HeunValue<Real> hc_eval(const HeunParams<Real>& p, Real x, Real tol = Real(1e-14),
                        int max_terms = 512) {
    if (!(std::abs(x) < Real(1))) throw std::domain_error("confluent Heun argument |x| must be < 1");
    const Real mu = p.mu();
    const Real nu = p.nu();
    HeunValue<Real> out;
    out.value = 1;
    Real hm2 = 0, hm1 = 1;
    Real xn = 1;
    Real prev_t = std::numeric_limits<Real>::max();
    int trunc_prov = -1;
    Real tail_after_trunc = 0;
    bool converged = false;
    for (int n = 1; n < max_terms; ++n) {
        const Real A = Real(n) * (Real(n) + p.beta);
        const Real B = Real(n - 1) * (Real(n) + p.beta + p.gamma - p.alpha) + nu;
        const Real C = p.alpha * Real(n - 2) + mu;
        const Real num = B * hm1 + C * hm2;
        Real hn;
        if (std::abs(Real(n) + p.beta) < Real(1e-8)) {
            const Real scale = std::max({Real(1), std::abs(B * hm1), std::abs(C * hm2)});
            if (std::abs(num) <= Real(1e-10) * scale) {
                hn = 0;  // free coefficient: pick the truncating branch
                if (trunc_prov < 0) trunc_prov = n - 1;
            } else {
                throw std::domain_error("degenerate confluent Heun recurrence (beta = -n)");
            }
        } else {
            hn = num / A;
        }
        out.derivative += Real(n) * hn * xn;
        xn *= x;
        const Real t = hn * xn;
        out.value += t;
        out.terms = n;
        if (trunc_prov >= 0 && n > trunc_prov)
            tail_after_trunc = std::max(tail_after_trunc, std::abs(t));
        const Real floor = tol * std::max(Real(1), std::abs(out.value));
        if (n > 8 && std::abs(t) <= floor && prev_t <= floor) {
            converged = true;
            break;
        }
        prev_t = std::abs(t);
        hm2 = hm1;
        hm1 = hn;
    }
    if (!converged) throw convergence_error("confluent Heun series did not converge within cap");
    if (trunc_prov >= 0 &&
        tail_after_trunc <= Real(1e-12) * std::max(Real(1), std::abs(out.value)))
        out.truncated_at = trunc_prov;
    return out;
}

// --------------------------------------------------- model parameter maps --

// HC parameter sets entering the Bargmann-space solutions of the (possibly
// biased) linear model; eps = 0 recovers the symmetric case. p1/p2 belong to
// the argument x1 = (g-z)/2g, the swapped sets to x2 = (g+z)/2g.
template <class Real = double>
struct HeunMaps {
    HeunParams<Real> p1, p2, p1s, p2s;
};

template <class Real = double>
HeunMaps<Real> heun_maps(Real E, Real delta, Real g, Real eps = Real(0)) {
    const Real g2 = g * g;
    const Real common = (E * E + E - eps * eps - 2 * delta * delta + 1) / 2;
    HeunMaps<Real> m;
    m.p1.alpha = m.p2.alpha = 4 * g2;
    m.p1.beta = -(E + eps + g2 + 1);
    m.p1.gamma = -(E - eps + g2);
    m.p1.delta = -2 * (1 - 2 * eps) * g2;
    m.p1.eta = -Real(1.5) * g2 * g2 + (1 - 2 * E - 4 * eps) * g2 / 2 + common + eps / 2;
    m.p2.beta = -(E + eps + g2);
    m.p2.gamma = -(E - eps + g2 + 1);
    m.p2.delta = 2 * (1 + 2 * eps) * g2;
    m.p2.eta = -Real(1.5) * g2 * g2 - (3 + 2 * E + 4 * eps) * g2 / 2 + common - eps / 2;
    m.p1s = m.p1.swapped();
    m.p2s = m.p2.swapped();
    return m;
}

namespace detail {

template <class Real>
void check_z_domain(Real z, Real g) {
    if (!(g > Real(0))) throw std::domain_error("g must be > 0 for Heun conditions");
    if (!(std::abs(g - z) < 2 * g && std::abs(g + z) < 2 * g))
        throw std::domain_error("z outside the Heun convergence strip |g±z| < 2g");
}

} // namespace detail

// Building blocks F1..F4 of the weak conditions, all at spectral point E and
// Bargmann coordinate z (symmetric model).
template <class Real = double>
std::array<Real, 4> f_conditions(Real E, Real z, Real delta, Real g,
                                 Real tol = Real(1e-14)) {
    detail::check_z_domain(z, g);
    const HeunMaps<Real> m = heun_maps(E, delta, g);
    const Real x1 = (g - z) / (2 * g);
    const Real x2 = (g + z) / (2 * g);
    const auto h1 = hc_eval(m.p1, x1, tol);
    const auto h2 = hc_eval(m.p2, x1, tol);
    const auto h3 = hc_eval(m.p1, x2, tol);
    const auto h4 = hc_eval(m.p2, x2, tol);
    const Real g2 = g * g;
    std::array<Real, 4> F;
    F[0] = (E + g2) * h1.value + (g + z) / (2 * g) * h1.derivative;
    F[1] = h2.value;
    F[2] = h3.value;
    F[3] = (E - g2 - 2 * g * z) * h4.value - (g + z) / (2 * g) * h4.derivative;
    return F;
}

// Weaker spectral conditions G1..G4 at fixed parity sign (+1 or -1). Each
// component vanishes at every regular eigenvalue of its sector for any z in
// the strip; away from z = 0 a component can pick up accidental zeros that
// move with z, so the spectrum is the z-persistent part of the zero set.
template <class Real = double>
std::array<Real, 4> weak_conditions(Real E, Real z, int sign, Real delta, Real g,
                                    Real tol = Real(1e-14)) {
    if (sign != 1 && sign != -1) throw std::domain_error("sign must be +1 or -1");
    const Real g2 = g * g;
    if (std::abs(E + g2) < Real(1e-12))
        throw std::domain_error("weak conditions undefined at E = -g^2");
    const auto F = f_conditions(E, z, delta, g, tol);
    const Real r = delta / (E + g2);
    const Real ep = std::exp(2 * g * z);
    const Real em = std::exp(-2 * g * z);
    std::array<Real, 4> G;
    G[0] = F[0] + Real(sign) * r * ep * F[3];
    G[1] = F[2] + Real(sign) * r * em * F[1];
    G[2] = F[0] - Real(sign) * delta * ep * F[2];
    G[3] = F[3] - Real(sign) * delta * em * F[1];
    return G;
}

// Combined condition K^±(E,z); zero at every eigenvalue of parity sector
// `sign`, including the exceptional ones where G1..G4 stay nonzero. K is
// strongly suppressed relative to its G building blocks (the two local
// solution pairs nearly solve the coupled system), so test its vanishing
// against an absolute bound, not against the component magnitudes.
template <class Real = double>
Real k_condition(Real E, Real z, int sign, Real delta, Real g, Real tol = Real(1e-14)) {
    const auto G = weak_conditions(E, z, sign, delta, g, tol);
    return std::exp(-g * z) * G[0] - Real(sign) * delta * std::exp(g * z) * G[1];
}

// Same condition assembled from the other pair (equal to k_condition up to
// roundoff; exposed for cross-checking).
template <class Real = double>
Real k_condition_alt(Real E, Real z, int sign, Real delta, Real g, Real tol = Real(1e-14)) {
    const Real g2 = g * g;
    if (std::abs(E + g2) < Real(1e-12))
        throw std::domain_error("weak conditions undefined at E = -g^2");
    const auto G = weak_conditions(E, z, sign, delta, g, tol);
    const Real r = delta / (E + g2);
    return std::exp(-g * z) * G[2] + Real(sign) * r * std::exp(g * z) * G[3];
}

// Wronskian of the two local solutions of component `which` (1 or 2); zero at
// every eigenvalue. eps != 0 selects the biased model, whose spectrum is the
// zero set of either Wronskian.
template <class Real = double>
Real wronskian(Real E, Real z, int which, Real delta, Real g, Real eps = Real(0),
               Real tol = Real(1e-14)) {
    if (which != 1 && which != 2) throw std::domain_error("which must be 1 or 2");
    detail::check_z_domain(z, g);
    const Real g2 = g * g;
    const HeunMaps<Real> m = heun_maps(E, delta, g, eps);
    const Real x1 = (g - z) / (2 * g);
    const Real x2 = (g + z) / (2 * g);
    const Real denom = (which == 1) ? E + g2 - eps : E + g2 + eps;
    if (std::abs(denom) < Real(1e-12))
        throw std::domain_error("Wronskian prefactor pole at E = -g^2 ± eps");
    const Real r = delta / denom;
    const auto hA = hc_eval(which == 1 ? m.p1 : m.p2, x1, tol);
    const auto hB = hc_eval(which == 1 ? m.p1s : m.p2s, x2, tol);
    const Real em = std::exp(-g * z);
    const Real ep = std::exp(g * z);
    // d/dz HC(., x1) = -HC'/2g and d/dz HC(., x2) = +HC'/2g
    Real f1, f1p, f2, f2p;
    if (which == 1) {
        f1 = em * hA.value;
        f1p = em * (-g * hA.value - hA.derivative / (2 * g));
        f2 = r * ep * hB.value;
        f2p = r * ep * (g * hB.value + hB.derivative / (2 * g));
    } else {
        f1 = r * em * hA.value;
        f1p = r * em * (-g * hA.value - hA.derivative / (2 * g));
        f2 = ep * hB.value;
        f2p = ep * (g * hB.value + hB.derivative / (2 * g));
    }
    return f2 * f1p - f1 * f2p;
}

// ------------------------------------------------------- truncation route --

// Residual whose zero in delta (or g) certifies that the Heun series behind
// the pole energy E = N - g^2 terminates at order N: the finite recurrence
// A_k h_k = B_k h_{k-1} + C_k h_{k-2} is run to k = N and the would-be
// next-order numerator B_{N+1} h_N + C_{N+1} h_{N-1} is returned (A_{N+1}=0).
// Intermediate coefficients are rescaled periodically; the rescaling factor
// is positive and continuous in the parameters, preserving zeros and signs.
template <class Real = double>
Real truncation_residual(int N, Real delta, Real g) {
    if (N < 0) throw std::domain_error("truncation order must be >= 0");
    const Real g2 = g * g;
    const Real d2 = delta * delta;
    Real hm2 = 0, hm1 = 1;
    for (int k = 1; k <= N; ++k) {
        const Real A = Real(k) * Real(k - 1 - N);
        const Real B = Real(1 - k + N) * Real(1 - k + N) - 4 * Real(k - 1) * g2 - d2;
        const Real C = 4 * Real(k - 2 - N) * g2;
        const Real hk = (B * hm1 + C * hm2) / A;
        hm2 = hm1;
        hm1 = hk;
        if (k % 16 == 0) {
            const Real scale = std::max(std::abs(hm1), std::abs(hm2));
            if (scale > Real(1e100)) {
                hm1 /= scale;
                hm2 /= scale;
            }
        }
    }
    const int k = N + 1;
    const Real B = Real(1 - k + N) * Real(1 - k + N) - 4 * Real(k - 1) * g2 - d2;
    const Real C = 4 * Real(k - 2 - N) * g2;
    return B * hm1 + C * hm2;
}

// delta-parameter consistency of a Heun set with polynomial truncation at N:
// returns delta + (N + (gamma+beta+2)/2) * alpha, zero when the necessary
// termination condition holds.
template <class Real = double>
Real delta_condition(const HeunParams<Real>& p, int N) {
    return p.delta + (Real(N) + (p.gamma + p.beta + 2) / 2) * p.alpha;
}

} // namespace rabiq

// rabiq/analysis.hpp - level-spacing statistics and geometric phases
#pragma once

#include <rabiq/model.hpp>
#include <rabiq/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rabiq {

// ----------------------------------------------------------- spacing stats --

template <class Real = double>
struct SpacingHistogram {
    std::vector<Real> centers;   // bin centers in omega units
    std::vector<int> counts;     // out-of-range spacings clamp into the edge bins
    std::vector<Real> spacings;  // raw nearest-neighbour spacings, omega units
    Real bin_width{Real(0.02)};
    int levels{0};
    int parity{0};
    int n_max{0};
};

// Nearest-neighbour spacings of the lowest `levels` states of one parity
// chain, converged by truncation doubling. Spacings are reported in omega
// units; the histogram covers [0, range] and conserves the total count.
template <class Real>
SpacingHistogram<Real> spacing_histogram(const BasicParams<Real>& p, int parity, int levels,
                                         Real bin_width = Real(0.02), Real range = Real(2),
                                         Real tol = Real(1e-10)) {
    p.validate();
    if (levels < 2) throw std::domain_error("need at least two levels for spacings");
    if (!(bin_width > Real(0) && range > bin_width))
        throw std::domain_error("invalid histogram binning");

    const Real gs = p.g / p.omega;
    int n_max = std::max({4 * levels, static_cast<int>(std::ceil(16 * gs * gs)) + 32, 16});
    VectorX<Real> prev;
    for (int pass = 0;; ++pass) {
        const Chain<Real> ch = parity_chain(p, parity, n_max);
        VectorX<Real> ev = detail::chain_eigenvalues(ch).head(levels);
        if (prev.size() == levels) {
            const Real shift = (ev - prev).cwiseAbs().maxCoeff();
            if (shift < tol) {
                SpacingHistogram<Real> h;
                h.bin_width = bin_width;
                h.levels = levels;
                h.parity = parity;
                h.n_max = n_max;
                const int nbins = static_cast<int>(std::round(range / bin_width));
                h.centers.resize(static_cast<std::size_t>(nbins));
                h.counts.assign(static_cast<std::size_t>(nbins), 0);
                for (int i = 0; i < nbins; ++i)
                    h.centers[static_cast<std::size_t>(i)] = bin_width * (Real(i) + Real(0.5));
                for (int i = 0; i + 1 < levels; ++i) {
                    const Real s = ev[i + 1] - ev[i];  // chain is in omega units already
                    h.spacings.push_back(s);
                    int idx = static_cast<int>(std::floor(s / bin_width));
                    idx = std::min(std::max(idx, 0), nbins - 1);
                    h.counts[static_cast<std::size_t>(idx)]++;
                }
                return h;
            }
        }
        if (pass >= 6) throw convergence_error("spacing histogram truncation did not converge");
        prev = ev;
        n_max *= 2;
    }
}

template <class Real = double>
struct TwoPeakResult {
    bool two_peaks{false};
    Real peak_lo{0}, peak_hi{0};  // bin centers of the detected maxima
    Real frac_below{0}, frac_above{0};
    Real center_mass{0};  // fraction of spacings in [0.95, 1.05]
};

// Detects the characteristic double-peaked spacing distribution: one maximum
// on each side of one omega quantum, a depleted valley straddling it, and a
// substantial share of spacings on both sides.
template <class Real>
TwoPeakResult<Real> two_peak(const SpacingHistogram<Real>& h) {
    TwoPeakResult<Real> r;
    const int nb = static_cast<int>(h.counts.size());
    if (nb < 8 || h.spacings.empty()) return r;
    auto smoothed = [&](int i) {
        Real acc = 0;
        for (int j = i - 1; j <= i + 1; ++j)
            if (j >= 0 && j < nb) acc += Real(h.counts[static_cast<std::size_t>(j)]);
        return acc / 3;
    };

    int ilo = -1, ihi = -1;
    Real vlo = -1, vhi = -1;
    for (int i = 0; i < nb; ++i) {
        const Real c = h.centers[static_cast<std::size_t>(i)];
        const Real s = smoothed(i);
        if (c <= Real(0.9) && s > vlo) {
            vlo = s;
            ilo = i;
        }
        if (c >= Real(1.1) && s > vhi) {
            vhi = s;
            ihi = i;
        }
    }
    if (ilo < 0 || ihi < 0) return r;
    r.peak_lo = h.centers[static_cast<std::size_t>(ilo)];
    r.peak_hi = h.centers[static_cast<std::size_t>(ihi)];

    const int istraddle = std::min(nb - 1, static_cast<int>(std::floor(Real(1) / h.bin_width)));
    const Real valley = std::min(smoothed(istraddle), smoothed(std::max(0, istraddle - 1)));

    const Real total = Real(h.spacings.size());
    Real below = 0, above = 0, mid = 0;
    for (Real s : h.spacings) {
        if (s < Real(1)) below += 1;
        if (s > Real(1)) above += 1;
        if (s >= Real(0.95) && s <= Real(1.05)) mid += 1;
    }
    r.frac_below = below / total;
    r.frac_above = above / total;
    r.center_mass = mid / total;

    r.two_peaks = vlo >= 2 * valley && vhi >= 2 * valley && r.frac_below >= Real(0.30) &&
                  r.frac_above >= Real(0.30) && r.center_mass <= Real(0.10);
    return r;
}

// ------------------------------------------------------------- berry phase --

template <class Real = double>
struct BerryPhaseResult {
    Real gamma{0};      // gamma_n / (2*pi) = <a^d a> in the tracked eigenstate
    int level{0};       // chain level index at g = 0
    int parity{0};
    int n_max{0};
    Real stability{0};  // endpoint shift under doubling the truncation
    int sweep_points{0};
};

namespace detail {

template <class Real>
Real photon_expectation(const Chain<Real>& ch, const VectorX<Real>& v) {
    Real acc = 0;
    for (Eigen::Index m = 0; m < v.size(); ++m)
        acc += Real(ch.photon[static_cast<std::size_t>(m)]) * v[m] * v[m];
    return acc;
}

// Follows one chain eigenvector from g = 0 to the target coupling by maximal
// overlap, bisecting the step whenever the match drops below 0.99. Returns
// the tracked eigenvector at the endpoint.
template <class Real>
VectorX<Real> track_eigenvector(const BasicParams<Real>& p, int level, int parity, int n_max,
                                Real base_step, int& sweep_points) {
    const int sites = n_max + 1;
    BasicParams<Real> q = p;
    q.g = Real(0);
    const Chain<Real> ch0 = parity_chain(q, parity, n_max);
    std::vector<int> order(static_cast<std::size_t>(sites));
    for (int i = 0; i < sites; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ch0.diag[a] < ch0.diag[b]; });
    VectorX<Real> v = VectorX<Real>::Zero(sites);
    v[order[static_cast<std::size_t>(level)]] = Real(1);
    sweep_points = 1;
    if (p.g == Real(0)) return v;

    const Real g_target = p.g;
    const Real min_step = base_step / 64;
    Real g_now = 0;
    std::vector<Real> pending{g_target};
    {
        const int steps = std::max(1, static_cast<int>(std::ceil(g_target / base_step)));
        pending.clear();
        for (int i = steps; i >= 1; --i) pending.push_back(g_target * Real(i) / Real(steps));
    }
    while (!pending.empty()) {
        const Real g_next = pending.back();
        q.g = g_next;
        const auto ep = chain_eigenpairs(parity_chain(q, parity, n_max));
        const MatrixX<Real>& evecs = ep.second;
        const VectorX<Real> ov = evecs.transpose() * v;
        Eigen::Index best;
        const Real mag = ov.cwiseAbs().maxCoeff(&best);
        if (mag < Real(0.99)) {
            if (g_next - g_now <= min_step)
                throw convergence_error("eigenvector tracking ambiguity");
            pending.push_back((g_now + g_next) / 2);
            continue;
        }
        v = evecs.col(best) * (ov[best] < 0 ? Real(-1) : Real(1));
        g_now = g_next;
        pending.pop_back();
        ++sweep_points;
    }
    return v;
}

} // namespace detail

// Geometric phase per photon-phase loop for one parity-chain level: the loop
// a -> a e^{i phi} accumulates gamma_n = 2*pi <a^d a>. The level is labelled
// at g = 0 and followed adiabatically to the target coupling; the endpoint is
// revalidated at doubled truncation.
template <class Real>
BerryPhaseResult<Real> berry_phase(const BasicParams<Real>& p, int level, int parity,
                                   Real g_step = Real(0.05), Real stability_tol = Real(1e-8)) {
    p.validate();
    if (p.variant != Variant::rabi)
        throw std::domain_error("geometric phase loop is defined for the rabi variant");
    if (level < 0) throw std::domain_error("level must be >= 0");
    if (!(g_step > Real(0))) throw std::domain_error("g_step must be > 0");

    const BasicParams<Real> q = p.scaled();
    int n_max =
        level + static_cast<int>(std::ceil(std::pow(std::sqrt(Real(level) + 8) + 2 * q.g, 2))) + 40;

    for (int attempt = 0;; ++attempt) {
        int sweep_points = 0;
        const VectorX<Real> v =
            detail::track_eigenvector(q, level, parity, n_max, g_step, sweep_points);
        const Chain<Real> ch = parity_chain(q, parity, n_max);
        const Real gamma = detail::photon_expectation(ch, v);

        // endpoint recheck: locate the same state at doubled truncation
        const int n2 = 2 * n_max;
        const auto ep2 = chain_eigenpairs(parity_chain(q, parity, n2));
        const MatrixX<Real>& evecs2 = ep2.second;
        VectorX<Real> vp = VectorX<Real>::Zero(n2 + 1);
        vp.head(n_max + 1) = v;
        const VectorX<Real> ov = evecs2.transpose() * vp;
        Eigen::Index best;
        ov.cwiseAbs().maxCoeff(&best);
        const VectorX<Real> v2 = evecs2.col(best);
        const Real gamma2 = detail::photon_expectation(parity_chain(q, parity, n2), v2);
        const Real stab = std::abs(gamma2 - gamma);
        if (stab < stability_tol) {
            BerryPhaseResult<Real> r;
            r.gamma = gamma;
            r.level = level;
            r.parity = parity;
            r.n_max = n_max;
            r.stability = stab;
            r.sweep_points = sweep_points;
            return r;
        }
        if (attempt >= 2) throw convergence_error("geometric phase truncation did not settle");
        n_max *= 2;
    }
}

// Rotating-wave (block-diagonal) reference: the N-excitation doublet mixes
// |up, N-1> and |dn, N>, so gamma/2pi = N - |c_up|^2 for each branch.
// Returns {lower-energy branch, upper-energy branch}.
template <class Real>
std::pair<Real, Real> jc_berry(int N, Real delta, Real g, Real omega = Real(1)) {
    if (!(omega > Real(0))) throw std::domain_error("omega must be > 0");
    if (N < 1) throw std::domain_error("doublet index must be >= 1");
    const Real dl = delta / omega, gs = g / omega;
    const Real a = Real(N - 1) + dl, d = Real(N) - dl, b = gs * std::sqrt(Real(N));
    const Real avg = (a + d) / 2;
    const Real rad = std::hypot((a - d) / 2, b);
    auto up_weight = [&](Real e) {
        if (b == Real(0)) return (std::abs(a - e) < std::abs(d - e)) ? Real(1) : Real(0);
        const Real ratio = -b / (a - e);  // c_up/c_dn from the first row
        const Real c2 = ratio * ratio / (1 + ratio * ratio);
        return c2;
    };
    const Real lo = avg - rad, hi = avg + rad;
    return {Real(N) - up_weight(lo), Real(N) - up_weight(hi)};
}

} // namespace rabiq

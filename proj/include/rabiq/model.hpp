// rabiq/model.hpp - model parameters, parity chains and truncated-Fock hamiltonians
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rabiq {

template <class Real>
using VectorX = Eigen::Vector<Real, Eigen::Dynamic>;
template <class Real>
using MatrixX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Non-convergence of an iterative scheme; maps to CLI exit code 2.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Variant { rabi, asymmetric, anisotropic, twophoton };

// Symmetry class C of the two-photon model, eigenvalue of sigma_z * i^(a^d a).
enum class TpClass { p1, m1, pi, mi };  // C = +1, -1, +i, -i

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::rabi: return "rabi";
        case Variant::asymmetric: return "asymmetric";
        case Variant::anisotropic: return "anisotropic";
        case Variant::twophoton: return "twophoton";
    }
    return "?";
}

inline const char* to_string(TpClass c) {
    switch (c) {
        case TpClass::p1: return "+1";
        case TpClass::m1: return "-1";
        case TpClass::pi: return "+i";
        case TpClass::mi: return "-i";
    }
    return "?";
}

// Couplings and frequencies of one model variant. All analytic kernels work
// in omega = 1 units; scaled() converts, callers rescale energies back.
template <class Real = double>
struct BasicParams {
    Variant variant{Variant::rabi};
    Real delta{0};    // half level splitting, >= 0
    Real omega{1};    // mode frequency, > 0
    Real g{0};        // coupling, >= 0
    Real epsilon{0};  // bias, asymmetric variant only
    Real lambda{0};   // anisotropy, anisotropic variant only

    void validate() const {
        if (!(omega > Real(0))) throw std::domain_error("omega must be > 0");
        if (delta < Real(0)) throw std::domain_error("delta must be >= 0");
        if (g < Real(0)) throw std::domain_error("g must be >= 0");
        if (variant == Variant::twophoton && !(g < omega / 2))
            throw std::domain_error("two-photon model requires g < omega/2 (discrete spectrum)");
        if (variant != Variant::asymmetric && epsilon != Real(0))
            throw std::domain_error("epsilon is only meaningful for the asymmetric variant");
        if (variant == Variant::anisotropic) {
            if (lambda < Real(0))
                throw std::domain_error("lambda < 0 is outside the model domain");
        } else if (lambda != Real(0)) {
            throw std::domain_error("lambda is only meaningful for the anisotropic variant");
        }
    }

    // Same model in omega = 1 units.
    BasicParams scaled() const {
        BasicParams p = *this;
        p.delta /= omega;
        p.g /= omega;
        p.epsilon /= omega;
        p.omega = Real(1);
        return p;
    }
};

using Params = BasicParams<double>;

template <class Real = double>
BasicParams<Real> rabi_params(Real delta, Real g, Real omega = Real(1)) {
    BasicParams<Real> p;
    p.variant = Variant::rabi;
    p.delta = delta;
    p.g = g;
    p.omega = omega;
    p.validate();
    return p;
}

template <class Real = double>
BasicParams<Real> asym_params(Real delta, Real g, Real epsilon, Real omega = Real(1)) {
    BasicParams<Real> p;
    p.variant = Variant::asymmetric;
    p.delta = delta;
    p.g = g;
    p.epsilon = epsilon;
    p.omega = omega;
    p.validate();
    return p;
}

template <class Real = double>
BasicParams<Real> aniso_params(Real delta, Real g, Real lambda, Real omega = Real(1)) {
    BasicParams<Real> p;
    p.variant = Variant::anisotropic;
    p.delta = delta;
    p.g = g;
    p.lambda = lambda;
    p.omega = omega;
    p.validate();
    return p;
}

template <class Real = double>
BasicParams<Real> twophoton_params(Real delta, Real g, Real omega = Real(1)) {
    BasicParams<Real> p;
    p.variant = Variant::twophoton;
    p.delta = delta;
    p.g = g;
    p.omega = omega;
    p.validate();
    return p;
}

// ---------------------------------------------------------------- chains --

// Symmetric tridiagonal block: diag.size() sites, off.size() = sites - 1.
template <class Real = double>
struct Chain {
    VectorX<Real> diag;
    VectorX<Real> off;
    // photon number of chain site i (identity map except two-photon chains)
    std::vector<int> photon;
    // spin of chain site i: +1 for up, -1 for down
    std::vector<int> spin;
};

// Parity chain of the linear-coupling models under Pi = -sigma_z (-1)^(a^d a).
// The p = +1 chain orders |dn,0>, |up,1>, |dn,2>, ...; site m has photon m and
// energy m*omega - p*(-1)^m*delta. Couplings: Rabi g*sqrt(m+1); anisotropic
// lambda*g*sqrt(m+1) out of spin-down sites and g*sqrt(m+1) out of spin-up.
template <class Real = double>
Chain<Real> parity_chain(const BasicParams<Real>& params, int p, int n_max) {
    if (n_max < 2) throw std::domain_error("n_max must be >= 2");
    if (p != 1 && p != -1) throw std::domain_error("parity must be +1 or -1");
    if (params.variant != Variant::rabi && params.variant != Variant::anisotropic)
        throw std::domain_error("parity chains exist only for the rabi and anisotropic variants");
    const BasicParams<Real> q = params.scaled();
    const int sites = n_max + 1;
    Chain<Real> c;
    c.diag.resize(sites);
    c.off.resize(sites - 1);
    c.photon.resize(sites);
    c.spin.resize(sites);
    for (int m = 0; m < sites; ++m) {
        const Real sgn = (m % 2 == 0) ? Real(1) : Real(-1);
        c.diag[m] = Real(m) - Real(p) * sgn * q.delta;
        c.photon[m] = m;
        // p=+1 chain: even sites spin down; p=-1: even sites spin up
        c.spin[m] = ((m % 2 == 0) == (p == 1)) ? -1 : +1;
    }
    for (int m = 0; m + 1 < sites; ++m) {
        Real coupling = q.g;
        if (params.variant == Variant::anisotropic && c.spin[m] < 0) coupling *= q.lambda;
        c.off[m] = coupling * std::sqrt(Real(m + 1));
    }
    return c;
}

// Two-photon symmetry-class chain: photon numbers step by 2 and spin
// alternates along the chain, with coupling g*sqrt((n+1)(n+2)).
// C=+1: (up,0),(dn,2),...  C=-1: (dn,0),(up,2),...
// C=+i: (up,1),(dn,3),...  C=-i: (dn,1),(up,3),...
template <class Real = double>
Chain<Real> twophoton_chain(const BasicParams<Real>& params, TpClass cls, int n_max) {
    if (n_max < 4) throw std::domain_error("n_max must be >= 4");
    if (params.variant != Variant::twophoton)
        throw std::domain_error("class chains exist only for the two-photon variant");
    const BasicParams<Real> q = params.scaled();
    const int n0 = (cls == TpClass::p1 || cls == TpClass::m1) ? 0 : 1;
    const int s0 = (cls == TpClass::p1 || cls == TpClass::pi) ? +1 : -1;
    const int sites = (n_max - n0) / 2 + 1;
    Chain<Real> c;
    c.diag.resize(sites);
    c.off.resize(sites - 1);
    c.photon.resize(sites);
    c.spin.resize(sites);
    for (int i = 0; i < sites; ++i) {
        const int n = n0 + 2 * i;
        const Real sgn = (i % 2 == 0) ? Real(1) : Real(-1);
        c.diag[i] = Real(n) + Real(s0) * sgn * q.delta;
        c.photon[i] = n;
        c.spin[i] = (i % 2 == 0) ? s0 : -s0;
    }
    for (int i = 0; i + 1 < sites; ++i) {
        const Real n = Real(c.photon[i]);
        c.off[i] = q.g * std::sqrt((n + 1) * (n + 2));
    }
    return c;
}

// Displaced oscillator blocks of the asymmetric model in the sigma_x basis:
// H = [n + s*(g(a+a^d) + eps)] within the block of sigma_x eigenvalue s, the
// two blocks coupled by delta * identity. Returned chain is one block.
template <class Real = double>
Chain<Real> sigma_x_chain(const BasicParams<Real>& params, int s, int n_max) {
    if (n_max < 2) throw std::domain_error("n_max must be >= 2");
    if (s != 1 && s != -1) throw std::domain_error("sigma_x eigenvalue must be +1 or -1");
    const BasicParams<Real> q = params.scaled();
    const int sites = n_max + 1;
    Chain<Real> c;
    c.diag.resize(sites);
    c.off.resize(sites - 1);
    c.photon.resize(sites);
    c.spin.assign(sites, 0);
    for (int m = 0; m < sites; ++m) {
        c.diag[m] = Real(m) + Real(s) * q.epsilon;
        c.photon[m] = m;
    }
    for (int m = 0; m + 1 < sites; ++m) c.off[m] = Real(s) * q.g * std::sqrt(Real(m + 1));
    return c;
}

// ------------------------------------------------------ dense hamiltonian --

// Full matrix in the basis {|up,0..n_max>, |dn,0..n_max>}, in omega = 1 units
// times omega (i.e. in the caller's energy units).
template <class Real = double>
MatrixX<Real> dense_hamiltonian(const BasicParams<Real>& params, int n_max) {
    if (n_max < 2) throw std::domain_error("n_max must be >= 2");
    params.validate();
    const BasicParams<Real> q = params.scaled();
    const int N = n_max + 1;
    MatrixX<Real> H = MatrixX<Real>::Zero(2 * N, 2 * N);
    for (int n = 0; n < N; ++n) {
        H(n, n) = Real(n) + q.delta;
        H(N + n, N + n) = Real(n) - q.delta;
    }
    auto couple = [&](int up_row, int dn_col, Real w) {
        H(up_row, N + dn_col) += w;
        H(N + dn_col, up_row) += w;
    };
    switch (params.variant) {
        case Variant::rabi:
        case Variant::asymmetric:
            for (int n = 0; n + 1 < N; ++n) {
                const Real w = q.g * std::sqrt(Real(n + 1));
                couple(n, n + 1, w);      // a^d on the photon, spin flip
                couple(n + 1, n, w);
            }
            if (params.variant == Variant::asymmetric)
                for (int n = 0; n < N; ++n) couple(n, n, q.epsilon);
            break;
        case Variant::anisotropic:
            for (int n = 0; n + 1 < N; ++n) {
                const Real w = q.g * std::sqrt(Real(n + 1));
                couple(n, n + 1, w);             // rotating term a sigma^+
                couple(n + 1, n, q.lambda * w);  // counter-rotating a^d sigma^+
            }
            break;
        case Variant::twophoton:
            for (int n = 0; n + 2 < N; ++n) {
                const Real w = q.g * std::sqrt(Real(n + 1) * Real(n + 2));
                couple(n, n + 2, w);
                couple(n + 2, n, w);
            }
            break;
    }
    return H * params.omega;
}

// Truncated hamiltonian with its chain decomposition where one exists.
template <class Real = double>
struct FockHamiltonian {
    int n_max{0};
    MatrixX<Real> dense;              // 2(n_max+1) square, basis {up x Fock, dn x Fock}
    std::vector<Chain<Real>> chains;  // parity / class / sigma_x blocks (see labels)
    std::vector<int> chain_labels;    // rabi,aniso: parity +1,-1; twophoton: TpClass index;
                                      // asymmetric: sigma_x eigenvalue (blocks are
                                      // delta-coupled, not independent sectors)
};

template <class Real = double>
FockHamiltonian<Real> build_hamiltonian(const BasicParams<Real>& params, int n_max) {
    params.validate();
    FockHamiltonian<Real> h;
    h.n_max = n_max;
    h.dense = dense_hamiltonian(params, n_max);
    switch (params.variant) {
        case Variant::rabi:
        case Variant::anisotropic:
            for (int p : {+1, -1}) {
                h.chains.push_back(parity_chain(params, p, n_max));
                h.chain_labels.push_back(p);
            }
            break;
        case Variant::twophoton:
            for (TpClass c : {TpClass::p1, TpClass::m1, TpClass::pi, TpClass::mi}) {
                h.chains.push_back(twophoton_chain(params, c, n_max));
                h.chain_labels.push_back(static_cast<int>(c));
            }
            break;
        case Variant::asymmetric:
            for (int s : {+1, -1}) {
                h.chains.push_back(sigma_x_chain(params, s, n_max));
                h.chain_labels.push_back(s);
            }
            break;
    }
    return h;
}

// ------------------------------------------------------------------ parity --

// Parity label of a normalized vector in the {up x Fock, dn x Fock} layout:
// <Pi> with Pi = -sigma_z (-1)^(a^d a). Returns +1 or -1 when |<Pi>| > 0.999
// (threshold tolerates truncation leakage), else 0 for undefined.
template <class Derived>
int parity_of_state(const Eigen::MatrixBase<Derived>& vec) {
    using Real = typename Derived::RealScalar;
    const Eigen::Index size = vec.size();
    if (size % 2 != 0) throw std::domain_error("state layout must be {up block, dn block}");
    const Eigen::Index N = size / 2;
    Real expectation = 0;
    for (Eigen::Index n = 0; n < N; ++n) {
        const Real sgn = (n % 2 == 0) ? Real(1) : Real(-1);
        using std::norm;
        const Real w_up = norm(vec[n]);
        const Real w_dn = norm(vec[N + n]);
        expectation += -sgn * (w_up - w_dn);
    }
    if (expectation > Real(0.999)) return +1;
    if (expectation < Real(-0.999)) return -1;
    return 0;
}

} // namespace rabiq

// rabiq/oracle.hpp - brute-force spectra from truncated diagonalization
#pragma once

#include <rabiq/model.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace rabiq {

// One converged level from the truncated solver.
template <class Real = double>
struct OracleLevel {
    Real energy{0};
    int parity{0};   // +1/-1, or 0 where parity is not a good quantum number
    int tp_class{-1}; // static_cast<int>(TpClass) for the two-photon variant
};

template <class Real = double>
struct OracleSpectrum {
    std::vector<OracleLevel<Real>> levels;  // ascending energy
    int n_max{0};                           // truncation that met the tolerance
    Real max_shift{0};                      // largest |E(n_max) - E(n_max/2-ish)| over kept levels

    std::vector<Real> energies() const {
        std::vector<Real> e;
        e.reserve(levels.size());
        for (const auto& l : levels) e.push_back(l.energy);
        return e;
    }
};

namespace detail {

template <class Real>
VectorX<Real> chain_eigenvalues(const Chain<Real>& c) {
    Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver;
    solver.computeFromTridiagonal(c.diag, c.off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw convergence_error("tridiagonal eigensolver failed");
    return solver.eigenvalues();
}

// Lowest `count` levels of one truncation, with sector labels.
template <class Real>
std::vector<OracleLevel<Real>> oracle_pass(const BasicParams<Real>& params, int n_max,
                                           int count) {
    std::vector<OracleLevel<Real>> all;
    if (params.variant == Variant::asymmetric) {
        Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver(dense_hamiltonian(params, n_max),
                                                            Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw convergence_error("dense eigensolver failed");
        const auto& ev = solver.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i) all.push_back({ev[i], 0, -1});
    } else if (params.variant == Variant::twophoton) {
        for (TpClass cls : {TpClass::p1, TpClass::m1, TpClass::pi, TpClass::mi}) {
            const auto ev = chain_eigenvalues(twophoton_chain(params, cls, n_max));
            for (Eigen::Index i = 0; i < ev.size(); ++i)
                all.push_back({ev[i] * params.omega, 0, static_cast<int>(cls)});
        }
    } else {
        for (int p : {+1, -1}) {
            const auto ev = chain_eigenvalues(parity_chain(params, p, n_max));
            for (Eigen::Index i = 0; i < ev.size(); ++i)
                all.push_back({ev[i] * params.omega, p, -1});
        }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.energy < b.energy; });
    if (static_cast<int>(all.size()) > count) all.resize(count);
    return all;
}

} // namespace detail

// Lowest `count` eigenvalues with truncation doubling: n_max doubles until the
// kept levels move by less than `tol` between consecutive passes. Caps at six
// doublings, then throws convergence_error.
template <class Real = double>
OracleSpectrum<Real> oracle_spectrum(const BasicParams<Real>& params, int count,
                                     Real tol = Real(1e-10)) {
    params.validate();
    if (count < 1) throw std::domain_error("count must be >= 1");
    const BasicParams<Real> q = params.scaled();
    int n_max = std::max({4 * count, static_cast<int>(std::ceil(16 * q.g * q.g)) + 32, 16});
    auto prev = detail::oracle_pass(params, n_max, count);
    for (int pass = 0; pass < 6; ++pass) {
        n_max *= 2;
        auto cur = detail::oracle_pass(params, n_max, count);
        Real shift = 0;
        const std::size_t n = std::min(prev.size(), cur.size());
        for (std::size_t i = 0; i < n; ++i)
            shift = std::max(shift, std::abs(cur[i].energy - prev[i].energy));
        if (shift < tol * params.omega && cur.size() >= prev.size()) {
            OracleSpectrum<Real> out;
            out.levels = std::move(cur);
            out.n_max = n_max;
            out.max_shift = shift;
            return out;
        }
        prev = std::move(cur);
    }
    throw convergence_error("oracle spectrum did not converge within six truncation doublings");
}

// Eigenpairs of one parity chain at a fixed truncation (ascending energies).
template <class Real = double>
std::pair<VectorX<Real>, MatrixX<Real>> chain_eigenpairs(const Chain<Real>& c) {
    Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver;
    solver.computeFromTridiagonal(c.diag, c.off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw convergence_error("tridiagonal eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace rabiq

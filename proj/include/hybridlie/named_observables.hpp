#pragma once

#include "hybridlie/observable.hpp"

namespace hybridlie {

// Ready-made observables for the spin-1/2 particle with classical position
// and momentum (n = 2, n_c = 3): spin S_i = q_i, L_i = (x cross k)_i, total
// angular momentum J_i = L_i + S_i, and the usual scalars.
namespace spin_half {

inline HybridObservable spin(const BasisPtr& basis, int i) {
    HybridObservable a = HybridObservable::zero(basis, 3);
    a.a(i) = PhasePolynomial::constant(3, 1.0);
    return a;
}

inline HybridObservable orbital(const BasisPtr& basis, int i) {
    return HybridObservable::classical(basis, angular_momentum(i));
}

inline HybridObservable total_angular(const BasisPtr& basis, int i) {
    return orbital(basis, i) + spin(basis, i);
}

inline HybridObservable orbital_squared(const BasisPtr& basis) {
    PhasePolynomial l2(3);
    for (int i = 0; i < 3; ++i) l2 += angular_momentum(i) * angular_momentum(i);
    return HybridObservable::classical(basis, l2);
}

inline HybridObservable momentum_squared(const BasisPtr& basis) {
    PhasePolynomial k2(3);
    for (int i = 0; i < 3; ++i) {
        PhasePolynomial ki = PhasePolynomial::variable(3, kvar(3, i));
        k2 += ki * ki;
    }
    return HybridObservable::classical(basis, k2);
}

/// L.S = sum_i L_i q_i.
inline HybridObservable spin_orbit_coupling(const BasisPtr& basis, double g = 1.0) {
    HybridObservable h = HybridObservable::zero(basis, 3);
    for (int i = 0; i < 3; ++i) h.a(i) = g * angular_momentum(i);
    return h;
}

/// H = k^2 / (2 mass) + g L.S.
inline HybridObservable spin_orbit_hamiltonian(const BasisPtr& basis, double g, double mass) {
    HybridObservable h = spin_orbit_coupling(basis, g);
    h.a0() = momentum_squared(basis).a0() * (0.5 / mass);
    return h;
}

/// S^2 = (3/4) hbar^2 * identity for spin one half.
inline HybridObservable spin_squared(const BasisPtr& basis) {
    double h2 = basis->hbar() * basis->hbar();
    return HybridObservable::classical(basis, PhasePolynomial::constant(3, 0.75 * h2));
}

inline HybridObservable position(const BasisPtr& basis, int i) {
    return HybridObservable::classical(basis, PhasePolynomial::variable(3, xvar(i)));
}

inline HybridObservable momentum(const BasisPtr& basis, int i) {
    return HybridObservable::classical(basis, PhasePolynomial::variable(3, kvar(3, i)));
}

}  // namespace spin_half
}  // namespace hybridlie

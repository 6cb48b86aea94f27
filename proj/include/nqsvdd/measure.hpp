#pragma once

#include "nqsvdd/pauli.hpp"

namespace nqsvdd {

/// Ordered Pauli observables over the final active qubits. Names are local
/// (length n_f, position 0 = first active qubit); identity is excluded.
struct ObservableSet {
    int n_f = 0;
    std::vector<std::string> names;

    int dim() const { return static_cast<int>(names.size()); }
};

/// Deterministic selection: enumerate P_{n_f} minus identity, order by
/// weight ascending and then lexicographically with I<X<Y<Z per position,
/// take the first d. Throws std::out_of_range unless 1 <= d <= 4^{n_f}-1.
ObservableSet select_observables(int n_f, int d);

/// Place local observables onto the active qubits of an n_total register
/// (identity everywhere else).
std::vector<PauliString> lift_observables(const ObservableSet& obs,
                                          std::span<const int> active,
                                          int n_total);

std::vector<double> latent(const PureState& psi,
                           const std::vector<PauliString>& observables);
std::vector<double> latent(const MixedState& rho,
                           const std::vector<PauliString>& observables);

}  // namespace nqsvdd

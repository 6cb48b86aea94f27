#pragma once

#include <string>

#include "nqsvdd/state.hpp"

namespace nqsvdd {

enum class PauliFactor : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Tensor product over {I,X,Y,Z}; factor 0 acts on qubit 0 (string name is
/// written qubit 0 first, e.g. "XIZI").
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<PauliFactor> factors);
    static PauliString from_name(const std::string& name);

    int n_qubits() const { return static_cast<int>(factors_.size()); }
    int weight() const;
    const std::vector<PauliFactor>& factors() const { return factors_; }
    std::string name() const;
    bool is_identity() const { return weight() == 0; }

    /// out = P |psi>.
    PureState apply(const PureState& psi) const;

    /// Full 2^n x 2^n matrix (test/support use; expectations do not build it).
    CMat matrix() const;

  private:
    std::vector<PauliFactor> factors_;
};

/// <psi|P|psi>, in [-1, 1].
double expectation(const PureState& psi, const PauliString& p);

/// Tr(P rho), in [-1, 1] for valid density matrices.
double expectation(const MixedState& rho, const PauliString& p);

}  // namespace nqsvdd

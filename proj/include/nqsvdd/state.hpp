#pragma once

#include <span>

#include "nqsvdd/core.hpp"

namespace nqsvdd {

/// Basis-index convention used everywhere, including the dense test oracle:
/// qubit 0 is the MOST significant bit of the basis index. For n qubits the
/// bit of qubit q inside index i is (i >> (n-1-q)) & 1.
inline std::size_t qubit_mask(int n_qubits, int qubit) {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

class PureState {
  public:
    explicit PureState(int n_qubits);
    PureState(int n_qubits, std::vector<cplx> amplitudes);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }

    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    std::vector<cplx>& amplitudes() { return amps_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm() const;
    cplx inner(const PureState& other) const;

  private:
    int n_;
    std::vector<cplx> amps_;
};

class MixedState {
  public:
    explicit MixedState(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }

    cplx& at(std::size_t r, std::size_t c) { return rho_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const {
        return rho_[r * dim_ + c];
    }

    std::vector<cplx>& data() { return rho_; }
    const std::vector<cplx>& data() const { return rho_; }

    double trace_real() const;
    double hermiticity_defect() const;

  private:
    int n_;
    std::size_t dim_;
    std::vector<cplx> rho_;
};

MixedState to_mixed(const PureState& psi);

/// Apply a 2^k x 2^k matrix to the target qubits of a strided view
/// v[i] = data[base + i*stride] over a 2^n-dimensional virtual vector.
void apply_matrix_strided(cplx* data, int n_qubits, const CMat& m,
                          std::span<const int> targets, std::size_t base,
                          std::size_t stride);

void apply_matrix(PureState& psi, const CMat& m, std::span<const int> targets);

/// rho <- A rho (A acting on the row index).
void left_mul(MixedState& rho, const CMat& a, std::span<const int> targets);
/// rho <- rho B (B acting on the column index).
void right_mul(MixedState& rho, const CMat& b, std::span<const int> targets);
/// rho <- U rho U^dagger.
void conjugate(MixedState& rho, const CMat& u, std::span<const int> targets);

/// rho <- sum_k K rho K^dagger. Completeness sum K^dagger K = I is checked
/// to 1e-10 on the target subsystem.
void apply_kraus(MixedState& rho, const std::vector<CMat>& kraus,
                 std::span<const int> targets);

/// Completeness defect max|sum K^dagger K - I|.
double kraus_completeness_defect(const std::vector<CMat>& kraus);

}  // namespace nqsvdd

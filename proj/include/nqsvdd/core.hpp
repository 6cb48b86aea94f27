#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nqsvdd {

using cplx = std::complex<double>;

// Malformed circuit structure: bad arity, bad qubit index, inactive qubit.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Symbolic angle could not be resolved against the supplied parameter or
// feature vectors.
struct BindingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Kraus set fails completeness, or channel parameters are unphysical.
struct ChannelError : std::domain_error {
    using std::domain_error::domain_error;
};

// File-format problems in dataset loaders.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation called in the wrong lifecycle state (e.g. scoring before the
// center was initialized).
struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Small dense complex matrix, row-major. Used for gate and Kraus matrices;
/// states use their own flat storage.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const {
        return a_[r * cols_ + c];
    }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    CMat dagger() const;
    CMat conj() const;
    bool is_unitary(double tol = 1e-10) const;
    double max_abs_diff(const CMat& other) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMat matmul(const CMat& a, const CMat& b);
CMat kron(const CMat& a, const CMat& b);
CMat operator*(const cplx& s, const CMat& m);
CMat operator+(const CMat& a, const CMat& b);

/// Deterministic PRNG with hand-rolled distributions. std::mt19937_64 output
/// is pinned by the standard, and the distributions below avoid the
/// implementation-defined behavior of <random> distribution adaptors, so
/// identical seeds give identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (pair cached).
    double normal();

    /// Uniform integer in [0, n).
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: empty range");
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    /// Deterministic Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

    /// Draw k distinct indices from [0, n) in selection order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                        std::size_t k);

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// SHA-1 hex digest, used for content-addressed config hashes in manifests.
std::string sha1_hex(const std::string& bytes);

/// Shortest-round-trip double formatting shared by all text outputs.
std::string format_double(double v);

}  // namespace nqsvdd

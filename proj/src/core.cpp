#include "nqsvdd/core.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>

namespace nqsvdd {

CMat CMat::dagger() const {
    CMat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMat CMat::conj() const {
    CMat out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = std::conj(a_[i]);
    return out;
}

bool CMat::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    CMat p = matmul(dagger(), *this);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            cplx want = (r == c) ? cplx(1.0) : cplx(0.0);
            if (std::abs(p(r, c) - want) > tol) return false;
        }
    }
    return true;
}

double CMat::max_abs_diff(const CMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        m = std::max(m, std::abs(a_[i] - other.a_[i]));
    return m;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    CMat out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx av = a(r, k);
            if (av == cplx(0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += av * b(k, c);
        }
    }
    return out;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca)
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    out(ra * b.rows() + rb, ca * b.cols() + cb) =
                        a(ra, ca) * b(rb, cb);
    return out;
}

CMat operator*(const cplx& s, const CMat& m) {
    CMat out = m;
    for (auto& v : out.data()) v *= s;
    return out;
}

CMat operator+(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator+: shape mismatch");
    CMat out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] += b.data()[i];
    return out;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n,
                                                         std::size_t k) {
    if (k > n)
        throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    // Partial Fisher-Yates: the first k entries are the sample.
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + uniform_index(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

namespace {

inline std::uint32_t rol(std::uint32_t v, int s) {
    return (v << s) | (v >> (32 - s));
}

}  // namespace

std::string sha1_hex(const std::string& bytes) {
    std::array<std::uint32_t, 5> h = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu,
                                      0x10325476u, 0xC3D2E1F0u};
    std::string msg = bytes;
    std::uint64_t bit_len = static_cast<std::uint64_t>(msg.size()) * 8;
    msg.push_back(static_cast<char>(0x80));
    while (msg.size() % 64 != 56) msg.push_back('\0');
    for (int i = 7; i >= 0; --i)
        msg.push_back(static_cast<char>((bit_len >> (8 * i)) & 0xFF));

    for (std::size_t off = 0; off < msg.size(); off += 64) {
        std::uint32_t w[80];
        for (int t = 0; t < 16; ++t) {
            w[t] = (static_cast<std::uint8_t>(msg[off + 4 * t]) << 24) |
                   (static_cast<std::uint8_t>(msg[off + 4 * t + 1]) << 16) |
                   (static_cast<std::uint8_t>(msg[off + 4 * t + 2]) << 8) |
                   static_cast<std::uint8_t>(msg[off + 4 * t + 3]);
        }
        for (int t = 16; t < 80; ++t)
            w[t] = rol(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1);
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int t = 0; t < 80; ++t) {
            std::uint32_t f, k;
            if (t < 20) {
                f = (b & c) | ((~b) & d);
                k = 0x5A827999u;
            } else if (t < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (t < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            std::uint32_t tmp = rol(a, 5) + f + e + k + w[t];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = tmp;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
    }

    static const char* hexd = "0123456789abcdef";
    std::string out;
    out.reserve(40);
    for (std::uint32_t v : h) {
        for (int i = 7; i >= 0; --i) out.push_back(hexd[(v >> (4 * i)) & 0xF]);
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    // Shortest representation that round-trips a double.
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace nqsvdd

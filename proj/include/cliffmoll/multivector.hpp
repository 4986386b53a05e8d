// multivector.hpp
// Dense Clifford algebra Cl_n over R^n with e_i^2 = -1, e_i e_j = -e_j e_i.
// Blades are indexed by bitmasks over {1..n}; coefficient storage is in
// increasing bitmask order, which also fixes the field file layout.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffmoll {

inline constexpr int kMaxDim = 8;

inline int grade(unsigned mask) { return std::popcount(mask); }

struct BladeProduct {
    int sign;       // +1 or -1
    unsigned mask;  // resulting basis blade
};

/// Product of two basis blades e_A e_B. The sign counts the transpositions
/// needed to sort the concatenated index sequence plus one factor -1 per
/// repeated index (e_i^2 = -1).
inline BladeProduct blade_product(unsigned a, unsigned b) {
    int swaps = 0;
    for (unsigned s = a >> 1; s != 0; s >>= 1) swaps += std::popcount(s & b);
    swaps += std::popcount(a & b);
    return {(swaps & 1) ? -1 : +1, a ^ b};
}

/// Sign of Clifford conjugation on a grade-k blade: (-1)^{k(k+1)/2}.
inline int conjugation_sign(int k) {
    return ((k * (k + 1) / 2) & 1) ? -1 : +1;
}

namespace detail {

// Cached full sign table for one dimension; table[a * 2^n + b] = sign(e_A e_B).
inline const std::vector<int8_t>& sign_table(int n) {
    static std::array<std::vector<int8_t>, kMaxDim + 1> tables;
    auto& t = tables[static_cast<size_t>(n)];
    if (t.empty()) {
        const size_t dim = size_t{1} << n;
        t.resize(dim * dim);
        for (unsigned a = 0; a < dim; ++a)
            for (unsigned b = 0; b < dim; ++b)
                t[a * dim + b] = static_cast<int8_t>(blade_product(a, b).sign);
    }
    return t;
}

}  // namespace detail

class Multivector {
  public:
    Multivector() : n_(0), c_(1, 0.0) {}

    explicit Multivector(int n) : n_(check_dim(n)), c_(size_t{1} << n, 0.0) {}

    Multivector(int n, std::vector<double> coeffs) : n_(check_dim(n)), c_(std::move(coeffs)) {
        if (c_.size() != (size_t{1} << n_))
            throw std::invalid_argument("Multivector: coefficient count must be 2^n");
    }

    static Multivector scalar(int n, double v) {
        Multivector m(n);
        m.c_[0] = v;
        return m;
    }

    static Multivector basis(int n, unsigned mask, double v = 1.0) {
        Multivector m(n);
        if (mask >= (size_t{1} << n)) throw std::invalid_argument("Multivector: blade mask out of range");
        m.c_[mask] = v;
        return m;
    }

    int dim() const { return n_; }
    size_t size() const { return c_.size(); }
    double operator[](size_t mask) const { return c_[mask]; }
    double& operator[](size_t mask) { return c_[mask]; }
    const std::vector<double>& coeffs() const { return c_; }

    double scalar_part() const { return c_[0]; }

    /// Euclidean 2-norm of the blade coefficients.
    double norm() const {
        double s = 0.0;
        for (double v : c_) s += v * v;
        return std::sqrt(s);
    }

    Multivector operator+(const Multivector& o) const {
        check_same(o);
        Multivector r(n_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }

    Multivector operator-(const Multivector& o) const {
        check_same(o);
        Multivector r(n_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }

    Multivector operator-() const {
        Multivector r(n_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }

    Multivector operator*(double s) const {
        Multivector r(n_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
        return r;
    }

    friend Multivector operator*(double s, const Multivector& m) { return m * s; }

    Multivector& operator+=(const Multivector& o) {
        check_same(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

  private:
    static int check_dim(int n) {
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("Multivector: dimension must be in [1, 8]");
        return n;
    }
    void check_same(const Multivector& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Multivector: dimension mismatch");
    }

    int n_;
    std::vector<double> c_;
};

/// Geometric product, bilinear extension of blade_product.
inline Multivector mv_mul(const Multivector& u, const Multivector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("mv_mul: dimension mismatch");
    const int n = u.dim();
    const size_t dim = size_t{1} << n;
    const auto& signs = detail::sign_table(n);
    Multivector r(n);
    for (unsigned a = 0; a < dim; ++a) {
        const double ua = u[a];
        if (ua == 0.0) continue;
        const int8_t* row = signs.data() + a * dim;
        for (unsigned b = 0; b < dim; ++b) {
            const double vb = v[b];
            if (vb == 0.0) continue;
            r[a ^ b] += row[b] * ua * vb;
        }
    }
    return r;
}

/// Clifford conjugation, the anti-automorphism acting as (-1)^{k(k+1)/2} on
/// grade k. Negates vectors.
inline Multivector mv_conj(const Multivector& u) {
    Multivector r(u.dim());
    for (size_t mask = 0; mask < u.size(); ++mask)
        r[mask] = conjugation_sign(grade(static_cast<unsigned>(mask))) * u[mask];
    return r;
}

/// Grade-1 element sum_j x_j e_j.
inline Multivector vector_embed(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    Multivector r(n);
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(x[j])) throw std::invalid_argument("vector_embed: non-finite coordinate");
        r[size_t{1} << j] = x[j];
    }
    return r;
}

inline Multivector vector_embed(const std::vector<double>& x) {
    return vector_embed(std::span<const double>(x));
}

/// Linear potential G(x) = sum_j c_j x_j; its gradient is the constant vector
/// gamma = sum_j c_j e_j.
struct GradientPotential {
    std::vector<double> c;

    GradientPotential() = default;
    explicit GradientPotential(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    int dim() const { return static_cast<int>(c.size()); }

    double value(std::span<const double> x) const {
        double s = 0.0;
        for (size_t j = 0; j < c.size(); ++j) s += c[j] * x[j];
        return s;
    }

    bool is_zero() const {
        for (double v : c)
            if (v != 0.0) return false;
        return true;
    }

    Multivector gamma_vector() const { return vector_embed(c); }
};

}  // namespace cliffmoll

#pragma once

/**
 * @file exact_arith.hpp
 * Arbitrary-precision integers and rationals, dense polynomials and
 * matrices, valuations, Smith normal form and the resultant calculus for
 * eigenvalue ratios.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "frobext/errors.hpp"

namespace frobext {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational make_rational(const BigInt& num, const BigInt& den);
BigInt ipow(const BigInt& base, unsigned long exp);
std::string to_string(const BigInt& x);
std::string to_string(const BigRational& x);

bool is_prime(const BigInt& n);
void require_prime(const BigInt& l);

// l-adic valuation; nullopt stands for +infinity (x == 0).
std::optional<long> ord_l(const BigRational& x, const BigInt& l);
long ord_l_nonzero(const BigInt& x, const BigInt& l);
BigRational abs_l(const BigRational& x, const BigInt& l);
BigInt l_part(const BigInt& n, const BigInt& l);

// Distinct prime divisors of |n|, ascending.  n == 0 is rejected.
std::vector<BigInt> prime_divisors(const BigInt& n);

// ---------------------------------------------------------------------------
// Dense univariate polynomials, ascending coefficients.

template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly monomial(const T& a, std::size_t deg)
    {
        std::vector<T> v(deg + 1, T(0));
        v[deg] = a;
        return Poly(std::move(v));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T eval(const T& x) const
    {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const
    {
        std::vector<T> v;
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * T(static_cast<long>(i)));
        return Poly(std::move(v));
    }

    // t^n * p(1/t) for n >= degree.
    Poly reversed(std::size_t n) const
    {
        std::vector<T> v(n + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) v[n - i] = c_[i];
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b)
    {
        std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const T& s, const Poly& a)
    {
        std::vector<T> v(a.c_);
        for (auto& x : v) x *= s;
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPolynomial = Poly<BigInt>;
using RatPolynomial = Poly<BigRational>;

RatPolynomial to_rational(const IntPolynomial& p);
// Throws InputError when some coefficient is not an integer.
IntPolynomial to_integer(const RatPolynomial& p);
std::string to_string(const IntPolynomial& p, const char* var = "t");
std::string to_string(const RatPolynomial& p, const char* var = "t");

// Quotient and remainder over Q.  b must be nonzero.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);
// Monic gcd over Q (zero when both inputs are zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial monic(const RatPolynomial& p);
// Exact division of integer polynomials by a monic divisor; throws if inexact.
IntPolynomial exact_div_monic(const IntPolynomial& a, const IntPolynomial& monic_divisor);

// ---------------------------------------------------------------------------
// Dense row-major matrices.

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : r_(rows), c_(cols), a_(std::move(data))
    {
        if (a_.size() != r_ * c_) throw InputError("matrix data size mismatch");
    }
    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows)
    {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw InputError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool is_square() const { return r_ == c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<T>& data() const { return a_; }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const
    {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }

    void set_block(std::size_t i0, std::size_t j0, const Matrix& b)
    {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.c_ != b.r_) throw InputError("matrix product dimension mismatch");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v)
    {
        if (a.c_ != v.size()) throw InputError("matrix-vector dimension mismatch");
        std::vector<T> out(a.r_, T(0));
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) out[i] += a(i, k) * v[k];
        return out;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        a.check_same(b);
        Matrix m(a);
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        a.check_same(b);
        Matrix m(a);
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
        return m;
    }
    friend Matrix operator*(const T& s, const Matrix& a)
    {
        Matrix m(a);
        for (auto& x : m.a_) x *= s;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_same(const Matrix& b) const
    {
        if (r_ != b.r_ || c_ != b.c_) throw InputError("matrix shape mismatch");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<BigRational>;

RatMatrix to_rational(const IntMatrix& m);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);
IntMatrix companion(const IntPolynomial& monic_poly);
IntMatrix mat_pow(const IntMatrix& a, unsigned long e);
std::string to_string(const IntMatrix& m);

// Fraction-free determinant (Bareiss).
BigInt det(const IntMatrix& a);
BigRational det(const RatMatrix& a);
long rank(const IntMatrix& a);
long rank(const RatMatrix& a);
// Inverse over Q; throws on singular input.
RatMatrix inverse(const RatMatrix& a);

/// Division-free characteristic polynomial det(tI - A) by Berkowitz's
/// algorithm.  Works over any commutative ring with +, -, * and a zero/one.
template <class T>
std::vector<T> berkowitz_descending(const std::vector<std::vector<T>>& a, const T& zero,
                                    const T& one)
{
    const std::size_t n = a.size();
    if (n == 0) return {one};
    std::vector<T> vect{one, zero - a[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // Toeplitz column [1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C].
        std::vector<T> q;
        q.reserve(r + 2);
        q.push_back(one);
        q.push_back(zero - a[r][r]);
        std::vector<T> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = a[i][r];
        for (std::size_t k = 0; k < r; ++k) {
            T s = zero;
            for (std::size_t j = 0; j < r; ++j) s = s + a[r][j] * v[j];
            q.push_back(zero - s);
            if (k + 1 < r) {
                std::vector<T> w(r, zero);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + a[i][j] * v[j];
                v = std::move(w);
            }
        }
        std::vector<T> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = next[i] + q[i - j] * vect[j];
        vect = std::move(next);
    }
    return vect;
}

IntPolynomial charpoly(const IntMatrix& a);
RatPolynomial charpoly(const RatMatrix& a);
// Minimal polynomial over Q, monic.
RatPolynomial minpoly(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Smith normal form: left * A * right == diag, with diag[i] | diag[i+1].

struct SNFResult {
    IntMatrix left;
    IntMatrix left_inv;
    std::vector<BigInt> diag; // length min(rows, cols), nonnegative
    IntMatrix right;

    std::size_t rank() const;
};

SNFResult smith_normal_form(const IntMatrix& a);
std::vector<BigInt> invariant_factors(const IntMatrix& a);

// Columns spanning the integer kernel {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Eigenvalue-ratio calculus.

struct RatioCharpoly {
    RatPolynomial monic;    // prod (x - b_j / a_i)
    RatPolynomial reversed; // prod (1 - (b_j / a_i) t)
};

// Roots of P are a_i, roots of Q are b_j.  P(0) must be nonzero.
RatioCharpoly ratio_charpoly(const IntPolynomial& p, const IntPolynomial& q);

struct LeadingTerm {
    long rho = 0;
    BigRational value;
};

// rho = multiplicity of t = 1 as a root, value = (prev / (1-t)^rho)(1).
LeadingTerm limit_leading(const RatPolynomial& prev);

} // namespace frobext

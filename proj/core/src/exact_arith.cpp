#include "frobext/exact_arith.hpp"

#include <sstream>

namespace frobext {

BigRational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw InputError("zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

BigInt ipow(const BigInt& base, unsigned long exp)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::string to_string(const BigInt& x) { return x.get_str(); }
std::string to_string(const BigRational& x) { return x.get_str(); }

bool is_prime(const BigInt& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

void require_prime(const BigInt& l)
{
    if (!is_prime(l)) throw InputError("not a prime: " + l.get_str());
}

long ord_l_nonzero(const BigInt& x, const BigInt& l)
{
    if (x == 0) throw InputError("valuation of zero");
    BigInt t = x;
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), l.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), l.get_mpz_t());
        ++v;
    }
    return v;
}

std::optional<long> ord_l(const BigRational& x, const BigInt& l)
{
    require_prime(l);
    if (x == 0) return std::nullopt;
    return ord_l_nonzero(x.get_num(), l) - ord_l_nonzero(x.get_den(), l);
}

BigRational abs_l(const BigRational& x, const BigInt& l)
{
    require_prime(l);
    if (x == 0) throw InputError("abs_l of zero");
    long v = *ord_l(x, l);
    BigInt lv = ipow(l, static_cast<unsigned long>(v < 0 ? -v : v));
    return v >= 0 ? make_rational(1, lv) : BigRational(lv);
}

BigInt l_part(const BigInt& n, const BigInt& l)
{
    if (n == 0) throw InputError("l-part of zero");
    return ipow(l, static_cast<unsigned long>(ord_l_nonzero(n, l)));
}

namespace {

BigInt pollard_brent(const BigInt& n)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, m = 64;
        auto f = [&](const BigInt& v) {
            BigInt w = v * v + c;
            mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
            return w;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    BigInt d = x - y;
                    q = q * abs(d);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                BigInt d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(BigInt n, std::vector<BigInt>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    BigInt d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<BigInt> prime_divisors(const BigInt& n0)
{
    if (n0 == 0) throw InputError("prime divisors of zero");
    BigInt n = abs(n0);
    std::vector<BigInt> out;
    for (unsigned long p = 2; p < 10000 && BigInt(p) * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.push_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------

RatPolynomial to_rational(const IntPolynomial& p)
{
    std::vector<BigRational> v;
    for (const auto& c : p.coeffs()) v.emplace_back(c);
    return RatPolynomial(std::move(v));
}

IntPolynomial to_integer(const RatPolynomial& p)
{
    std::vector<BigInt> v;
    for (const auto& c : p.coeffs()) {
        if (c.get_den() != 1) throw InputError("polynomial has non-integral coefficient " + c.get_str());
        v.push_back(c.get_num());
    }
    return IntPolynomial(std::move(v));
}

namespace {

template <class T>
std::string poly_str(const Poly<T>& p, const char* var)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = p.degree(); i >= 0; --i) {
        T c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        bool neg = c < 0;
        T a = neg ? T(-c) : c;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace

std::string to_string(const IntPolynomial& p, const char* var) { return poly_str(p, var); }
std::string to_string(const RatPolynomial& p, const char* var) { return poly_str(p, var); }

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b)
{
    if (b.is_zero()) throw InputError("polynomial division by zero");
    std::vector<BigRational> r = a.coeffs();
    long db = b.degree();
    if (a.degree() < db) return {RatPolynomial(), a};
    std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - db + 1), BigRational(0));
    BigRational lb = b.leading();
    for (long i = a.degree(); i >= db; --i) {
        BigRational c = r[static_cast<std::size_t>(i)] / lb;
        q[static_cast<std::size_t>(i - db)] = c;
        if (c == 0) continue;
        for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeff(static_cast<std::size_t>(j));
    }
    return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

RatPolynomial monic(const RatPolynomial& p)
{
    if (p.is_zero()) return p;
    BigRational inv = 1 / p.leading();
    return inv * p;
}

RatPolynomial gcd(const RatPolynomial& a0, const RatPolynomial& b0)
{
    RatPolynomial a = a0, b = b0;
    while (!b.is_zero()) {
        RatPolynomial r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

IntPolynomial exact_div_monic(const IntPolynomial& a, const IntPolynomial& d)
{
    if (d.leading() != 1) throw InputError("divisor is not monic");
    auto [q, r] = divmod(to_rational(a), to_rational(d));
    if (!r.is_zero()) throw InputError("inexact polynomial division");
    return to_integer(q);
}

// ---------------------------------------------------------------------------

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.cols()) throw InputError("vstack column mismatch");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

namespace {
template <class T>
Matrix<T> kron_impl(const Matrix<T>& a, const Matrix<T>& b)
{
    Matrix<T> m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return m;
}
} // namespace

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) { return kron_impl(a, b); }
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) { return kron_impl(a, b); }

IntMatrix companion(const IntPolynomial& p)
{
    if (p.degree() < 1 || p.leading() != 1) throw InputError("companion matrix needs a monic polynomial of degree >= 1");
    std::size_t n = static_cast<std::size_t>(p.degree());
    IntMatrix c(n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(i);
    return c;
}

IntMatrix mat_pow(const IntMatrix& a, unsigned long e)
{
    IntMatrix r = IntMatrix::identity(a.rows()), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

BigInt det(const IntMatrix& a0)
{
    if (!a0.is_square()) throw InputError("determinant of non-square matrix");
    std::size_t n = a0.rows();
    if (n == 0) return 1;
    IntMatrix a = a0;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

BigRational det(const RatMatrix& a0)
{
    if (!a0.is_square()) throw InputError("determinant of non-square matrix");
    RatMatrix a = a0;
    std::size_t n = a.rows();
    BigRational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t s = k;
        while (s < n && a(s, k) == 0) ++s;
        if (s == n) return 0;
        if (s != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(s, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            BigRational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

long rank(const RatMatrix& a0)
{
    RatMatrix a = a0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t s = r;
        while (s < a.rows() && a(s, c) == 0) ++s;
        if (s == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(s, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            BigRational f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return static_cast<long>(r);
}

long rank(const IntMatrix& a) { return rank(to_rational(a)); }

RatMatrix inverse(const RatMatrix& a0)
{
    if (!a0.is_square()) throw InputError("inverse of non-square matrix");
    std::size_t n = a0.rows();
    RatMatrix a = a0, inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t s = k;
        while (s < n && a(s, k) == 0) ++s;
        if (s == n) throw InputError("singular matrix");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(k, j), a(s, j));
            std::swap(inv(k, j), inv(s, j));
        }
        BigRational piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            BigRational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

namespace {
template <class T>
Poly<T> charpoly_impl(const Matrix<T>& a)
{
    if (!a.is_square()) throw InputError("characteristic polynomial of non-square matrix");
    std::size_t n = a.rows();
    std::vector<std::vector<T>> rows(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    std::vector<T> desc = berkowitz_descending<T>(rows, T(0), T(1));
    std::reverse(desc.begin(), desc.end());
    return Poly<T>(std::move(desc));
}
} // namespace

IntPolynomial charpoly(const IntMatrix& a) { return charpoly_impl(a); }
RatPolynomial charpoly(const RatMatrix& a) { return charpoly_impl(a); }

RatPolynomial minpoly(const IntMatrix& a)
{
    if (!a.is_square()) throw InputError("minimal polynomial of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return RatPolynomial::constant(1);
    // Echelonized Krylov rows over Q; each row remembers its expression in
    // the powers A^0..A^k.
    std::vector<std::vector<BigRational>> basis, combo;
    std::vector<std::size_t> pivots;
    RatMatrix ra = to_rational(a);
    RatMatrix power = RatMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<BigRational> v(power.data());
        std::vector<BigRational> c(k + 1, BigRational(0));
        c[k] = 1;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const BigRational f = v[pivots[b]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[b][j];
            for (std::size_t j = 0; j < combo[b].size(); ++j) c[j] -= f * combo[b][j];
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv] == 0) ++piv;
        if (piv == v.size()) return monic(RatPolynomial(std::move(c)));
        BigRational inv = 1 / v[piv];
        for (auto& x : v) x *= inv;
        for (auto& x : c) x *= inv;
        basis.push_back(std::move(v));
        combo.push_back(std::move(c));
        pivots.push_back(piv);
        power = power * ra;
    }
    throw InputError("minimal polynomial search failed");
}

// ---------------------------------------------------------------------------

std::size_t SNFResult::rank() const
{
    std::size_t r = 0;
    for (const auto& d : diag)
        if (d != 0) ++r;
    return r;
}

namespace {

struct SnfWork {
    IntMatrix a, u, uinv, v;

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
        for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv(r, i), uinv(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    }
    // row_i -= q * row_t
    void row_sub(std::size_t i, std::size_t t, const BigInt& q)
    {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a(t, c) != 0) a(i, c) -= q * a(t, c);
        for (std::size_t c = 0; c < u.cols(); ++c)
            if (u(t, c) != 0) u(i, c) -= q * u(t, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r)
            if (uinv(r, i) != 0) uinv(r, t) += q * uinv(r, i);
    }
    // col_j -= q * col_t
    void col_sub(std::size_t j, std::size_t t, const BigInt& q)
    {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, t) != 0) a(r, j) -= q * a(r, t);
        for (std::size_t r = 0; r < v.rows(); ++r)
            if (v(r, t) != 0) v(r, j) -= q * v(r, t);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
    }
};

// Nearest-integer quotient keeps remainders small.
BigInt round_div(const BigInt& n, const BigInt& d)
{
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    BigInt twice = 2 * abs(r);
    if (twice > abs(d)) q += (sgn(r) == sgn(d)) ? 1 : -1;
    return q;
}

} // namespace

SNFResult smith_normal_form(const IntMatrix& a)
{
    const std::size_t m = a.rows(), n = a.cols();
    SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero |entry| in the trailing block becomes the pivot.
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (w.a(i, j) == 0) continue;
                    if (pi == m || abs(w.a(i, j)) < abs(w.a(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) break;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            const BigInt piv = w.a(t, t);
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (w.a(i, t) == 0) continue;
                w.row_sub(i, t, round_div(w.a(i, t), piv));
                if (w.a(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w.a(t, j) == 0) continue;
                w.col_sub(j, t, round_div(w.a(t, j), piv));
                if (w.a(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // Divisibility: fold an offending row into the pivot row.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(w.a(i, j).get_mpz_t(), piv.get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            w.row_sub(t, bad, -1);
        }
        if (w.a(t, t) < 0) w.negate_row(t);
    }
    SNFResult res;
    res.diag.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) res.diag[i] = w.a(i, i);
    res.left = std::move(w.u);
    res.left_inv = std::move(w.uinv);
    res.right = std::move(w.v);
    return res;
}

std::vector<BigInt> invariant_factors(const IntMatrix& a) { return smith_normal_form(a).diag; }

IntMatrix kernel_basis(const IntMatrix& a)
{
    SNFResult s = smith_normal_form(a);
    std::size_t r = s.rank();
    std::size_t n = a.cols();
    IntMatrix k(n, n - r);
    // Nonzero invariant factors occupy the leading diagonal positions.
    for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j - r) = s.right(i, j);
    return k;
}

// ---------------------------------------------------------------------------

RatioCharpoly ratio_charpoly(const IntPolynomial& p, const IntPolynomial& q)
{
    if (p.is_zero() || p.coeff(0) == 0) throw InputError("ratio_charpoly: P(0) = 0");
    if (q.is_zero()) throw InputError("ratio_charpoly: Q is zero");
    const std::size_t m = static_cast<std::size_t>(p.degree());
    const std::size_t n = static_cast<std::size_t>(q.degree());
    const std::size_t mn = m * n;
    // A(y) = y^m P(1/y) has roots 1/a_i; B_x(y) = y^n Q(x/y).
    // Res_y(A, B_x) = lc(A)^n lc(Q)^m prod (x - b_j / a_i).
    IntPolynomial arev = p.reversed(m);
    std::vector<BigRational> xs, ys;
    for (std::size_t k = 0; k <= mn; ++k) {
        BigInt x = static_cast<unsigned long>(k);
        std::vector<BigInt> bcoef(n + 1, BigInt(0));
        BigInt xp = 1;
        for (std::size_t e = 0; e <= n; ++e) {
            bcoef[n - e] = q.coeff(e) * xp;
            xp *= x;
        }
        IntMatrix syl(m + n, m + n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t e = 0; e <= m; ++e) syl(r, r + e) = arev.coeff(m - e);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t e = 0; e <= n; ++e) syl(n + r, r + e) = bcoef[n - e];
        xs.emplace_back(x);
        ys.emplace_back(det(syl));
    }
    // Newton divided differences on the nodes 0..mn.
    std::vector<BigRational> dd = ys;
    for (std::size_t lvl = 1; lvl <= mn; ++lvl)
        for (std::size_t i = mn; i >= lvl; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
    RatPolynomial res = RatPolynomial::constant(dd[mn]);
    for (std::size_t i = mn; i-- > 0;) {
        RatPolynomial lin(std::vector<BigRational>{-xs[i], BigRational(1)});
        res = res * lin + RatPolynomial::constant(dd[i]);
    }
    if (res.degree() != static_cast<long>(mn)) throw InputError("ratio_charpoly: degenerate resultant");
    RatioCharpoly out;
    out.monic = monic(res);
    out.reversed = out.monic.reversed(mn);
    return out;
}

LeadingTerm limit_leading(const RatPolynomial& prev)
{
    if (prev.is_zero()) throw InputError("limit_leading of the zero polynomial");
    RatPolynomial cur = prev;
    long rho = 0;
    while (cur.eval(1) == 0) {
        // Divide by (1 - t) = -(t - 1) via synthetic division.
        std::vector<BigRational> c = cur.coeffs();
        std::size_t d = c.size() - 1;
        std::vector<BigRational> qv(d, BigRational(0));
        BigRational carry = 0;
        for (std::size_t i = d; i-- > 0;) {
            carry = c[i + 1] + carry;
            qv[i] = carry;
        }
        for (auto& x : qv) x = -x;
        cur = RatPolynomial(std::move(qv));
        ++rho;
    }
    return {rho, cur.eval(1)};
}

} // namespace frobext

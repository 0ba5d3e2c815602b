#include "frobext/witt.hpp"

#include <atomic>
#include <cstdlib>

#include "frobext/errors.hpp"

namespace frobext {

namespace {

long precision_from_env()
{
    const char* s = std::getenv("FROBEXT_PRECISION");
    if (!s || !*s) return 20;
    char* end = nullptr;
    long k = std::strtol(s, &end, 10);
    if (*end != '\0' || k < 4) throw InputError("FROBEXT_PRECISION must be an integer >= 4");
    return k;
}

std::atomic<long>& precision_slot()
{
    static std::atomic<long> k{precision_from_env()};
    return k;
}

using FpPoly = std::vector<BigInt>;

BigInt mod_nonneg(const BigInt& x, const BigInt& m)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

void fp_trim(FpPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_normalize(FpPoly a, const BigInt& p)
{
    for (auto& c : a) c = mod_nonneg(c, p);
    fp_trim(a);
    return a;
}

// Remainder modulo b (b nonzero, any leading coefficient).
FpPoly fp_rem(FpPoly a, const FpPoly& b, const BigInt& p)
{
    a = fp_normalize(std::move(a), p);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        BigInt c = mod_nonneg(a.back() * inv, p);
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] = mod_nonneg(a[shift + j] - c * b[j], p);
        fp_trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& h, const BigInt& p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return fp_rem(std::move(c), h, p);
}

FpPoly fp_powmod(FpPoly base, BigInt e, const FpPoly& h, const BigInt& p)
{
    FpPoly r = fp_rem({BigInt(1)}, h, p);
    base = fp_rem(std::move(base), h, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, base, h, p);
        e >>= 1;
        if (e > 0) base = fp_mulmod(base, base, h, p);
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const BigInt& p)
{
    a = fp_normalize(std::move(a), p);
    b = fp_normalize(std::move(b), p);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, const BigInt& p)
{
    if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return fp_normalize(std::move(a), p);
}

} // namespace

bool WittRing::irreducible_mod_p(const IntPolynomial& h, const BigInt& p)
{
    const long a = h.degree();
    if (a < 1 || h.leading() != 1) return false;
    if (a == 1) return true;
    FpPoly hp = fp_normalize(h.coeffs(), p);
    FpPoly x{BigInt(0), BigInt(1)};
    if (fp_sub(fp_powmod(x, ipow(p, static_cast<unsigned long>(a)), hp, p), x, p) != FpPoly{}) return false;
    for (const auto& r : prime_divisors(a)) {
        unsigned long sub = static_cast<unsigned long>(a / r.get_si());
        FpPoly g = fp_gcd(fp_sub(fp_powmod(x, ipow(p, sub), hp, p), x, p), hp, p);
        if (g.size() > 1) return false;
    }
    return true;
}

IntPolynomial WittRing::default_modulus(const BigInt& p, long a)
{
    require_prime(p);
    if (a < 1) throw InputError("degree a must be positive");
    if (a == 1) return IntPolynomial(std::vector<BigInt>{0, 1});
    auto value = [](long idx) { return idx == 0 ? 0L : (idx % 2 ? (idx + 1) / 2 : -(idx / 2)); };
    for (long b = 1;; ++b) {
        const long width = 2 * b + 1;
        std::vector<long> idx(static_cast<std::size_t>(a), 0);
        for (;;) {
            long top = *std::max_element(idx.begin(), idx.end());
            if (idx[0] != 0 && top >= width - 2) {
                std::vector<BigInt> c(static_cast<std::size_t>(a + 1));
                for (long i = 0; i < a; ++i) c[static_cast<std::size_t>(i)] = value(idx[static_cast<std::size_t>(i)]);
                c[static_cast<std::size_t>(a)] = 1;
                IntPolynomial h(c);
                if (irreducible_mod_p(h, p)) return h;
            }
            // odometer, constant coefficient most significant
            long pos = a - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == width) idx[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
}

long default_precision()
{
    return precision_slot().load();
}

void set_default_precision(long k)
{
    if (k < 4) throw InputError("precision must be at least 4");
    precision_slot().store(k);
}

std::shared_ptr<const WittRing> WittRing::standard(const BigInt& p, long a, long precision)
{
    return build(p, a, precision > 0 ? precision : default_precision(), default_modulus(p, a));
}

std::shared_ptr<const WittRing> WittRing::build(const BigInt& p, long a, long precision, const IntPolynomial& h)
{
    require_prime(p);
    if (precision < 4) throw InputError("precision must be at least 4");
    if (h.degree() != a || h.leading() != 1) throw InputError("modulus must be monic of degree a");
    if (!irreducible_mod_p(h, p)) throw InputError("modulus is reducible mod p");

    std::shared_ptr<WittRing> r(new WittRing());
    r->p_ = p;
    r->a_ = a;
    r->k_ = precision;
    r->q_ = ipow(p, static_cast<unsigned long>(a));
    r->pk_ = ipow(p, static_cast<unsigned long>(precision));
    r->h_ = h;
    r->exact_ = false;
    const BigInt& pk = r->pk_;

    auto mulk = [&](const Elt& u, const Elt& v) { return r->reduce(r->mul(u, v), pk); };
    auto eval_at = [&](const IntPolynomial& f, const Elt& s) {
        Elt acc = r->zero();
        for (long i = f.degree(); i >= 0; --i) acc = r->add(mulk(acc, s), r->from_int(f.coeff(static_cast<std::size_t>(i))));
        return r->reduce(acc, pk);
    };

    // sigma(x) = x^p mod p, then Newton on h.
    FpPoly hp = fp_normalize(h.coeffs(), p);
    FpPoly s0 = fp_powmod({BigInt(0), BigInt(1)}, p, hp, p);
    Elt s = r->zero();
    for (std::size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
    IntPolynomial dh = h.derivative();
    for (int iter = 0; iter < 200; ++iter) {
        Elt hs = eval_at(h, s);
        if (r->is_zero(hs)) break;
        Elt u = eval_at(dh, s);
        FpPoly ufp = fp_normalize(u, p);
        FpPoly vfp = fp_powmod(ufp, r->q_ - 2, hp, p);
        Elt v = r->zero();
        for (std::size_t i = 0; i < vfp.size(); ++i) v[i] = vfp[i];
        for (long prec = 1; prec < precision; prec *= 2) v = mulk(v, r->sub(r->from_int(2), mulk(u, v)));
        s = r->reduce(r->sub(s, mulk(hs, v)), pk);
        if (iter == 199) throw InputError("Hensel lifting of sigma did not converge");
    }
    r->sigma_x_ = s;

    // Exact when s is a genuine root of h in Z[x]/(h) and sigma^a = id.
    r->exact_ = true; // raw arithmetic for the test
    Elt acc = r->zero();
    for (long i = h.degree(); i >= 0; --i) acc = r->add(r->mul(acc, s), r->from_int(h.coeff(static_cast<std::size_t>(i))));
    bool exact = std::all_of(acc.begin(), acc.end(), [](const BigInt& c) { return c == 0; });
    auto fill_powers = [&](bool ex) {
        r->exact_ = ex;
        r->sigma_powers_.clear();
        Elt pw = r->one();
        for (long m = 0; m < a; ++m) {
            r->sigma_powers_.push_back(ex ? pw : r->reduce(pw, pk));
            pw = ex ? r->mul(pw, s) : mulk(pw, s);
        }
    };
    fill_powers(exact);
    if (exact && r->sigma_pow(r->gen(), a) != r->gen()) fill_powers(false);
    return r;
}

WittRing::Elt WittRing::from_int(const BigInt& n) const
{
    Elt e = zero();
    e[0] = n;
    return e;
}

WittRing::Elt WittRing::gen() const
{
    std::vector<BigInt> c{0, 1};
    return reduce_poly(c);
}

WittRing::Elt WittRing::reduce_poly(std::vector<BigInt> c) const
{
    const std::size_t a = static_cast<std::size_t>(a_);
    for (std::size_t i = c.size(); i-- > a;) {
        if (c[i] == 0) continue;
        BigInt coef = c[i];
        for (std::size_t j = 0; j <= a; ++j) c[i - a + j] -= coef * h_.coeff(j);
    }
    c.resize(a, BigInt(0));
    return c;
}

WittRing::Elt WittRing::normalize(Elt u) const { return exact_ ? u : reduce(u, pk_); }

WittRing::Elt WittRing::add(const Elt& u, const Elt& v) const
{
    Elt w(u);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += v[i];
    return w;
}

WittRing::Elt WittRing::sub(const Elt& u, const Elt& v) const
{
    Elt w(u);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= v[i];
    return w;
}

WittRing::Elt WittRing::neg(const Elt& u) const
{
    Elt w(u);
    for (auto& x : w) x = -x;
    return w;
}

WittRing::Elt WittRing::mul(const Elt& u, const Elt& v) const
{
    std::vector<BigInt> c(2 * u.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) c[i + j] += u[i] * v[j];
    }
    return normalize(reduce_poly(std::move(c)));
}

WittRing::Elt WittRing::scale(const BigInt& c, const Elt& u) const
{
    Elt w(u);
    for (auto& x : w) x *= c;
    return w;
}

WittRing::Elt WittRing::sigma(const Elt& u) const
{
    Elt w = zero();
    for (std::size_t m = 0; m < u.size(); ++m) {
        if (u[m] == 0) continue;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += u[m] * sigma_powers_[m][i];
    }
    return normalize(w);
}

WittRing::Elt WittRing::sigma_pow(const Elt& u, long k) const
{
    k %= a_;
    if (k < 0) k += a_;
    Elt w = u;
    for (long i = 0; i < k; ++i) w = sigma(w);
    return w;
}

WittRing::Elt WittRing::pow(const Elt& u, const BigInt& e0) const
{
    Elt r = one(), b = u;
    BigInt e = e0;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
        e >>= 1;
        if (e > 0) b = mul(b, b);
    }
    return r;
}

bool WittRing::is_zero(const Elt& u) const
{
    for (const auto& x : u)
        if (exact_ ? x != 0 : !mpz_divisible_p(x.get_mpz_t(), pk_.get_mpz_t())) return false;
    return true;
}

bool WittRing::is_fixed(const Elt& u) const { return is_zero(sub(sigma(u), u)); }

std::optional<long> WittRing::valuation(const Elt& u) const
{
    std::optional<long> v;
    for (const auto& x : u) {
        if (x == 0) continue;
        long w = ord_l_nonzero(x, p_);
        if (!v || w < *v) v = w;
    }
    if (!exact_ && v && *v >= k_) return std::nullopt;
    return v;
}

WittRing::Elt WittRing::div_p_power(const Elt& u, long e) const
{
    BigInt pe = ipow(p_, static_cast<unsigned long>(e));
    Elt w(u);
    for (auto& x : w) {
        if (!mpz_divisible_p(x.get_mpz_t(), pe.get_mpz_t())) throw InputError("Witt element not divisible by p^e");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t());
    }
    return w;
}

WittRing::Elt WittRing::reduce(const Elt& u, const BigInt& m) const
{
    Elt w(u);
    BigInt half = m / 2;
    for (auto& x : w) {
        x = mod_nonneg(x, m);
        if (x > half) x -= m;
    }
    return w;
}

BigInt WittRing::trace(const Elt& u) const
{
    IntMatrix m = mult_matrix(u);
    BigInt t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

IntMatrix WittRing::mult_matrix(const Elt& u) const
{
    const std::size_t a = static_cast<std::size_t>(a_);
    IntMatrix m(a, a);
    Elt basis = one();
    Elt x = gen();
    for (std::size_t j = 0; j < a; ++j) {
        Elt col = mul(u, basis);
        for (std::size_t i = 0; i < a; ++i) m(i, j) = col[i];
        basis = mul(basis, x);
    }
    return m;
}

IntMatrix WittRing::sigma_matrix() const
{
    const std::size_t a = static_cast<std::size_t>(a_);
    IntMatrix m(a, a);
    for (std::size_t j = 0; j < a; ++j)
        for (std::size_t i = 0; i < a; ++i) m(i, j) = sigma_powers_[j][i];
    return m;
}

WittRing::Elt WittRing::unit_trace_element() const
{
    Elt b = one(), x = gen();
    for (long m = 0; m < a_; ++m) {
        if (!mpz_divisible_p(trace(b).get_mpz_t(), p_.get_mpz_t())) return b;
        b = mul(b, x);
    }
    throw InputError("no basis element with unit trace");
}

// ---------------------------------------------------------------------------

SkewPoly::SkewPoly(WittRingPtr ring, std::vector<WittRing::Elt> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs))
{
    trim();
}

SkewPoly SkewPoly::frobenius(const WittRingPtr& ring) { return SkewPoly(ring, {ring->zero(), ring->one()}); }

SkewPoly SkewPoly::constant(const WittRingPtr& ring, const WittRing::Elt& c) { return SkewPoly(ring, {c}); }

void SkewPoly::trim()
{
    while (!c_.empty() && ring_->is_zero(c_.back())) c_.pop_back();
}

SkewPoly operator+(const SkewPoly& f, const SkewPoly& g)
{
    if (f.ring_ != g.ring_) throw InputError("skew polynomials over different rings");
    std::vector<WittRing::Elt> c(std::max(f.c_.size(), g.c_.size()), f.ring_->zero());
    for (std::size_t i = 0; i < f.c_.size(); ++i) c[i] = f.ring_->add(c[i], f.c_[i]);
    for (std::size_t i = 0; i < g.c_.size(); ++i) c[i] = f.ring_->add(c[i], g.c_[i]);
    return SkewPoly(f.ring_, std::move(c));
}

SkewPoly operator-(const SkewPoly& f, const SkewPoly& g)
{
    if (f.ring_ != g.ring_) throw InputError("skew polynomials over different rings");
    std::vector<WittRing::Elt> c(std::max(f.c_.size(), g.c_.size()), f.ring_->zero());
    for (std::size_t i = 0; i < f.c_.size(); ++i) c[i] = f.ring_->add(c[i], f.c_[i]);
    for (std::size_t i = 0; i < g.c_.size(); ++i) c[i] = f.ring_->sub(c[i], g.c_[i]);
    return SkewPoly(f.ring_, std::move(c));
}

SkewPoly operator*(const SkewPoly& f, const SkewPoly& g)
{
    if (f.ring_ != g.ring_) throw InputError("skew polynomials over different rings");
    if (f.c_.empty() || g.c_.empty()) return SkewPoly(f.ring_, {});
    const WittRing& r = *f.ring_;
    std::vector<WittRing::Elt> c(f.c_.size() + g.c_.size() - 1, r.zero());
    for (std::size_t i = 0; i < f.c_.size(); ++i)
        for (std::size_t j = 0; j < g.c_.size(); ++j)
            c[i + j] = r.add(c[i + j], r.mul(f.c_[i], r.sigma_pow(g.c_[j], static_cast<long>(i))));
    return SkewPoly(f.ring_, std::move(c));
}

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g) { return f * g; }

} // namespace frobext

#include "frobext/crystal.hpp"

#include <algorithm>

namespace frobext {

namespace {

void require_same_ring(const Crystal& m, const Crystal& n)
{
    if (!m.ring || !n.ring) throw InputError("crystal without a ring");
    if (m.ring == n.ring) return;
    if (m.ring->p() != n.ring->p() || m.ring->a() != n.ring->a() || m.ring->modulus() != n.ring->modulus())
        throw InputError("crystals over different Witt rings");
}

std::vector<WittRing::Elt> mat_mul(const WittRing& w, const std::vector<WittRing::Elt>& x,
                                   const std::vector<WittRing::Elt>& y, std::size_t n)
{
    std::vector<WittRing::Elt> z(n * n, w.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (w.is_zero(x[i * n + k])) continue;
            for (std::size_t j = 0; j < n; ++j) z[i * n + j] = w.add(z[i * n + j], w.mul(x[i * n + k], y[k * n + j]));
        }
    return z;
}

// Block diagonal multiplication by c on every W-coordinate of a crystal of dim n.
IntMatrix scalar_op(const WittRing& w, const WittRing::Elt& c, std::size_t n)
{
    IntMatrix blk = w.mult_matrix(c);
    const std::size_t a = static_cast<std::size_t>(w.a());
    IntMatrix out(n * a, n * a);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t x = 0; x < a; ++x)
            for (std::size_t y = 0; y < a; ++y) out(j * a + x, j * a + y) = blk(x, y);
    return out;
}

Crystal reduced(const Crystal& c, const BigInt& pk)
{
    Crystal r = c;
    for (auto& e : r.frob) e = c.ring->reduce(e, pk);
    return r;
}

long max_valuation(const FinGenAbGroup& g, const BigInt& p)
{
    long v = 0;
    for (const auto& d : g.torsion) v = std::max(v, ord_l_nonzero(d, p));
    return v;
}

// Result of one evaluation and the largest p-adic exponent it depends on.
struct Attempt {
    PrimaryExt ext;
    long needed = 0;
};

Attempt attempt(const Crystal& m0, const Crystal& n0, long k)
{
    const WittRing& w = *m0.ring;
    BigInt pk = ipow(w.p(), static_cast<unsigned long>(k));
    Crystal m = reduced(m0, pk), n = reduced(n0, pk);

    ExtComplexInput in;
    in.n_moduli = n.z_moduli();
    in.n_frob = n.z_frob();
    const std::size_t r = m.dim(), nd = n.dim();
    std::vector<std::size_t> tors;
    for (std::size_t i = 0; i < r; ++i)
        if (m.exponents[i] > 0) tors.push_back(i);
    in.r = r;
    in.t = tors.size();
    WittRing::Elt c = w.unit_trace_element();
    for (std::size_t k2 = 0; k2 < r; ++k2)
        for (std::size_t i = 0; i < r; ++i) {
            in.phi.push_back(scalar_op(w, m.f(k2, i), nd));
            in.cup.push_back(scalar_op(w, w.mul(c, m.f(k2, i)), nd));
        }
    in.d = IntMatrix(r, in.t);
    for (std::size_t i = 0; i < in.t; ++i)
        in.d(tors[i], i) = ipow(w.p(), static_cast<unsigned long>(m.exponents[tors[i]]));
    for (std::size_t k2 = 0; k2 < in.t; ++k2)
        for (std::size_t i = 0; i < in.t; ++i) {
            WittRing::Elt num = w.scale(ipow(w.p(), static_cast<unsigned long>(m.exponents[tors[i]])),
                                        m.f(tors[k2], tors[i]));
            in.s.push_back(scalar_op(w, w.div_p_power(num, m.exponents[tors[k2]]), nd));
        }

    Attempt at;
    at.ext = primary_part(ext_complex(in), w.p());
    at.needed = std::max({max_valuation(at.ext.e0, w.p()), max_valuation(at.ext.e1, w.p()),
                          max_valuation(at.ext.e2, w.p())});
    if (at.ext.z.defined && at.ext.z.value != 0) {
        auto v = ord_l(at.ext.z.value, w.p());
        if (v) at.needed = std::max(at.needed, std::abs(*v));
    }
    return at;
}

bool same_ext(const PrimaryExt& x, const PrimaryExt& y)
{
    return x.e0 == y.e0 && x.e1 == y.e1 && x.e2 == y.e2 && x.z == y.z;
}

BigInt int_coefficient(const WittRing& w, const WittRing::Elt& e)
{
    if (!w.is_fixed(e)) throw InputError("characteristic polynomial coefficient is not sigma-fixed");
    WittRing::Elt r = w.exact() ? e : w.reduce(e, ipow(w.p(), static_cast<unsigned long>(w.precision())));
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) throw InputError("characteristic polynomial coefficient is not sigma-fixed");
    return r[0];
}

// F^a as an integer matrix, for crystals with integer Frobenius entries.
IntMatrix integer_frob_power(const Crystal& c)
{
    std::vector<WittRing::Elt> g = c.frob_power();
    const std::size_t n = c.dim();
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = int_coefficient(*c.ring, g[i * n + j]);
    return out;
}

IntMatrix eval_poly(const IntPolynomial& m, const IntMatrix& g)
{
    IntMatrix acc(g.rows(), g.cols());
    for (std::size_t i = m.coeffs().size(); i-- > 0;) {
        acc = acc * g;
        for (std::size_t d = 0; d < g.rows(); ++d) acc(d, d) += m.coeffs()[i];
    }
    return acc;
}

} // namespace

std::string to_string(CrystalKind k)
{
    switch (k) {
    case CrystalKind::TorsionFree: return "torsion-free";
    case CrystalKind::KType: return "k-type";
    case CrystalKind::FiniteInvertible: return "finite-F-invertible";
    case CrystalKind::Mixed: return "mixed";
    }
    return "?";
}

Crystal Crystal::unit(const WittRingPtr& ring) { return lefschetz(ring, 0); }

Crystal Crystal::lefschetz(const WittRingPtr& ring, long r)
{
    if (r < 0) throw InputError("negative Lefschetz power has no effective representative");
    Crystal c{ring, {0}, {ring->from_int(ipow(ring->p(), static_cast<unsigned long>(r)))}, std::nullopt, 0};
    c.validate();
    return c;
}

Crystal Crystal::from_matrix(const WittRingPtr& ring, const IntMatrix& f)
{
    if (!f.is_square() || f.rows() == 0) throw InputError("Frobenius matrix must be square and nonempty");
    Crystal c{ring, std::vector<long>(f.rows(), 0), {}, std::nullopt, 0};
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) c.frob.push_back(ring->from_int(f(i, j)));
    c.validate();
    return c;
}

Crystal Crystal::from_charpoly(const WittRingPtr& ring, const IntPolynomial& p)
{
    if (ring->a() != 1) throw InputError("companion crystals need q = p");
    return from_matrix(ring, companion(p));
}

Crystal Crystal::special_module(const WittRingPtr& ring, const IntPolynomial& m)
{
    if (m.degree() < 1 || m.leading() != 1) throw InputError("special module needs a monic m of positive degree");
    if (m.coeff(0) == 0) throw InputError("special module needs m(0) != 0");
    const std::size_t a = static_cast<std::size_t>(ring->a()), d = static_cast<std::size_t>(m.degree());
    const std::size_t n = a * d;
    IntMatrix f(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) f(i + 1, i) = 1;
    for (std::size_t k = 0; k < d; ++k) f(a * k, n - 1) -= m.coeff(k);
    Crystal c = from_matrix(ring, f);
    c.special = m;
    return c;
}

Crystal Crystal::k(const WittRingPtr& ring)
{
    return finite(ring, {1}, {ring->zero()});
}

Crystal Crystal::finite(const WittRingPtr& ring, std::vector<long> exponents, std::vector<WittRing::Elt> frob)
{
    for (long e : exponents)
        if (e <= 0) throw InputError("finite crystal needs positive exponents");
    Crystal c{ring, std::move(exponents), std::move(frob), std::nullopt, 0};
    c.validate();
    return c;
}

std::size_t Crystal::rank() const
{
    return static_cast<std::size_t>(std::count(exponents.begin(), exponents.end(), 0L));
}

CrystalKind Crystal::kind() const
{
    const std::size_t r = rank();
    if (r == dim()) return CrystalKind::TorsionFree;
    if (r > 0) return CrystalKind::Mixed;
    bool k_type = true;
    for (std::size_t i = 0; i < dim() && k_type; ++i) {
        if (exponents[i] != 1) k_type = false;
        for (std::size_t j = 0; j < dim() && k_type; ++j) {
            auto v = ring->valuation(f(i, j));
            if (v && *v < 1) k_type = false;
        }
    }
    if (k_type) return CrystalKind::KType;
    BigInt dt = det(z_frob());
    if (!mpz_divisible_p(dt.get_mpz_t(), ring->p().get_mpz_t())) return CrystalKind::FiniteInvertible;
    return CrystalKind::Mixed;
}

std::vector<BigInt> Crystal::z_moduli() const
{
    std::vector<BigInt> out;
    for (long e : exponents)
        for (long m = 0; m < ring->a(); ++m)
            out.push_back(e == 0 ? BigInt(0) : ipow(ring->p(), static_cast<unsigned long>(e)));
    return out;
}

IntMatrix Crystal::z_frob() const
{
    const std::size_t n = dim(), a = static_cast<std::size_t>(ring->a());
    IntMatrix sig = ring->sigma_matrix();
    IntMatrix out(n * a, n * a);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (ring->is_zero(f(i, j))) continue;
            IntMatrix blk = ring->mult_matrix(f(i, j)) * sig;
            for (std::size_t x = 0; x < a; ++x)
                for (std::size_t y = 0; y < a; ++y) out(i * a + x, j * a + y) = blk(x, y);
        }
    return out;
}

std::vector<WittRing::Elt> Crystal::frob_power() const
{
    const std::size_t n = dim();
    std::vector<WittRing::Elt> acc = frob;
    for (long k = 1; k < ring->a(); ++k) {
        std::vector<WittRing::Elt> s(frob.size());
        for (std::size_t i = 0; i < frob.size(); ++i) s[i] = ring->sigma_pow(frob[i], k);
        acc = mat_mul(*ring, acc, s, n);
    }
    return acc;
}

Crystal Crystal::free_part() const
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < dim(); ++i)
        if (exponents[i] == 0) idx.push_back(i);
    Crystal c{ring, std::vector<long>(idx.size(), 0), {}, special, twist};
    for (std::size_t i : idx)
        for (std::size_t j : idx) c.frob.push_back(f(i, j));
    return c;
}

void Crystal::validate() const
{
    if (!ring) throw InputError("crystal without a ring");
    const std::size_t n = dim();
    if (n == 0) throw InputError("crystal must have positive dimension");
    if (frob.size() != n * n) throw InputError("Frobenius matrix has the wrong size");
    for (const auto& e : frob)
        if (e.size() != static_cast<std::size_t>(ring->a())) throw InputError("Witt element has the wrong length");
    for (long e : exponents)
        if (e < 0) throw InputError("negative exponent");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (exponents[j] == 0 || ring->is_zero(f(i, j))) continue;
            if (exponents[i] == 0) throw InputError("Frobenius maps torsion into the free part");
            auto v = ring->valuation(f(i, j));
            if (v && *v < exponents[i] - exponents[j]) throw InputError("Frobenius is not compatible with the torsion orders");
        }
    if (rank() > 0) {
        Crystal fp = free_part();
        std::vector<WittRing::Elt> g = fp.frob_power();
        const std::size_t r = fp.dim();
        std::vector<std::vector<WittValue>> rows(r, std::vector<WittValue>(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) rows[i][j] = WittValue(ring, g[i * r + j]);
        auto cp = berkowitz_descending(rows, WittValue::from_int(ring, 0), WittValue::from_int(ring, 1));
        if (cp.back().is_zero()) throw InputError("kernel of F is not torsion");
    }
}

Crystal tensor(const Crystal& a, const Crystal& b)
{
    require_same_ring(a, b);
    if (a.kind() != CrystalKind::TorsionFree || b.kind() != CrystalKind::TorsionFree)
        throw InputError("tensor product needs torsion-free crystals");
    const WittRing& w = *a.ring;
    const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    Crystal c;
    c.ring = a.ring;
    c.exponents.assign(n, 0);
    c.frob.assign(n * n, w.zero());
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t j1 = 0; j1 < na; ++j1)
            for (std::size_t i2 = 0; i2 < nb; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2)
                    c.frob[(i1 * nb + i2) * n + j1 * nb + j2] = w.mul(a.f(i1, j1), b.f(i2, j2));
    c.twist = a.twist + b.twist;
    c.validate();
    return c;
}

Crystal direct_sum(const Crystal& a, const Crystal& b)
{
    require_same_ring(a, b);
    const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
    Crystal s{a.ring, a.exponents, std::vector<WittRing::Elt>(n * n, a.ring->zero()), std::nullopt, 0};
    s.exponents.insert(s.exponents.end(), b.exponents.begin(), b.exponents.end());
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) s.frob[i * n + j] = a.f(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) s.frob[(na + i) * n + na + j] = b.f(i, j);
    s.validate();
    return s;
}

IntPolynomial crystal_charpoly(const Crystal& m)
{
    if (m.kind() != CrystalKind::TorsionFree) throw InputError("characteristic polynomial needs a torsion-free crystal");
    const WittRingPtr& ring = m.ring;
    std::vector<WittRing::Elt> g = m.frob_power();
    const std::size_t n = m.dim();
    std::vector<std::vector<WittValue>> rows(n, std::vector<WittValue>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = WittValue(ring, g[i * n + j]);
    auto desc = berkowitz_descending(rows, WittValue::from_int(ring, 0), WittValue::from_int(ring, 1));
    std::vector<BigInt> asc;
    for (std::size_t i = desc.size(); i-- > 0;) asc.push_back(int_coefficient(*ring, desc[i].coeffs()));
    return IntPolynomial(asc);
}

RatPolynomial crystal_minpoly(const Crystal& m)
{
    if (m.rank() == 0) return RatPolynomial::constant(1);
    Crystal fp = m.free_part();
    if (!fp.ring->exact()) throw InputError("minimal polynomial needs an exact Witt ring");
    return minpoly(mat_pow(fp.z_frob(), static_cast<unsigned long>(fp.ring->a())));
}

Slopes slopes(const Crystal& m)
{
    IntPolynomial p = crystal_charpoly(m);
    Slopes s;
    s.r = p.degree();
    s.s = make_rational(ord_l_nonzero(p.coeff(0), m.ring->p()), m.ring->a());
    return s;
}

ExtReportP ext_crystal(const Crystal& m, const Crystal& n, long k0)
{
    require_same_ring(m, n);
    m.validate();
    n.validate();
    if (!m.ring->exact()) throw InputError("Ext groups need an exact Witt ring");
    long k = k0 > 0 ? k0 : m.ring->precision();
    const long cap = std::max(8 * k, 256L);
    for (;;) {
        Attempt at = attempt(m, n, k);
        if (at.needed < k - 2) {
            ExtReportP rep;
            rep.ext = at.ext;
            rep.precision = k;
            rep.certified = same_ext(at.ext, attempt(m, n, k + 2).ext);
            return rep;
        }
        long next = std::max(2 * k, at.needed + 4);
        if (next > cap) throw PrecisionError("Ext invariants not determined within the precision cap", next);
        k = next;
    }
}

ExtReportP ext_presentation(const Crystal& m, const Crystal& n, long k0)
{
    if (m.kind() != CrystalKind::TorsionFree) throw InputError("presentation route needs a torsion-free M");
    return ext_crystal(m, n, k0);
}

KoszulReport ext_koszul_k(const Crystal& n)
{
    n.validate();
    const WittRing& w = *n.ring;
    std::vector<BigInt> mod = n.z_moduli();
    const std::size_t d = mod.size();
    IntMatrix fz = n.z_frob();
    IntMatrix pid = IntMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) pid(i, i) = w.p();
    IntMatrix d0 = vstack(pid, IntMatrix(d, d) - fz);
    IntMatrix d1 = hstack(fz, pid);
    IntMatrix rel = relation_columns(mod);
    IntMatrix rel2 = block_diag(rel, rel);

    KoszulReport k;
    k.e0 = complex_homology(IntMatrix(d, 0), d0, rel, rel2).group().l_primary(w.p());
    k.e1 = complex_homology(d0, d1, rel2, rel).group().l_primary(w.p());
    k.e2 = complex_homology(d1, IntMatrix(0, d), rel, IntMatrix(0, 0)).group().l_primary(w.p());
    if (k.e0.is_finite() && k.e1.is_finite() && k.e2.is_finite())
        k.alternating_ok = k.e0.order() * k.e2.order() == k.e1.order();
    return k;
}

LocalReport verify_lca_p(const Crystal& m, const Crystal& n)
{
    require_same_ring(m, n);
    m.validate();
    n.validate();
    const WittRing& w = *m.ring;
    const BigInt& p = w.p();
    const long a = w.a();
    const CrystalKind km = m.kind(), kn = n.kind();
    const bool m_is_k = km == CrystalKind::KType && m.dim() == 1;
    const bool supported = m_is_k || km == CrystalKind::FiniteInvertible ||
                           (km == CrystalKind::TorsionFree && kn == CrystalKind::TorsionFree);
    if (!supported) throw InputError("unsupported pair kind: " + to_string(km) + " x " + to_string(kn));
    check_no_multiple_common_root(crystal_minpoly(m), crystal_minpoly(n));

    ExtReportP rep = ext_crystal(m, n);
    const PrimaryExt& e = rep.ext;
    LocalReport out;
    out.z_f = e.z;
    out.ext2_order = e.e2.order();

    bool agree = rep.certified;
    std::string checks = rep.certified ? "certified at K=" + std::to_string(rep.precision) : "not certified";
    if (m_is_k) {
        KoszulReport ks = ext_koszul_k(n);
        agree = agree && ks.e0 == e.e0 && ks.e1 == e.e1 && ks.e2 == e.e2 && ks.alternating_ok;
        checks += ", Koszul";
    }
    if (e.e0.is_finite() && e.e1.is_finite() && e.e2.is_finite() &&
        (km == CrystalKind::FiniteInvertible || kn == CrystalKind::FiniteInvertible)) {
        agree = agree && e.e0.order() * e.e2.order() == e.e1.order();
        checks += ", alternating product";
    }
    if (m.special && n.special) {
        const IntPolynomial& mm = *m.special;
        const IntPolynomial& mn = *n.special;
        if (mm == mn) {
            IntMatrix g = integer_frob_power(m);
            BigInt dt = det(g * eval_poly(mm.derivative(), g));
            BigRational zf = dt == 0 ? BigRational(0) : abs_l(BigRational(ipow(dt, static_cast<unsigned long>(a))), p);
            agree = agree && e.z.defined && e.z.value == zf;
            checks += ", derivative formula";
        } else if (gcd(to_rational(mm), to_rational(mn)).degree() == 0) {
            IntMatrix gn = integer_frob_power(n);
            BigInt dt = det(eval_poly(mm, gn));
            BigInt expect = l_part(ipow(dt, static_cast<unsigned long>(a)), p);
            agree = agree && e.e0.is_trivial() && e.e2.is_trivial() && e.e1.is_finite() && e.e1.order() == expect;
            checks += ", coprime special";
        }
    }
    out.routes_agree = agree;

    if (m.rank() == 0 || n.rank() == 0) {
        out.rho = 0;
        out.rhs = 1;
    } else {
        IntPolynomial pm = crystal_charpoly(m.free_part()), pn = crystal_charpoly(n.free_part());
        LeadingTerm lt = ratio_leading(pm, pn);
        out.rho = lt.rho;
        long s = ord_l_nonzero(pm.coeff(0), p) * static_cast<long>(n.rank());
        out.rhs = abs_l(BigRational(ipow(p, static_cast<unsigned long>(s))) * lt.value, p);
    }
    out.detail = "Ext0 " + e.e0.to_string() + ", Ext1 " + e.e1.to_string() + ", Ext2 " + e.e2.to_string() + "; " + checks;
    if (!e.z.defined) {
        out.detail = "z(f) undefined; " + out.detail;
        return out;
    }
    out.lhs = e.z.value * BigRational(out.ext2_order);
    out.equal = out.lhs == out.rhs && e.e0.free_rank == out.rho;
    return out;
}

} // namespace frobext

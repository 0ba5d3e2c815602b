#include "frobext/ext_complex.hpp"

namespace frobext {

IntMatrix relation_columns(const std::vector<BigInt>& moduli)
{
    std::size_t cnt = 0;
    for (const auto& m : moduli)
        if (m != 0) ++cnt;
    IntMatrix r(moduli.size(), cnt);
    std::size_t c = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] != 0) r(i, c++) = moduli[i];
    return r;
}

SubQuotient complex_homology(const IntMatrix& in, const IntMatrix& out, const IntMatrix& rel_mid,
                             const IntMatrix& rel_out)
{
    const std::size_t mid = rel_mid.rows();
    IntMatrix cycles;
    if (out.rows() == 0) {
        cycles = IntMatrix::identity(mid);
    } else {
        IntMatrix k = kernel_basis(hstack(out, rel_out));
        cycles = k.block(0, 0, mid, k.cols());
    }
    return SubQuotient(cycles, hstack(in, rel_mid));
}

namespace {

void put(IntMatrix& big, std::size_t bi, std::size_t bj, std::size_t n, const IntMatrix& blk, int sign)
{
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (blk(a, b) == 0) continue;
            if (sign > 0) big(bi * n + a, bj * n + b) += blk(a, b);
            else big(bi * n + a, bj * n + b) -= blk(a, b);
        }
}

void put_scalar(IntMatrix& big, std::size_t bi, std::size_t bj, std::size_t n, const BigInt& c)
{
    if (c == 0) return;
    for (std::size_t a = 0; a < n; ++a) big(bi * n + a, bj * n + a) += c;
}

std::vector<BigInt> repeat(const std::vector<BigInt>& v, std::size_t times)
{
    std::vector<BigInt> out;
    out.reserve(v.size() * times);
    for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), v.begin(), v.end());
    return out;
}

} // namespace

ExtComplexResult ext_complex(const ExtComplexInput& in)
{
    const std::size_t n = in.n_moduli.size(), r = in.r, t = in.t;
    if (in.n_frob.rows() != n || in.n_frob.cols() != n) throw InputError("ext_complex: F_N has the wrong size");
    if (in.phi.size() != r * r || in.cup.size() != r * r || in.s.size() != t * t)
        throw InputError("ext_complex: operator table has the wrong size");
    if (in.d.rows() != r || in.d.cols() != t) throw InputError("ext_complex: D has the wrong size");

    IntMatrix d0(n * (r + t), n * r), d1(n * t, n * (r + t)), f(n * (r + t), n * r);
    for (std::size_t i = 0; i < r; ++i) {
        put(d0, i, i, n, in.n_frob, +1);
        for (std::size_t k = 0; k < r; ++k) {
            put(d0, i, k, n, in.phi[k * r + i], -1);
            put(f, i, k, n, in.cup[k * r + i], +1);
        }
    }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            put_scalar(d0, r + i, k, n, in.d(k, i));
            put_scalar(d1, i, k, n, in.d(k, i));
        }
    for (std::size_t i = 0; i < t; ++i) {
        put(d1, i, r + i, n, in.n_frob, -1);
        for (std::size_t k = 0; k < t; ++k) put(d1, i, r + k, n, in.s[k * t + i], +1);
    }

    IntMatrix rel0 = relation_columns(repeat(in.n_moduli, r));
    IntMatrix rel1 = relation_columns(repeat(in.n_moduli, r + t));
    IntMatrix rel2 = relation_columns(repeat(in.n_moduli, t));

    ExtComplexResult res;
    res.h0 = complex_homology(IntMatrix(n * r, 0), d0, rel0, rel1);
    res.h1 = complex_homology(d0, d1, rel1, rel2);
    res.h2 = complex_homology(d1, IntMatrix(0, n * t), rel2, IntMatrix(0, 0));
    res.f = induced_matrix(res.h0, res.h1, f);
    return res;
}

ZValue z_primary(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h, const BigInt& l)
{
    FinGenAbGroup k = map_kernel(src, dst, h).group().l_primary(l);
    FinGenAbGroup c = map_cokernel(src, dst, h).group().l_primary(l);
    if (!k.is_finite() || !c.is_finite()) return ZValue::undefined();
    return ZValue::of(make_rational(k.order(), c.order()));
}

PrimaryExt primary_part(const ExtComplexResult& res, const BigInt& l)
{
    PrimaryExt p;
    p.e0 = res.h0.group().l_primary(l);
    p.e1 = res.h1.group().l_primary(l);
    p.e2 = res.h2.group().l_primary(l);
    p.z = z_primary(res.h0, res.h1, res.f, l);
    return p;
}

LeadingTerm ratio_leading(const IntPolynomial& pm, const IntPolynomial& pn)
{
    if (pm.degree() <= 0 || pn.degree() <= 0) return {0, BigRational(1)};
    return limit_leading(ratio_charpoly(pm, pn).reversed);
}

void check_no_multiple_common_root(const RatPolynomial& mm, const RatPolynomial& mn)
{
    if (mm.degree() <= 0 || mn.degree() <= 0) return;
    RatPolynomial g = gcd(mm, mn);
    if (g.degree() <= 0) return;
    if (gcd(g, mm.derivative()).degree() > 0 || gcd(g, mn.derivative()).degree() > 0)
        throw HypothesisError("multiple common root");
}

} // namespace frobext

#include "frobext/zgamma.hpp"

namespace frobext {

SubQuotient presentation(const FinGenAbGroup& g)
{
    std::vector<BigInt> moduli = g.torsion;
    moduli.resize(g.torsion.size() + static_cast<std::size_t>(g.free_rank), BigInt(0));
    return SubQuotient::cyclic(moduli);
}

ZValue z_of_canonical(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h)
{
    FinGenAbGroup k = map_kernel(src, dst, h).group();
    FinGenAbGroup c = map_cokernel(src, dst, h).group();
    if (!k.is_finite() || !c.is_finite()) return ZValue::undefined();
    return ZValue::of(make_rational(k.order(), c.order()));
}

ZValue z_of_map(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& f)
{
    return z_of_canonical(src, dst, induced_matrix(src, dst, f));
}

ZValue z_of_map(const FinGenAbGroup& m, const FinGenAbGroup& n, const IntMatrix& f)
{
    return z_of_map(presentation(m), presentation(n), f);
}

ZValue z_det_formula(const FinGenAbGroup& m, const FinGenAbGroup& n, const IntMatrix& a, DetMode mode,
                     const BigInt& p, long degree)
{
    if (m.free_rank != n.free_rank) throw InputError("z_det_formula: ranks differ");
    if (a.rows() != static_cast<std::size_t>(m.free_rank) || !a.is_square())
        throw InputError("z_det_formula: matrix size does not match the rank");
    BigInt d = det(a);
    if (d == 0) return ZValue::undefined();
    BigRational tors = make_rational(m.torsion_order(), n.torsion_order());
    if (mode == DetMode::Integer) return ZValue::of(tors / BigRational(abs(d)));
    require_prime(p);
    BigRational ad = abs_l(BigRational(d), p), pw = 1;
    for (long i = 0; i < degree; ++i) pw *= ad;
    return ZValue::of(tors * pw);
}

ZTriple z_compose_check(const SubQuotient& a, const SubQuotient& b, const SubQuotient& c, const IntMatrix& f,
                        const IntMatrix& g)
{
    ZTriple t;
    t.zf = z_of_map(a, b, f);
    t.zg = z_of_map(b, c, g);
    t.zgf = z_of_map(a, c, g * f);
    int defined = t.zf.defined + t.zg.defined + t.zgf.defined;
    if (defined == 3) t.consistent = t.zgf.value == t.zf.value * t.zg.value;
    else t.consistent = defined < 2;
    return t;
}

// ---------------------------------------------------------------------------

namespace {

InvCoinv inv_coinv(const SubQuotient& m, const IntMatrix& action)
{
    IntMatrix h = induced_matrix(m, m, action);
    IntMatrix hm = h - IntMatrix::identity(h.rows());
    InvCoinv out;
    out.inv = map_kernel(m, m, hm);
    out.coinv = map_cokernel(m, m, hm);
    out.f0 = induced_matrix(out.inv, out.coinv, IntMatrix::identity(m.num_gens()));
    return out;
}

} // namespace

void GammaModule::validate() const
{
    SubQuotient p = presentation(group);
    if (action.rows() != p.ambient_dim() || !action.is_square())
        throw InputError("gamma action has the wrong size");
    IntMatrix h = induced_matrix(p, p, action);
    if (!map_kernel(p, p, h).group().is_trivial()) throw InputError("gamma action is not injective");
}

InvCoinv invariants_coinvariants(const GammaModule& m)
{
    m.validate();
    return inv_coinv(presentation(m.group), m.action);
}

EzfReport z_ezf(const GammaModule& m)
{
    InvCoinv ic = invariants_coinvariants(m);
    EzfReport rep;
    std::size_t t = m.group.torsion.size();
    std::size_t r = static_cast<std::size_t>(m.group.free_rank);
    IntMatrix a = m.action.block(t, t, r, r);
    rep.eigen_product = 1;
    if (r > 0) {
        RatPolynomial mp = minpoly(a);
        if (mp.eval(1) == 0 && mp.derivative().eval(1) == 0) return rep;
        rep.eigen_product = abs(limit_leading(to_rational(charpoly(a))).value);
    }
    rep.z = z_of_canonical(ic.inv, ic.coinv, ic.f0);
    rep.identity_holds = rep.z.defined && rep.z.value * rep.eigen_product == 1;
    return rep;
}

GammaCohomology gamma_cohomology(const GammaModule& m, GammaGroup)
{
    InvCoinv ic = invariants_coinvariants(m);
    return {ic.inv.group(), ic.coinv.group()};
}

std::string CofinGroup::to_string() const
{
    std::string s;
    if (corank > 0) s = "(Q/Z)^" + std::to_string(corank);
    if (!finite.is_trivial()) s += (s.empty() ? "" : " + ") + finite.to_string();
    return s.empty() ? "0" : s;
}

CofinCohomology gamma_cohomology(const CofinTorsionGroup& m, GammaGroup)
{
    require_prime(m.l);
    const std::size_t c = static_cast<std::size_t>(m.corank);
    const std::size_t k = m.finite_part.size();
    if (m.action.rows() != c + k || !m.action.is_square()) throw InputError("cofinite action has the wrong size");
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = c; j < c + k; ++j)
            if (m.action(i, j) != 0 || m.action(j, i) != 0)
                throw InputError("cofinite action must be block diagonal");
    for (const auto& d : m.finite_part)
        if (d <= 0 || l_part(d, m.l) != d) throw InputError("finite part must consist of l-powers");

    std::vector<BigInt> h0_orders, h1_orders;
    long free_corank = 0;
    if (c > 0) {
        IntMatrix b = m.action.block(0, 0, c, c) - IntMatrix::identity(c);
        SNFResult s = smith_normal_form(b);
        std::size_t r = s.rank();
        for (std::size_t i = 0; i < r; ++i) {
            long v = ord_l_nonzero(s.diag[i], m.l);
            if (v >= m.precision)
                throw PrecisionError("valuation " + std::to_string(v) + " reaches the working precision", v + 2);
            h0_orders.push_back(ipow(m.l, static_cast<unsigned long>(v)));
        }
        // d * (Q/Z) = Q/Z for d != 0, so only the singular directions survive in H^1.
        free_corank = static_cast<long>(c - r);
    }
    if (k > 0) {
        IntMatrix fin = m.action.block(c, c, k, k);
        SubQuotient sq = SubQuotient::cyclic(m.finite_part);
        IntMatrix h = induced_matrix(sq, sq, fin);
        if (!map_kernel(sq, sq, h).group().is_trivial()) throw InputError("action on the finite part is not injective");
        InvCoinv ic = inv_coinv(sq, fin);
        for (const auto& d : ic.inv.group().torsion) h0_orders.push_back(d);
        for (const auto& d : ic.coinv.group().torsion) h1_orders.push_back(d);
    }
    CofinCohomology out;
    out.h0 = {free_corank, FinGenAbGroup::from_cyclic(h0_orders).l_primary(m.l)};
    out.h1 = {free_corank, FinGenAbGroup::from_cyclic(h1_orders).l_primary(m.l)};
    return out;
}

} // namespace frobext

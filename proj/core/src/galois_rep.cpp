#include "frobext/galois_rep.hpp"

namespace frobext {

namespace {

BigInt gcd0(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

IntMatrix scalar_op(const BigInt& c, std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

// S with Phi D = D S for the relation module of the torsion part.
IntMatrix relation_action(const GaloisModule& m)
{
    const std::size_t k = m.num_torsion();
    IntMatrix s(k, k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < k; ++i) {
            BigInt num = m.torsion_action(a, i) * m.torsion[i];
            if (!mpz_divisible_p(num.get_mpz_t(), m.torsion[a].get_mpz_t()))
                throw InputError("torsion action is not compatible with the invariant factors");
            s(a, i) = num / m.torsion[a];
        }
    return s;
}

void require_compatible(const GaloisModule& m, const GaloisModule& n)
{
    if (m.l != n.l || m.q != n.q) throw InputError("modules over different l or q");
}

} // namespace

GaloisModule GaloisModule::trivial(const BigInt& l, const BigInt& q) { return tate(l, q, 0); }

GaloisModule GaloisModule::tate(const BigInt& l, const BigInt& q, unsigned long r)
{
    GaloisModule m{l, q, IntMatrix::from_rows({{ipow(q, r)}}), {}, IntMatrix(0, 0)};
    m.validate();
    return m;
}

GaloisModule GaloisModule::from_charpoly(const BigInt& l, const BigInt& q, const IntPolynomial& p)
{
    GaloisModule m{l, q, p.degree() > 0 ? companion(p) : IntMatrix(0, 0), {}, IntMatrix(0, 0)};
    m.validate();
    return m;
}

GaloisModule GaloisModule::finite(const BigInt& l, const BigInt& q, std::vector<BigInt> torsion, IntMatrix action)
{
    GaloisModule m{l, q, IntMatrix(0, 0), std::move(torsion), std::move(action)};
    m.validate();
    return m;
}

std::vector<BigInt> GaloisModule::moduli() const
{
    std::vector<BigInt> v(rank(), BigInt(0));
    v.insert(v.end(), torsion.begin(), torsion.end());
    return v;
}

IntMatrix GaloisModule::action() const { return block_diag(free_frob, torsion_action); }

IntPolynomial GaloisModule::charpoly() const
{
    return rank() == 0 ? IntPolynomial::constant(1) : frobext::charpoly(free_frob);
}

RatPolynomial GaloisModule::minpoly() const
{
    return rank() == 0 ? RatPolynomial::constant(1) : frobext::minpoly(free_frob);
}

void GaloisModule::validate() const
{
    require_prime(l);
    if (q < 2 || prime_divisors(q).size() != 1) throw InputError("q must be a prime power");
    if (mpz_divisible_p(q.get_mpz_t(), l.get_mpz_t())) throw InputError("l must not divide q");
    if (!free_frob.is_square()) throw InputError("free Frobenius must be square");
    if (rank() > 0 && mpz_divisible_p(det(free_frob).get_mpz_t(), l.get_mpz_t()))
        throw InputError("free Frobenius determinant is not an l-unit");
    if (torsion_action.rows() != torsion.size() || !torsion_action.is_square())
        throw InputError("torsion action has the wrong size");
    for (const auto& d : torsion)
        if (d <= 1 || l_part(d, l) != d) throw InputError("torsion factors must be nontrivial l-powers");
    relation_action(*this);
    if (num_torsion() > 0 && mpz_divisible_p(det(torsion_action).get_mpz_t(), l.get_mpz_t()))
        throw InputError("torsion action is not invertible");
}

GaloisModule direct_sum(const GaloisModule& a, const GaloisModule& b)
{
    require_compatible(a, b);
    GaloisModule s{a.l, a.q, block_diag(a.free_frob, b.free_frob), a.torsion, block_diag(a.torsion_action, b.torsion_action)};
    s.torsion.insert(s.torsion.end(), b.torsion.begin(), b.torsion.end());
    s.validate();
    return s;
}

HomGammaModule hom_module(const GaloisModule& m, const GaloisModule& n)
{
    require_compatible(m, n);
    m.validate();
    n.validate();
    const std::vector<BigInt> dm = m.moduli(), dn = n.moduli();
    const std::size_t nm = dm.size(), nn = dn.size();
    IntMatrix lat(nn * nm, nn * nm), sub(nn * nm, nn * nm);
    for (std::size_t j = 0; j < nn; ++j)
        for (std::size_t i = 0; i < nm; ++i) {
            std::size_t x = j * nm + i;
            BigInt g = gcd0(dn[j], dm[i]);
            lat(x, x) = g == 0 ? BigInt(1) : dn[j] / g;
            sub(x, x) = dn[j];
        }
    IntMatrix fm = m.action(), fn = n.action();
    HomGammaModule h;
    h.lattice = SubQuotient(lat, sub);
    h.phi = kronecker(fn, IntMatrix::identity(nm)) - kronecker(IntMatrix::identity(nn), fm.transpose());
    h.gamma_den = det(fm);
    RatMatrix adj = BigRational(h.gamma_den) * inverse(to_rational(fm));
    IntMatrix adj_int(nm, nm);
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) adj_int(a, b) = adj(a, b).get_num();
    h.gamma_num = kronecker(fn, adj_int.transpose());
    return h;
}

ExtReportL ext_groups_l(const GaloisModule& m, const GaloisModule& n)
{
    HomGammaModule hom = hom_module(m, n);
    const BigInt& l = m.l;
    ExtReportL rep;

    // Spectral-sequence route.
    IntMatrix h = induced_matrix(hom.lattice, hom.lattice, hom.phi);
    SubQuotient inv = map_kernel(hom.lattice, hom.lattice, h);
    SubQuotient coinv = map_cokernel(hom.lattice, hom.lattice, h);
    IntMatrix f0 = induced_matrix(inv, coinv, IntMatrix::identity(hom.lattice.num_gens()));
    rep.z_f0 = z_primary(inv, coinv, f0, l);
    rep.hom_coinv = coinv.group().l_primary(l);

    const std::vector<BigInt> dn = n.moduli();
    const std::size_t nn = dn.size(), k = m.num_torsion();
    IntMatrix s = relation_action(m);
    std::vector<BigInt> e1mod;
    for (std::size_t j = 0; j < nn; ++j)
        for (std::size_t i = 0; i < k; ++i) e1mod.push_back(gcd0(m.torsion[i], dn[j]));
    SubQuotient e1 = SubQuotient::cyclic(e1mod);
    IntMatrix phi1 = kronecker(n.action(), IntMatrix::identity(k)) - kronecker(IntMatrix::identity(nn), s.transpose());
    IntMatrix h1 = induced_matrix(e1, e1, phi1);
    rep.e1_inv = map_kernel(e1, e1, h1).group().l_primary(l);
    FinGenAbGroup ext2_ss = map_cokernel(e1, e1, h1).group().l_primary(l);
    FinGenAbGroup ext0_ss = inv.group().l_primary(l);

    // Total-complex route.
    ExtComplexInput in;
    in.n_moduli = dn;
    in.n_frob = n.action();
    in.r = m.dim();
    in.t = k;
    IntMatrix fm = m.action();
    for (std::size_t a = 0; a < in.r; ++a)
        for (std::size_t b = 0; b < in.r; ++b) in.phi.push_back(scalar_op(fm(a, b), nn));
    in.cup = in.phi;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) in.s.push_back(scalar_op(s(a, b), nn));
    in.d = IntMatrix(in.r, k);
    for (std::size_t i = 0; i < k; ++i) in.d(m.rank() + i, i) = m.torsion[i];
    PrimaryExt cx = primary_part(ext_complex(in), l);

    rep.ext0 = cx.e0;
    rep.ext1 = cx.e1;
    rep.ext2 = cx.e2;
    rep.z_f = cx.z;
    rep.ext1_finite = rep.hom_coinv.is_finite();
    rep.ext1_torsion_order = cx.e1.torsion_order();

    bool agree = rep.ext0 == ext0_ss && rep.ext2 == ext2_ss && rep.ext1_finite == cx.e1.is_finite();
    if (rep.ext1_finite) agree = agree && cx.e1.order() == rep.hom_coinv.order() * rep.e1_inv.order();
    if (rep.z_f0.defined) {
        BigRational expect = rep.z_f0.value / BigRational(rep.e1_inv.order());
        agree = agree && rep.z_f.defined && rep.z_f.value == expect;
    } else {
        agree = agree && !rep.z_f.defined;
    }
    rep.routes_agree = agree;
    return rep;
}

FMapResult f_map_and_z(const GaloisModule& m, const GaloisModule& n)
{
    require_compatible(m, n);
    check_no_multiple_common_root(m.minpoly(), n.minpoly());
    ExtReportL rep = ext_groups_l(m, n);
    FMapResult r;
    r.z_f = rep.z_f;
    r.lhs = rep.z_f.defined ? rep.z_f.value * BigRational(rep.ext2.order()) : BigRational(0);
    return r;
}

LocalReport verify_lca_l(const GaloisModule& m, const GaloisModule& n)
{
    require_compatible(m, n);
    check_no_multiple_common_root(m.minpoly(), n.minpoly());
    ExtReportL rep = ext_groups_l(m, n);
    LocalReport out;
    out.z_f = rep.z_f;
    out.ext2_order = rep.ext2.order();
    out.routes_agree = rep.routes_agree;
    LeadingTerm lt = ratio_leading(m.charpoly(), n.charpoly());
    out.rho = lt.rho;
    out.rhs = abs_l(lt.value, m.l);
    if (!rep.z_f.defined) {
        out.detail = "z(f) undefined";
        return out;
    }
    out.lhs = rep.z_f.value * BigRational(out.ext2_order);
    out.equal = out.lhs == out.rhs && rep.ext0.free_rank == out.rho;
    out.detail = "Ext0 " + rep.ext0.to_string() + ", Ext1 " + rep.ext1.to_string() + ", Ext2 " + rep.ext2.to_string();
    return out;
}

DualityReport check_duality(const GaloisModule& torsion_m, const GaloisModule& free_n)
{
    if (torsion_m.rank() != 0) throw InputError("duality check needs a torsion module M");
    if (free_n.num_torsion() != 0) throw InputError("duality check needs a torsion-free module N");
    DualityReport d;
    d.hom_order = ext_groups_l(free_n, torsion_m).ext0.order();
    d.ext2_order = ext_groups_l(torsion_m, free_n).ext2.order();
    d.equal = d.hom_order == d.ext2_order;
    return d;
}

} // namespace frobext

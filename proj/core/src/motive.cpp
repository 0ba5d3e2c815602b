#include "frobext/motive.hpp"

#include <algorithm>
#include <set>

namespace frobext {

namespace {

BigInt prime_of(const BigInt& q)
{
    if (q < 2) throw InputError("q must be a prime power");
    auto ps = prime_divisors(q);
    if (ps.size() != 1) throw InputError("q must be a prime power");
    return ps[0];
}

long degree_of(const BigInt& q, const BigInt& p) { return ord_l_nonzero(q, p); }

WittRingPtr ring_for(const BigInt& q)
{
    BigInt p = prime_of(q);
    return WittRing::standard(p, degree_of(q, p));
}

BigInt isqrt(const BigInt& n)
{
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Norm down to Z_p of a Witt element; ring must be exact.
BigInt norm(const WittRing& w, const WittRing::Elt& x)
{
    WittRing::Elt acc = x;
    for (long k = 1; k < w.a(); ++k) acc = w.mul(acc, w.sigma_pow(x, k));
    return acc[0];
}

// Small elements u + v x of a quadratic ring with the given norm.
std::vector<WittRing::Elt> elements_of_norm(const WittRing& w, const BigInt& target)
{
    std::vector<WittRing::Elt> out;
    if (target < 0) return out;
    long b = static_cast<long>(isqrt(4 * target).get_si()) + 2;
    for (long u = -b; u <= b; ++u)
        for (long v = -b; v <= b; ++v) {
            WittRing::Elt x{BigInt(u), BigInt(v)};
            if (norm(w, x) == target) out.push_back(x);
        }
    return out;
}

IntMatrix scaled(const IntMatrix& m, const BigInt& c)
{
    IntMatrix r = m;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= c;
    return r;
}

// Row-major vec of Hom(X, Y) operators: F_Y H - H F_X.
IntMatrix commutation_operator(const IntMatrix& fx, const IntMatrix& fy)
{
    return kronecker(fy, IntMatrix::identity(fx.rows())) - kronecker(IntMatrix::identity(fy.rows()), fx.transpose());
}

IntMatrix column_as_matrix(const IntMatrix& basis, std::size_t col, std::size_t rows, std::size_t cols)
{
    IntMatrix h(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) h(i, j) = basis(i * cols + j, col);
    return h;
}

BigInt trace(const IntMatrix& m)
{
    BigInt t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

BigInt hom_torsion(const Motive& x, const Motive& y)
{
    std::set<BigInt> primes;
    for (const auto& l : x.torsion_primes()) primes.insert(l);
    for (const auto& l : y.torsion_primes()) primes.insert(l);
    BigInt t = 1;
    for (const auto& l : primes) t *= ext_groups_l(x.at(l), y.at(l)).ext0.torsion_order();
    return t;
}

void add_prime_divisors(std::set<BigInt>& s, const BigInt& n)
{
    if (n == 0) return;
    BigInt m = abs(n);
    if (m == 1) return;
    for (const auto& d : prime_divisors(m)) s.insert(d);
}

} // namespace

Crystal default_crystal(const WittRingPtr& ring, const IntMatrix& f)
{
    if (ring->a() == 1) return Crystal::from_matrix(ring, f);
    if (!ring->exact() || ring->a() != 2)
        throw InputError("no default crystal over this Witt ring; supply crystal data");
    const WittRing& w = *ring;
    if (f.rows() == 1) {
        const BigInt& c = f(0, 0);
        long v = ord_l_nonzero(c, w.p());
        if (c == ipow(w.p(), static_cast<unsigned long>(v)) && v % 2 == 0)
            return Crystal::lefschetz(ring, v / 2);
        auto xs = elements_of_norm(w, c);
        if (xs.empty()) throw InputError("no small Witt element of norm " + to_string(c));
        Crystal cr{ring, {0}, {xs.front()}, std::nullopt, 0};
        cr.validate();
        return cr;
    }
    if (f.rows() == 2) {
        // F = [[alpha, beta], [1, 0]]: det F^2 = N(beta), trace = N(alpha) + Tr(beta).
        const BigInt dt = det(f), tr = trace(f);
        for (const auto& beta : elements_of_norm(w, dt)) {
            BigInt tb = w.trace(beta);
            auto alphas = elements_of_norm(w, tr - tb);
            if (alphas.empty()) continue;
            Crystal cr{ring, {0, 0}, {alphas.front(), beta, w.one(), w.zero()}, std::nullopt, 0};
            cr.validate();
            if (crystal_charpoly(cr) == frobext::charpoly(f)) return cr;
        }
        throw InputError("no small rank 2 crystal with this characteristic polynomial");
    }
    throw InputError("no default crystal of rank > 2 for a > 1; supply crystal data");
}

Motive Motive::from_matrix(const BigInt& q, const IntMatrix& f)
{
    Motive m;
    m.q = q;
    m.frob = f;
    m.crystal = default_crystal(ring_for(q), f);
    m.validate();
    return m;
}

Motive Motive::from_charpoly(const BigInt& q, const IntPolynomial& p)
{
    if (p.degree() < 1 || p.leading() != 1) throw InputError("characteristic polynomial must be monic of positive degree");
    return from_matrix(q, companion(p));
}

Motive Motive::unit(const BigInt& q) { return tate(q, 0); }

Motive Motive::tate(const BigInt& q, long r)
{
    if (r < 0) {
        Motive m = unit(q);
        m.twist = r;
        return m;
    }
    return from_matrix(q, IntMatrix::from_rows({{ipow(q, static_cast<unsigned long>(r))}}));
}

Motive Motive::elliptic(const BigInt& q, const BigInt& trace)
{
    if (trace * trace > 4 * q) throw InputError("trace violates the Hasse bound");
    return from_charpoly(q, IntPolynomial({q, -trace, BigInt(1)}));
}

BigInt Motive::p() const { return prime_of(q); }
long Motive::a() const { return degree_of(q, p()); }

GaloisModule Motive::at(const BigInt& l) const
{
    auto it = exceptional.find(l);
    if (it != exceptional.end()) return it->second;
    return GaloisModule{l, q, frob, {}, IntMatrix(0, 0)};
}

std::vector<BigInt> Motive::torsion_primes() const
{
    std::vector<BigInt> out;
    for (const auto& [l, g] : exceptional)
        if (g.num_torsion() > 0) out.push_back(l);
    return out;
}

Motive Motive::shifted(long m) const
{
    if (m < 0) throw InputError("negative shift");
    if (m == 0) return *this;
    Motive r = *this;
    BigInt qm = ipow(q, static_cast<unsigned long>(m));
    r.frob = scaled(frob, qm);
    for (auto& [l, g] : r.exceptional) {
        g.free_frob = scaled(g.free_frob, qm);
        g.torsion_action = scaled(g.torsion_action, qm);
    }
    BigInt pm = ipow(p(), static_cast<unsigned long>(m));
    for (auto& e : r.crystal.frob) e = crystal.ring->scale(pm, e);
    r.crystal.special.reset();
    return r;
}

Motive Motive::materialized() const
{
    if (twist < 0) throw InputError("negative Tate twist has no effective representative");
    Motive r = shifted(twist);
    r.twist = 0;
    return r;
}

void Motive::validate() const
{
    BigInt p0 = prime_of(q);
    if (!frob.is_square() || frob.rows() == 0) throw InputError("Frobenius matrix must be square and nonempty");
    if (det(frob) == 0) throw InputError("P(0) must be nonzero");
    for (const auto& [l, g] : exceptional) {
        if (l == p0) throw InputError("exceptional prime equals the characteristic");
        if (g.l != l || g.q != q) throw InputError("exceptional module has the wrong l or q");
        if (g.free_frob != frob) throw InputError("exceptional module must share the Frobenius matrix");
        g.validate();
    }
    if (!crystal.ring) throw InputError("motive without a crystal");
    if (crystal.ring->p() != p0 || crystal.ring->a() != degree_of(q, p0)) throw InputError("crystal over the wrong field");
    if (crystal.kind() != CrystalKind::TorsionFree || crystal.dim() != rank())
        throw InputError("crystal must be torsion-free of the motive's rank");
    if (crystal_charpoly(crystal) != charpoly()) throw InputError("crystal characteristic polynomial differs from P");
}

Motive tensor(const Motive& x, const Motive& y)
{
    if (x.q != y.q) throw InputError("motives over different fields");
    if (!x.exceptional.empty() || !y.exceptional.empty())
        throw InputError("tensor product with exceptional l-adic modules is not supported");
    Motive m;
    m.q = x.q;
    m.frob = kronecker(x.frob, y.frob);
    m.crystal = tensor(x.crystal, y.crystal);
    m.twist = x.twist + y.twist;
    m.validate();
    return m;
}

Motive direct_sum(const Motive& x, const Motive& y)
{
    if (x.q != y.q) throw InputError("motives over different fields");
    if (x.twist != y.twist) throw InputError("direct sum needs equal twists");
    Motive s;
    s.q = x.q;
    s.twist = x.twist;
    s.frob = block_diag(x.frob, y.frob);
    s.crystal = direct_sum(x.crystal, y.crystal);
    std::set<BigInt> primes;
    for (const auto& [l, g] : x.exceptional) primes.insert(l);
    for (const auto& [l, g] : y.exceptional) primes.insert(l);
    for (const auto& l : primes) {
        GaloisModule a = x.at(l), b = y.at(l);
        s.exceptional.emplace(l, direct_sum(a, b));
    }
    s.validate();
    return s;
}

std::vector<BigRational> newton_slopes(const IntPolynomial& p, const BigInt& prime, long a)
{
    // Lower convex hull of (i, ord_p c_i); slopes of roots are the negated segment slopes.
    std::vector<std::pair<long, long>> pts;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        if (p.coeffs()[i] != 0) pts.push_back({static_cast<long>(i), ord_l_nonzero(p.coeffs()[i], prime)});
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull.back();
            // Drop the middle point when it lies on or above the chord.
            if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1)) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<BigRational> out;
    for (std::size_t k = hull.size() - 1; k-- > 0;) {
        long dx = hull[k + 1].first - hull[k].first, dy = hull[k].second - hull[k + 1].second;
        BigRational s = make_rational(dy, dx * a);
        for (long i = 0; i < dx; ++i) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Motive motive_from_charpoly(const BigInt& q, const IntPolynomial& p, const std::vector<BigRational>& crystal_slopes)
{
    BigInt pr = prime_of(q);
    if (p.degree() < 1 || p.leading() != 1 || p.coeff(0) == 0) throw InputError("P must be monic with P(0) != 0");
    std::vector<BigRational> want = crystal_slopes;
    std::sort(want.begin(), want.end());
    if (want != newton_slopes(p, pr, degree_of(q, pr))) throw InputError("slope data inconsistent with the characteristic polynomial");
    return Motive::from_charpoly(q, p);
}

Motive Motive::reduced() const
{
    Motive r = *this;
    if (!exceptional.empty()) return r;
    const WittRing& w = *crystal.ring;
    for (;;) {
        for (std::size_t i = 0; i < r.frob.rows(); ++i)
            for (std::size_t j = 0; j < r.frob.cols(); ++j)
                if (r.frob(i, j) % q != 0) return r;
        for (const auto& e : r.crystal.frob) {
            auto v = w.valuation(e);
            if (v && *v < 1) return r;
        }
        for (std::size_t i = 0; i < r.frob.rows(); ++i)
            for (std::size_t j = 0; j < r.frob.cols(); ++j) r.frob(i, j) /= q;
        for (auto& e : r.crystal.frob)
            if (!w.is_zero(e)) e = w.div_p_power(e, 1);
        r.crystal.special.reset();
        ++r.twist;
    }
}

std::pair<Motive, Motive> effective_pair(const Motive& x, const Motive& y)
{
    if (x.q != y.q) throw InputError("motives over different fields");
    Motive a = x.reduced(), b = y.reduced();
    long shift = std::min(a.twist, b.twist);
    a.twist -= shift;
    b.twist -= shift;
    return {a.materialized(), b.materialized()};
}

HomLattice hom_motives(const Motive& x0, const Motive& y0)
{
    auto [x, y] = effective_pair(x0, y0);
    HomLattice h;
    h.basis = kernel_basis(commutation_operator(x.frob, y.frob));
    h.rho = static_cast<long>(h.basis.cols());
    h.tors_order = hom_torsion(x, y);
    return h;
}

BigRational trace_discriminant(const Motive& x0, const Motive& y0)
{
    auto [x, y] = effective_pair(x0, y0);
    IntMatrix fb = kernel_basis(commutation_operator(x.frob, y.frob));
    IntMatrix gb = kernel_basis(commutation_operator(y.frob, x.frob));
    if (fb.cols() != gb.cols()) throw InputError("Hom ranks differ in the two directions");
    const std::size_t r = fb.cols();
    if (r == 0) return 1;
    IntMatrix gram(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix g = column_as_matrix(gb, i, x.rank(), y.rank());
        for (std::size_t j = 0; j < r; ++j) {
            IntMatrix f = column_as_matrix(fb, j, y.rank(), x.rank());
            gram(i, j) = trace(f * g);
        }
    }
    BigInt d = det(gram);
    if (d == 0) throw InputError("degenerate trace pairing");
    return BigRational(abs(d));
}

namespace {

// F^a of the crystal equals the rational Frobenius in the same basis.
bool crystal_aligned(const Motive& m)
{
    const WittRing& w = *m.crystal.ring;
    std::vector<WittRing::Elt> g = m.crystal.frob_power();
    const std::size_t n = m.rank();
    if (m.crystal.dim() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!w.is_zero(w.sub(g[i * n + j], w.from_int(m.frob(i, j))))) return false;
    return true;
}

} // namespace

GlobalExtReport global_ext_orders(const Motive& x0, const Motive& y0)
{
    auto [x, y] = effective_pair(x0, y0);
    const BigInt p = x.p();
    check_no_multiple_common_root(minpoly(x.frob), minpoly(y.frob));

    GlobalExtReport rep;
    rep.hom = hom_motives(x, y);
    if (rep.hom.rho > 0 && !(crystal_aligned(x) && crystal_aligned(y)))
        throw HypothesisError("crystal basis not aligned with the rational Frobenius; Hom at p undetermined");
    rep.disc = trace_discriminant(x, y);

    Slopes sx = slopes(x.crystal), sy = slopes(y.crystal);
    rep.chi = sx.s * BigRational(sy.r);
    rep.chi_alt = BigRational(sx.r) * sy.s;
    long chi_exp = ord_l_nonzero(x.charpoly().coeff(0), p) * static_cast<long>(y.rank()); // q^chi = p^chi_exp
    rep.q_chi = ipow(p, static_cast<unsigned long>(chi_exp));

    LeadingTerm lt = ratio_leading(x.charpoly(), y.charpoly());
    rep.rho_zeta = lt.rho;
    rep.zeta_leading = lt.value;
    const BigRational total = BigRational(rep.q_chi) * lt.value;

    std::set<BigInt> primes;
    add_prime_divisors(primes, total.get_num());
    add_prime_divisors(primes, total.get_den());
    add_prime_divisors(primes, rep.disc.get_num());
    std::set<BigInt> torsion;
    for (const auto& l : x.torsion_primes()) torsion.insert(l);
    for (const auto& l : y.torsion_primes()) torsion.insert(l);
    primes.insert(torsion.begin(), torsion.end());
    primes.insert(p);

    for (const auto& l : primes) {
        PrimeReport pr;
        pr.prime = l;
        pr.local_rhs = abs_l(total, l);
        if (l == p) {
            ExtReportP e = ext_crystal(x.crystal, y.crystal);
            pr.ext0 = e.ext.e0;
            pr.ext1 = e.ext.e1;
            pr.ext2 = e.ext.e2;
            pr.z_f = e.ext.z;
            pr.certified = e.certified;
        } else {
            ExtReportL e = ext_groups_l(x.at(l), y.at(l));
            pr.ext0 = e.ext0;
            pr.ext1 = e.ext1;
            pr.ext2 = e.ext2;
            pr.z_f = e.z_f;
            pr.certified = e.routes_agree;
        }
        pr.local_equal = pr.z_f.defined && pr.ext2.is_finite() &&
                         pr.z_f.value * BigRational(pr.ext2.order()) == pr.local_rhs;
        rep.ext1_order *= pr.ext1.torsion_order();
        rep.ext2_cotors_order *= pr.ext2.torsion_order();
        bool nontrivial = !(pr.z_f.defined && pr.z_f.value == 1) || pr.ext2.torsion_order() != 1;
        if (nontrivial && pr.local_rhs == 1 && !torsion.count(l)) rep.support_ok = false;
        rep.primes.push_back(pr);
    }
    return rep;
}

namespace {

// Yun: p = prod_i a_i^i with the a_i squarefree and coprime.
std::vector<RatPolynomial> squarefree_parts(const RatPolynomial& p0)
{
    std::vector<RatPolynomial> parts;
    RatPolynomial p = monic(p0);
    RatPolynomial a = monic(gcd(p, p.derivative()));
    RatPolynomial b = divmod(p, a).first;
    RatPolynomial c = divmod(p.derivative(), a).first;
    RatPolynomial d = c - b.derivative();
    while (b.degree() > 0) {
        RatPolynomial g = monic(gcd(b, d));
        parts.push_back(g);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
    }
    return parts;
}

BigRational coincident_slope_sum(const Motive& x, const Motive& y)
{
    const BigInt p = x.p();
    auto px = squarefree_parts(to_rational(x.charpoly()));
    auto py = squarefree_parts(to_rational(y.charpoly()));
    BigRational total = 0;
    for (std::size_t i = 0; i < px.size(); ++i)
        for (std::size_t j = 0; j < py.size(); ++j) {
            RatPolynomial g = monic(gcd(px[i], py[j]));
            if (g.degree() <= 0) continue;
            auto o = ord_l(g.coeff(0), p);
            total += make_rational(BigInt(static_cast<long>((i + 1) * (j + 1)) * *o), BigInt(x.a()));
        }
    return total;
}

} // namespace

GcaReport verify_gca(const Motive& x, const Motive& y)
{
    GcaReport g;
    g.ext = global_ext_orders(x, y);
    g.lhs = abs(BigRational(g.ext.q_chi) * g.ext.zeta_leading);
    g.rhs = BigRational(g.ext.ext1_order) * g.ext.disc /
            (BigRational(g.ext.hom.tors_order) * BigRational(g.ext.ext2_cotors_order));
    auto [xe, ye] = effective_pair(x, y);
    g.hom_yx_tors = hom_torsion(ye, xe);
    g.duality = g.hom_yx_tors == g.ext.ext2_cotors_order;
    bool local = true;
    for (const auto& pr : g.ext.primes) local = local && pr.local_equal && pr.certified;
    g.equal = g.lhs == g.rhs && g.ext.hom.rho == g.ext.rho_zeta && local;
    g.coincident_slope = coincident_slope_sum(xe, ye);
    if (g.coincident_slope.get_den() == 1) {
        BigRational scaled = g.rhs * BigRational(ipow(xe.p(), g.coincident_slope.get_num().get_ui()));
        g.equal_up_to_coincident = scaled == g.lhs && g.ext.hom.rho == g.ext.rho_zeta && local;
    }
    return g;
}

WeilExtReport weil_ext(const Motive& x, const Motive& y)
{
    WeilExtReport w;
    w.ext = global_ext_orders(x, y);
    w.rank[0] = w.rank[1] = w.ext.hom.rho;
    w.rank[2] = 0;
    w.tors[0] = w.ext.hom.tors_order;
    w.tors[1] = w.ext.ext1_order;
    w.tors[2] = w.ext.ext2_cotors_order;
    BigRational z = 1;
    bool defined = true, lemma = true;
    for (const auto& pr : w.ext.primes) {
        if (!pr.z_f.defined) defined = false;
        else z *= pr.z_f.value;
        lemma = lemma && pr.ext0.free_rank == w.rank[0] && pr.ext1.free_rank == w.rank[1] && pr.ext2.free_rank == 0;
    }
    w.z_f = defined ? ZValue::of(z) : ZValue::undefined();
    w.lemma_ok = lemma;
    return w;
}

GciReport verify_gci(const Motive& x, const Motive& y)
{
    GciReport g;
    g.weil = weil_ext(x, y);
    g.zeta_side = abs(BigRational(g.weil.ext.q_chi) * g.weil.ext.zeta_leading);
    if (g.weil.z_f.defined) {
        g.ext_side = g.weil.z_f.value * BigRational(g.weil.tors[2]);
        g.equal = g.zeta_side * g.ext_side == 1 && g.weil.lemma_ok && g.weil.rank[0] == g.weil.ext.rho_zeta;
    }
    return g;
}

} // namespace frobext

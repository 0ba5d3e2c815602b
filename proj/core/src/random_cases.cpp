#include "frobext/random_cases.hpp"

#include <algorithm>

#include "frobext/errors.hpp"

namespace frobext {

namespace {

long uniform(CaseRng& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

template <class T>
const T& pick(CaseRng& rng, const std::vector<T>& v)
{
    return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(v.size()) - 1))];
}

constexpr int max_attempts = 10000;

std::vector<BigInt> random_cyclic_orders(CaseRng& rng, long max_free, long max_torsion)
{
    static const std::vector<long> orders = {2, 3, 4, 6, 8, 9, 12};
    std::vector<BigInt> out;
    const long t = uniform(rng, 0, max_torsion), f = uniform(rng, 0, max_free);
    for (long i = 0; i < t; ++i) out.emplace_back(pick(rng, orders));
    for (long i = 0; i < f; ++i) out.emplace_back(0);
    return out;
}

FinGenAbGroup random_group(CaseRng& rng)
{
    for (;;) {
        FinGenAbGroup g = FinGenAbGroup::from_cyclic(random_cyclic_orders(rng, 3, 2));
        if (!g.is_trivial()) return g;
    }
}

std::vector<BigInt> canonical_moduli(const FinGenAbGroup& g)
{
    std::vector<BigInt> m = g.torsion;
    m.resize(m.size() + static_cast<std::size_t>(g.free_rank), BigInt(0));
    return m;
}

WittRing::Elt random_witt(CaseRng& rng, const WittRing& w, long bound)
{
    WittRing::Elt e(static_cast<std::size_t>(w.a()));
    for (auto& c : e) c = uniform(rng, 0, bound);
    return w.add(w.zero(), e);
}

// Finite crystal with exponents in 1..2.
Crystal random_finite_crystal(CaseRng& rng, const WittRingPtr& ring, bool invertible)
{
    const WittRing& w = *ring;
    const long p = w.p().get_si();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 2));
        std::vector<long> e(n);
        for (auto& x : e) x = uniform(rng, 1, 2);
        std::vector<WittRing::Elt> f(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                f[i * n + j] = random_witt(rng, w, p * p - 1);
                if (e[i] > e[j]) f[i * n + j] = w.scale(ipow(w.p(), static_cast<unsigned long>(e[i] - e[j])), f[i * n + j]);
            }
        try {
            Crystal c = Crystal::finite(ring, e, f);
            if (!invertible || c.kind() == CrystalKind::FiniteInvertible) return c;
        } catch (const InputError&) {
        }
    }
    throw std::logic_error("no finite crystal found");
}

IntPolynomial random_special_poly(CaseRng& rng, const BigInt& q)
{
    const long bound = q.get_si();
    for (;;) {
        const long d = uniform(rng, 1, 2);
        std::vector<BigInt> c(static_cast<std::size_t>(d) + 1);
        for (long i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = uniform(rng, -bound, bound);
        c.back() = 1;
        IntPolynomial m(c);
        if (m.coeff(0) != 0) return m;
    }
}

bool coprime(const IntPolynomial& a, const IntPolynomial& b)
{
    return gcd(to_rational(a), to_rational(b)).degree() == 0;
}

} // namespace

CaseRng case_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return CaseRng(seq);
}

IntMatrix random_compatible_map(CaseRng& rng, const std::vector<BigInt>& src, const std::vector<BigInt>& dst,
                                long bound)
{
    IntMatrix f(dst.size(), src.size());
    for (std::size_t k = 0; k < dst.size(); ++k)
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (dst[k] == 0 && src[i] != 0) continue;
            BigInt g;
            mpz_gcd(g.get_mpz_t(), dst[k].get_mpz_t(), src[i].get_mpz_t());
            const BigInt step = dst[k] == 0 ? BigInt(1) : BigInt(dst[k] / g);
            f(k, i) = step * uniform(rng, -bound, bound);
        }
    return f;
}

ZMapCase random_z_map(std::uint64_t seed, std::uint64_t index, bool same_rank)
{
    CaseRng rng = case_rng(seed, index);
    ZMapCase c{random_group(rng), random_group(rng), {}};
    if (same_rank) c.n.free_rank = c.m.free_rank;
    c.f = random_compatible_map(rng, canonical_moduli(c.m), canonical_moduli(c.n));
    return c;
}

ZComposeCase random_z_compose(std::uint64_t seed, std::uint64_t index)
{
    CaseRng rng = case_rng(seed, index);
    // A shared free rank keeps most triples fully defined.
    const long free = uniform(rng, 0, 2);
    std::vector<std::vector<BigInt>> mods;
    for (int i = 0; i < 3; ++i) {
        auto m = random_cyclic_orders(rng, 0, 2);
        m.resize(m.size() + static_cast<std::size_t>(free), BigInt(0));
        if (m.empty()) m.emplace_back(0);
        mods.push_back(m);
    }
    ZComposeCase c;
    c.a = SubQuotient::cyclic(mods[0]);
    c.b = SubQuotient::cyclic(mods[1]);
    c.c = SubQuotient::cyclic(mods[2]);
    c.f = random_compatible_map(rng, mods[0], mods[1], 3);
    c.g = random_compatible_map(rng, mods[1], mods[2], 3);
    return c;
}

GammaModule random_gamma_module(std::uint64_t seed, std::uint64_t index)
{
    CaseRng rng = case_rng(seed, index);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        GammaModule m{random_group(rng), {}};
        const auto mods = canonical_moduli(m.group);
        m.action = random_compatible_map(rng, mods, mods, 2);
        // Bias towards eigenvalue 1 so invariants are often nonzero.
        if (uniform(rng, 0, 1) == 0)
            for (std::size_t i = 0; i < mods.size(); ++i) m.action(i, i) = 1;
        try {
            m.validate();
            return m;
        } catch (const InputError&) {
        }
    }
    throw std::logic_error("no gamma module found");
}

GaloisModule random_galois_module(CaseRng& rng, const BigInt& l, const BigInt& q, long max_rank, long max_torsion)
{
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const long r = uniform(rng, 0, max_rank), k = uniform(rng, 0, max_torsion);
        if (r + k == 0) continue;
        IntMatrix f(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j) f(i, j) = uniform(rng, -3, 3);
        std::vector<BigInt> t;
        for (long i = 0; i < k; ++i) t.push_back(ipow(l, static_cast<unsigned long>(uniform(rng, 1, 3))));
        std::sort(t.begin(), t.end());
        IntMatrix a(t.size(), t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j) {
                a(i, j) = uniform(rng, -3, 3);
                if (t[i] > t[j]) a(i, j) *= t[i] / t[j];
            }
        GaloisModule m{l, q, f, t, a};
        try {
            m.validate();
            return m;
        } catch (const InputError&) {
        }
    }
    throw std::logic_error("no Galois module found");
}

LocalCase random_local_l(std::uint64_t seed, std::uint64_t index, const BigInt& l_in)
{
    static const std::vector<long> ls = {2, 3, 5, 7};
    static const std::vector<long> qs = {2, 3, 4, 5, 7, 8, 9};
    const BigInt l = l_in == 0 ? BigInt(ls[index % ls.size()]) : l_in;
    CaseRng rng = case_rng(seed, index);
    std::vector<long> allowed;
    for (long q : qs)
        if (q % l.get_si() != 0) allowed.push_back(q);
    const BigInt q = pick(rng, allowed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        GaloisModule m = random_galois_module(rng, l, q);
        GaloisModule n0 = random_galois_module(rng, l, q);
        const long shape = uniform(rng, 0, 2);
        GaloisModule n = shape == 0 ? m : (shape == 1 ? direct_sum(m, n0) : n0);
        try {
            check_no_multiple_common_root(m.minpoly(), n.minpoly());
        } catch (const HypothesisError&) {
            continue;
        }
        LocalCase c;
        c.side = LocalCase::Side::L;
        c.ml = m;
        c.nl = n;
        return c;
    }
    throw std::logic_error("no admissible pair found");
}

LocalCase random_local_p(std::uint64_t seed, std::uint64_t index, const BigInt& p_in, long a_in)
{
    const BigInt p = p_in == 0 ? BigInt((index / 4) % 2 == 0 ? 3 : 5) : p_in;
    const long a = a_in == 0 ? static_cast<long>((index / 8) % 2) + 1 : a_in;
    CaseRng rng = case_rng(seed, index);
    WittRingPtr ring = WittRing::standard(p, a);
    LocalCase c;
    c.side = LocalCase::Side::P;
    switch (index % 4) {
    case 0:
        c.mp = Crystal::k(ring);
        c.np = random_finite_crystal(rng, ring, false);
        break;
    case 1: {
        c.mp = random_finite_crystal(rng, ring, true);
        const long which = uniform(rng, 0, 3);
        if (which == 0) c.np = random_finite_crystal(rng, ring, false);
        else if (which == 1) c.np = Crystal::unit(ring);
        else if (which == 2) c.np = Crystal::lefschetz(ring, 1);
        else c.np = Crystal::special_module(ring, random_special_poly(rng, ring->q()));
        break;
    }
    case 2:
        for (;;) {
            IntPolynomial m = random_special_poly(rng, ring->q()), n = random_special_poly(rng, ring->q());
            if (!coprime(m, n)) continue;
            c.mp = Crystal::special_module(ring, m);
            c.np = Crystal::special_module(ring, n);
            break;
        }
        break;
    default:
        for (;;) {
            IntPolynomial m = random_special_poly(rng, ring->q());
            if (!coprime(m, m.derivative())) continue;
            c.mp = Crystal::special_module(ring, m);
            c.np = c.mp;
            break;
        }
    }
    return c;
}

DualityCase random_duality_case(std::uint64_t seed, std::uint64_t index)
{
    static const std::vector<long> ls = {2, 3, 5, 7};
    const BigInt l = ls[index % ls.size()];
    const BigInt q = l == 2 ? 3 : 2;
    CaseRng rng = case_rng(seed, index);
    DualityCase d;
    for (;;) {
        d.m = random_galois_module(rng, l, q, 0, 3);
        if (d.m.num_torsion() > 0) break;
    }
    for (;;) {
        d.n = random_galois_module(rng, l, q, 3, 0);
        if (d.n.rank() > 0) break;
    }
    return d;
}

VarietyDescriptor random_elliptic_curve(std::uint64_t seed, std::uint64_t index)
{
    static const std::vector<long> ps = {2, 3, 5, 7, 11, 13};
    CaseRng rng = case_rng(seed, index);
    const long p = pick(rng, ps);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const std::size_t n = p <= 3 ? 5 : 2;
        std::vector<std::vector<BigInt>> coeffs(n);
        for (auto& c : coeffs) c = {BigInt(uniform(rng, 0, p - 1))};
        try {
            VarietyDescriptor e = VarietyDescriptor::elliptic_curve(p, coeffs);
            point_count(e);
            return e;
        } catch (const InputError&) {
        }
    }
    throw std::logic_error("no nonsingular curve found");
}

} // namespace frobext

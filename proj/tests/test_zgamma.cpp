#include <doctest.h>

#include "frobext/errors.hpp"
#include "frobext/random_cases.hpp"
#include "frobext/zgamma.hpp"
#include "oracles.hpp"

using namespace frobext;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows)
{
    std::vector<std::vector<BigInt>> r;
    for (auto& row : rows) r.emplace_back(row.begin(), row.end());
    return IntMatrix::from_rows(r);
}

FinGenAbGroup grp(long free_rank, std::vector<long> torsion)
{
    std::vector<BigInt> o(torsion.begin(), torsion.end());
    o.resize(o.size() + static_cast<std::size_t>(free_rank), BigInt(0));
    return FinGenAbGroup::from_cyclic(o);
}

ZValue zq(long n, long d) { return ZValue::of(make_rational(n, d)); }

} // namespace

TEST_CASE("z_of_map examples")
{
    CHECK(z_of_map(grp(0, {4}), grp(0, {2}), mat({{1}})) == zq(2, 1));
    CHECK_FALSE(z_of_map(grp(1, {}), grp(1, {}), mat({{0}})).defined);
    CHECK(z_of_map(grp(2, {}), grp(2, {}), mat({{2, 0}, {0, 3}})) == zq(1, 6));
}

TEST_CASE("z_det_formula examples")
{
    CHECK(z_det_formula(grp(2, {}), grp(2, {}), mat({{2, 0}, {0, 3}})) == zq(1, 6));
    CHECK(z_det_formula(grp(1, {2}), grp(1, {}), mat({{1}})) == zq(2, 1));
    CHECK(z_det_formula(grp(1, {}), grp(1, {}), mat({{3}}), DetMode::Witt, 3, 1) == zq(1, 3));
    CHECK_FALSE(z_det_formula(grp(1, {}), grp(1, {}), mat({{0}})).defined);
}

TEST_CASE("z_compose_check examples")
{
    SubQuotient z6 = SubQuotient::cyclic({6}), z = SubQuotient::cyclic({0});
    ZTriple a = z_compose_check(z6, z6, z6, mat({{1}}), mat({{1}}));
    CHECK(a.zf == zq(1, 1));
    CHECK(a.zg == zq(1, 1));
    CHECK(a.zgf == zq(1, 1));

    ZTriple b = z_compose_check(z, z, z, mat({{2}}), mat({{3}}));
    CHECK(b.zf == zq(1, 2));
    CHECK(b.zg == zq(1, 3));
    CHECK(b.zgf == zq(1, 6));

    // Oracle: enumerate Z/4 -> Z/2 and Z/2 -> Z/2.
    auto f = oracle::enumerate_map({4}, {2}, {{1}});
    auto g = oracle::enumerate_map({2}, {2}, {{1}});
    auto gf = oracle::enumerate_map({4}, {2}, {{1}});
    SubQuotient z4 = SubQuotient::cyclic({4}), z2 = SubQuotient::cyclic({2});
    ZTriple c = z_compose_check(z4, z2, z2, mat({{1}}), mat({{1}}));
    CHECK(c.zf == zq(f.kernel * f.image, 2));
    CHECK(c.zg == zq(g.kernel * g.image, 2));
    CHECK(c.zgf == zq(gf.kernel * gf.image, 2));
    CHECK(c.zf == zq(2, 1));
    CHECK(c.consistent);
}

TEST_CASE("invariants and coinvariants examples")
{
    InvCoinv swap = invariants_coinvariants({grp(2, {}), mat({{0, 1}, {1, 0}})});
    CHECK(swap.inv.group() == grp(1, {}));
    CHECK(swap.coinv.group() == grp(1, {}));

    const long q = 7;
    InvCoinv mq = invariants_coinvariants({grp(1, {}), mat({{q}})});
    CHECK(mq.inv.group().is_trivial());
    CHECK(mq.coinv.group() == grp(0, {q - 1}));

    InvCoinv id5 = invariants_coinvariants({grp(0, {5}), mat({{1}})});
    CHECK(id5.inv.group() == grp(0, {5}));
    CHECK(id5.coinv.group() == grp(0, {5}));
}

TEST_CASE("z_ezf examples")
{
    for (long q : {2L, 3L, 4L, 9L}) {
        EzfReport r = z_ezf({grp(1, {}), mat({{q}})});
        CHECK(r.z == zq(1, q - 1));
        CHECK(r.identity_holds);
    }
    EzfReport id = z_ezf({grp(3, {}), IntMatrix::identity(3)});
    CHECK(id.z == zq(1, 1));
    CHECK(id.eigen_product == 1);

    // Oracle: f0 maps Z(1,1) into Z^2 / (gamma - 1) Z^2; the cokernel is
    // Z^2 modulo the columns (-1, 1) and (1, 1).
    EzfReport sw = z_ezf({grp(2, {}), mat({{0, 1}, {1, 0}})});
    BigInt coker = abs(oracle::cofactor_det(mat({{-1, 1}, {1, 1}})));
    CHECK(sw.z == ZValue::of(BigRational(1) / BigRational(coker)));
    CHECK(sw.z == zq(1, 2));
    CHECK(sw.identity_holds);

    // 1 a double root of the minimal polynomial: undefined.
    EzfReport u = z_ezf({grp(2, {}), mat({{1, 1}, {0, 1}})});
    CHECK_FALSE(u.z.defined);
}

TEST_CASE("gamma cohomology examples")
{
    GammaCohomology z = gamma_cohomology({grp(1, {}), mat({{1}})}, GammaGroup::Discrete);
    CHECK(z.h0 == grp(1, {}));
    CHECK(z.h1 == grp(1, {}));

    GammaCohomology f5 = gamma_cohomology({grp(0, {5}), mat({{1}})});
    CHECK(f5.h0 == grp(0, {5}));
    CHECK(f5.h1 == grp(0, {5}));

    // (Q_3/Z_3)(1) over F_4: gamma = 4, kernel of multiplication by 3.
    CofinTorsionGroup t{3, 1, {}, mat({{4}}), 20};
    CofinCohomology c = gamma_cohomology(t);
    CHECK(c.h0.corank == 0);
    CHECK(c.h0.finite == grp(0, {3}));
    CHECK(c.h1.corank == 0);
    CHECK(c.h1.finite.is_trivial());

    // (Q_2/Z_2)(2) over F_3: 9 - 1 = 8.
    CofinCohomology d = gamma_cohomology(CofinTorsionGroup{2, 1, {}, mat({{9}}), 20});
    CHECK(d.h0.finite == grp(0, {8}));
    CHECK(d.h1.finite.is_trivial());
}

TEST_CASE("property: z_of_map equals the determinant formula")
{
    int defined = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        ZMapCase c = random_z_map(21, i, true);
        const std::size_t r = static_cast<std::size_t>(c.m.free_rank);
        const std::size_t tm = c.m.torsion.size(), tn = c.n.torsion.size();
        IntMatrix a(r, r);
        for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < r; ++y) a(x, y) = c.f(tn + x, tm + y);
        ZValue direct = z_of_map(c.m, c.n, c.f), formula = z_det_formula(c.m, c.n, a);
        CHECK(direct == formula);
        defined += direct.defined;
    }
    CHECK(defined > 100);
}

TEST_CASE("property: z_of_map on finite groups matches enumeration")
{
    for (std::uint64_t i = 0; i < 300; ++i) {
        ZMapCase c = random_z_map(22, i);
        if (!c.m.is_finite() || !c.n.is_finite() || c.m.order() > 400) continue;
        std::vector<long> src, dst;
        for (const auto& d : c.m.torsion) src.push_back(d.get_si());
        for (const auto& d : c.n.torsion) dst.push_back(d.get_si());
        std::vector<std::vector<long>> f(dst.size(), std::vector<long>(src.size()));
        for (std::size_t k = 0; k < dst.size(); ++k)
            for (std::size_t j = 0; j < src.size(); ++j) f[k][j] = c.f(k, j).get_si();
        auto e = oracle::enumerate_map(src, dst, f);
        ZValue z = z_of_map(c.m, c.n, c.f);
        REQUIRE(z.defined);
        CHECK(z.value == make_rational(BigInt(e.kernel) * e.image, oracle::group_order(dst)));
    }
}

TEST_CASE("property: z is multiplicative")
{
    int full = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        ZComposeCase c = random_z_compose(23, i);
        ZTriple t = z_compose_check(c.a, c.b, c.c, c.f, c.g);
        CHECK(t.consistent);
        if (t.zf.defined && t.zg.defined) {
            REQUIRE(t.zgf.defined);
            CHECK(t.zgf.value == t.zf.value * t.zg.value);
            ++full;
        }
    }
    CHECK(full > 50);
}

TEST_CASE("property: z times the eigenvalue product is 1, finite H0 = H1")
{
    for (std::uint64_t i = 0; i < 300; ++i) {
        GammaModule m = random_gamma_module(24, i);
        EzfReport r = z_ezf(m);
        if (r.z.defined) CHECK(r.identity_holds);
        if (m.group.is_finite()) {
            GammaCohomology h = gamma_cohomology(m);
            CHECK(h.h0.order() == h.h1.order());
            GammaCohomology hp = gamma_cohomology(m, GammaGroup::Profinite);
            CHECK(hp.h0 == h.h0);
            CHECK(hp.h1 == h.h1);
        }
    }
}

TEST_CASE("property: cohomology independent of the basis")
{
    const IntMatrix u = mat({{2, 1}, {1, 1}}), u_inv = mat({{1, -1}, {-1, 2}});
    for (std::uint64_t i = 0; i < 100; ++i) {
        GammaModule m = random_gamma_module(25, i);
        if (m.group.free_rank != 2 || !m.group.torsion.empty()) continue;
        GammaModule c{m.group, u * m.action * u_inv};
        GammaCohomology a = gamma_cohomology(m), b = gamma_cohomology(c);
        CHECK(a.h0 == b.h0);
        CHECK(a.h1 == b.h1);
    }
}

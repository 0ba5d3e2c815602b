#include <doctest.h>

#include <fstream>
#include <sstream>

#include "frobext/errors.hpp"
#include "frobext/random_cases.hpp"
#include "frobext/serialize.hpp"

using namespace frobext;

namespace {

std::string slurp(const std::string& name)
{
    std::ifstream f(std::string(FROBEXT_TEST_DATA) + "/" + name);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("local cases round-trip")
{
    for (std::uint64_t i = 0; i < 40; ++i) {
        LocalCase l = random_local_l(17, i);
        std::string a = to_json(l);
        CHECK(to_json(local_case_from_json(a)) == a);

        LocalCase p = random_local_p(17, i);
        std::string b = to_json(p);
        CHECK(to_json(local_case_from_json(b)) == b);
    }
    for (const char* name : {"special-coprime.json", "multiple-common-root.json"}) {
        std::string a = to_json(local_case_from_json(slurp(name)));
        CHECK(to_json(local_case_from_json(a)) == a);
    }
}

TEST_CASE("galois modules and crystals round-trip")
{
    for (std::uint64_t i = 0; i < 20; ++i) {
        CaseRng rng = case_rng(23, i);
        GaloisModule m = random_galois_module(rng, 3, 7);
        std::string a = to_json(m);
        GaloisModule back = galois_module_from_json(a);
        CHECK(back.free_frob == m.free_frob);
        CHECK(to_json(back) == a);

        LocalCase c = random_local_p(23, i);
        std::string b = to_json(*c.mp);
        CHECK(to_json(crystal_from_json(b)) == b);
    }
}

TEST_CASE("motives round-trip")
{
    std::vector<Motive> ms = {Motive::unit(3), Motive::tate(5, 2), Motive::elliptic(7, -2), Motive::elliptic(4, 1)};
    Motive t = Motive::elliptic(5, -3);
    t.twist = -1;
    ms.push_back(t);
    for (const Motive& m : ms) {
        std::string a = to_json(m);
        Motive back = motive_from_json(a);
        CHECK(back.charpoly() == m.charpoly());
        CHECK(back.twist == m.twist);
        CHECK(to_json(back) == a);
    }
    Motive h = motive_from_json(slurp("h1e-f5.json"));
    CHECK(h.charpoly() == IntPolynomial({5, 3, 1}));
    std::string a = to_json(h);
    CHECK(to_json(motive_from_json(a)) == a);
}

TEST_CASE("varieties round-trip")
{
    for (const char* name : {"p1-q4.json", "e-f5.json"}) {
        VarietyCase v = variety_from_json(slurp(name));
        std::string a = to_json(v);
        CHECK(to_json(variety_from_json(a)) == a);
    }
    VarietyCase prod{VarietyDescriptor::product(VarietyDescriptor::projective_space(3, 1),
                                                VarietyDescriptor::elliptic_curve(3, {{2}, {1}})),
                     0};
    std::string a = to_json(prod);
    CHECK(to_json(variety_from_json(a)) == a);
}

TEST_CASE("big integers")
{
    Motive m = Motive::tate(3, 50);
    std::string a = to_json(m);
    CHECK(a.find("\"717897987691852588770249\"") != std::string::npos);
    CHECK(motive_from_json(a).charpoly() == m.charpoly());
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(motive_from_json(slurp("malformed.json")), InputError);
    CHECK_THROWS_AS(variety_from_json(slurp("unsupported-kind.json")), InputError);
    CHECK_THROWS_AS(motive_from_json("{\"q\":6,\"charpoly\":[-1,1]}"), InputError);
    CHECK_THROWS_AS(motive_from_json("{\"q\":5,\"charpoly\":[0,1]}"), InputError);
    CHECK_THROWS_AS(motive_from_json("{\"q\":5,\"charpoly\":[\"x\",1]}"), InputError);
    CHECK_THROWS_AS(local_case_from_json("[]"), InputError);
}

#include "frobext/serialize.hpp"

#include <json.hpp>

#include "frobext/errors.hpp"

namespace frobext {

using json = nlohmann::json;

namespace {

json big(const BigInt& x)
{
    if (x.fits_slong_p()) return json(x.get_si());
    return json(x.get_str());
}

BigInt big_from(const json& j)
{
    if (j.is_number_integer()) return BigInt(j.get<long>());
    if (j.is_string()) {
        BigInt x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad integer string: " + j.get<std::string>());
        return x;
    }
    throw InputError("expected an integer, got " + j.dump());
}

long small_from(const json& j)
{
    BigInt x = big_from(j);
    if (!x.fits_slong_p()) throw InputError("integer out of range");
    return x.get_si();
}

json vec(const std::vector<BigInt>& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(big(x));
    return a;
}

std::vector<BigInt> vec_from(const json& j)
{
    if (!j.is_array()) throw InputError("expected an integer list");
    std::vector<BigInt> v;
    for (const auto& x : j) v.push_back(big_from(x));
    return v;
}

json mat(const IntMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big(m(i, j)));
        a.push_back(row);
    }
    return a;
}

IntMatrix mat_from(const json& j, std::size_t cols_if_empty = 0)
{
    if (!j.is_array()) throw InputError("expected a matrix");
    if (j.empty()) return IntMatrix(0, cols_if_empty);
    const std::size_t rows = j.size(), cols = j[0].size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw InputError("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = big_from(j[i][c]);
    }
    return m;
}

json poly(const IntPolynomial& p) { return vec(p.coeffs()); }

BigRational rational_from(const json& j)
{
    if (j.is_number_integer()) return BigRational(j.get<long>());
    if (j.is_string()) {
        BigRational x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad rational: " + j.get<std::string>());
        x.canonicalize();
        return x;
    }
    throw InputError("expected a rational, got " + j.dump());
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

template <class F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

json galois_json(const GaloisModule& m)
{
    return json{{"l", big(m.l)},
                {"q", big(m.q)},
                {"frobenius", mat(m.free_frob)},
                {"torsion", vec(m.torsion)},
                {"torsion_action", mat(m.torsion_action)}};
}

GaloisModule galois_from(const json& j, std::optional<BigInt> l = {}, std::optional<BigInt> q = {})
{
    GaloisModule m;
    m.l = j.contains("l") ? big_from(j.at("l")) : l.value_or(0);
    m.q = j.contains("q") ? big_from(j.at("q")) : q.value_or(0);
    if (m.l == 0 || m.q == 0) throw InputError("Galois module needs l and q");
    m.free_frob = mat_from(field(j, "frobenius"));
    m.torsion = j.contains("torsion") ? vec_from(j.at("torsion")) : std::vector<BigInt>{};
    m.torsion_action = j.contains("torsion_action") ? mat_from(j.at("torsion_action"))
                                                    : IntMatrix(m.torsion.size(), m.torsion.size());
    if (m.torsion.empty() && m.torsion_action.rows() == 0) m.torsion_action = IntMatrix(0, 0);
    m.validate();
    return m;
}

json crystal_json(const Crystal& c)
{
    const WittRing& w = *c.ring;
    json f = json::array();
    for (std::size_t i = 0; i < c.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < c.dim(); ++k) row.push_back(vec(c.f(i, k)));
        f.push_back(row);
    }
    json e = json::array();
    for (long x : c.exponents) e.push_back(x);
    json out{{"p", big(w.p())},
             {"a", w.a()},
             {"modulus", poly(w.modulus())},
             {"precision", w.precision()},
             {"exponents", e},
             {"frobenius", f}};
    if (c.special) out["special"] = poly(*c.special);
    return out;
}

Crystal crystal_from(const json& j, WittRingPtr ring = nullptr)
{
    BigInt p = big_from(field(j, "p"));
    long a = small_from(field(j, "a"));
    long k = j.contains("precision") ? small_from(j.at("precision")) : default_precision();
    IntPolynomial h = j.contains("modulus") ? IntPolynomial(vec_from(j.at("modulus"))) : WittRing::default_modulus(p, a);
    if (!ring || ring->p() != p || ring->a() != a || ring->modulus() != h || ring->precision() != k)
        ring = WittRing::build(p, a, k, h);
    Crystal c;
    c.ring = ring;
    const json& f = field(j, "frobenius");
    if (!f.is_array()) throw InputError("crystal frobenius must be a matrix of Witt elements");
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!f[i].is_array() || f[i].size() != n) throw InputError("crystal frobenius must be square");
        for (std::size_t col = 0; col < n; ++col) {
            std::vector<BigInt> coords = vec_from(f[i][col]);
            if (static_cast<long>(coords.size()) > a) throw InputError("Witt element has too many coordinates");
            coords.resize(static_cast<std::size_t>(a), 0);
            c.frob.push_back(ring->add(ring->zero(), coords));
        }
    }
    if (j.contains("exponents")) {
        for (const auto& e : j.at("exponents")) c.exponents.push_back(small_from(e));
    } else {
        c.exponents.assign(n, 0);
    }
    if (c.exponents.size() != n) throw InputError("exponents and frobenius sizes differ");
    if (j.contains("special")) c.special = IntPolynomial(vec_from(j.at("special")));
    c.validate();
    return c;
}

json motive_json(const Motive& m)
{
    json ex = json::object();
    for (const auto& [l, g] : m.exceptional) {
        json e = galois_json(g);
        e.erase("l");
        e.erase("q");
        ex[to_string(l)] = e;
    }
    return json{{"q", big(m.q)},
                {"charpoly", poly(m.charpoly())},
                {"frobenius", mat(m.frob)},
                {"exceptional", ex},
                {"crystal", crystal_json(m.crystal)},
                {"twist", m.twist}};
}

Motive motive_from(const json& j)
{
    BigInt q = big_from(field(j, "q"));
    std::optional<IntPolynomial> cp;
    if (j.contains("charpoly")) cp = IntPolynomial(vec_from(j.at("charpoly")));
    Motive m;
    if (j.contains("frobenius")) {
        m = Motive::from_matrix(q, mat_from(j.at("frobenius")));
        if (cp && m.charpoly() != *cp) throw InputError("charpoly does not match the Frobenius matrix");
    } else if (cp) {
        m = Motive::from_charpoly(q, *cp);
    } else {
        throw InputError("motive needs \"charpoly\" or \"frobenius\"");
    }
    if (j.contains("crystal")) {
        const json& c = j.at("crystal");
        if (c.contains("slopes")) {
            std::vector<BigRational> s;
            for (const auto& x : c.at("slopes")) s.push_back(rational_from(x));
            motive_from_charpoly(q, m.charpoly(), s); // slope check only; the default crystal stays
        } else {
            m.crystal = crystal_from(c, m.crystal.ring);
        }
    }
    if (j.contains("exceptional")) {
        for (const auto& [key, val] : j.at("exceptional").items()) {
            BigInt l;
            if (l.set_str(key, 10) != 0) throw InputError("exceptional key must be a prime: " + key);
            m.exceptional[l] = galois_from(val, l, q);
        }
    }
    if (j.contains("twist")) m.twist = small_from(j.at("twist"));
    m.validate();
    return m;
}

json variety_json(const VarietyDescriptor& v)
{
    switch (v.kind) {
    case VarietyDescriptor::Kind::ProjectiveSpace: return json{{"kind", "projective_space"}, {"q", big(v.q)}, {"n", v.n}};
    case VarietyDescriptor::Kind::EllipticCurve: {
        json c = json::array();
        for (const auto& x : v.coefficients) c.push_back(x.size() == 1 ? big(x[0]) : vec(x));
        return json{{"kind", "elliptic_curve"}, {"q", big(v.q)}, {"coefficients", c}};
    }
    case VarietyDescriptor::Kind::Product:
        return json{{"kind", "product"}, {"q", big(v.q)}, {"factors", json::array({variety_json(*v.left), variety_json(*v.right)})}};
    }
    return {};
}

VarietyDescriptor variety_from(const json& j, std::optional<BigInt> q_outer = {})
{
    const std::string kind = field(j, "kind").get<std::string>();
    BigInt q = j.contains("q") ? big_from(j.at("q")) : q_outer.value_or(0);
    if (q == 0) throw InputError("variety needs q");
    if (kind == "projective_space") return VarietyDescriptor::projective_space(q, small_from(field(j, "n")));
    if (kind == "elliptic_curve") {
        std::vector<std::vector<BigInt>> c;
        for (const auto& x : field(j, "coefficients")) c.push_back(x.is_array() ? vec_from(x) : std::vector<BigInt>{big_from(x)});
        return VarietyDescriptor::elliptic_curve(q, std::move(c));
    }
    if (kind == "product") {
        const json& f = field(j, "factors");
        if (!f.is_array() || f.size() != 2) throw InputError("product needs exactly two factors");
        return VarietyDescriptor::product(variety_from(f[0], q), variety_from(f[1], q));
    }
    throw InputError("unsupported variety kind: " + kind);
}

} // namespace

std::string to_json(const GaloisModule& m) { return galois_json(m).dump(); }

GaloisModule galois_module_from_json(const std::string& text)
{
    return guarded([&] { return galois_from(parse(text)); });
}

std::string to_json(const Crystal& c) { return crystal_json(c).dump(); }

Crystal crystal_from_json(const std::string& text)
{
    return guarded([&] { return crystal_from(parse(text)); });
}

std::string to_json(const Motive& m) { return motive_json(m).dump(); }

Motive motive_from_json(const std::string& text)
{
    return guarded([&] { return motive_from(parse(text)); });
}

std::string to_json(const VarietyCase& v)
{
    json j = variety_json(v.variety);
    j["r"] = v.r;
    return j.dump();
}

VarietyCase variety_from_json(const std::string& text)
{
    return guarded([&] {
        json j = parse(text);
        VarietyCase v{variety_from(j), 0};
        if (j.contains("r")) v.r = small_from(j.at("r"));
        return v;
    });
}

std::string to_json(const LocalCase& c)
{
    json j;
    if (c.side == LocalCase::Side::L) {
        j = json{{"side", "l"}, {"M", galois_json(*c.ml)}, {"N", galois_json(*c.nl)}};
    } else {
        j = json{{"side", "p"}, {"M", crystal_json(*c.mp)}, {"N", crystal_json(*c.np)}};
    }
    return j.dump();
}

LocalCase local_case_from_json(const std::string& text)
{
    return guarded([&] {
        json j = parse(text);
        LocalCase c;
        const std::string side = field(j, "side").get<std::string>();
        if (side == "l") {
            c.side = LocalCase::Side::L;
            c.ml = galois_from(field(j, "M"));
            c.nl = galois_from(field(j, "N"));
        } else if (side == "p") {
            c.side = LocalCase::Side::P;
            c.mp = crystal_from(field(j, "M"));
            c.np = crystal_from(field(j, "N"), c.mp->ring);
        } else {
            throw InputError("side must be \"l\" or \"p\"");
        }
        return c;
    });
}

} // namespace frobext

#pragma once

/**
 * @file zgamma.hpp
 * z(f) = [Ker f]/[Coker f] and the cohomology of Z and its profinite
 * completion acting through a single generator.
 */

#include <string>
#include <vector>

#include "frobext/lattice.hpp"

namespace frobext {

struct ZValue {
    bool defined = false;
    BigRational value; // > 0 when defined

    static ZValue undefined() { return {}; }
    static ZValue of(const BigRational& v) { return {true, v}; }
    std::string to_string() const { return defined ? value.get_str() : "undefined"; }

    friend bool operator==(const ZValue& a, const ZValue& b)
    {
        return a.defined == b.defined && (!a.defined || a.value == b.value);
    }
};

// Canonical presentation of a group: torsion generators first, then free.
SubQuotient presentation(const FinGenAbGroup& g);

// z of the map with canonical matrix h between two subquotients.
ZValue z_of_canonical(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h);
// z of the map induced by an ambient matrix f.
ZValue z_of_map(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& f);
// f given in the canonical presentations of m and n.
ZValue z_of_map(const FinGenAbGroup& m, const FinGenAbGroup& n, const IntMatrix& f);

enum class DetMode { Integer, Witt };

// Closed form from the determinant of the map modulo torsion.  In Witt mode
// p and a describe W(F_{p^a}).
ZValue z_det_formula(const FinGenAbGroup& m, const FinGenAbGroup& n, const IntMatrix& a,
                     DetMode mode = DetMode::Integer, const BigInt& p = 0, long degree = 1);

struct ZTriple {
    ZValue zf, zg, zgf;
    bool consistent = true; // any two defined => third defined and multiplicative
};

// f: a -> b, g: b -> c as ambient matrices.
ZTriple z_compose_check(const SubQuotient& a, const SubQuotient& b, const SubQuotient& c,
                        const IntMatrix& f, const IntMatrix& g);

/// A group with an automorphism gamma, in the canonical presentation
/// (torsion coordinates first, then free).
struct GammaModule {
    FinGenAbGroup group;
    IntMatrix action;

    // Throws InputError unless action is an injective endomorphism.
    void validate() const;
};

struct InvCoinv {
    SubQuotient inv;   // ker(gamma - 1), inside the canonical coordinates of M
    SubQuotient coinv; // coker(gamma - 1), same coordinates
    IntMatrix f0;      // canonical matrix of inv -> coinv induced by the identity
};

InvCoinv invariants_coinvariants(const GammaModule& m);

struct EzfReport {
    ZValue z;
    BigRational eigen_product;   // |prod_{a_i != 1} (1 - a_i)|
    bool identity_holds = false; // z * eigen_product == 1
};

// Undefined z when 1 is a multiple root of the minimal polynomial.
EzfReport z_ezf(const GammaModule& m);

enum class GammaGroup { Profinite, Discrete };

struct GammaCohomology {
    FinGenAbGroup h0, h1;
};

// Same answer for both groups on the modules handled here.
GammaCohomology gamma_cohomology(const GammaModule& m, GammaGroup g = GammaGroup::Discrete);

/// (Q_l/Z_l)^corank + finite l-group, with block diagonal action.
struct CofinTorsionGroup {
    BigInt l;
    long corank = 0;
    std::vector<BigInt> finite_part;
    IntMatrix action; // (corank + #finite) square
    long precision = 20;
};

struct CofinGroup {
    long corank = 0;
    FinGenAbGroup finite;
    std::string to_string() const;
    friend bool operator==(const CofinGroup& a, const CofinGroup& b)
    {
        return a.corank == b.corank && a.finite == b.finite;
    }
};

struct CofinCohomology {
    CofinGroup h0, h1;
};

// Throws PrecisionError when a valuation reaches the working precision.
CofinCohomology gamma_cohomology(const CofinTorsionGroup& m, GammaGroup g = GammaGroup::Profinite);

} // namespace frobext

#pragma once

/**
 * @file ext_complex.hpp
 * Ext groups from a two-term presentation 0 -> R -> M~ -> M -> 0 with M~, R
 * free, against a target N given in integer coordinates.  Used for both the
 * l-adic and the crystalline side; every coefficient is an integer operator
 * on the coordinates of N.
 *
 * Total complex:
 *   T0 = N^r,  T1 = N^r + N^t,  T2 = N^t
 *   d0(U)    = (F_N U - U Phi, U D)
 *   d1(C, V) = C D - (F_N V - V S)
 * where (U Phi)_i = sum_k Phi_ki u_k and F_N may be semilinear.
 */

#include <string>
#include <vector>

#include "frobext/zgamma.hpp"

namespace frobext {

struct ExtComplexInput {
    std::vector<BigInt> n_moduli; // per coordinate of N, 0 for free
    IntMatrix n_frob;             // F_N on coordinates
    std::size_t r = 0, t = 0;
    std::vector<IntMatrix> phi; // r*r, phi[k*r + i] is the operator of Phi_ki
    std::vector<IntMatrix> s;   // t*t, same layout
    IntMatrix d;                // r x t, scalar entries
    std::vector<IntMatrix> cup; // r*r, f(U) = (U Cup, 0)
};

struct ExtComplexResult {
    SubQuotient h0, h1, h2;
    IntMatrix f; // canonical matrix h0 -> h1
};

ExtComplexResult ext_complex(const ExtComplexInput& in);

// {x : out x in rel_out} / (im in + rel_mid), all ambient.
SubQuotient complex_homology(const IntMatrix& in, const IntMatrix& out, const IntMatrix& rel_mid,
                             const IntMatrix& rel_out);

// Columns m_i e_i for the nonzero moduli.
IntMatrix relation_columns(const std::vector<BigInt>& moduli);

struct PrimaryExt {
    FinGenAbGroup e0, e1, e2;
    ZValue z; // of f: e0 -> e1
};

PrimaryExt primary_part(const ExtComplexResult& res, const BigInt& l);

// z of a canonical map, counting only l-primary orders.
ZValue z_primary(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h, const BigInt& l);

struct LocalReport {
    ZValue z_f;
    BigInt ext2_order;
    BigRational lhs, rhs;
    long rho = 0;
    bool equal = false;
    bool routes_agree = false;
    std::string detail;
};

// |prod_{a_i != b_j} (1 - b_j/a_i)| at l, from the two characteristic polynomials.
LeadingTerm ratio_leading(const IntPolynomial& pm, const IntPolynomial& pn);

// Throws HypothesisError("multiple common root") when the hypothesis fails.
void check_no_multiple_common_root(const RatPolynomial& mm, const RatPolynomial& mn);

} // namespace frobext

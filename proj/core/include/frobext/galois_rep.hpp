#pragma once

/**
 * @file galois_rep.hpp
 * Split Frobenius modules over Z_l (l != p) and their Ext groups.
 *
 * Coordinates of a module: the free part first, then one coordinate per
 * torsion invariant factor.
 */

#include <string>
#include <vector>

#include "frobext/ext_complex.hpp"

namespace frobext {

struct GaloisModule {
    BigInt l;
    BigInt q;
    IntMatrix free_frob;          // r x r, l-unit determinant
    std::vector<BigInt> torsion;  // l-powers
    IntMatrix torsion_action;     // k x k, d_k | T_ki d_i

    static GaloisModule trivial(const BigInt& l, const BigInt& q);
    // Frobenius acting as q^r on Z_l.
    static GaloisModule tate(const BigInt& l, const BigInt& q, unsigned long r);
    static GaloisModule from_charpoly(const BigInt& l, const BigInt& q, const IntPolynomial& p);
    static GaloisModule finite(const BigInt& l, const BigInt& q, std::vector<BigInt> torsion,
                               IntMatrix action);

    std::size_t rank() const { return free_frob.rows(); }
    std::size_t num_torsion() const { return torsion.size(); }
    std::size_t dim() const { return rank() + num_torsion(); }
    // Per-coordinate moduli (0 on the free part).
    std::vector<BigInt> moduli() const;
    // Block diagonal action on all coordinates.
    IntMatrix action() const;
    IntPolynomial charpoly() const;
    RatPolynomial minpoly() const;

    // Throws InputError on any violated invariant.
    void validate() const;
};

GaloisModule direct_sum(const GaloisModule& a, const GaloisModule& b);

/// Hom_{Z_l}(M, N) as a subquotient of Z^{dim N * dim M} (row-major H).
struct HomGammaModule {
    SubQuotient lattice;
    IntMatrix phi;       // H -> F_N H - H F_M
    IntMatrix gamma_num; // H -> det(F_M) F_N H F_M^{-1}
    BigInt gamma_den;    // det(F_M), an l-unit
};

HomGammaModule hom_module(const GaloisModule& m, const GaloisModule& n);

struct ExtReportL {
    FinGenAbGroup ext0;
    FinGenAbGroup ext1;      // full structure from the total complex
    bool ext1_finite = false;
    BigInt ext1_torsion_order;
    FinGenAbGroup ext2;
    ZValue z_f;

    // Spectral-sequence pieces.
    FinGenAbGroup hom_coinv;  // Hom_Gamma
    FinGenAbGroup e1_inv;     // Ext^1_{Z_l}(M,N)^Gamma
    ZValue z_f0;
    bool routes_agree = false;
};

ExtReportL ext_groups_l(const GaloisModule& m, const GaloisModule& n);

struct FMapResult {
    ZValue z_f;
    BigRational lhs; // z(f) [Ext^2]
};

FMapResult f_map_and_z(const GaloisModule& m, const GaloisModule& n);

LocalReport verify_lca_l(const GaloisModule& m, const GaloisModule& n);

struct DualityReport {
    BigInt hom_order;  // [Hom(N, M)], M torsion
    BigInt ext2_order; // [Ext^2(M, N)]
    bool equal = false;
};

DualityReport check_duality(const GaloisModule& torsion_m, const GaloisModule& free_n);

} // namespace frobext

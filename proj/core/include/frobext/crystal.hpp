#pragma once

/**
 * @file crystal.hpp
 * F-crystals over W(F_q): finitely generated W-modules with a sigma-semilinear
 * Frobenius, their characteristic polynomials and slopes, and Ext groups in
 * the category of A = W[F, sigma]-modules.
 *
 * A crystal is given on W-coordinates e_0..e_{n-1}; coordinate i is free when
 * exponents[i] == 0 and a copy of W/p^e otherwise.  F e_j = sum_i F(i, j) e_i
 * and F(c v) = sigma(c) F(v).
 */

#include <optional>
#include <string>
#include <vector>

#include "frobext/ext_complex.hpp"
#include "frobext/witt.hpp"

namespace frobext {

enum class CrystalKind { TorsionFree, KType, FiniteInvertible, Mixed };

std::string to_string(CrystalKind k);

struct Crystal {
    WittRingPtr ring;
    std::vector<long> exponents;
    std::vector<WittRing::Elt> frob; // row-major n x n
    // Set for A / A m(F^a).
    std::optional<IntPolynomial> special;
    long twist = 0;

    static Crystal unit(const WittRingPtr& ring);
    // (W, p^r sigma).
    static Crystal lefschetz(const WittRingPtr& ring, long r);
    // Free crystal with an integer matrix.
    static Crystal from_matrix(const WittRingPtr& ring, const IntMatrix& f);
    // a = 1 only: the companion matrix of a monic P.
    static Crystal from_charpoly(const WittRingPtr& ring, const IntPolynomial& p);
    static Crystal special_module(const WittRingPtr& ring, const IntPolynomial& m);
    // k = W/p with F = 0.
    static Crystal k(const WittRingPtr& ring);
    static Crystal finite(const WittRingPtr& ring, std::vector<long> exponents, std::vector<WittRing::Elt> frob);

    std::size_t dim() const { return exponents.size(); }
    std::size_t rank() const;
    const WittRing::Elt& f(std::size_t i, std::size_t j) const { return frob[i * dim() + j]; }
    CrystalKind kind() const;

    // Z-coordinates: x^m e_j at index j*a + m.  Moduli p^e or 0.
    std::vector<BigInt> z_moduli() const;
    IntMatrix z_frob() const;
    // F^a = F sigma(F) ... sigma^{a-1}(F) as a matrix of W-elements.
    std::vector<WittRing::Elt> frob_power() const;
    // The quotient by the torsion submodule.
    Crystal free_part() const;

    void validate() const;
};

Crystal direct_sum(const Crystal& a, const Crystal& b);
// Torsion-free only; F acts diagonally.
Crystal tensor(const Crystal& a, const Crystal& b);

// Characteristic polynomial of F^a on a torsion-free crystal.
IntPolynomial crystal_charpoly(const Crystal& m);
RatPolynomial crystal_minpoly(const Crystal& m);

struct Slopes {
    long r = 0;
    BigRational s;
};

Slopes slopes(const Crystal& m);

struct ExtReportP {
    PrimaryExt ext;
    long precision = 0;   // K at which the result was certified
    bool certified = false;
};

// Ext^i_A(M, N) from the presentation 0 -> R -> M~ -> M -> 0; any kinds.
// Precision starts at k0 (0: the ring's) and is raised until the p-adic
// invariants sit below K - 2; the result is then recomputed at K + 2.
ExtReportP ext_crystal(const Crystal& m, const Crystal& n, long k0 = 0);
// Same, restricted to torsion-free M.
ExtReportP ext_presentation(const Crystal& m, const Crystal& n, long k0 = 0);

struct KoszulReport {
    FinGenAbGroup e0, e1, e2;
    bool alternating_ok = true; // only meaningful for finite N
};

// Cohomology of N -> N + N -> N from the resolution of k.
KoszulReport ext_koszul_k(const Crystal& n);

LocalReport verify_lca_p(const Crystal& m, const Crystal& n);

} // namespace frobext

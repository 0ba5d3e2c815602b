#pragma once

/**
 * @file motive.hpp
 * Effective motives over F_q glued from local data, their Hom lattices and
 * trace discriminants, and the global and Weil Ext groups.
 *
 * A motive stores an integer Frobenius matrix (rational structure and the
 * standard lattice at every l != p), optional exceptional l-adic modules
 * (same free part, extra torsion), a torsion-free crystal at p, and a Tate
 * exponent: the object is (stored data) tensor L^twist.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobext/crystal.hpp"
#include "frobext/galois_rep.hpp"

namespace frobext {

struct Motive {
    BigInt q;
    IntMatrix frob;
    std::map<BigInt, GaloisModule> exceptional;
    Crystal crystal;
    long twist = 0;

    static Motive from_charpoly(const BigInt& q, const IntPolynomial& p);
    static Motive from_matrix(const BigInt& q, const IntMatrix& f);
    static Motive unit(const BigInt& q);
    // Frobenius q^r, crystal (W, p^r sigma).
    static Motive tate(const BigInt& q, long r);
    // h_1 of an elliptic curve with trace a_E.
    static Motive elliptic(const BigInt& q, const BigInt& trace);

    BigInt p() const;
    long a() const;
    std::size_t rank() const { return frob.rows(); }
    IntPolynomial charpoly() const { return frobext::charpoly(frob); }
    GaloisModule at(const BigInt& l) const;
    // Torsion primes of the exceptional modules.
    std::vector<BigInt> torsion_primes() const;

    // Tensor with L^m, m >= 0, folded into the stored data.
    Motive shifted(long m) const;
    // Tate factors dividing the stored data moved into the twist.
    Motive reduced() const;
    // The stored data with the twist applied; requires twist >= 0.
    Motive materialized() const;

    void validate() const;
};

Motive direct_sum(const Motive& x, const Motive& y);
// Kronecker product of the data; no exceptional modules.
Motive tensor(const Motive& x, const Motive& y);

// Crystal with F^a having the characteristic polynomial of f.
// a = 1: f itself.  a = 2: searched in small Witt elements for rank <= 2.
Crystal default_crystal(const WittRingPtr& ring, const IntMatrix& f);

// Newton slopes of P at p, divided by a, ascending with multiplicity.
std::vector<BigRational> newton_slopes(const IntPolynomial& p, const BigInt& prime, long a);
Motive motive_from_charpoly(const BigInt& q, const IntPolynomial& p, const std::vector<BigRational>& crystal_slopes);

// Both reduced, then shifted by a common power of L so the smaller twist is 0,
// then materialized.
std::pair<Motive, Motive> effective_pair(const Motive& x, const Motive& y);

struct HomLattice {
    IntMatrix basis;   // columns: row-major H with F_Y H = H F_X
    long rho = 0;
    BigInt tors_order = 1;
};

HomLattice hom_motives(const Motive& x, const Motive& y);
// |det| of (g, f) -> trace(f g) on Hom(Y, X) x Hom(X, Y); 1 when empty.
BigRational trace_discriminant(const Motive& x, const Motive& y);

struct PrimeReport {
    BigInt prime;
    FinGenAbGroup ext0, ext1, ext2;
    ZValue z_f;
    BigRational local_rhs; // |q^chi N*| at this prime
    bool local_equal = false;
    bool certified = true;
};

struct GlobalExtReport {
    HomLattice hom;
    BigInt ext1_order = 1;
    BigInt ext2_cotors_order = 1;
    BigRational disc = 1;
    BigRational chi;      // s(X_p) r(Y_p)
    BigRational chi_alt;  // r(X_p) s(Y_p)
    BigInt q_chi = 1;     // q^chi
    long rho_zeta = 0;
    BigRational zeta_leading; // prod_{a_i != b_j} (1 - b_j / a_i)
    std::vector<PrimeReport> primes;
    bool support_ok = true;
};

GlobalExtReport global_ext_orders(const Motive& x, const Motive& y);

struct GcaReport {
    GlobalExtReport ext;
    BigRational lhs, rhs;
    BigInt hom_yx_tors = 1;
    bool duality = false;
    bool equal = false;
    // Sum of ord_q(a_i) over pairs with a_i = b_j.  Observed: lhs = rhs * p^e.
    BigRational coincident_slope;
    bool equal_up_to_coincident = false;
};

GcaReport verify_gca(const Motive& x, const Motive& y);

struct WeilExtReport {
    long rank[3] = {0, 0, 0};
    BigInt tors[3] = {1, 1, 1};
    ZValue z_f;
    bool lemma_ok = false; // finitely generated, Ext^2 torsion, Ext^3 = 0
    GlobalExtReport ext;
};

WeilExtReport weil_ext(const Motive& x, const Motive& y);

struct GciReport {
    WeilExtReport weil;
    BigRational zeta_side; // |q^chi * leading|
    BigRational ext_side;  // z(f) [Ext^2_0]
    bool equal = false;    // zeta_side * ext_side == 1
};

GciReport verify_gci(const Motive& x, const Motive& y);

} // namespace frobext

#pragma once

/**
 * @file zeta.hpp
 * Small smooth projective varieties over F_q (projective spaces, elliptic
 * curves, binary products), point counts, zeta functions, Hodge numbers and
 * Weil motivic cohomology.
 *
 * Frobenius polynomials use the reversed convention P_j(t) = prod (1 - alpha t)
 * with ascending coefficients.
 */

#include <memory>
#include <optional>
#include <vector>

#include "frobext/motive.hpp"

namespace frobext {

// F_{p^k} on indices 0..p^k-1 (base-p digits = coefficients in 1, x, ...),
// modulus the Witt ring's default modulus reduced mod p.
class FiniteField {
public:
    FiniteField(const BigInt& p, long k);

    long p() const { return p_; }
    long degree() const { return k_; }
    long size() const { return q_; }

    long add(long u, long v) const;
    long neg(long u) const;
    long sub(long u, long v) const { return add(u, neg(v)); }
    long mul(long u, long v) const;
    long from_int(long n) const;
    // sum c_i x^i with c_i integers, x the generator of F_{p^k} over F_p.
    long from_digits(const std::vector<BigInt>& c) const;
    // Image of the generator of F_{p^d}, d | k, under a fixed embedding.
    long embed_generator(long d) const;

private:
    std::vector<long> slow_mul(const std::vector<long>& u, const std::vector<long>& v) const;
    std::vector<long> digits(long u) const;
    long index(const std::vector<long>& d) const;

    long p_, k_, q_;
    std::vector<long> h_; // monic modulus mod p, ascending
    std::vector<long> log_, exp_;
};

struct VarietyDescriptor {
    enum class Kind { ProjectiveSpace, EllipticCurve, Product };

    Kind kind = Kind::ProjectiveSpace;
    BigInt q;
    long n = 0; // projective space dimension
    // Weierstrass a1, a2, a3, a4, a6; each entry holds coordinates over F_p.
    std::vector<std::vector<BigInt>> coefficients;
    std::shared_ptr<const VarietyDescriptor> left, right;

    static VarietyDescriptor projective_space(const BigInt& q, long n);
    // Two entries: y^2 = x^3 + A x + B (in characteristic 2: y^2 + y = x^3 + A x + B).
    // Five entries: the general Weierstrass form.
    static VarietyDescriptor elliptic_curve(const BigInt& q, std::vector<std::vector<BigInt>> coefficients);
    static VarietyDescriptor product(const VarietyDescriptor& a, const VarietyDescriptor& b);

    long dimension() const;
    bool contains_elliptic() const;
    // Weierstrass a1..a6 after the two-entry convention is expanded.
    std::vector<std::vector<BigInt>> weierstrass() const;
};

using HodgeTable = std::vector<std::vector<long>>; // h[i][j] = dim H^j(X, Omega^i)

HodgeTable hodge_numbers(const VarietyDescriptor& v);

constexpr long default_count_bound = 4096;

// Points over F_{q^n}.  Curves are enumerated; throws InputError when the
// curve is singular or q^n exceeds the bound.
BigInt point_count(const VarietyDescriptor& v, long n = 1, long bound = default_count_bound);
BigInt elliptic_trace(const VarietyDescriptor& e, long bound = default_count_bound);

// P_0 .. P_{2d}.
std::vector<IntPolynomial> frobenius_data(const VarietyDescriptor& v, long bound = default_count_bound);
// Reversed polynomial with roots alpha_i beta_j.
IntPolynomial composed_product(const IntPolynomial& a, const IntPolynomial& b);

struct ZetaFunction {
    BigInt q;
    std::vector<std::pair<IntPolynomial, int>> factors; // Z = prod P^e
};

ZetaFunction zeta_function(const VarietyDescriptor& v, long bound = default_count_bound);
// |V(F_{q^n})| from the factors.
BigInt count_from_zeta(const ZetaFunction& z, long n);

struct SpecialValue {
    long rho = 0;
    BigRational leading; // zeta(s) ~ leading (1 - q^{r-s})^rho
};

SpecialValue zeta_special_value(const ZetaFunction& z, long r);
SpecialValue zeta_special_value(const VarietyDescriptor& v, long r, long bound = default_count_bound);

long chi_O(const VarietyDescriptor& v, long r);

// h^k V for k = 0 .. 2 dim V as motives; empty where h^k V = 0.
std::vector<std::optional<Motive>> cohomology_pieces(const VarietyDescriptor& v, long bound = default_count_bound);

struct MotivicCohomologyReport {
    std::vector<long> ranks;           // r_j
    std::vector<BigInt> torsion;       // torsion order of H^j_mot
    std::vector<BigInt> complex_orders; // cohomology of (H^*_mot, f)
    BigRational chi_times;
    long rho = 0;
    long chi_O = 0;
    long euler = 0; // sum (-1)^j r_j
    bool finite = true;
    std::vector<WeilExtReport> pieces;
};

MotivicCohomologyReport motivic_cohomology(const VarietyDescriptor& v, long r, long bound = default_count_bound);

struct GcnReport {
    MotivicCohomologyReport mot;
    SpecialValue zeta;
    BigRational rhs; // chi_times q^chi_O
    bool part_a = false, part_b = false, part_c = false, part_d = false;
    bool equal = false;
};

GcnReport verify_gcn(const VarietyDescriptor& v, long r, long bound = default_count_bound);

} // namespace frobext

#pragma once

/**
 * @file witt.hpp
 * W(F_q) modelled as Z_p[x]/(h) with h monic of degree a and irreducible
 * mod p, its Frobenius lift sigma, and the skew ring W[F, sigma].
 *
 * Elements are integer coefficient vectors in the basis 1, x, ..., x^{a-1}.
 * When sigma(x) is an integer polynomial that is an exact root of h (always
 * the case for a <= 2) the ring is exact and no reduction mod p^K happens.
 */

#include <memory>
#include <optional>
#include <vector>

#include "frobext/exact_arith.hpp"

namespace frobext {

// Starting precision K for new rings: FROBEXT_PRECISION if set, else 20.
long default_precision();
// Throws InputError when k < 4.
void set_default_precision(long k);

class WittRing {
public:
    using Elt = std::vector<BigInt>;

    // Throws InputError when h is not monic of degree a or is reducible mod p.
    static std::shared_ptr<const WittRing> build(const BigInt& p, long a, long precision, const IntPolynomial& h);
    // precision 0: default_precision().
    static std::shared_ptr<const WittRing> standard(const BigInt& p, long a, long precision = 0);
    // First irreducible monic modulus in a fixed small-coefficient search order.
    static IntPolynomial default_modulus(const BigInt& p, long a);
    static bool irreducible_mod_p(const IntPolynomial& h, const BigInt& p);

    const BigInt& p() const { return p_; }
    long a() const { return a_; }
    long precision() const { return k_; }
    const BigInt& q() const { return q_; }
    const IntPolynomial& modulus() const { return h_; }
    // sigma(x) in the basis 1, x, ...
    const Elt& sigma_image() const { return sigma_x_; }
    bool exact() const { return exact_; }

    Elt zero() const { return Elt(static_cast<std::size_t>(a_), BigInt(0)); }
    Elt one() const { return from_int(1); }
    Elt from_int(const BigInt& n) const;
    Elt gen() const;

    Elt add(const Elt& u, const Elt& v) const;
    Elt sub(const Elt& u, const Elt& v) const;
    Elt neg(const Elt& u) const;
    Elt mul(const Elt& u, const Elt& v) const;
    Elt scale(const BigInt& c, const Elt& u) const;
    Elt sigma(const Elt& u) const;
    Elt sigma_pow(const Elt& u, long k) const;
    Elt pow(const Elt& u, const BigInt& e) const;

    bool is_zero(const Elt& u) const;
    // Lies in Z_p (fixed by sigma).
    bool is_fixed(const Elt& u) const;
    // p-adic valuation; nullopt for zero.
    std::optional<long> valuation(const Elt& u) const;
    Elt div_p_power(const Elt& u, long e) const;
    // Symmetric residues mod m.
    Elt reduce(const Elt& u, const BigInt& m) const;
    BigInt trace(const Elt& u) const;

    // Integer matrices, columns indexed by the basis x^m.
    IntMatrix mult_matrix(const Elt& u) const;
    IntMatrix sigma_matrix() const;

    // An element with unit trace (1 when p does not divide a).
    Elt unit_trace_element() const;

private:
    WittRing() = default;
    Elt reduce_poly(std::vector<BigInt> c) const;
    Elt normalize(Elt u) const;

    BigInt p_, q_, pk_;
    long a_ = 1, k_ = 20;
    IntPolynomial h_;
    Elt sigma_x_;
    std::vector<Elt> sigma_powers_; // sigma(x^m)
    bool exact_ = false;
};

using WittRingPtr = std::shared_ptr<const WittRing>;

/// Value type over a Witt ring, usable with the generic Berkowitz routine.
class WittValue {
public:
    WittValue() = default;
    WittValue(WittRingPtr ring, WittRing::Elt c) : ring_(std::move(ring)), c_(std::move(c)) {}
    static WittValue from_int(const WittRingPtr& ring, const BigInt& n) { return {ring, ring->from_int(n)}; }

    const WittRingPtr& ring() const { return ring_; }
    const WittRing::Elt& coeffs() const { return c_; }
    WittValue sigma() const { return {ring_, ring_->sigma(c_)}; }
    bool is_zero() const { return ring_->is_zero(c_); }

    friend WittValue operator+(const WittValue& u, const WittValue& v) { return {u.ring_, u.ring_->add(u.c_, v.c_)}; }
    friend WittValue operator-(const WittValue& u, const WittValue& v) { return {u.ring_, u.ring_->sub(u.c_, v.c_)}; }
    friend WittValue operator*(const WittValue& u, const WittValue& v) { return {u.ring_, u.ring_->mul(u.c_, v.c_)}; }
    friend bool operator==(const WittValue& u, const WittValue& v) { return u.c_ == v.c_; }
    friend bool operator!=(const WittValue& u, const WittValue& v) { return !(u == v); }

private:
    WittRingPtr ring_;
    WittRing::Elt c_;
};

/// Element sum c_i F^i of W[F, sigma].
class SkewPoly {
public:
    SkewPoly(WittRingPtr ring, std::vector<WittRing::Elt> coeffs);
    static SkewPoly frobenius(const WittRingPtr& ring);
    static SkewPoly constant(const WittRingPtr& ring, const WittRing::Elt& c);

    const std::vector<WittRing::Elt>& coeffs() const { return c_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    friend SkewPoly operator+(const SkewPoly& f, const SkewPoly& g);
    friend SkewPoly operator-(const SkewPoly& f, const SkewPoly& g);
    // Uses F c = sigma(c) F.
    friend SkewPoly operator*(const SkewPoly& f, const SkewPoly& g);
    friend bool operator==(const SkewPoly& f, const SkewPoly& g) { return f.c_ == g.c_; }

private:
    void trim();
    WittRingPtr ring_;
    std::vector<WittRing::Elt> c_;
};

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g);

} // namespace frobext

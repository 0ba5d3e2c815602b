#pragma once

/**
 * @file lattice.hpp
 * Finitely generated abelian groups presented as subquotients L/S of Z^n,
 * and the maps between them.
 */

#include <optional>
#include <string>
#include <vector>

#include "frobext/exact_arith.hpp"

namespace frobext {

/// Z^r + Z/d_1 + ... + Z/d_k with 1 < d_1 | d_2 | ... | d_k.
struct FinGenAbGroup {
    long free_rank = 0;
    std::vector<BigInt> torsion;

    // Normalizes arbitrary cyclic orders (0 means a copy of Z, 1 is dropped).
    static FinGenAbGroup from_cyclic(const std::vector<BigInt>& orders);

    bool is_finite() const { return free_rank == 0; }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    // Order of a finite group, or of the torsion subgroup.
    BigInt order() const;
    BigInt torsion_order() const;
    FinGenAbGroup l_primary(const BigInt& l) const;
    std::string to_string() const;

    friend bool operator==(const FinGenAbGroup& a, const FinGenAbGroup& b)
    {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

// Solution of A x = b over Z, if any.
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& a, const std::vector<BigInt>& b);
// Basis (as columns) of the lattice spanned by the columns of g.
IntMatrix lattice_basis(const IntMatrix& g);

class SubQuotient {
public:
    SubQuotient() = default;
    // L = span of the columns of lattice_gens, S = span of the columns of
    // sub_gens.  Both live in Z^n; S must lie in L.
    SubQuotient(const IntMatrix& lattice_gens, const IntMatrix& sub_gens);
    // Z^n modulo the column span of rel.
    static SubQuotient quotient(const IntMatrix& rel);
    // Z/m_1 + ... with m_i = 0 meaning Z.
    static SubQuotient cyclic(const std::vector<BigInt>& moduli);

    std::size_t ambient_dim() const { return n_; }
    const FinGenAbGroup& group() const { return group_; }
    // Number of canonical generators: torsion first, then free.
    std::size_t num_gens() const { return moduli_.size(); }
    // Order of each canonical generator; 0 for free ones.
    const std::vector<BigInt>& moduli() const { return moduli_; }
    const IntMatrix& basis() const { return basis_; }
    // Basis of S, ambient coordinates.
    const IntMatrix& sub_basis() const { return sub_basis_; }

    bool in_lattice(const std::vector<BigInt>& v) const;
    // Canonical coordinates of the class of v; torsion entries reduced into [0, d).
    std::vector<BigInt> coords(const std::vector<BigInt>& v) const;
    bool is_zero_class(const std::vector<BigInt>& v) const;
    // An element of L representing the given canonical coordinates.
    std::vector<BigInt> lift(const std::vector<BigInt>& y) const;
    // Canonical presentation Z^g / diag(moduli).
    IntMatrix canonical_relations() const;

private:
    std::optional<std::vector<BigInt>> solve_basis(const std::vector<BigInt>& v) const;

    std::size_t n_ = 0;
    IntMatrix basis_;      // n x k, full column rank
    SNFResult basis_snf_;  // of basis_
    IntMatrix xform_;      // k x k, U from the SNF of the relation matrix
    IntMatrix xform_inv_;
    IntMatrix sub_basis_;
    std::vector<long> slot_; // canonical index -> row of xform_
    std::vector<BigInt> moduli_;
    FinGenAbGroup group_;
};

// Canonical matrix of the map src -> dst induced by an ambient integer
// matrix f (dst.ambient_dim x src.ambient_dim).  Throws InputError when f
// does not respect the lattices.
IntMatrix induced_matrix(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& f);
// Entries reduced by the target moduli.
IntMatrix reduce_rows(const IntMatrix& h, const SubQuotient& dst);

// For h in canonical coordinates (dst.num_gens x src.num_gens): kernel as a
// subquotient of Z^{src.num_gens}, cokernel as a subquotient of Z^{dst.num_gens}.
SubQuotient map_kernel(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h);
SubQuotient map_cokernel(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h);

} // namespace frobext

#pragma once

/**
 * @file random_cases.hpp
 * Deterministic random instances.  Every generator is a pure function of
 * (seed, index), so sharded runs reproduce serial ones case by case.
 */

#include <cstdint>
#include <random>

#include "frobext/serialize.hpp"
#include "frobext/zgamma.hpp"

namespace frobext {

using CaseRng = std::mt19937_64;

CaseRng case_rng(std::uint64_t seed, std::uint64_t index);

// Matrix from src coordinates to dst coordinates (moduli 0 = free) that is
// well defined on Z^n / diag(moduli).
IntMatrix random_compatible_map(CaseRng& rng, const std::vector<BigInt>& src, const std::vector<BigInt>& dst,
                                long bound = 4);

struct ZMapCase {
    FinGenAbGroup m, n;
    IntMatrix f; // canonical coordinates, torsion first
};

// same_rank: equal free ranks, as the determinant formula needs.
ZMapCase random_z_map(std::uint64_t seed, std::uint64_t index, bool same_rank = false);

struct ZComposeCase {
    SubQuotient a, b, c;
    IntMatrix f, g;
};

ZComposeCase random_z_compose(std::uint64_t seed, std::uint64_t index);

GammaModule random_gamma_module(std::uint64_t seed, std::uint64_t index);

// Free rank <= max_rank, up to max_torsion cyclic l-power factors.
GaloisModule random_galois_module(CaseRng& rng, const BigInt& l, const BigInt& q, long max_rank = 4,
                                  long max_torsion = 2);

// An admissible pair (no multiple common root).  l = 0 cycles through 2, 3, 5, 7.
LocalCase random_local_l(std::uint64_t seed, std::uint64_t index, const BigInt& l = 0);

// Generator cases at p, cycling with the index through (k, finite),
// (finite F-invertible, any), coprime special modules and special M = M.
// p = 0 cycles 3, 5; a = 0 cycles 1, 2.
LocalCase random_local_p(std::uint64_t seed, std::uint64_t index, const BigInt& p = 0, long a = 0);

struct DualityCase {
    GaloisModule m; // torsion
    GaloisModule n; // torsion-free
};

DualityCase random_duality_case(std::uint64_t seed, std::uint64_t index);

// Nonsingular short or general Weierstrass curve over a prime p <= 13.
VarietyDescriptor random_elliptic_curve(std::uint64_t seed, std::uint64_t index);

} // namespace frobext

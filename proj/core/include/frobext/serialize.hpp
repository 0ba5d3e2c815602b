#pragma once

/**
 * @file serialize.hpp
 * JSON text for modules, crystals, motives, varieties and local test cases.
 *
 * Integers are written as JSON numbers when they fit in 64 bits and as
 * decimal strings otherwise; both are accepted on input.  Polynomials are
 * ascending coefficient lists, matrices are lists of rows, Witt elements are
 * coordinate lists in the ring's basis.  Output is canonical (sorted keys,
 * no whitespace), so parse -> serialize -> parse is the identity.
 *
 * Every parse error raises InputError.
 */

#include <optional>
#include <string>

#include "frobext/crystal.hpp"
#include "frobext/galois_rep.hpp"
#include "frobext/motive.hpp"
#include "frobext/zeta.hpp"

namespace frobext {

std::string to_json(const GaloisModule& m);
GaloisModule galois_module_from_json(const std::string& text);

std::string to_json(const Crystal& c);
Crystal crystal_from_json(const std::string& text);

// Motive input also accepts "charpoly" without "frobenius" (companion matrix)
// and a crystal given only by "slopes".
std::string to_json(const Motive& m);
Motive motive_from_json(const std::string& text);

struct VarietyCase {
    VarietyDescriptor variety;
    long r = 0;
};

std::string to_json(const VarietyCase& v);
VarietyCase variety_from_json(const std::string& text);

struct LocalCase {
    enum class Side { L, P };
    Side side = Side::L;
    std::optional<GaloisModule> ml, nl;
    std::optional<Crystal> mp, np;
};

std::string to_json(const LocalCase& c);
LocalCase local_case_from_json(const std::string& text);

} // namespace frobext

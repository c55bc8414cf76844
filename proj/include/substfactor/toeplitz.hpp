#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "substfactor/core.hpp"
#include "substfactor/linalg.hpp"

namespace substfactor {

/// The arithmetic progression modulus * Z + residue, 0 <= residue < modulus.
struct Progression {
    std::int64_t modulus = 1;
    std::int64_t residue = 0;

    bool contains(std::int64_t x) const;
    friend auto operator<=>(const Progression&, const Progression&) = default;
};

/// Positions of one letter in a fixed point: progressions, plus the
/// exceptional points and the positions left unresolved inside the window.
struct CosetSystem {
    Letter letter = 0;
    std::vector<Progression> progressions;  ///< sorted by (modulus, residue)
    std::set<std::int64_t> exceptional;
    std::set<std::int64_t> unresolved;

    bool contains(std::int64_t x) const;
};

struct Coordinatization {
    std::vector<CosetSystem> systems;  ///< indexed by letter
    int depth = 0;
    std::int64_t window = 0;
};

inline constexpr int default_toeplitz_depth = 8;
inline constexpr std::int64_t default_toeplitz_window = 100000;

/// Toeplitz coordinatization of the fixed point grown from `seed` on
/// [-window, window]. Progressions come from constant columns of the k-fold
/// rule for k up to period * depth, each kept at its least modulus.
Coordinatization coordinatize(const Substitution& sub, const Seed& seed, int depth = default_toeplitz_depth,
                              std::int64_t window = default_toeplitz_window);

/// Sum of 1/modulus over all progressions. Throws std::invalid_argument if
/// two progressions overlap.
BigRational resolved_density(const Coordinatization& c);

/// Positions in [-n, n] where the fixed points grown from the two seeds differ.
std::set<std::int64_t> second_fixed_point_delta(const Substitution& sub, const Seed& a, const Seed& b,
                                                std::int64_t n);

/// One `m*Z + r` line per progression, then `exceptional: ...`.
std::string format_coset_system(const CosetSystem& cs);

}  // namespace substfactor

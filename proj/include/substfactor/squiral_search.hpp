#pragma once

#include <optional>
#include <vector>

#include "substfactor/core.hpp"

namespace substfactor {

struct SquiralCandidate {
    Substitution rule;
    Point anchor{};  ///< block-map anchor under which the fmax rule is induced
    std::size_t orbit = 0;  ///< index of its orbit under the square's symmetry group
};

struct SquiralSearchReport {
    std::size_t examined = 0;
    std::size_t primitive = 0;
    std::size_t bijective = 0;
    std::size_t flip_equivariant = 0;
    std::size_t fourteen_patterns = 0;
    std::size_t inducing_fmax = 0;
    std::vector<SquiralCandidate> survivors;  ///< image of 1 in lexicographic order, -1 before 1
    std::size_t orbits = 0;
};

/// Searches all 3x3 images of the letter 1 over {1, -1}, the image of -1
/// being its color flip, for rules with the squiral's four properties.
SquiralSearchReport squiral_search();

/// The rule on {1, -1} from a 9-bit mask, bit 8 - (3 r + c) set meaning the
/// cell (r, c) of the image of 1 is -1.
Substitution squiral_candidate(unsigned mask);

}  // namespace substfactor

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "substfactor/core.hpp"
#include "substfactor/linalg.hpp"

namespace substfactor {

/// Collared Anderson-Putnam complex of a constant-shape substitution.
///
/// Cells of degree k are labelled by the legal pattern forming their collar.
/// With collar radius r a 2D face is a (2r+1)x(2r+1) pattern centred on its
/// tile, a horizontal edge (between two vertically adjacent tiles) is a
/// 2r x (2r+1) pattern, a vertical edge is (2r+1) x 2r and a vertex is 2r x 2r.
/// In 1D, edges are words of length 2r+1 and vertices words of length 2r.
/// Faces are oriented counterclockwise, horizontal edges rightward and vertical
/// edges upward. `cells[1]` lists the horizontal edges before the vertical ones.
struct CWApproximant {
    int d = 0;
    int radius = 1;
    std::vector<std::vector<Pattern>> cells;
    std::size_t horizontal_edges = 0;  ///< 2D only
    /// boundary[k]: cells[k-1].size() x cells[k].size(); boundary[0] is 0 x n0.
    std::vector<BigMatrix> boundary;

    std::size_t count(int k) const { return cells.at(static_cast<std::size_t>(k)).size(); }
    /// Index of a collar in cells[k]; throws std::out_of_range.
    std::size_t index(int k, const Pattern& p) const;
};

/// Chain matrices `chain[k]` (image cell by source cell) and the cochain
/// action `cochain[k]` = transpose.
struct CochainAction {
    std::vector<BigMatrix> chain;
    std::vector<BigMatrix> cochain;
};

CWApproximant build_approximant(const Substitution& sub, int radius = 1);

/// Throws std::runtime_error naming a cell whose substituted collar is not a
/// cell of the complex.
CochainAction substitution_action(const Substitution& sub, const CWApproximant& cw);

struct ComplexCheck {
    bool boundary_squared_zero = true;
    bool chain_map = true;
    std::string witness;  ///< first failing degree and matrix entry
    bool ok() const { return boundary_squared_zero && chain_map; }
};

ComplexCheck check_complex(const CWApproximant& cw, const CochainAction* action = nullptr);

/// Z[1/n]^m summands, plain Z^free_rank and cyclic torsion.
struct AbelianInvariants {
    std::vector<std::pair<BigInt, int>> localized;  ///< n descending
    int free_rank = 0;
    std::vector<BigInt> torsion;                    ///< ascending, each >= 2
    std::vector<std::string> notes;                 ///< blocks reported without simplification

    void normalize();
    friend bool operator==(const AbelianInvariants& a, const AbelianInvariants& b) {
        return a.localized == b.localized && a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

/// "Z[1/9] + Z[1/3]^2 + Z^6 + Z_2"; the trivial group prints as "0".
std::string format_invariants(const AbelianInvariants& g);
/// Inverse of format_invariants; throws std::invalid_argument.
AbelianInvariants parse_invariants(std::string_view text);

/// Finitely generated H^k = Z^free + sum Z/torsion_orders with an endomorphism
/// given blockwise. The free part of the map is on H/torsion; torsion entries
/// are reduced modulo the order of the target summand.
struct CohomologyGroup {
    int degree = 0;
    int free_rank = 0;
    std::vector<BigInt> torsion_orders;
    BigMatrix free_action;
    BigMatrix torsion_action;

    AbelianInvariants invariants() const;
};

/// H^k of the approximant for k = 0..d, with the action when supplied.
std::vector<CohomologyGroup> cohomology_groups(const CWApproximant& cw, const CochainAction* action = nullptr);
std::vector<AbelianInvariants> integral_cohomology(const CWApproximant& cw);

/// Invariants of colim(G -> G -> ...) under the group's endomorphism.
AbelianInvariants direct_limit(const CohomologyGroup& g);
/// Free group Z^n with endomorphism f.
AbelianInvariants direct_limit(const BigMatrix& f);

struct HullCohomology {
    CWApproximant cw;
    CochainAction action;
    std::vector<CohomologyGroup> approximant;
    std::vector<AbelianInvariants> groups;  ///< H^0..H^d of the hull
};

/// Builds the complex at radius 1, enlarging the collar up to twice if the
/// action is not well defined or fails the chain-map check.
HullCohomology cohomology_of_hull(const Substitution& sub);

/// Number of tilings fixed by the m-th power of the substitution, for
/// m = 1..max_power, counted directly. A fixed tiling has the origin at one of
/// (L^m - 1)^d positions per lattice cell; each position is checked against
/// single tiles, legal edge pairs or legal 2x2 blocks as appropriate.
std::vector<BigInt> periodic_point_counts(const Substitution& sub, int max_power);

/// d-torus with one cell of each type and zero boundaries.
CWApproximant torus_approximant(int d);
/// Multiplication by q along each axis of the torus.
CochainAction torus_action(int d, int q);

/// Dimensions header followed by one row of integers per line.
void write_matrix(std::ostream& out, const BigMatrix& m);
BigMatrix read_matrix(std::istream& in);

}  // namespace substfactor

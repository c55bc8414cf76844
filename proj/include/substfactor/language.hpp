#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "substfactor/core.hpp"

namespace substfactor {

/// Per-axis extent (rows x cols). 1D shapes have rows == 1.
struct Shape {
    int rows = 1;
    int cols = 1;
    friend auto operator<=>(const Shape&, const Shape&) = default;
};

struct PatternSet {
    Shape shape;
    std::set<Pattern> members;

    std::size_t size() const { return members.size(); }
    bool contains(const Pattern& p) const { return members.count(p) > 0; }
};

/// All shape-sized patterns of the subshift, computed by substitution closure.
/// Throws std::invalid_argument for non-primitive input.
PatternSet legal_patterns(const Substitution& sub, Shape shape);

/// One substitution-closure round: the windows of the images of every
/// parent-sized sub-block of the members, merged with the members.
PatternSet closure_round(const Substitution& sub, const PatternSet& current);

/// All shape-sized windows of `p`.
std::set<Pattern> windows(const Pattern& p, Shape shape);

enum class ColumnClass { coincidence, bijective, neither };

struct ColumnStructure {
    /// maps[k-1][q][l] = letter at position q (row-major) of the k-fold image of l.
    std::vector<std::vector<std::vector<Letter>>> maps;
    ColumnClass classification = ColumnClass::neither;
    int coincidence_level = 0;  ///< 0 when no coincidence up to the probed level
    Point coincidence_position{};
    Letter coincidence_letter = 0;
};

ColumnStructure column_structure(const Substitution& sub, int max_level);

bool pairwise_distinct_everywhere(const Substitution& sub, int n);

struct FrameReport {
    Pattern top, bottom, left, right;  ///< border rows / columns of the supertile
    Pattern interior;                  ///< supertile minus its outer ring
    /// Block left after removing one border row and one border column,
    /// indexed by the removed corner (0 top-left, 1 top-right, 2 bottom-left,
    /// 3 bottom-right).
    std::vector<Pattern> corner_complements;
    std::uint64_t interior_fingerprint = 0;
};

FrameReport supertile_frame(const Substitution& sub, Letter letter, int n);

std::uint64_t fingerprint(const Pattern& p);

/// Direction of an arm leaving the central vertex of a 2D fixed point.
enum class ArmDirection { left, right, up, down };

struct Arm {
    ArmDirection direction;
    int line = 0;                  ///< row (left/right) or column (up/down): -1 or 0
    std::optional<Letter> label;   ///< eventually constant value, or unresolved
};

struct CornerConfiguration {
    Seed seed;
    std::vector<Arm> arms;         ///< the eight half-lines bordering the axes
    std::optional<Point> center;   ///< seed cell where a constant row meets a constant column
    std::optional<Letter> center_letter;
    std::optional<Letter> left, right, up, down;  ///< arm labels through the center
};

struct CornerReport {
    std::vector<CornerConfiguration> quartets;
    std::set<Letter> horizontal_lines;  ///< labels of constant rows separating supertile pairs
    std::set<Letter> vertical_lines;    ///< labels of constant columns separating supertile pairs
};

inline constexpr int default_arm_probe_level = 6;

CornerReport corner_configurations(const Substitution& sub, int probe_level = default_arm_probe_level);

}  // namespace substfactor

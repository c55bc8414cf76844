#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "substfactor/core.hpp"
#include "substfactor/language.hpp"

namespace substfactor {

/// Sliding block code: the window anchored with its `anchor` cell on an
/// output position is looked up in `table`.
struct SlidingBlockMap {
    Alphabet source;
    Alphabet target;
    Shape window{1, 1};
    Point anchor{};  ///< window cell (row, col) sitting at the output position
    std::map<Pattern, Letter> table;
    int dim = 1;
};

/// Output extent is input extent minus window extent plus one per axis.
/// Throws std::invalid_argument when a window is missing from the table.
Pattern apply_block_map(const SlidingBlockMap& map, const Pattern& p);

/// Window-one map sending each source letter to `letter_map[letter]`.
SlidingBlockMap letter_projection(const Substitution& src, const std::vector<Letter>& letter_map,
                                  const Alphabet& target);

/// Legal windows of `src` the table does not cover, plus table entries that
/// are not legal windows.
struct BlockMapCheck {
    std::vector<Pattern> missing;
    std::vector<Pattern> illegal;
    bool ok() const { return missing.empty() && illegal.empty(); }
};
BlockMapCheck check_block_map(const Substitution& src, const SlidingBlockMap& map);

/// Result of deriving a substitution on a factor or quotient. When the
/// derivation is inconsistent, `witness` holds two source windows (or two
/// source letter images) that collide.
struct Derived {
    std::optional<Substitution> substitution;
    std::vector<Pattern> witness;
    std::vector<Letter> witness_letters;

    explicit operator bool() const { return substitution.has_value(); }
    std::string describe_witness(const Alphabet& source) const;
};

Derived induced_substitution(const Substitution& src, const SlidingBlockMap& map);

struct SymbolIdentification {
    std::vector<std::vector<Letter>> classes;  ///< partition of the source alphabet
};

/// Parses "e=f=g,a=b"; letters not mentioned form singleton classes. Classes
/// are ordered by their least letter.
SymbolIdentification parse_identification(const Alphabet& alphabet, std::string_view spec);

/// Quotient substitution; the class of letter x is named after its least
/// member.
Derived identify_symbols(const Substitution& src, const SymbolIdentification& ident);

struct InverseMap {
    SlidingBlockMap map;
    int radius = 0;
};

/// Smallest-radius sliding block map on the image subshift recovering the
/// source letter at the anchor, or nullopt when none exists up to
/// `max_radius`.
std::optional<InverseMap> invert_block_map(const Substitution& src, const SlidingBlockMap& map, int max_radius);

/// Letter bijection b = perm[a] carrying `a` onto `b`, if one exists.
std::optional<std::vector<Letter>> renaming(const Substitution& a, const Substitution& b);
bool equivalent_up_to_renaming(const Substitution& a, const Substitution& b);

enum class SearchStatus { found, not_found, exhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::not_found;
    std::optional<SlidingBlockMap> map;  ///< targets named by the letters of `tgt`
    bool squared = false;                ///< matched after squaring one side
    std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t default_search_cap = 2'000'000;

/// Exhaustive search, in canonical order, for a block map on `window`
/// inducing `tgt` up to letter renaming.
SearchResult search_block_map(const Substitution& src, const Substitution& tgt, Shape window,
                              std::uint64_t cap = default_search_cap);

/// For every image pattern of `image_shape`, the number of legal source
/// patterns of the matching size that map onto it.
std::map<Pattern, std::size_t> preimage_counts(const Substitution& src, const SlidingBlockMap& map,
                                               Shape image_shape);

// Named maps from the workbench catalog.
SlidingBlockMap chi_map();                 ///< rs4 -> toeplitzT, window 2
SlidingBlockMap psi_map();                 ///< tm -> pd, psi(w)(i) = -w(i) w(i+1)
SlidingBlockMap phi_map();                 ///< rs4 -> binary Rudin-Shapiro
SlidingBlockMap bar_removal_map();         ///< universal -> rs4
SlidingBlockMap thue_morse_projection();   ///< universal -> tm
SlidingBlockMap squiral_block_map();       ///< squiral -> fmax, 2x2 windows
SlidingBlockMap table_factor_map(int which);  ///< table -> tablefac1 / tablefac2

/// The 24 legal 2x2 patterns of the table substitution in display order.
const std::vector<Pattern>& table_display_patterns();

/// `window: RxC`, optional `anchor: r,c` and `target: ...` lines, then
/// `pattern -> letter` lines.
SlidingBlockMap parse_block_map(std::string_view text, const Substitution& src);
std::string format_block_map(const SlidingBlockMap& map);

}  // namespace substfactor

#include "substfactor/catalog.hpp"

#include <stdexcept>

#include "substfactor/factors.hpp"
#include "substfactor/text_format.hpp"

namespace substfactor {

namespace {

constexpr std::string_view fibonacci_text = R"(alphabet: a b
a -> ab
b -> a
)";

// Barred letters carry a combining macron.
constexpr std::string_view universal_text = "alphabet: a b c d ā b̄ c̄ d̄\n"
                                            "a -> ab̄\n"
                                            "b -> ad̄\n"
                                            "c -> cd̄\n"
                                            "d -> cb̄\n"
                                            "ā -> āb\n"
                                            "b̄ -> ād\n"
                                            "c̄ -> c̄d\n"
                                            "d̄ -> c̄b\n";

constexpr std::string_view rs4_text = R"(alphabet: a b c d
a -> ab
b -> ad
c -> cd
d -> cb
)";

constexpr std::string_view tm_text = R"(alphabet: 1 -1
1 -> 1 -1
-1 -> -1 1
)";

constexpr std::string_view pd_text = R"(alphabet: 1 -1
1 -> 1 -1
-1 -> 1 1
)";

constexpr std::string_view toeplitz_text = R"(alphabet: A B C D
A -> AC
B -> AD
C -> BD
D -> BC
)";

constexpr std::string_view squiral_text = R"(alphabet: 1 -1
1 -> -1 1 -1 / 1 1 1 / -1 1 -1
-1 -> 1 -1 1 / -1 -1 -1 / 1 -1 1
)";

constexpr std::string_view fmax_text = R"(alphabet: a b c d e f g
a -> g g a / d c g / a b g
b -> f f b / d c g / a b g
c -> f f c / d c e / a b e
d -> g g d / d c e / a b e
e -> g g e / d c e / a b e
f -> f f f / d c g / a b g
g -> g g g / d c g / a b g
)";

constexpr std::string_view table_text = R"(alphabet: 0 1 2 3
0 -> 1 0 / 3 0
1 -> 0 2 / 1 1
2 -> 2 1 / 2 3
3 -> 3 3 / 0 2
)";

constexpr std::string_view tablefac1_text = R"(alphabet: 0 1
0 -> 0 0 / 1 0
1 -> 0 1 / 1 0
)";

constexpr std::string_view tablefac2_text = R"(alphabet: 0 1 2
0 -> 2 1 / 1 2
1 -> 2 0 / 1 2
2 -> 2 2 / 1 2
)";

Substitution generalized_thue_morse(int k, int l, bool period_doubling) {
    if (k < 1 || l < 1) throw std::invalid_argument("gtm/gpd need k, l >= 1");
    const Letter a = 0, b = 1;
    std::vector<Letter> ia, ib;
    if (!period_doubling) {
        ia.insert(ia.end(), static_cast<std::size_t>(k), a);
        ia.insert(ia.end(), static_cast<std::size_t>(l), b);
        ib.insert(ib.end(), static_cast<std::size_t>(k), b);
        ib.insert(ib.end(), static_cast<std::size_t>(l), a);
    } else {
        // u = b^(k-1) a b^(l-1); a -> ub, b -> ua
        std::vector<Letter> u(static_cast<std::size_t>(k - 1), b);
        u.push_back(a);
        u.insert(u.end(), static_cast<std::size_t>(l - 1), b);
        ia = u;
        ia.push_back(b);
        ib = u;
        ib.push_back(a);
    }
    return Substitution(Alphabet({"a", "b"}), {Pattern::word(ia), Pattern::word(ib)});
}

}  // namespace

Substitution squiral() { return parse_substitution(squiral_text); }

Substitution catalog(std::string_view name, const CatalogParams& params) {
    if (name == "fibonacci") return parse_substitution(fibonacci_text);
    if (name == "universal") return parse_substitution(universal_text);
    if (name == "rs4") return parse_substitution(rs4_text);
    if (name == "tm") return parse_substitution(tm_text);
    if (name == "pd") return parse_substitution(pd_text);
    if (name == "toeplitzT") return parse_substitution(toeplitz_text);
    if (name == "squiral") return squiral();
    if (name == "fmax") return parse_substitution(fmax_text);
    if (name == "table") return parse_substitution(table_text);
    if (name == "tablefac1") return parse_substitution(tablefac1_text);
    if (name == "tablefac2") return parse_substitution(tablefac2_text);
    if (name == "gtm" || name == "gpd") {
        if (!params.k || !params.l) throw std::invalid_argument(std::string(name) + " needs parameters k and l");
        return generalized_thue_morse(*params.k, *params.l, name == "gpd");
    }
    if (name == "fmax_ident") {
        if (!params.partition) throw std::invalid_argument("fmax_ident needs a symbol partition");
        const Substitution fmax = parse_substitution(fmax_text);
        auto result = identify_symbols(fmax, parse_identification(fmax.alphabet(), *params.partition));
        if (!result.substitution)
            throw std::invalid_argument("inconsistent identification: " + result.describe_witness(fmax.alphabet()));
        return *result.substitution;
    }
    throw std::invalid_argument("unknown catalog name '" + std::string(name) + "'");
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"fibonacci", "universal", "rs4",       "tm",        "pd",
                                                   "gtm",       "gpd",       "toeplitzT", "squiral",   "fmax",
                                                   "table",     "tablefac1", "tablefac2", "fmax_ident"};
    return names;
}

const std::vector<std::string>& catalog_plain_names() {
    static const std::vector<std::string> names = {"fibonacci", "universal", "rs4",   "tm",        "pd",
                                                   "toeplitzT", "squiral",   "fmax",  "table",     "tablefac1",
                                                   "tablefac2"};
    return names;
}

}  // namespace substfactor

#include "substfactor/factors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "substfactor/catalog.hpp"
#include "substfactor/text_format.hpp"

namespace substfactor {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Patterns used as table keys carry no origin.
Pattern local(Pattern p) {
    p.set_origin({});
    return p;
}

Pattern with_dim(const Pattern& p, int dim) {
    if (p.dim() == dim) return p;
    return Pattern(dim, p.rows(), p.cols(), p.cells(), p.origin());
}

Shape shape_of(const Pattern& p) { return {p.rows(), p.cols()}; }

Pattern relabel(const Pattern& p, const std::vector<Letter>& map) {
    std::vector<Letter> cells(p.cells());
    for (auto& c : cells) c = map.at(c);
    return Pattern(p.dim(), p.rows(), p.cols(), std::move(cells), p.origin());
}

Alphabet anonymous_alphabet(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
}

std::vector<Point> anchors_of(Shape window) {
    std::vector<Point> out;
    for (int r = 0; r < window.rows; ++r)
        for (int c = 0; c < window.cols; ++c) out.push_back({r, c});
    return out;
}

}  // namespace

Pattern apply_block_map(const SlidingBlockMap& map, const Pattern& p) {
    const int wr = map.window.rows, wc = map.window.cols;
    const int rows = p.rows() - wr + 1, cols = p.cols() - wc + 1;
    if (rows <= 0 || cols <= 0) return Pattern(p.dim(), p.dim() == 1 ? 1 : 0, 0, {});
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const auto it = map.table.find(local(p.sub(r, c, wr, wc)));
            if (it == map.table.end())
                throw std::invalid_argument("window '" + to_string(map.source, p.sub(r, c, wr, wc)) +
                                            "' is not in the block map");
            out.push_back(it->second);
        }
    const Point origin{p.origin().row + map.anchor.row, p.origin().col + map.anchor.col};
    return Pattern(p.dim(), rows, cols, std::move(out), origin);
}

SlidingBlockMap letter_projection(const Substitution& src, const std::vector<Letter>& letter_map,
                                  const Alphabet& target) {
    if (letter_map.size() != src.size()) throw std::invalid_argument("letter map must cover the source alphabet");
    SlidingBlockMap map;
    map.source = src.alphabet();
    map.target = target;
    map.dim = src.dim();
    for (std::size_t l = 0; l < src.size(); ++l) {
        if (letter_map[l] >= target.size()) throw std::invalid_argument("letter map leaves the target alphabet");
        map.table.emplace(Pattern::single(src.dim(), static_cast<Letter>(l)), letter_map[l]);
    }
    return map;
}

BlockMapCheck check_block_map(const Substitution& src, const SlidingBlockMap& map) {
    BlockMapCheck check;
    const auto legal = legal_patterns(src, map.window);
    for (const auto& w : legal.members)
        if (!map.table.count(w)) check.missing.push_back(w);
    for (const auto& [w, t] : map.table)
        if (!legal.contains(w)) check.illegal.push_back(w);
    return check;
}

std::string Derived::describe_witness(const Alphabet& source) const {
    if (witness.size() < 2) return "no witness";
    std::string out;
    if (witness_letters.size() >= 2)
        out = "letters " + source.name(witness_letters[0]) + " and " + source.name(witness_letters[1]) +
              " are identified but their images differ: ";
    else
        out = "windows with the same target letter induce different images: ";
    return out + "[" + to_string(source, witness[0]) + "] vs [" + to_string(source, witness[1]) + "]";
}

Derived induced_substitution(const Substitution& src, const SlidingBlockMap& map) {
    if (!src.constant_shape()) throw std::invalid_argument("induced substitution needs a constant-shape source");
    const int lr = src.block_rows(), lc = src.block_cols();
    const int off_r = static_cast<int>(map.anchor.row) * (lr - 1);
    const int off_c = static_cast<int>(map.anchor.col) * (lc - 1);
    std::vector<std::optional<std::pair<Pattern, Pattern>>> images(map.target.size());
    Derived result;
    for (const auto& [window, t] : map.table) {
        const Pattern block = apply_block_map(map, apply(src, window)).sub(off_r, off_c, lr, lc);
        auto& slot = images.at(t);
        if (!slot) {
            slot.emplace(window, local(block));
        } else if (!(slot->second == block)) {
            result.witness = {slot->first, window};
            return result;
        }
    }
    std::vector<Pattern> out;
    for (std::size_t t = 0; t < images.size(); ++t) {
        if (!images[t])
            throw std::invalid_argument("target letter '" + map.target.name(static_cast<Letter>(t)) +
                                        "' is never produced by the block map");
        out.push_back(images[t]->second);
    }
    result.substitution = Substitution(map.target, std::move(out));
    return result;
}

SymbolIdentification parse_identification(const Alphabet& alphabet, std::string_view spec) {
    std::vector<int> cls(alphabet.size(), -1);
    std::vector<std::vector<Letter>> groups;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto comma = spec.find(',', start);
        if (comma == std::string_view::npos) comma = spec.size();
        const auto part = trim(spec.substr(start, comma - start));
        start = comma + 1;
        if (part.empty()) continue;
        std::vector<Letter> group;
        std::size_t s = 0;
        while (s <= part.size()) {
            auto eq = part.find('=', s);
            if (eq == std::string_view::npos) eq = part.size();
            const Letter l = alphabet.index(trim(part.substr(s, eq - s)));
            if (cls[l] != -1) throw std::invalid_argument("letter '" + alphabet.name(l) + "' appears twice");
            cls[l] = static_cast<int>(groups.size());
            group.push_back(l);
            s = eq + 1;
        }
        groups.push_back(std::move(group));
    }
    for (std::size_t l = 0; l < alphabet.size(); ++l)
        if (cls[l] == -1) groups.push_back({static_cast<Letter>(l)});
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());
    return {std::move(groups)};
}

Derived identify_symbols(const Substitution& src, const SymbolIdentification& ident) {
    std::vector<Letter> cls(src.size(), Letter(0xFFFF));
    std::vector<std::string> names;
    for (std::size_t k = 0; k < ident.classes.size(); ++k) {
        if (ident.classes[k].empty()) throw std::invalid_argument("empty identification class");
        for (Letter l : ident.classes[k]) {
            if (l >= src.size() || cls[l] != 0xFFFF) throw std::invalid_argument("identification is not a partition");
            cls[l] = static_cast<Letter>(k);
        }
        names.push_back(src.alphabet().name(*std::min_element(ident.classes[k].begin(), ident.classes[k].end())));
    }
    if (std::count(cls.begin(), cls.end(), Letter(0xFFFF)) > 0)
        throw std::invalid_argument("identification does not cover the alphabet");
    Derived result;
    std::vector<Pattern> out;
    for (const auto& group : ident.classes) {
        const Pattern first = relabel(src.image(group.front()), cls);
        for (Letter l : group) {
            const Pattern img = relabel(src.image(l), cls);
            if (!(img == first)) {
                result.witness = {src.image(group.front()), src.image(l)};
                result.witness_letters = {group.front(), l};
                return result;
            }
        }
        out.push_back(first);
    }
    result.substitution = Substitution(Alphabet(std::move(names)), std::move(out));
    return result;
}

std::optional<InverseMap> invert_block_map(const Substitution& src, const SlidingBlockMap& map, int max_radius) {
    const bool two_d = src.dim() == 2;
    for (int r = 0; r <= max_radius; ++r) {
        const Shape source{two_d ? 2 * r + map.window.rows : 1, 2 * r + map.window.cols};
        const Point at{two_d ? r + map.anchor.row : 0, r + map.anchor.col};
        InverseMap inv;
        inv.radius = r;
        inv.map.source = map.target;
        inv.map.target = map.source;
        inv.map.dim = src.dim();
        inv.map.window = {two_d ? 2 * r + 1 : 1, 2 * r + 1};
        inv.map.anchor = {two_d ? r : 0, r};
        bool ok = true;
        for (const auto& word : legal_patterns(src, source).members) {
            const Pattern img = local(apply_block_map(map, word));
            const Letter l = word.at(static_cast<int>(at.row), static_cast<int>(at.col));
            const auto [it, inserted] = inv.map.table.emplace(img, l);
            if (!inserted && it->second != l) {
                ok = false;
                break;
            }
        }
        if (ok) return inv;
    }
    return std::nullopt;
}

std::optional<std::vector<Letter>> renaming(const Substitution& a, const Substitution& b) {
    if (a.size() != b.size() || a.dim() != b.dim()) return std::nullopt;
    const std::size_t n = a.size();
    for (std::size_t l = 0; l < n; ++l)
        if (shape_of(a.image(static_cast<Letter>(l))) != shape_of(b.image(static_cast<Letter>(0))) &&
            a.constant_shape())
            return std::nullopt;
    constexpr Letter unset = 0xFFFF;
    std::vector<Letter> perm(n, unset);
    std::vector<bool> used(n, false);

    // Assigned letters must agree cellwise on every assigned image.
    auto consistent = [&]() {
        for (std::size_t x = 0; x < n; ++x) {
            if (perm[x] == unset) continue;
            const Pattern& ia = a.image(static_cast<Letter>(x));
            const Pattern& ib = b.image(perm[x]);
            if (shape_of(ia) != shape_of(ib)) return false;
            for (std::size_t i = 0; i < ia.size(); ++i)
                if (perm[ia[static_cast<int>(i)]] != unset && perm[ia[static_cast<int>(i)]] != ib[static_cast<int>(i)])
                    return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t x) {
        if (x == n) return true;
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y]) continue;
            perm[x] = static_cast<Letter>(y);
            used[y] = true;
            if (consistent() && assign(x + 1)) return true;
            used[y] = false;
            perm[x] = unset;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return perm;
}

bool equivalent_up_to_renaming(const Substitution& a, const Substitution& b) { return renaming(a, b).has_value(); }

SearchResult search_block_map(const Substitution& src, const Substitution& tgt, Shape window, std::uint64_t cap) {
    if (!src.constant_shape() || !tgt.constant_shape() || src.dim() != tgt.dim())
        throw std::invalid_argument("block map search needs constant-shape substitutions of one dimension");
    SearchResult result;
    Substitution from = src, to = tgt;
    auto same_block = [](const Substitution& x, const Substitution& y) {
        return x.block_rows() == y.block_rows() && x.block_cols() == y.block_cols();
    };
    auto squares = [](const Substitution& big, const Substitution& small) {
        return big.block_rows() == small.block_rows() * small.block_rows() &&
               big.block_cols() == small.block_cols() * small.block_cols();
    };
    if (!same_block(from, to)) {
        if (squares(from, to))
            to = power(tgt, 2);
        else if (squares(to, from))
            from = power(src, 2);
        else
            throw std::invalid_argument("block shapes of source and target are unrelated");
        result.squared = true;
    }
    const auto legal = legal_patterns(src, window);
    const std::vector<Pattern> windows_(legal.members.begin(), legal.members.end());
    const std::size_t n = windows_.size(), k = tgt.size();
    if (k == 0 || n < k) return result;
    const Alphabet anon = anonymous_alphabet(k);

    std::vector<Letter> labels(n, 0);
    // Restricted growth strings with exactly k labels, in lexicographic order.
    std::function<bool(std::size_t, int)> walk = [&](std::size_t i, int top) -> bool {
        if (n - i < static_cast<std::size_t>(static_cast<int>(k) - 1 - top)) return false;
        if (i == n) {
            if (top != static_cast<int>(k) - 1) return false;
            for (const Point& anchor : anchors_of(window)) {
                if (++result.candidates > cap) {
                    result.status = SearchStatus::exhausted;
                    return true;
                }
                SlidingBlockMap map;
                map.source = src.alphabet();
                map.target = anon;
                map.window = window;
                map.anchor = anchor;
                map.dim = src.dim();
                for (std::size_t w = 0; w < n; ++w) map.table.emplace(windows_[w], labels[w]);
                const auto derived = induced_substitution(from, map);
                if (!derived) continue;
                const auto perm = renaming(*derived.substitution, to);
                if (!perm) continue;
                map.target = tgt.alphabet();
                for (auto& [w, t] : map.table) t = (*perm)[t];
                result.map = std::move(map);
                result.status = SearchStatus::found;
                return true;
            }
            return false;
        }
        const int limit = std::min(top + 1, static_cast<int>(k) - 1);
        for (int v = 0; v <= limit; ++v) {
            labels[i] = static_cast<Letter>(v);
            if (walk(i + 1, std::max(top, v))) return true;
        }
        return false;
    };
    labels[0] = 0;
    walk(1, 0);
    return result;
}

std::map<Pattern, std::size_t> preimage_counts(const Substitution& src, const SlidingBlockMap& map,
                                               Shape image_shape) {
    const Shape source{image_shape.rows + map.window.rows - 1, image_shape.cols + map.window.cols - 1};
    std::map<Pattern, std::size_t> counts;
    for (const auto& p : legal_patterns(src, source).members) ++counts[local(apply_block_map(map, p))];
    return counts;
}

SlidingBlockMap parse_block_map(std::string_view text, const Substitution& src) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    SlidingBlockMap map;
    map.source = src.alphabet();
    map.dim = src.dim();
    std::optional<Shape> window;
    std::vector<std::string> target_names;
    bool explicit_target = false;
    std::vector<std::pair<Pattern, std::string>> entries;
    auto key_value = [](std::string_view line, std::string_view key) -> std::optional<std::string_view> {
        if (line.substr(0, key.size()) != key) return std::nullopt;
        return trim(line.substr(key.size()));
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            if (auto v = key_value(line, "window:")) {
                std::string s(*v);
                if (auto times = s.find("\xC3\x97"); times != std::string::npos) s.replace(times, 2, "x");
                const auto x = s.find('x');
                if (x == std::string::npos) throw std::invalid_argument("window must read RxC");
                window = Shape{std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
            } else if (auto v = key_value(line, "anchor:")) {
                const std::string s(*v);
                const auto comma = s.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("anchor must read r,c");
                map.anchor = {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
            } else if (auto v = key_value(line, "target:")) {
                std::istringstream names{std::string(*v)};
                std::string name;
                while (names >> name) target_names.push_back(name);
                explicit_target = true;
            } else {
                const auto arrow = line.rfind("->");
                if (arrow == std::string_view::npos) throw std::invalid_argument("expected 'pattern -> letter'");
                Pattern p = with_dim(parse_block(line.substr(0, arrow), src.alphabet()), src.dim());
                const std::string name(trim(line.substr(arrow + 2)));
                if (!explicit_target && std::find(target_names.begin(), target_names.end(), name) == target_names.end())
                    target_names.push_back(name);
                entries.emplace_back(std::move(p), name);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!window) throw ParseError(line_no, "missing 'window:' line");
    map.window = *window;
    map.target = Alphabet(target_names);
    for (auto& [p, name] : entries) {
        if (shape_of(p) != map.window) throw ParseError(line_no, "pattern does not match the window shape");
        const Letter t = map.target.index(name);
        if (!map.table.emplace(p, t).second) throw ParseError(line_no, "duplicate window");
    }
    return map;
}

std::string format_block_map(const SlidingBlockMap& map) {
    std::string out = "window: " + std::to_string(map.window.rows) + "x" + std::to_string(map.window.cols) + "\n";
    out += "anchor: " + std::to_string(map.anchor.row) + "," + std::to_string(map.anchor.col) + "\n";
    out += "target:";
    for (const auto& n : map.target.names()) out += " " + n;
    out += "\n";
    for (const auto& [w, t] : map.table) out += format_block(map.source, w) + " -> " + map.target.name(t) + "\n";
    return out;
}

namespace {

constexpr std::string_view chi_text = R"(window: 1x2
anchor: 0,0
target: A B C D
ab -> A
cd -> A
ad -> B
cb -> B
ba -> C
dc -> C
da -> D
bc -> D
)";

constexpr std::string_view psi_text = R"(window: 1x2
anchor: 0,0
target: 1 -1
1 1 -> -1
1 -1 -> 1
-1 1 -> 1
-1 -1 -> -1
)";

constexpr std::string_view squiral_map_text = R"(window: 2x2
anchor: 1,0
target: a b c d e f g
1 1 / -1 1 -> a
-1 -1 / 1 -1 -> a
1 1 / 1 -1 -> b
-1 -1 / -1 1 -> b
1 -1 / 1 1 -> c
-1 1 / -1 -1 -> c
-1 1 / 1 1 -> d
1 -1 / -1 -1 -> d
1 1 / -1 -1 -> e
-1 -1 / 1 1 -> e
1 -1 / 1 -1 -> f
-1 1 / -1 1 -> f
1 -1 / -1 1 -> g
-1 1 / 1 -1 -> g
)";

constexpr std::string_view table_patterns_text[] = {
    "0 2 / 0 2", "0 2 / 1 0", "0 2 / 2 1", "1 0 / 3 1", "1 1 / 3 3", "1 3 / 3 0", "2 0 / 1 1", "2 1 / 1 3",
    "2 3 / 0 2", "2 3 / 1 0", "2 3 / 2 1", "3 0 / 0 2", "3 0 / 1 0", "3 0 / 2 1", "3 1 / 2 3", "3 3 / 2 0",
    "0 2 / 2 0", "1 3 / 3 1", "2 0 / 0 2", "3 1 / 1 3", "0 2 / 1 1", "1 0 / 3 0", "2 1 / 2 3", "3 3 / 0 2",
};

}  // namespace

SlidingBlockMap chi_map() { return parse_block_map(chi_text, catalog("rs4")); }

SlidingBlockMap psi_map() { return parse_block_map(psi_text, catalog("tm")); }

SlidingBlockMap phi_map() {
    return letter_projection(catalog("rs4"), {0, 0, 1, 1}, Alphabet({"1", "-1"}));
}

SlidingBlockMap bar_removal_map() {
    return letter_projection(catalog("universal"), {0, 1, 2, 3, 0, 1, 2, 3}, Alphabet({"a", "b", "c", "d"}));
}

SlidingBlockMap thue_morse_projection() {
    return letter_projection(catalog("universal"), {0, 0, 0, 0, 1, 1, 1, 1}, Alphabet({"1", "-1"}));
}

SlidingBlockMap squiral_block_map() { return parse_block_map(squiral_map_text, squiral()); }

const std::vector<Pattern>& table_display_patterns() {
    static const std::vector<Pattern> patterns = [] {
        const Substitution table = catalog("table");
        std::vector<Pattern> out;
        for (auto text : table_patterns_text) out.push_back(parse_block(text, table.alphabet()));
        return out;
    }();
    return patterns;
}

SlidingBlockMap table_factor_map(int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("table factor maps are numbered 1 and 2");
    const Substitution table = catalog("table");
    SlidingBlockMap map;
    map.source = table.alphabet();
    map.target = which == 1 ? Alphabet({"0", "1"}) : Alphabet({"0", "1", "2"});
    map.window = {2, 2};
    map.anchor = {1, 0};
    map.dim = 2;
    const auto& patterns = table_display_patterns();
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        Letter t = i < 16 ? 0 : 1;
        if (which == 2 && i >= 20) t = 2;
        map.table.emplace(patterns[i], t);
    }
    return map;
}

}  // namespace substfactor

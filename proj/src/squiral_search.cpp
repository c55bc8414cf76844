#include "substfactor/squiral_search.hpp"

#include <algorithm>
#include <array>

#include "substfactor/catalog.hpp"
#include "substfactor/factors.hpp"
#include "substfactor/language.hpp"

namespace substfactor {

namespace {

constexpr Letter one = 0, minus_one = 1;

Pattern flipped(const Pattern& p) {
    std::vector<Letter> cells(p.cells());
    for (auto& c : cells) c = c == one ? minus_one : one;
    return Pattern(p.dim(), p.rows(), p.cols(), std::move(cells));
}

// The eight symmetries of the square acting on 3x3 blocks.
Pattern symmetry(const Pattern& p, int g) {
    Pattern q = p;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int rr = r, cc = c;
            if (g & 4) std::swap(rr, cc);
            if (g & 2) rr = 2 - rr;
            if (g & 1) cc = 2 - cc;
            q.at(rr, cc) = p.at(r, c);
        }
    return q;
}

bool flip_equivariant(const Substitution& s) {
    return s.image(minus_one) == flipped(s.image(one));
}

}  // namespace

Substitution squiral_candidate(unsigned mask) {
    std::vector<Letter> cells(9);
    for (int i = 0; i < 9; ++i) cells[i] = (mask >> (8 - i)) & 1u ? minus_one : one;
    const Pattern img(2, 3, 3, cells);
    return Substitution(Alphabet({"1", "-1"}), {img, flipped(img)});
}

SquiralSearchReport squiral_search() {
    SquiralSearchReport report;
    const Substitution fmax = catalog("fmax");
    std::vector<Pattern> survivor_images;
    for (unsigned mask = 0; mask < 512; ++mask) {
        ++report.examined;
        const Substitution rule = squiral_candidate(mask);
        if (!is_primitive(rule)) continue;
        ++report.primitive;
        if (column_structure(rule, 1).classification != ColumnClass::bijective) continue;
        ++report.bijective;
        if (!flip_equivariant(rule)) continue;
        ++report.flip_equivariant;
        const auto legal = legal_patterns(rule, {2, 2});
        const Pattern all_one(2, 2, 2, {one, one, one, one}), all_minus(2, 2, 2, {minus_one, minus_one, minus_one, minus_one});
        if (legal.size() != 14 || legal.contains(all_one) || legal.contains(all_minus)) continue;
        ++report.fourteen_patterns;
        SlidingBlockMap map = squiral_block_map();
        std::optional<Point> anchor;
        for (int a = 0; a < 4 && !anchor; ++a) {
            map.anchor = {a / 2, a % 2};
            const auto derived = induced_substitution(rule, map);
            if (derived && *derived.substitution == fmax) anchor = map.anchor;
        }
        if (!anchor) continue;
        ++report.inducing_fmax;
        report.survivors.push_back({rule, *anchor, 0});
        survivor_images.push_back(rule.image(one));
    }
    // Order by the symbol values of the image of 1, reading -1 < 1.
    std::vector<std::size_t> order(report.survivors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto values = [&](std::size_t i) {
        std::vector<int> v;
        for (Letter l : survivor_images[i].cells()) v.push_back(l == one ? 1 : -1);
        return v;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values(a) < values(b); });
    std::vector<SquiralCandidate> sorted;
    std::vector<Pattern> sorted_images;
    for (std::size_t i : order) {
        sorted.push_back(report.survivors[i]);
        sorted_images.push_back(survivor_images[i]);
    }
    report.survivors = std::move(sorted);
    survivor_images = std::move(sorted_images);
    std::vector<int> orbit(report.survivors.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < report.survivors.size(); ++i) {
        if (orbit[i] != -1) continue;
        orbit[i] = next;
        for (int g = 1; g < 8; ++g) {
            const Pattern moved = symmetry(survivor_images[i], g);
            for (std::size_t j = i + 1; j < report.survivors.size(); ++j)
                if (orbit[j] == -1 && (survivor_images[j] == moved || survivor_images[j] == flipped(moved)))
                    orbit[j] = next;
        }
        ++next;
    }
    for (std::size_t i = 0; i < report.survivors.size(); ++i) report.survivors[i].orbit = static_cast<std::size_t>(orbit[i]);
    report.orbits = static_cast<std::size_t>(next);
    return report;
}

}  // namespace substfactor

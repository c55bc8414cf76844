#include "substfactor/language.hpp"

#include <algorithm>
#include <stdexcept>

namespace substfactor {

namespace {

int ceil_log(int base, int value) {
    int k = 0;
    std::int64_t p = 1;
    while (p < value) {
        p *= base;
        ++k;
    }
    return k;
}

void check_shape(const Substitution& sub, Shape shape) {
    if (shape.rows < 1 || shape.cols < 1) throw std::invalid_argument("pattern shape must be positive");
    if (sub.dim() == 1 && shape.rows != 1) throw std::invalid_argument("1D shapes have a single row");
}

// Smallest block whose image covers every shape-sized window of an image.
Shape parent_shape(const Substitution& sub, Shape shape) {
    if (!sub.constant_shape()) return shape;
    auto parent = [](int s, int l) { return (s - 1 + l - 1) / l + 1; };
    return Shape{sub.dim() == 1 ? 1 : parent(shape.rows, sub.block_rows()), parent(shape.cols, sub.block_cols())};
}

int seeding_level(const Substitution& sub, Shape shape) {
    if (sub.constant_shape()) {
        int level = ceil_log(sub.block_cols(), shape.cols);
        if (sub.dim() == 2) level = std::max(level, ceil_log(sub.block_rows(), shape.rows));
        return level + 2;
    }
    // General 1D: grow until every supertile is long enough.
    std::vector<Pattern> tiles;
    for (std::size_t l = 0; l < sub.size(); ++l) tiles.push_back(Pattern::single(1, static_cast<Letter>(l)));
    int level = 0;
    auto shortest = [&] {
        std::size_t m = tiles.front().size();
        for (const auto& t : tiles) m = std::min(m, t.size());
        return m;
    };
    while (shortest() < static_cast<std::size_t>(shape.cols)) {
        for (auto& t : tiles) t = apply(sub, t);
        if (++level > 64) throw std::runtime_error("supertiles do not grow");
    }
    return level + 2;
}

}  // namespace

std::set<Pattern> windows(const Pattern& p, Shape shape) {
    std::set<Pattern> out;
    for (int r = 0; r + shape.rows <= p.rows(); ++r)
        for (int c = 0; c + shape.cols <= p.cols(); ++c) {
            Pattern w = p.sub(r, c, shape.rows, shape.cols);
            w.set_origin({});
            out.insert(std::move(w));
        }
    return out;
}

PatternSet closure_round(const Substitution& sub, const PatternSet& current) {
    const Shape parent = parent_shape(sub, current.shape);
    std::set<Pattern> parents;
    for (const auto& m : current.members) {
        auto w = windows(m, parent);
        parents.insert(w.begin(), w.end());
    }
    PatternSet next = current;
    for (const auto& p : parents) {
        auto w = windows(apply(sub, p), current.shape);
        next.members.insert(w.begin(), w.end());
    }
    return next;
}

PatternSet legal_patterns(const Substitution& sub, Shape shape) {
    check_shape(sub, shape);
    if (!is_primitive(sub)) throw std::invalid_argument("legal patterns need a primitive substitution");
    PatternSet set{shape, {}};
    const int level = seeding_level(sub, shape);
    for (std::size_t l = 0; l < sub.size(); ++l) {
        auto w = windows(supertile(sub, static_cast<Letter>(l), level), shape);
        set.members.insert(w.begin(), w.end());
    }
    int stable_rounds = 0;
    while (stable_rounds < 2) {
        PatternSet next = closure_round(sub, set);
        stable_rounds = next.size() == set.size() ? stable_rounds + 1 : 0;
        set = std::move(next);
    }
    return set;
}

ColumnStructure column_structure(const Substitution& sub, int max_level) {
    if (!sub.constant_shape()) throw std::invalid_argument("column structure needs a constant-shape substitution");
    if (max_level < 1) throw std::invalid_argument("max level must be at least 1");
    ColumnStructure cs;
    const std::size_t n = sub.size();
    for (int k = 1; k <= max_level; ++k) {
        std::vector<Pattern> tiles;
        for (std::size_t l = 0; l < n; ++l) tiles.push_back(supertile(sub, static_cast<Letter>(l), k));
        const Pattern& first = tiles.front();
        std::vector<std::vector<Letter>> level(first.size(), std::vector<Letter>(n));
        for (std::size_t q = 0; q < first.size(); ++q)
            for (std::size_t l = 0; l < n; ++l) level[q][l] = tiles[l].cells()[q];
        cs.maps.push_back(std::move(level));
    }
    auto is_permutation = [n](const std::vector<Letter>& f) {
        std::vector<bool> seen(n, false);
        for (Letter l : f) {
            if (seen[l]) return false;
            seen[l] = true;
        }
        return true;
    };
    if (std::all_of(cs.maps.front().begin(), cs.maps.front().end(), is_permutation)) {
        cs.classification = ColumnClass::bijective;
        return cs;
    }
    for (int k = 1; k <= max_level; ++k) {
        const auto& level = cs.maps[k - 1];
        const int cols = sub.dim() == 1 ? static_cast<int>(level.size()) : supertile(sub, 0, k).cols();
        for (std::size_t q = 0; q < level.size(); ++q) {
            const auto& f = level[q];
            if (std::all_of(f.begin(), f.end(), [&](Letter l) { return l == f.front(); })) {
                cs.classification = ColumnClass::coincidence;
                cs.coincidence_level = k;
                cs.coincidence_position = Point{static_cast<std::int64_t>(q) / cols, static_cast<std::int64_t>(q) % cols};
                cs.coincidence_letter = f.front();
                return cs;
            }
        }
    }
    cs.classification = ColumnClass::neither;
    return cs;
}

bool pairwise_distinct_everywhere(const Substitution& sub, int n) {
    if (!sub.constant_shape()) throw std::invalid_argument("needs a constant-shape substitution");
    std::vector<Pattern> tiles;
    for (std::size_t l = 0; l < sub.size(); ++l) tiles.push_back(supertile(sub, static_cast<Letter>(l), n));
    const std::size_t cells = tiles.front().size();
    std::vector<bool> seen(sub.size());
    for (std::size_t q = 0; q < cells; ++q) {
        std::fill(seen.begin(), seen.end(), false);
        for (const auto& t : tiles) {
            const Letter v = t.cells()[q];
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return true;
}

std::uint64_t fingerprint(const Pattern& p) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(p.rows()));
    mix(static_cast<std::uint64_t>(p.cols()));
    for (Letter l : p.cells()) mix(l);
    return h;
}

FrameReport supertile_frame(const Substitution& sub, Letter letter, int n) {
    if (sub.dim() != 2 || !sub.constant_shape())
        throw std::invalid_argument("supertile frames need a 2D constant-shape substitution");
    const Pattern t = supertile(sub, letter, n);
    const int h = t.rows(), w = t.cols();
    FrameReport fr;
    fr.top = t.sub(0, 0, 1, w);
    fr.bottom = t.sub(h - 1, 0, 1, w);
    fr.left = t.sub(0, 0, h, 1);
    fr.right = t.sub(0, w - 1, h, 1);
    fr.interior = h >= 2 && w >= 2 ? t.sub(1, 1, h - 2, w - 2) : Pattern(2, 0, 0, {});
    fr.corner_complements = {t.sub(1, 1, h - 1, w - 1), t.sub(1, 0, h - 1, w - 1), t.sub(0, 1, h - 1, w - 1),
                             t.sub(0, 0, h - 1, w - 1)};
    fr.interior_fingerprint = fingerprint(fr.interior);
    return fr;
}

CornerReport corner_configurations(const Substitution& sub, int probe_level) {
    if (sub.dim() != 2 || !sub.constant_shape())
        throw std::invalid_argument("corner configurations need a 2D constant-shape substitution");
    CornerReport report;
    const int m = seed_period(sub);
    for (const Seed& seed : enumerate_seeds(sub, m)) {
        const Pattern patch = fixed_point_patch(sub, seed, probe_level, std::max(probe_level + m, default_max_level_2d));
        const std::int64_t reach = patch.rows() / 2;
        CornerConfiguration cfg{seed, {}, std::nullopt, std::nullopt, {}, {}, {}, {}};
        auto probe = [&](ArmDirection d, int line) {
            std::vector<Letter> values;
            for (std::int64_t i = 0; i < reach; ++i) {
                Point p{};
                switch (d) {
                    case ArmDirection::left: p = {line, -1 - i}; break;
                    case ArmDirection::right: p = {line, i}; break;
                    case ArmDirection::up: p = {-1 - i, line}; break;
                    case ArmDirection::down: p = {i, line}; break;
                }
                values.push_back(patch.at_global(p));
            }
            Arm arm{d, line, std::nullopt};
            if (values.size() > 2 &&
                std::all_of(values.begin() + 2, values.end(), [&](Letter l) { return l == values[2]; }))
                arm.label = values[2];
            return arm;
        };
        for (auto d : {ArmDirection::left, ArmDirection::right, ArmDirection::up, ArmDirection::down})
            for (int line : {-1, 0}) cfg.arms.push_back(probe(d, line));
        auto find = [&](ArmDirection d, int line) -> std::optional<Letter> {
            for (const auto& a : cfg.arms)
                if (a.direction == d && a.line == line) return a.label;
            return std::nullopt;
        };
        for (int row : {-1, 0}) {
            if (cfg.center) break;
            auto l = find(ArmDirection::left, row), r = find(ArmDirection::right, row);
            if (!l || !r) continue;
            for (int col : {-1, 0}) {
                auto u = find(ArmDirection::up, col), dn = find(ArmDirection::down, col);
                if (!u || !dn) continue;
                cfg.center = Point{row, col};
                cfg.center_letter = patch.at_global(*cfg.center);
                cfg.left = l;
                cfg.right = r;
                cfg.up = u;
                cfg.down = dn;
                break;
            }
        }
        for (const auto& a : cfg.arms) {
            if (!a.label) continue;
            if (a.direction == ArmDirection::left || a.direction == ArmDirection::right)
                report.horizontal_lines.insert(*a.label);
            else
                report.vertical_lines.insert(*a.label);
        }
        report.quartets.push_back(std::move(cfg));
    }
    return report;
}

}  // namespace substfactor

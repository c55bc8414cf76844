#include "substfactor/toeplitz.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace substfactor {

namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

int level_for(std::int64_t n, int length, int period) {
    int level = 0;
    std::int64_t extent = 1;
    while (extent <= n) {
        extent *= length;
        ++level;
    }
    return (level + period - 1) / period * period;
}

Pattern central_patch(const Substitution& sub, const Seed& seed, std::int64_t n) {
    return fixed_point_patch(sub, seed, level_for(n, sub.block_cols(), seed.period));
}

void require_constant_length(const Substitution& sub) {
    if (sub.dim() != 1 || !sub.constant_shape())
        throw std::invalid_argument("Toeplitz analysis needs a constant-length 1D substitution");
}

}  // namespace

bool Progression::contains(std::int64_t x) const { return floor_mod(x, modulus) == residue; }

bool CosetSystem::contains(std::int64_t x) const {
    if (exceptional.count(x)) return true;
    return std::any_of(progressions.begin(), progressions.end(), [x](const Progression& p) { return p.contains(x); });
}

Coordinatization coordinatize(const Substitution& sub, const Seed& seed, int depth, std::int64_t window) {
    require_constant_length(sub);
    if (depth <= 0 || window <= 0) throw std::invalid_argument("depth and window must be positive");
    if (!seed_is_recurrent(sub, seed)) throw std::invalid_argument("seed is not fixed by the substitution power");
    const std::size_t n = sub.size();
    const int length = sub.block_cols();
    Coordinatization out;
    out.depth = depth;
    out.window = window;
    out.systems.resize(n);
    for (std::size_t l = 0; l < n; ++l) out.systems[l].letter = static_cast<Letter>(l);

    // open[i] = (residue r, letter map x -> k-fold image of x at r), unresolved so far.
    std::vector<std::pair<std::int64_t, std::vector<Letter>>> open;
    std::vector<Letter> identity(n);
    std::iota(identity.begin(), identity.end(), Letter(0));
    open.emplace_back(0, identity);
    std::int64_t modulus = 1;
    const int max_k = seed.period * depth;
    for (int k = 1; k <= max_k && !open.empty(); ++k) {
        std::vector<std::pair<std::int64_t, std::vector<Letter>>> next;
        for (const auto& [r, f] : open)
            for (int d = 0; d < length; ++d) {
                std::vector<Letter> g(n);
                for (std::size_t x = 0; x < n; ++x) g[x] = f[sub.image(static_cast<Letter>(x))[d]];
                const std::int64_t residue = r + modulus * d;
                if (std::all_of(g.begin(), g.end(), [&](Letter v) { return v == g[0]; }))
                    out.systems[g[0]].progressions.push_back({modulus * length, residue});
                else
                    next.emplace_back(residue, std::move(g));
            }
        open = std::move(next);
        modulus *= length;
    }
    for (auto& cs : out.systems) std::sort(cs.progressions.begin(), cs.progressions.end());

    // Unresolved positions are exceptional when another fixed point of the
    // same period differs there.
    const Pattern w = central_patch(sub, seed, window);
    std::vector<Pattern> others;
    for (const auto& s : enumerate_seeds(sub, seed.period))
        if (!(s.letters == seed.letters)) others.push_back(central_patch(sub, s, window));
    for (std::int64_t x = -window; x <= window; ++x) {
        const Letter l = w.at_global({0, x});
        auto& cs = out.systems[l];
        if (std::any_of(cs.progressions.begin(), cs.progressions.end(),
                        [x](const Progression& p) { return p.contains(x); }))
            continue;
        const bool differs = std::any_of(others.begin(), others.end(),
                                         [&](const Pattern& o) { return o.at_global({0, x}) != l; });
        (differs ? cs.exceptional : cs.unresolved).insert(x);
    }
    return out;
}

BigRational resolved_density(const Coordinatization& c) {
    std::vector<Progression> all;
    for (const auto& cs : c.systems) all.insert(all.end(), cs.progressions.begin(), cs.progressions.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const std::int64_t g = std::gcd(all[i].modulus, all[j].modulus);
            if (floor_mod(all[i].residue - all[j].residue, g) == 0)
                throw std::invalid_argument("overlapping progressions");
        }
    BigRational sum = 0;
    for (const auto& p : all) sum += BigRational(1, p.modulus);
    return sum;
}

std::set<std::int64_t> second_fixed_point_delta(const Substitution& sub, const Seed& a, const Seed& b,
                                                std::int64_t n) {
    require_constant_length(sub);
    if (a.period != b.period) throw std::invalid_argument("seeds must share their period");
    const Pattern wa = central_patch(sub, a, n), wb = central_patch(sub, b, n);
    std::set<std::int64_t> out;
    for (std::int64_t x = -n; x <= n; ++x)
        if (wa.at_global({0, x}) != wb.at_global({0, x})) out.insert(x);
    return out;
}

std::string format_coset_system(const CosetSystem& cs) {
    std::string out;
    for (const auto& p : cs.progressions) out += std::to_string(p.modulus) + "*Z + " + std::to_string(p.residue) + "\n";
    out += "exceptional:";
    for (auto x : cs.exceptional) out += " " + std::to_string(x);
    out += "\n";
    return out;
}

}  // namespace substfactor

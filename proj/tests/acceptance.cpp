// Acceptance run: one PASS/FAIL line per criterion, with a witness on failure.
// Usage: acceptance [N]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "substfactor/appcomplex.hpp"
#include "substfactor/catalog.hpp"
#include "substfactor/core.hpp"
#include "substfactor/factors.hpp"
#include "substfactor/language.hpp"
#include "substfactor/linalg.hpp"
#include "substfactor/squiral_search.hpp"
#include "substfactor/text_format.hpp"
#include "substfactor/toeplitz.hpp"
#include "substfactor/zeta.hpp"
#include "printed.hpp"

using namespace substfactor;
using testing_support::block;
using testing_support::text;

namespace {

// Collects the first failure of a criterion and a short summary of what held.
class Verdict {
public:
    void expect(bool ok, const std::string& witness) {
        if (!ok && failure_.empty()) failure_ = witness;
        checks_ += 1;
    }
    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
    bool passed() const { return failure_.empty(); }
    std::string summary() const {
        return passed() ? notes_ + " (" + std::to_string(checks_) + " checks)" : failure_;
    }

private:
    std::string failure_, notes_;
    std::size_t checks_ = 0;
};

template <typename T>
std::string str(const T& x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

std::string join(const std::vector<BigInt>& v) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + x.str();
    return out;
}

BigInt pw(long long b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// ---------------------------------------------------------------------------

void catalog_fidelity(Verdict& v) {
    for (const auto& im : printed::images) {
        const auto s = catalog(im.substitution);
        const std::string got = text(s, s.image(s.alphabet().index(im.letter)));
        v.expect(got == im.image, std::string(im.substitution) + ": image of " + im.letter + " is [" + got + "], printed [" + im.image + "]");
    }
    const auto u = catalog("universal");
    for (Letter l = 0; l < 8; ++l)
        v.expect(u.image(l).cells() == printed::universal_word(printed::universal_images[l]),
                 "universal: image of " + u.alphabet().name(l) + " is " + text(u, u.image(l)));
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) {
            const auto g = catalog("gtm", {k, l, {}});
            const auto p = catalog("gpd", {k, l, {}});
            const auto [ga, gb] = printed::gtm_images(k, l);
            const auto [pa, pb] = printed::gpd_images(k, l);
            const std::string kl = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
            v.expect(text(g, g.image(0)) == ga && text(g, g.image(1)) == gb, "gtm" + kl + " images differ");
            v.expect(text(p, p.image(0)) == pa && text(p, p.image(1)) == pb, "gpd" + kl + " images differ");
            v.expect(parse_substitution(format_substitution(g)) == g, "gtm" + kl + " does not round-trip");
            v.expect(parse_substitution(format_substitution(p)) == p, "gpd" + kl + " does not round-trip");
        }
    std::size_t n = 0;
    for (const auto& name : catalog_plain_names()) {
        const auto s = catalog(name);
        v.expect(parse_substitution(format_substitution(s)) == s, name + " does not round-trip");
        ++n;
    }
    v.note(std::to_string(printed::images.size() + 8) + " printed images, gTM/gpd up to (3,3), " + std::to_string(n) + " catalog round trips");
}

void fixed_points(Verdict& v) {
    const auto u = catalog("universal");
    const Pattern w = fixed_point_patch(u, make_seed(u, {{"b", "a"}}, 2), 4);
    const auto left = printed::universal_word(printed::universal_left);
    const auto right = printed::universal_word(printed::universal_right);
    for (int x = -16; x < 16; ++x) {
        const Letter want = x < 0 ? left[static_cast<std::size_t>(x + 16)] : right[static_cast<std::size_t>(x)];
        const Letter got = w.at_global({0, x});
        if (got != want) {
            const bool legal = legal_patterns(u, {1, 16}).contains(Pattern::word(left));
            v.expect(false, "universal fixed point from b|a: position " + std::to_string(x) + " is " + u.alphabet().name(got) +
                                ", displayed " + u.alphabet().name(want) + "; fixed point reads " + text(u, w.sub_global({0, -16}, 1, 16)) +
                                " on -16..-1, displayed " + text(u, Pattern::word(left)) + (legal ? "" : " is not a legal word"));
            break;
        }
    }

    const auto fmax = catalog("fmax");
    v.expect(enumerate_seeds(fmax, 1).size() == 7, "fmax has " + std::to_string(enumerate_seeds(fmax, 1).size()) + " period-1 seeds");
    const auto corners = corner_configurations(fmax);
    const auto& a = fmax.alphabet();
    for (const auto& q : corners.quartets) {
        if (!q.center_letter) {
            v.expect(false, "fmax seed without a center letter");
            continue;
        }
        const std::string c = a.name(*q.center_letter);
        const auto& e = printed::fmax_special_points.at(c);
        const std::array<std::string, 4> got = {a.name(*q.up), a.name(*q.left), a.name(*q.right), a.name(*q.down)};
        v.expect(got == e, "fmax center " + c + ": up/left/right/down " + got[0] + got[1] + got[2] + got[3] + ", displayed " + e[0] + e[1] + e[2] + e[3]);
    }

    const auto table = catalog("table");
    std::set<Pattern> shown;
    for (const auto& p : printed::table_patterns) shown.insert(block(table, p));
    std::set<Pattern> seeds;
    for (const Seed& s : enumerate_seeds(table, 2)) {
        Pattern p = s.letters;
        p.set_origin({});
        seeds.insert(p);
    }
    v.expect(seeds.size() == 24, "table has " + std::to_string(seeds.size()) + " period-2 seeds");
    v.expect(seeds == shown, "table seeds differ from the displayed list");
    v.expect(enumerate_seeds(catalog("tablefac1"), 1).size() == 2, "tablefac1 fixed points != 2");
    v.expect(enumerate_seeds(catalog("tablefac2"), 2).size() == 3, "tablefac2 squared fixed points != 3");
    v.note("universal window, fmax 7 seeds with displayed surroundings, table 24, tablefac1 2, tablefac2 3");
}

void legal_pattern_counts(Verdict& v) {
    const auto sq = catalog("squiral");
    const auto s2 = legal_patterns(sq, {2, 2});
    v.expect(s2.size() == 14, "squiral 2x2 count " + std::to_string(s2.size()));
    v.expect(!s2.contains(block(sq, "1 1 / 1 1")) && !s2.contains(block(sq, "-1 -1 / -1 -1")), "a constant squiral block is legal");
    const auto table = catalog("table");
    std::set<Pattern> shown;
    for (const auto& p : printed::table_patterns) shown.insert(block(table, p));
    const auto t2 = legal_patterns(table, {2, 2});
    v.expect(t2.members == shown, "table 2x2 language has " + std::to_string(t2.size()) + " patterns, not the displayed 24");
    const auto h = legal_patterns(table, {1, 2}).size(), vv = legal_patterns(table, {2, 1}).size();
    v.expect(h == 10 && vv == 10, "table edge pairs " + std::to_string(h) + " horizontal, " + std::to_string(vv) + " vertical");
    v.note("squiral 14, table 24 as displayed, edge pairs 10 and 10");
}

void factor_pipeline(Verdict& v) {
    const auto check = [&](const char* label, const Substitution& src, const SlidingBlockMap& map, const Substitution& want,
                           const std::vector<Letter>* perm) {
        const auto d = induced_substitution(src, map);
        if (!d) {
            v.expect(false, std::string(label) + ": inconsistent, " + d.describe_witness(src.alphabet()));
            return;
        }
        if (perm) {
            const auto r = renaming(*d.substitution, want);
            v.expect(r && *r == *perm, std::string(label) + ": induced rule is not the printed one up to the displayed renaming");
        } else {
            v.expect(*d.substitution == want, std::string(label) + ": induced rule differs:\n" + format_substitution(*d.substitution));
        }
    };
    check("rs4/chi", catalog("rs4"), chi_map(), catalog("toeplitzT"), nullptr);
    check("tm/psi", catalog("tm"), psi_map(), catalog("pd"), nullptr);
    check("squiral/block map", catalog("squiral"), printed::squiral_map(), catalog("fmax"), nullptr);
    check("table/map 1", catalog("table"), table_factor_map(1), catalog("tablefac1"), nullptr);
    check("table/map 2", catalog("table"), table_factor_map(2), catalog("tablefac2"), &printed::table_factor2_renaming);

    const auto multiplicity = [&](const char* label, const Substitution& src, const Substitution& tgt, const SlidingBlockMap& map,
                                  Shape shape) {
        const auto counts = preimage_counts(src, map, shape);
        v.expect(counts.size() >= 100, std::string(label) + ": only " + std::to_string(counts.size()) + " image patches");
        for (const auto& [p, n] : counts)
            if (n != 2) {
                v.expect(false, std::string(label) + ": image patch " + text(tgt, p) + " has " +
                                    std::to_string(n) + " preimages");
                break;
            }
        return counts.size();
    };
    const auto nsq = multiplicity("squiral/fmax", catalog("squiral"), catalog("fmax"), squiral_block_map(), {4, 4});
    const auto ntm = multiplicity("tm/pd", catalog("tm"), catalog("pd"), psi_map(), {1, 100});
    v.note("five induced rules exact; " + std::to_string(nsq) + " fmax 4x4 patches and " + std::to_string(ntm) +
           " pd words of length 100 each with 2 preimages");
}

void squiral_reconstruction(Verdict& v) {
    const auto r = squiral_search();
    v.expect(!r.survivors.empty(), "no rule survives the four constraints");
    for (const auto& c : r.survivors) {
        const auto map = squiral_block_map();
        SlidingBlockMap m = map;
        m.anchor = c.anchor;
        const auto d = induced_substitution(c.rule, m);
        v.expect(d && *d.substitution == catalog("fmax"), "survivor " + text(c.rule, c.rule.image(0)) + " does not induce fmax");
    }
    if (!r.survivors.empty())
        v.expect(r.survivors.front().rule == catalog("squiral"), "least survivor differs from the catalog squiral");
    v.note(std::to_string(r.examined) + " candidates, " + std::to_string(r.survivors.size()) + " survivors in " +
           std::to_string(r.orbits) + " symmetry orbit(s): " + [&] {
               std::string s;
               for (const auto& c : r.survivors) s += (s.empty() ? "[" : ", [") + text(c.rule, c.rule.image(0)) + "]";
               return s;
           }());
}

void toeplitz(Verdict& v) {
    const auto t = catalog("toeplitzT");
    const auto& a = t.alphabet();
    const Seed seed = make_seed(t, {{"C", "A"}}, 2);
    const std::int64_t window = 100000;
    const auto c = coordinatize(t, seed, 9, window);
    const auto& A = c.systems[a.index("A")];
    const auto& B = c.systems[a.index("B")];
    const auto& C = c.systems[a.index("C")];
    const auto& D = c.systems[a.index("D")];
    v.expect(A.progressions == std::vector<Progression>{{4, 0}} && A.exceptional.empty(), "Lambda_A:\n" + format_coset_system(A));
    v.expect(B.progressions == std::vector<Progression>{{4, 2}} && B.exceptional.empty(), "Lambda_B:\n" + format_coset_system(B));
    v.expect(C.exceptional == std::set<std::int64_t>{-1}, "Lambda_C exceptional set differs");
    v.expect(D.exceptional.empty(), "Lambda_D has exceptional points");
    for (std::int64_t x = -window; x <= window; ++x) {
        if (C.contains(x) != printed::toeplitz_c(x) || D.contains(x) != printed::toeplitz_d(x)) {
            v.expect(false, "membership of " + std::to_string(x) + " differs from the closed forms");
            break;
        }
    }
    const auto seeds = enumerate_seeds(t, 2);
    v.expect(seeds.size() == 2, "rho_T^2 has " + std::to_string(seeds.size()) + " fixed points");
    if (seeds.size() == 2) {
        const auto delta = second_fixed_point_delta(t, seeds[0], seeds[1], window);
        v.expect(delta == std::set<std::int64_t>{-1}, "the two fixed points differ at " + std::to_string(delta.size()) + " positions");
    }
    v.note("Lambda_A = 4Z, Lambda_B = 4Z+2, Lambda_C and Lambda_D match on [-1e5, 1e5], exceptional {-1}, fixed points differ only at -1");
}

void zeta_closed_forms(Verdict& v) {
    const auto compare = [&](const std::string& label, const RationalFunction& z, const std::function<BigInt(int)>& f) {
        const auto a = counts_from_zeta(z, 12);
        std::vector<BigInt> want;
        for (int m = 1; m <= 12; ++m) want.push_back(f(m));
        v.expect(a == want, label + ": a_m = " + join(a) + ", formula gives " + join(want));
        const auto c = cycle_counts(a);
        v.expect(c.integral && c.euler_product_ok, label + ": Moebius inversion not integral or Euler product mismatch");
        const auto back = zeta_from_counts(counts_from_zeta(z, 20));
        v.expect(back.zeta && *back.zeta == z, label + ": zeta not recovered from its counts");
    };
    compare("squiral", closed_form_zeta("squiral"), [](int m) { return pw(9, m) + 4 + 3 * pw(-1, m); });
    compare("fmax", closed_form_zeta("fmax"), [](int m) { return pw(9, m) + 3; });
    compare("table", closed_form_zeta("table"), [](int m) { return pw(4, m) + 3 + pw(-1, m) * (1 + pw(2, m + 1)); });
    compare("S^2_2", solenoid_zeta(2, 2), [](int m) { return (pw(2, m) - 1) * (pw(2, m) - 1); });
    compare("S^1_3", solenoid_zeta(1, 3), [](int m) { return pw(3, m) - 1; });
    compare("S^2_3", solenoid_zeta(2, 3), [](int m) { return (pw(3, m) - 1) * (pw(3, m) - 1); });
    const auto table = counts_from_zeta(closed_form_zeta("table"), 2);
    v.expect(table[0] == 2 && table[1] == 28, "table a_1, a_2 = " + join(table));

    const auto s13 = solenoid_zeta(1, 3);
    const auto fixed = RationalFunction(IntPolynomial::constant(1), IntPolynomial::binomial(BigInt(1), 1).pow(4));
    const auto p = product_decomposition_check(closed_form_zeta("fmax"), {solenoid_zeta(2, 3), s13, s13, fixed});
    v.expect(p.equal, "fmax product identity fails, residual " + format_rational_function(p.residual));
    v.note("six count formulas to m = 12, integral cycle counts, fmax = S^2_3 (S^1_3)^2 / (1-z)^4");
}

void anderson_putnam(Verdict& v) {
    const auto expect_group = [&](const std::string& label, const AbelianInvariants& got, const char* want) {
        v.expect(got == parse_invariants(want), label + " = " + format_invariants(got) + ", printed " + want);
    };
    for (const auto& name : {"squiral", "fmax", "table"}) {
        const auto h = cohomology_of_hull(catalog(name));
        const auto z = zeta_ap(h.action.cochain);
        std::string mats;
        for (std::size_t k = 0; k < h.action.cochain.size(); ++k)
            mats += " A" + std::to_string(k) + ": " + std::to_string(h.action.cochain[k].rows()) + "x" + std::to_string(h.action.cochain[k].cols());
        v.expect(z == closed_form_zeta(name), std::string(name) + ": zeta_ap = " + format_rational_function(z) + ", printed " +
                                                  format_rational_function(closed_form_zeta(name)) + ";" + mats);
        const std::string n(name);
        expect_group(n + " H2", h.groups[2], n == "squiral" ? printed::squiral_h2 : n == "fmax" ? printed::fmax_h2 : printed::table_h2);
        expect_group(n + " H1", h.groups[1], n == "table" ? printed::table_h1 : printed::squiral_h1);
        expect_group(n + " H0", h.groups[0], "Z");
    }
    const auto fmax = catalog("fmax");
    for (const auto& row : printed::fmax_factor_rows) {
        const auto q = identify_symbols(fmax, parse_identification(fmax.alphabet(), row.identification));
        if (!q) {
            v.expect(false, std::string("fmax/") + row.identification + " inconsistent: " + q.describe_witness(fmax.alphabet()));
            continue;
        }
        expect_group(std::string("fmax/") + row.identification + " H2", cohomology_of_hull(*q.substitution).groups[2], row.h2);
    }
    v.note("three printed zeta functions, three cohomology triples, " + std::to_string(printed::fmax_factor_rows.size()) + " factor rows");
}

void property_suites(Verdict& v) {
    for (const auto& name : {"universal", "rs4", "tm", "pd", "toeplitzT", "squiral", "fmax", "table", "tablefac1", "tablefac2"}) {
        const auto s = catalog(name);
        const auto cw = build_approximant(s);
        const auto action = substitution_action(s, cw);
        const auto check = check_complex(cw, &action);
        v.expect(check.ok(), std::string(name) + ": " + check.witness);
    }
    for (const auto& name : catalog_plain_names()) {
        const auto s = catalog(name);
        const IntMatrix m = substitution_matrix(s);
        v.expect(substitution_matrix(power(s, 2)) == IntMatrix(m * m), name + ": M(rho^2) != M(rho)^2");
    }
    for (const auto& name : {"squiral", "fmax", "table", "tablefac1", "tablefac2"}) {
        const auto s = catalog(name);
        const auto two = legal_patterns(s, {2, 2});
        const auto three = legal_patterns(s, {3, 3});
        v.expect(closure_round(s, two).members == two.members && closure_round(s, three).members == three.members,
                 std::string(name) + ": legality closure is not a fixed point");
        for (const auto& p : three.members)
            for (const auto& w : windows(p, {2, 2}))
                if (!two.contains(w)) v.expect(false, std::string(name) + ": restriction of a legal 3x3 pattern is illegal");
    }
    std::mt19937 rng(20240611);
    const std::vector<std::tuple<const char*, Substitution, SlidingBlockMap>> maps = {
        {"rs4/chi", catalog("rs4"), chi_map()},
        {"tm/psi", catalog("tm"), psi_map()},
        {"squiral/fmax", catalog("squiral"), squiral_block_map()},
        {"table/1", catalog("table"), table_factor_map(1)},
        {"table/2", catalog("table"), table_factor_map(2)}};
    for (const auto& [label, src, map] : maps) {
        const auto tgt = *induced_substitution(src, map).substitution;
        const Pattern big = supertile(src, 0, src.dim() == 2 ? (src.block_rows() == 3 ? 3 : 5) : 9);
        const int off_r = (src.block_rows() - 1) * static_cast<int>(map.anchor.row);
        const int off_c = (src.block_cols() - 1) * static_cast<int>(map.anchor.col);
        for (int trial = 0; trial < 40; ++trial) {
            const int h = src.dim() == 2 ? 2 + static_cast<int>(rng() % 3) : 1;
            const int w = src.dim() == 2 ? 2 + static_cast<int>(rng() % 3) : 2 + static_cast<int>(rng() % 19);
            Pattern p = big.sub(static_cast<int>(rng() % static_cast<unsigned>(big.rows() - h + 1)),
                                static_cast<int>(rng() % static_cast<unsigned>(big.cols() - w + 1)), h, w);
            p.set_origin({});
            const Pattern lhs = apply_block_map(map, apply(src, p));
            const Pattern rhs = apply(tgt, apply_block_map(map, p));
            bool ok = true;
            for (int r = 0; r < rhs.rows() && ok; ++r)
                for (int c = 0; c < rhs.cols() && ok; ++c) ok = rhs.at(r, c) == lhs.at(r + off_r, c + off_c);
            v.expect(ok, std::string(label) + ": map does not commute with substitution on patch [" + text(src, p) + "]");
        }
    }
    for (int k = 1; k <= 5; ++k)
        for (int l = 1; l <= 5; ++l) {
            const auto split = integer_roots(characteristic_polynomial(substitution_matrix(catalog("gtm", {k, l, {}}))));
            std::multiset<BigInt> roots;
            for (const auto& [r, mult] : split.roots)
                for (int i = 0; i < mult; ++i) roots.insert(r);
            v.expect(roots == std::multiset<BigInt>{BigInt(k + l), BigInt(k - l)},
                     "gtm(" + std::to_string(k) + "," + std::to_string(l) + ") eigenvalues differ from k+l, k-l");
        }
    v.note("complexes, closure, functoriality on 200 patches, matrix powers, gTM spectra");
}

struct Criterion {
    const char* title;
    double budget_seconds;
    void (*run)(Verdict&);
};

const Criterion criteria[] = {
    {"catalog fidelity", 1, catalog_fidelity},
    {"fixed points and seeds", 5, fixed_points},
    {"legal patterns", 10, legal_pattern_counts},
    {"factor pipeline", 30, factor_pipeline},
    {"squiral reconstruction", 60, squiral_reconstruction},
    {"Toeplitz structure", 30, toeplitz},
    {"zeta closed forms", 5, zeta_closed_forms},
    {"Anderson-Putnam pipeline", 600, anderson_putnam},
    {"property suites", 120, property_suites},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (only < 0 || only > 9) {
        std::cerr << "usage: acceptance [1-9]\n";
        return 2;
    }
    bool all = true;
    for (int i = 1; i <= 9; ++i) {
        if (only && i != only) continue;
        const auto& c = criteria[i - 1];
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.expect(secs <= c.budget_seconds, "took " + str(secs) + " s, budget " + str(c.budget_seconds) + " s");
        const bool ok = v.passed();
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i << ": " << c.title << " [" << str(secs) << " s]: " << v.summary()
                  << std::endl;
    }
    return all ? 0 : 1;
}

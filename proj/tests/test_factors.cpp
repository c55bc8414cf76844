#include <doctest.h>

#include <random>

#include "substfactor/catalog.hpp"
#include "substfactor/factors.hpp"
#include "substfactor/language.hpp"
#include "substfactor/text_format.hpp"
#include "printed.hpp"
#include "support.hpp"

using namespace substfactor;
using testing_support::block;
using testing_support::text;

namespace {

struct FactorCase {
    const char* name;
    Substitution src;
    SlidingBlockMap map;
};

std::vector<FactorCase> factor_cases() {
    return {{"rs4/chi", catalog("rs4"), chi_map()},
            {"tm/psi", catalog("tm"), psi_map()},
            {"universal/bar", catalog("universal"), bar_removal_map()},
            {"universal/tm", catalog("universal"), thue_morse_projection()},
            {"squiral/fmax", catalog("squiral"), squiral_block_map()},
            {"table/1", catalog("table"), table_factor_map(1)},
            {"table/2", catalog("table"), table_factor_map(2)}};
}

}  // namespace

TEST_SUITE("factors") {

TEST_CASE("block map application") {
    const auto rs = catalog("rs4");
    const auto w = fixed_point_patch(rs, make_seed(rs, {{"b", "a"}}, 2), 4);
    const Pattern image = apply_block_map(chi_map(), w.sub_global({0, -1}, 1, 3));
    CHECK(text(catalog("toeplitzT"), image) == "CA");

    const auto tm = catalog("tm");
    CHECK(text(tm, apply_block_map(psi_map(), block(tm, "1 -1 -1 1"))) == "1 -1 1");

    const auto sq = catalog("squiral");
    const Pattern a = apply_block_map(squiral_block_map(), block(sq, "1 1 / -1 1"));
    CHECK(a.size() == 1);
    CHECK(squiral_block_map().target.name(a[0]) == "a");
    CHECK_THROWS_AS(apply_block_map(squiral_block_map(), block(sq, "1 1 / 1 1")), std::invalid_argument);
}

TEST_CASE("squiral map is the displayed map") {
    const auto shown = printed::squiral_map();
    const auto built = squiral_block_map();
    CHECK(built.table == shown.table);
    CHECK(built.target == shown.target);
    CHECK(built.anchor == shown.anchor);
    CHECK(check_block_map(catalog("squiral"), built).ok());
}

TEST_CASE("letter projections") {
    const auto u = catalog("universal");
    const auto bar = bar_removal_map();
    CHECK(bar.source.size() == 8);
    CHECK(bar.target.size() == 4);
    const auto tmp = thue_morse_projection();
    for (Letter l = 0; l < 8; ++l) CHECK(tmp.target.name(apply_block_map(tmp, Pattern::single(1, l))[0]) == (l < 4 ? "1" : "-1"));
    const auto phi = phi_map();
    const char* phi_values[] = {"1", "1", "-1", "-1"};
    for (Letter l = 0; l < 4; ++l) CHECK(phi.target.name(apply_block_map(phi, Pattern::single(1, l))[0]) == phi_values[l]);
    CHECK_THROWS(letter_projection(u, {0, 1}, Alphabet({"x", "y"})));
}

TEST_CASE("induced substitutions") {
    const auto t = induced_substitution(catalog("rs4"), chi_map());
    REQUIRE(t);
    CHECK(*t.substitution == catalog("toeplitzT"));

    const auto pd = induced_substitution(catalog("tm"), psi_map());
    REQUIRE(pd);
    CHECK(*pd.substitution == catalog("pd"));

    const auto fmax = induced_substitution(catalog("squiral"), printed::squiral_map());
    REQUIRE(fmax);
    CHECK(*fmax.substitution == catalog("fmax"));

    const auto rs = induced_substitution(catalog("universal"), bar_removal_map());
    REQUIRE(rs);
    CHECK(*rs.substitution == catalog("rs4"));
    const auto tm = induced_substitution(catalog("universal"), thue_morse_projection());
    REQUIRE(tm);
    CHECK(*tm.substitution == catalog("tm"));

    const auto f1 = induced_substitution(catalog("table"), table_factor_map(1));
    REQUIRE(f1);
    CHECK(*f1.substitution == catalog("tablefac1"));

    const auto f2 = induced_substitution(catalog("table"), table_factor_map(2));
    REQUIRE(f2);
    const auto perm = renaming(*f2.substitution, catalog("tablefac2"));
    REQUIRE(perm.has_value());
    CHECK(*perm == std::vector<Letter>{2, 0, 1});
}

TEST_CASE("inconsistent block map") {
    // sending one legal tm pair to a new letter breaks the induced rule
    auto map = psi_map();
    const auto tm = catalog("tm");
    map.target = Alphabet({"1", "-1", "x"});
    map.table[block(tm, "1 1")] = 2;
    const auto d = induced_substitution(tm, map);
    CHECK_FALSE(d);
    CHECK(d.witness.size() == 2);
    CHECK_FALSE(d.describe_witness(tm.alphabet()).empty());
}

TEST_CASE("block map checks") {
    auto map = chi_map();
    const auto rs = catalog("rs4");
    CHECK(check_block_map(rs, map).ok());
    map.table.erase(map.table.begin());
    CHECK(check_block_map(rs, map).missing.size() == 1);
    map.table[block(rs, "aa")] = 0;
    CHECK(check_block_map(rs, map).illegal.size() == 1);
}

TEST_CASE("symbol identification") {
    const auto fmax = catalog("fmax");
    const auto fg = identify_symbols(fmax, parse_identification(fmax.alphabet(), "f=g"));
    REQUIRE(fg);
    CHECK(fg.substitution->size() == 6);
    const auto smallest = identify_symbols(fmax, parse_identification(fmax.alphabet(), "e=f=g,a=b=c=d"));
    REQUIRE(smallest);
    CHECK(smallest.substitution->size() == 2);
    CHECK(is_primitive(*smallest.substitution));
    const auto bad = identify_symbols(fmax, parse_identification(fmax.alphabet(), "a=e"));
    CHECK_FALSE(bad);
    CHECK_FALSE(bad.describe_witness(fmax.alphabet()).empty());
    CHECK_THROWS(parse_identification(fmax.alphabet(), "a=z"));
    CHECK_THROWS(parse_identification(fmax.alphabet(), "a=b,b=c"));

    // composing identifications step by step
    const auto efg = identify_symbols(fmax, parse_identification(fmax.alphabet(), "e=f=g"));
    REQUIRE(efg);
    const auto then_ab = identify_symbols(*efg.substitution, parse_identification(efg.substitution->alphabet(), "a=b"));
    const auto direct = identify_symbols(fmax, parse_identification(fmax.alphabet(), "e=f=g,a=b"));
    REQUIRE(then_ab);
    REQUIRE(direct);
    CHECK(equivalent_up_to_renaming(*then_ab.substitution, *direct.substitution));
}

TEST_CASE("local inverses") {
    const auto rs = catalog("rs4");
    const auto inv = invert_block_map(rs, phi_map(), 6);
    REQUIRE(inv.has_value());
    CHECK(inv->radius > 0);
    // 1̄1̄1̄1̄ has the unique preimage dcdc
    std::set<Pattern> preimages;
    const Pattern four = Pattern::word({1, 1, 1, 1});
    for (const auto& w : legal_patterns(rs, {1, 4}).members)
        if (apply_block_map(phi_map(), w) == four) preimages.insert(w);
    CHECK(preimages.size() == 1);
    CHECK(text(rs, *preimages.begin()) == "dcdc");

    const auto tm = catalog("tm");
    const auto id = letter_projection(tm, {0, 1}, tm.alphabet());
    const auto inv_id = invert_block_map(tm, id, 2);
    REQUIRE(inv_id.has_value());
    CHECK(inv_id->radius == 0);
    CHECK_FALSE(invert_block_map(tm, psi_map(), 4).has_value());
}

TEST_CASE("block map search") {
    const auto tm = catalog("tm");
    const auto found = search_block_map(tm, catalog("pd"), {1, 2});
    REQUIRE(found.status == SearchStatus::found);
    const auto induced = induced_substitution(tm, *found.map);
    REQUIRE(induced);
    CHECK(equivalent_up_to_renaming(*induced.substitution, catalog("pd")));

    const auto g = catalog("gtm", {2, 1, {}});
    const auto gp = search_block_map(g, catalog("gpd", {2, 1, {}}), {1, 2});
    CHECK(gp.status == SearchStatus::found);

    const auto self = search_block_map(tm, tm, {1, 1});
    REQUIRE(self.status == SearchStatus::found);
    CHECK(self.candidates >= 1);

    const auto capped = search_block_map(catalog("rs4"), catalog("toeplitzT"), {1, 2}, 1);
    CHECK(capped.status == SearchStatus::exhausted);
}

TEST_CASE("uniform two-to-one projection") {
    const auto sq = catalog("squiral");
    const auto counts = preimage_counts(sq, squiral_block_map(), {4, 4});
    CHECK(counts.size() >= 100);
    for (const auto& [p, n] : counts) CHECK(n == 2);

    const auto tm = catalog("tm");
    const auto tm_counts = preimage_counts(tm, psi_map(), {1, 100});
    CHECK(tm_counts.size() >= 100);
    for (const auto& [p, n] : tm_counts) CHECK(n == 2);
}

TEST_CASE("functoriality on random patches") {
    std::mt19937 rng(20240611);
    for (auto& fc : factor_cases()) {
        const std::string name = fc.name;
        CAPTURE(name);
        const auto induced = induced_substitution(fc.src, fc.map);
        REQUIRE(induced);
        const auto& tgt = *induced.substitution;
        const int level = fc.src.dim() == 2 ? (fc.src.block_rows() == 3 ? 3 : 5) : 9;
        const Pattern big = supertile(fc.src, 0, level);
        const int lr = fc.src.block_rows(), lc = fc.src.block_cols();
        const int off_r = (lr - 1) * static_cast<int>(fc.map.anchor.row), off_c = (lc - 1) * static_cast<int>(fc.map.anchor.col);
        for (int trial = 0; trial < 40; ++trial) {
            const int h = fc.src.dim() == 2 ? 2 + static_cast<int>(rng() % 3) : 1;
            const int w = fc.src.dim() == 2 ? 2 + static_cast<int>(rng() % 3) : 2 + static_cast<int>(rng() % 19);
            const int r0 = static_cast<int>(rng() % static_cast<unsigned>(big.rows() - h + 1));
            const int c0 = static_cast<int>(rng() % static_cast<unsigned>(big.cols() - w + 1));
            Pattern p = big.sub(r0, c0, h, w);
            p.set_origin({});
            const Pattern lhs = apply_block_map(fc.map, apply(fc.src, p));
            const Pattern rhs = apply(tgt, apply_block_map(fc.map, p));
            bool ok = true;
            for (int r = 0; r < rhs.rows() && ok; ++r)
                for (int c = 0; c < rhs.cols() && ok; ++c) ok = rhs.at(r, c) == lhs.at(r + off_r, c + off_c);
            CHECK(ok);
        }
    }
}

TEST_CASE("seed transport") {
    const auto rs = catalog("rs4");
    const auto t = catalog("toeplitzT");
    const Pattern w = fixed_point_patch(rs, make_seed(rs, {{"b", "a"}}, 2), 4);
    const Pattern image = apply_block_map(chi_map(), w);
    const Pattern wt = fixed_point_patch(t, make_seed(t, {{"C", "A"}}, 2), 4);
    for (std::int64_t x = image.origin().col; x < image.origin().col + image.cols(); ++x) CHECK(image.at_global({0, x}) == wt.at_global({0, x}));

    const auto tm = catalog("tm");
    const auto pd = catalog("pd");
    const Pattern wtm = fixed_point_patch(tm, make_seed(tm, {{"1", "1"}}, 2), 4);
    const Pattern ipd = apply_block_map(psi_map(), wtm);
    const Pattern wpd = fixed_point_patch(pd, make_seed(pd, {{"-1", "1"}}, 2), 4);
    for (std::int64_t x = ipd.origin().col; x < ipd.origin().col + ipd.cols(); ++x) CHECK(ipd.at_global({0, x}) == wpd.at_global({0, x}));
}

TEST_CASE("block map file format") {
    const auto tm = catalog("tm");
    const auto psi = psi_map();
    const auto again = parse_block_map(format_block_map(psi), tm);
    CHECK(again.table == psi.table);
    CHECK(again.window == psi.window);
    const auto sq = squiral_block_map();
    const auto sq_again = parse_block_map(format_block_map(sq), catalog("squiral"));
    CHECK(sq_again.table == sq.table);
    CHECK(sq_again.anchor == sq.anchor);
    CHECK_FALSE(check_block_map(tm, parse_block_map("window: 1x2\n1 1 -> 1\n", tm)).ok());
    CHECK_THROWS(parse_block_map("window: 1x2\n1 1 1\n", tm));
    CHECK_THROWS(parse_block_map("window: 12\n", tm));
}

}  // TEST_SUITE

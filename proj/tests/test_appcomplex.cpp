#include <doctest.h>

#include <sstream>

#include "substfactor/appcomplex.hpp"
#include "substfactor/catalog.hpp"
#include "substfactor/factors.hpp"
#include "substfactor/zeta.hpp"
#include "printed.hpp"

using namespace substfactor;

namespace {

AbelianInvariants inv(const std::string& s) { return parse_invariants(s); }

BigMatrix diag(std::initializer_list<long long> d) {
    BigMatrix m = BigMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (long long x : d) {
        m(i, i) = x;
        ++i;
    }
    return m;
}

Substitution quotient(const std::string& name, const std::string& ident) {
    const auto s = catalog(name);
    const auto q = identify_symbols(s, parse_identification(s.alphabet(), ident));
    REQUIRE(q.substitution.has_value());
    return *q.substitution;
}

}  // namespace

TEST_SUITE("appcomplex") {

TEST_CASE("vertex collars are the 2x2 language") {
    CHECK(build_approximant(catalog("squiral")).count(0) == 14);
    CHECK(build_approximant(catalog("table")).count(0) == 24);
    const auto tm = build_approximant(catalog("tm"));
    CHECK(tm.d == 1);
    CHECK(tm.count(0) == 4);
    CHECK(tm.count(1) == 6);
}

TEST_CASE("boundaries square to zero and the action is a chain map") {
    for (const auto& name : {"squiral", "fmax", "table", "tablefac1", "tablefac2", "tm", "pd", "rs4", "toeplitzT", "universal"}) {
        CAPTURE(name);
        const auto s = catalog(name);
        const auto cw = build_approximant(s);
        const auto action = substitution_action(s, cw);
        const auto check = check_complex(cw, &action);
        CHECK_MESSAGE(check.ok(), check.witness);
        for (std::size_t k = 0; k < action.cochain.size(); ++k)
            CHECK(action.cochain[k] == action.chain[k].transpose());
    }
}

TEST_CASE("torus") {
    for (int d = 1; d <= 2; ++d) {
        const auto cw = torus_approximant(d);
        const auto h = integral_cohomology(cw);
        REQUIRE(h.size() == static_cast<std::size_t>(d + 1));
        CHECK(h[0] == inv("Z"));
        CHECK(h[static_cast<std::size_t>(d)] == inv("Z"));
        if (d == 2) CHECK(h[1] == inv("Z^2"));
        const auto action = torus_action(d, 3);
        CHECK(check_complex(cw, &action).ok());
        CHECK(zeta_ap(action.cochain) == solenoid_zeta(d, 3));
        const auto groups = cohomology_groups(cw, &action);
        CHECK(direct_limit(groups[static_cast<std::size_t>(d)]) == inv(d == 1 ? "Z[1/3]" : "Z[1/9]"));
        if (d == 2) CHECK(direct_limit(groups[1]) == inv("Z[1/3]^2"));
    }
}

TEST_CASE("direct limits of free groups") {
    CHECK(direct_limit(diag({9})) == inv("Z[1/9]"));
    CHECK(direct_limit(diag({1})) == inv("Z"));
    CHECK(direct_limit(diag({3, 1})) == inv("Z[1/3] + Z"));
    CHECK(direct_limit(diag({0, 2, -1})) == inv("Z[1/2] + Z"));
    CHECK(direct_limit(diag({0})) == inv("0"));
    BigMatrix nil(2, 2);
    nil << 0, 1, 0, 0;
    CHECK(direct_limit(nil) == inv("0"));
    BigMatrix fib(2, 2);
    fib << 1, 1, 1, 0;
    CHECK(direct_limit(fib) == inv("Z^2"));
}

TEST_CASE("invariants text round trip") {
    for (const auto& s : {"Z[1/9] + Z[1/3]^2 + Z^6", "Z[1/9] + Z[1/3]^2 + Z^2 + Z_2", "Z", "0", "Z[1/4] + Z[1/2]^4 + Z^3 + Z_2"})
        CHECK(format_invariants(inv(s)) == s);
    CHECK_THROWS_AS(inv("Q"), std::invalid_argument);
    CHECK_THROWS_AS(inv("Z[1/]"), std::invalid_argument);
}

TEST_CASE("hull cohomology of the squiral, its maximal factor and the table") {
    const auto sq = cohomology_of_hull(catalog("squiral"));
    REQUIRE(sq.groups.size() == 3);
    CHECK(sq.groups[2] == inv("Z[1/9] + Z[1/3]^2 + Z^6"));
    CHECK(sq.groups[1] == inv("Z[1/3]^2"));
    CHECK(sq.groups[0] == inv("Z"));

    const auto fm = cohomology_of_hull(catalog("fmax"));
    CHECK(fm.groups[2] == inv("Z[1/9] + Z[1/3]^2 + Z^2 + Z_2"));
    CHECK(fm.groups[1] == inv("Z[1/3]^2"));
    CHECK(fm.groups[0] == inv("Z"));

    const auto ta = cohomology_of_hull(catalog("table"));
    CHECK(ta.groups[2] == inv("Z[1/4] + Z[1/2]^4 + Z^3 + Z_2"));
    CHECK(ta.groups[1] == inv("Z[1/2]^2"));
    CHECK(ta.groups[0] == inv("Z"));

    const auto pd = cohomology_of_hull(catalog("pd"));
    CHECK(pd.groups[1] == inv("Z[1/2] + Z"));
    CHECK(pd.groups[0] == inv("Z"));
}

TEST_CASE("zeta functions of the approximants") {
    for (const auto& name : {"squiral", "fmax", "table"}) {
        CAPTURE(name);
        const auto h = cohomology_of_hull(catalog(name));
        CHECK(zeta_ap(h.action.cochain) == closed_form_zeta(name));
    }
    const auto pd = cohomology_of_hull(catalog("pd"));
    const auto z = zeta_ap(pd.action.cochain);
    const auto a = counts_from_zeta(z, 10);
    CHECK(a == periodic_point_counts(catalog("pd"), 10));
    // an eigenvalue 2 on H^1
    CHECK(z.denominator().divide_exact(IntPolynomial::binomial(BigInt(2), 1)).has_value());
}

TEST_CASE("direct fixed point counts agree with the zeta functions") {
    CHECK(periodic_point_counts(catalog("squiral"), 3) == counts_from_zeta(closed_form_zeta("squiral"), 3));
    CHECK(periodic_point_counts(catalog("fmax"), 3) == counts_from_zeta(closed_form_zeta("fmax"), 3));
    CHECK(periodic_point_counts(catalog("table"), 4) == counts_from_zeta(closed_form_zeta("table"), 4));
    CHECK(periodic_point_counts(catalog("tm"), 10) ==
          counts_from_zeta(zeta_ap(cohomology_of_hull(catalog("tm")).action.cochain), 10));
}

TEST_CASE("larger collars give the same cohomology") {
    for (const auto& name : {"tm", "pd", "fmax", "table"}) {
        CAPTURE(name);
        const auto s = catalog(name);
        const auto one = cohomology_of_hull(s);
        const auto cw = build_approximant(s, 2);
        const auto action = substitution_action(s, cw);
        CHECK(check_complex(cw, &action).ok());
        const auto groups = cohomology_groups(cw, &action);
        for (std::size_t k = 0; k < groups.size(); ++k) CHECK(direct_limit(groups[k]) == one.groups[k]);
    }
}

TEST_CASE("factors of the squiral") {
    for (const auto& [ident, h2] : printed::fmax_factor_rows) {
        CAPTURE(ident);
        const auto h = cohomology_of_hull(quotient("fmax", ident));
        CHECK(format_invariants(h.groups[2]) == std::string(h2));
        CHECK(h.groups[0] == inv("Z"));
    }
}

TEST_CASE("matrix files") {
    BigMatrix m(2, 3);
    m << 1, -2, 3, 0, 40, -5;
    std::stringstream ss;
    write_matrix(ss, m);
    CHECK(read_matrix(ss) == m);
    const BigMatrix empty(0, 4);
    std::stringstream se;
    write_matrix(se, empty);
    const auto back = read_matrix(se);
    CHECK(back.rows() == 0);
    CHECK(back.cols() == 4);
    std::stringstream bad("2 2\n1 2\n3\n");
    CHECK_THROWS(read_matrix(bad));
}

}  // TEST_SUITE

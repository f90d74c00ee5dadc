#include "cuspcount/ring.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace cuspcount;
using ring::Mono;
using ring::RingClass;

namespace {

RingClass random_class(std::mt19937_64& rng, int max_coeff = 9) {
    RingClass x;
    for (Mono m : ring::basis()) {
        int c = static_cast<int>(rng() % (2 * max_coeff + 1)) - max_coeff;
        if (c != 0) x += RingClass::monomial(m, c);
    }
    return x;
}

}  // namespace

TEST_CASE("reduction rewrites a^4 and H^3") {
    // a * a^3 dies
    CHECK(ring::reduce({{4, 0, 1}}).is_zero());
    CHECK((RingClass::monomial(Mono{1, 0}) * RingClass::monomial(Mono{3, 0})).is_zero());

    // H^3 = a H^2 - a^2 H + a^3
    RingClass h3 = ring::reduce({{0, 3, 1}});
    RingClass expected = RingClass::monomial(Mono{1, 2}) - RingClass::monomial(Mono{2, 1}) +
                         RingClass::monomial(Mono{3, 0});
    CHECK(h3 == expected);

    // applying the rule twice is consistent with H^4 = 0 on P^3
    CHECK(ring::reduce({{0, 4, 1}}).is_zero());
    CHECK(ring::reduce({{0, 5, 1}}).is_zero());

    // H^2 * H reduces like H^3
    CHECK(RingClass::monomial(Mono{0, 2}) * RingClass::generator_h() == expected);
}

TEST_CASE("reduce is idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ring::PolyTerm> poly;
        for (int t = 0; t < 12; ++t)
            poly.push_back({static_cast<int>(rng() % 6), static_cast<int>(rng() % 6),
                            Int(static_cast<int>(rng() % 19) - 9)});
        RingClass once = ring::reduce(poly);
        std::vector<ring::PolyTerm> again;
        for (Mono m : ring::basis())
            if (once.coeff(m) != 0) again.push_back({m.i, m.j, once.coeff(m)});
        CHECK(ring::reduce(again) == once);
    }
}

TEST_CASE("multiplication by the identity") {
    RingClass x = ring::reduce({{0, 1, 3}, {1, 0, -1}});  // 3H - a
    CHECK(x * RingClass::one() == x);
}

TEST_CASE("multiplication is commutative and associative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        RingClass x = random_class(rng), y = random_class(rng), z = random_class(rng);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("ring operations preserve gradedness") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int ka = static_cast<int>(rng() % 6), kb = static_cast<int>(rng() % 6);
        RingClass x = random_class(rng).degree_part(ka);
        RingClass y = random_class(rng).degree_part(kb);
        int deg = -1;
        CHECK(( x * y ).is_homogeneous(&deg));
        if (!(x * y).is_zero()) CHECK(deg == ka + kb);
    }
}

TEST_CASE("integrate pairs against the fundamental class") {
    CHECK(ring::integrate(RingClass::monomial(Mono{3, 2})) == 1);
    CHECK(ring::integrate(ring::reduce({{2, 3, 1}})) == 1);  // a^2 H^3 -> a^3 H^2
    CHECK(ring::integrate(ring::reduce({{0, 5, 1}})) == 0);  // H^5 -> 0
}

TEST_CASE("graded integrals vanish off the top degree") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        int ka = static_cast<int>(rng() % 6), kb = static_cast<int>(rng() % 6);
        if (ka + kb == ring::kTopDegree) continue;
        RingClass x = random_class(rng).degree_part(ka);
        RingClass y = random_class(rng).degree_part(kb);
        CHECK(ring::integrate(x * y) == 0);
    }
}

TEST_CASE("Chern classes of W") {
    auto [c1, c2] = ring::chern_w();
    CHECK(c1 == ring::reduce({{0, 1, 3}, {1, 0, -1}}));              // 3H - a
    CHECK(c2 == ring::reduce({{2, 0, 1}, {1, 1, -2}, {0, 2, 3}}));   // a^2 - 2aH + 3H^2

    // c(W) c(gamma* (x) gamma*) = c(TP^3) degreewise up to degree 2
    RingClass cw = RingClass::one() + c1 + c2;
    RingClass twist = ring::reduce({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});  // 1 + a + H
    RingClass lhs = cw * twist;
    RingClass rhs = ring::reduce({{0, 0, 1}, {0, 1, 4}, {0, 2, 6}, {0, 3, 4}, {0, 4, 1}});
    for (int k = 0; k <= 2; ++k) CHECK(lhs.degree_part(k) == rhs.degree_part(k));

    // the truncated product example: (1 + c1 + c2)(1 + a + H) = 1 + 4H + 6H^2 in degrees <= 2
    CHECK(lhs.degree_part(0) == RingClass::one());
    CHECK(lhs.degree_part(1) == RingClass::monomial(Mono{0, 1}, 4));
    CHECK(lhs.degree_part(2) == RingClass::monomial(Mono{0, 2}, 6));
}

TEST_CASE("Poincare pairing") {
    const auto& g = ring::pairing_matrix();
    auto at = [&](Mono e, Mono f) { return g[e.index()][f.index()]; };

    CHECK(at(Mono{0, 0}, Mono{3, 2}) == 1);
    CHECK(at(Mono{1, 0}, Mono{3, 2}) == 0);  // total degree 6
    CHECK(at(Mono{1, 1}, Mono{2, 1}) == 1);  // integrate(a^3 H^2)

    for (Mono e : ring::basis())
        for (Mono f : ring::basis()) CHECK(at(e, f) == at(f, e));

    // dual classes invert the pairing exactly
    for (Mono e : ring::basis()) {
        RingClass dual = ring::poincare_dual(e);
        for (Mono f : ring::basis())
            CHECK(ring::integrate(dual * RingClass::monomial(f)) == (e == f ? 1 : 0));
    }
}

TEST_CASE("pairing blocks in complementary degrees are invertible") {
    // row content of degree k pairs only with column content of degree 5 - k;
    // poincare_dual existing for every basis monomial already certifies
    // invertibility, and the duals must be concentrated in the right degree
    for (Mono e : ring::basis()) {
        int deg = -1;
        CHECK(ring::poincare_dual(e).is_homogeneous(&deg));
        CHECK(deg == ring::kTopDegree - e.degree());
    }
}

TEST_CASE("presentation fingerprint is stable") {
    CHECK(ring::presentation_fingerprint() == ring::presentation_fingerprint());
    CHECK(ring::presentation_fingerprint().size() == 16);
}

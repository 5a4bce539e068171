#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "maxarc/geometry.hpp"
#include "maxarc/pqmaps.hpp"
#include "maxarc/search.hpp"

using namespace maxarc;

namespace {

Conic random_valid_conic(const Field& f, SplitRng& rng) {
    while (true) {
        const gf_elem alpha = rng.nonzero_elem(f.m());
        const gf_elem beta = rng.nonzero_elem(f.m());
        const gf_elem lambda = rng.nonzero_elem(f.m());
        if (f.trace(f.mul(alpha, beta)) == 1) return Conic{alpha, beta, lambda};
    }
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("point normalization") {
    const Field f(find_modulus(4));
    CHECK(normalize_point(f, 3, 7, 5) == normalize_point(f, f.mul(3, 9), f.mul(7, 9), f.mul(5, 9)));
    CHECK(normalize_point(f, 6, 0, 0) == ProjPoint{1, 0, 0});
    CHECK(normalize_point(f, 6, 3, 0).y == 1);
    CHECK_THROWS_AS(normalize_point(f, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("conic points") {
    const Field f3(find_modulus(3));
    SplitRng rng(2);
    const Conic c = random_valid_conic(f3, rng);
    const std::vector<ProjPoint> pts = conic_points(f3, c);
    CHECK(pts.size() == 9);  // q + 1
    for (const ProjPoint& p : pts) {
        CHECK(p.z == 1);
        const gf_elem v = f3.mul(c.alpha, f3.sqr(p.x)) ^ f3.mul(p.x, p.y) ^
                          f3.mul(c.beta, f3.sqr(p.y)) ^ *c.lambda;
        CHECK(v == 0);
        CHECK(!(p.x == 0 && p.y == 0));  // the nucleus is on no nondegenerate conic
    }

    const Field f5(find_modulus(5));
    for (int i = 0; i < 50; ++i) CHECK(conic_points(f5, random_valid_conic(f5, rng)).size() == 33);

    CHECK_THROWS_AS(conic_points(f5, Conic{1, 1, gf_elem{0}}), std::invalid_argument);
    CHECK_THROWS_AS(conic_points(f5, Conic{1, 1, std::nullopt}), std::invalid_argument);
    // reducible alpha x^2 + x + beta
    gf_elem alpha = 1, beta = 1;
    while (f5.trace(f5.mul(alpha, beta)) != 0) ++beta;
    CHECK_THROWS_AS(conic_points(f5, Conic{alpha, beta, gf_elem{1}}), std::invalid_argument);
}

TEST_CASE("composition") {
    const Field f(find_modulus(5));
    SplitRng rng(7);
    for (int i = 0; i < 50; ++i) {
        const Conic c1 = random_valid_conic(f, rng);
        Conic c2 = random_valid_conic(f, rng);
        if (c1.lambda == c2.lambda) continue;
        const Conic lr = compose(f, c1, c2), rl = compose(f, c2, c1);
        CHECK(lr == rl);
        CHECK(*lr.lambda == (*c1.lambda ^ *c2.lambda));
        // same pencil: alpha and beta are preserved
        const Conic same{c1.alpha, c1.beta, *c2.lambda};
        if (f.trace(f.mul(same.alpha, same.beta)) == 1) {
            const Conic comp = compose(f, c1, same);
            CHECK(comp.alpha == c1.alpha);
            CHECK(comp.beta == c1.beta);
        }
    }
    const Conic c{1, 3, gf_elem{5}};
    CHECK_THROWS_AS(compose(f, c, c), std::invalid_argument);
}

TEST_CASE("closed sets") {
    const Field f(find_modulus(5));
    SplitRng rng(13);
    CHECK(is_closed(f, {random_valid_conic(f, rng)}));

    // a pencil over a subgroup is closed
    const Subspace A = random_subspace(rng, f.spec(), 3);
    gf_elem alpha = 2, beta = 1;
    while (f.trace(f.mul(alpha, beta)) != 1) ++beta;
    std::vector<Conic> pencil;
    for (gf_elem lam : members(A))
        if (lam != 0) pencil.push_back(Conic{alpha, beta, lam});
    CHECK(is_closed(f, pencil));
    CHECK(pencil.size() == 7);

    // dropping one conic breaks closure
    std::vector<Conic> broken(pencil.begin(), pencil.end() - 1);
    CHECK_FALSE(is_closed(f, broken));

    // duplicate lambdas are rejected
    std::vector<Conic> dup = pencil;
    dup.push_back(Conic{f.mul(alpha, 3) ? f.mul(alpha, 3) : 1, beta, *pencil[0].lambda});
    CHECK_THROWS_AS(is_closed(f, dup), std::invalid_argument);
}

TEST_CASE("build_arc sizes") {
    const Field f(find_modulus(4));
    SplitRng rng(21);
    // d = 1: one conic plus the nucleus is a hyperoval
    const Arc hyper = build_arc(f, {random_valid_conic(f, rng)});
    CHECK(hyper.points.size() == 18);  // q + 2
    CHECK(hyper.degree_claim == 2);
    CHECK(verify_maximal_arc(f, hyper).is_max);

    // empty closed set: the nucleus alone
    const Arc nucleus = build_arc(f, {});
    CHECK(nucleus.points.size() == 1);
    CHECK(nucleus.degree_claim == 1);
    const VerifyReport rep = verify_maximal_arc(f, nucleus);
    CHECK(rep.is_max);
    CHECK(rep.degree == 1);
}

TEST_CASE("denniston point sets") {
    const Field f3(find_modulus(3));
    gf_elem b = 1;
    while (f3.trace(b) != 1) ++b;

    // A = {0}: only the nucleus
    const Arc single = denniston_arc(f3, 1, 1, b, span(f3.spec(), {}));
    CHECK(single.points.size() == 1);
    CHECK(single.points[0] == ProjPoint{0, 0, 1});

    // A = whole field: the full affine chart
    std::vector<gf_elem> all;
    for (gf_elem a = 0; a < f3.order(); ++a) all.push_back(a);
    CHECK(denniston_arc(f3, 1, 1, b, span(f3.spec(), all)).points.size() == 64);  // q^2

    // reducible form is rejected
    gf_elem bad = 1;
    while (f3.trace(bad) != 0) ++bad;
    CHECK_THROWS_AS(denniston_arc(f3, 1, 1, bad, span(f3.spec(), {})), std::invalid_argument);
}

TEST_CASE("denniston route equals the pencil route at m=5") {
    const Field f(find_modulus(5));
    SplitRng rng(31);
    const Subspace A = random_subspace(rng, f.spec(), 3);
    const gf_elem a = 3, h = 7;
    gf_elem b = 1;
    while (f.trace(f.mul(f.mul(a, b), f.inv(f.sqr(h)))) != 1) ++b;

    const Arc direct = denniston_arc(f, a, h, b, A);
    CHECK(direct.points.size() == 232);
    CHECK(verify_maximal_arc(f, direct).is_max);

    // pencil in the conic family: indices (a/h, b/h, lambda/h)
    const gf_elem hinv = f.inv(h);
    std::vector<Conic> pencil;
    for (gf_elem lam : members(A))
        if (lam != 0) pencil.push_back(Conic{f.mul(a, hinv), f.mul(b, hinv), f.mul(lam, hinv)});
    const Arc via_pencil = build_arc(f, pencil);
    CHECK(via_pencil.points == direct.points);
}

TEST_CASE("conics of a closed set are pairwise disjoint") {
    const Field f(find_modulus(5));
    SplitRng rng(37);
    const Subspace A = random_subspace(rng, f.spec(), 3);
    gf_elem alpha = 5, beta = 1;
    while (f.trace(f.mul(alpha, beta)) != 1) ++beta;
    std::vector<Conic> pencil;
    for (gf_elem lam : members(A))
        if (lam != 0) pencil.push_back(Conic{alpha, beta, lam});
    std::set<ProjPoint> seen;
    for (const Conic& c : pencil) {
        for (const ProjPoint& p : conic_points(f, c)) CHECK(seen.insert(p).second);
    }
}

TEST_CASE("verification flags damaged arcs") {
    const Field f(find_modulus(4));
    SplitRng rng(41);
    Arc arc = build_arc(f, {random_valid_conic(f, rng)});
    arc.points.pop_back();
    const VerifyReport rep = verify_maximal_arc(f, arc);
    CHECK_FALSE(rep.is_max);
}

TEST_CASE("secant counting identity") {
    const Field f(find_modulus(5));
    SplitRng rng(47);
    const Subspace A = random_subspace(rng, f.spec(), 2);
    gf_elem b = 1;
    while (f.trace(b) != 1) ++b;
    const Arc arc = denniston_arc(f, 1, 1, b, A);
    const VerifyReport rep = verify_maximal_arc(f, arc);
    REQUIRE(rep.is_max);
    const std::uint64_t q = f.order(), n = rep.degree, k = arc.points.size();
    CHECK(k * (q + 1) % n == 0);
    CHECK(rep.histogram.at(n) == k * (q + 1) / n);
    CHECK(rep.histogram.at(0) == q * q + q + 1 - k * (q + 1) / n);
}

TEST_CASE("degree limit on verification") {
    Arc arc{find_modulus(11), {ProjPoint{0, 0, 1}}, 1};
    const Field f(arc.fs);
    CHECK_THROWS_AS(verify_maximal_arc(f, arc), std::invalid_argument);
}

TEST_CASE("worker count does not change the verification report") {
    const Field f(find_modulus(5));
    SplitRng rng(53);
    const Subspace A = random_subspace(rng, f.spec(), 3);
    gf_elem b = 1;
    while (f.trace(b) != 1) ++b;
    const Arc arc = denniston_arc(f, 1, 1, b, A);
    const VerifyReport lone = verify_maximal_arc(f, arc, 1);
    const VerifyReport multi = verify_maximal_arc(f, arc, 3);
    CHECK(lone.is_max == multi.is_max);
    CHECK(lone.degree == multi.degree);
    CHECK(lone.histogram == multi.histogram);
}

TEST_SUITE_END();

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "linsel/polytope.hpp"

#include <random>

using namespace linsel;

namespace {

Rat q(long n, long d = 1) { return Rat(n, d); }

Polytope unit_square() {
    return canonicalize({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}});
}

Polytope triangle_002_200() {
    return canonicalize({{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}});
}

Polytope rand_polytope(std::mt19937_64& rng, std::size_t dim, std::size_t npts) {
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < npts; ++i) {
        RatVec p(dim);
        for (auto& v : p) v = q(num(rng), den(rng));
        pts.push_back(std::move(p));
    }
    return canonicalize(pts);
}

RatVec rand_point_in(const Polytope& k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(0, 6);
    RatVec weights(k.vertices.size());
    Rat total(0);
    for (auto& v : weights) {
        v = q(w(rng));
        total += v;
    }
    if (total == 0) {
        weights[0] = 1;
        total = 1;
    }
    RatVec p = zero_vec(k.dim);
    for (std::size_t i = 0; i < weights.size(); ++i)
        p = vec_add(p, vec_scale(weights[i] / total, k.vertices[i]));
    return p;
}

}  // namespace

TEST_CASE("canonicalize prunes midpoints and interior points") {
    auto seg = canonicalize({{q(0), q(0)}, {q(1), q(0)}, {q(1, 2), q(0)}});
    CHECK(seg.vertices == std::vector<RatVec>{{q(0), q(0)}, {q(1), q(0)}});

    auto single = canonicalize({{q(0), q(0)}});
    CHECK(single.vertices.size() == 1);

    auto tri = canonicalize({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1, 4), q(1, 4)}});
    CHECK(tri.vertices.size() == 3);
    // Independent check: the pruned point really is a hull member of the rest.
    CHECK(in_hull({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, {q(1, 4), q(1, 4)}));
}

TEST_CASE("canonicalize is idempotent on random inputs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 25; ++t) {
        auto k = rand_polytope(rng, 2 + t % 3, 4 + t % 7);
        auto again = canonicalize(k.vertices);
        CHECK(again == k);
    }
}

TEST_CASE("canonicalize rejects bad input") {
    CHECK_THROWS_AS(canonicalize({}), EmptyInput);
    CHECK_THROWS_AS(canonicalize({{q(1)}, {q(1), q(2)}}), MixedDimensions);
}

TEST_CASE("canonicalize agrees with the pure pruning oracle") {
    // The oracle keeps a point iff it is outside the hull of the others,
    // deciding every point by feasibility alone; the production path may take
    // the planar fast route instead.
    auto oracle = [](std::vector<RatVec> pts) {
        std::sort(pts.begin(), pts.end(), lex_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<RatVec> kept;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!in_hull(pts, pts[i], i)) kept.push_back(pts[i]);
        return kept;
    };
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3), count(3, 10);
    for (int t = 0; t < 40; ++t) {
        const std::size_t dim = 2 + t % 3;
        std::vector<RatVec> pts;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            RatVec p(dim);
            for (auto& v : p) v = q(num(rng), den(rng));
            // every third case is squashed onto a plane to hit the 2D path
            if (t % 3 == 0 && dim == 3) p[2] = p[0] + p[1];
            pts.push_back(std::move(p));
        }
        CHECK(canonicalize(pts).vertices == oracle(pts));
    }
}

TEST_CASE("support intervals") {
    auto sq = unit_square();
    auto s = support(sq, Functional{{q(1), q(0)}});
    CHECK(s.low == q(0));
    CHECK(s.high == q(1));

    auto tri = triangle_002_200();
    auto s2 = support(tri, Functional{{q(1), q(1)}});
    CHECK(s2.low == q(0));
    CHECK(s2.high == q(2));

    // Segment {(0,0),(x,1)} with x = -1.
    auto seg = canonicalize({{q(0), q(0)}, {q(-1), q(1)}});
    auto s3 = support(seg, Functional{{q(1), q(0)}});
    CHECK(s3.low == q(-1));
    CHECK(s3.high == q(0));
}

TEST_CASE("sections of the unit square") {
    auto sq = unit_square();
    Functional fx{{q(1), q(0)}};

    auto mid = section(sq, fx, q(1, 2));
    CHECK(mid == canonicalize({{q(1, 2), q(0)}, {q(1, 2), q(1)}}));

    auto left = section(sq, fx, q(0));
    CHECK(left == canonicalize({{q(0), q(0)}, {q(0), q(1)}}));
}

TEST_CASE("section of triangle by hand hull") {
    auto tri = triangle_002_200();
    auto cut = section(tri, Functional{{q(1), q(0)}}, q(1, 2));
    CHECK(cut == canonicalize({{q(1), q(0)}, {q(1), q(1)}}));
}

TEST_CASE("degenerate section returns K itself") {
    auto seg = canonicalize({{q(0), q(0)}, {q(0), q(1)}});
    auto cut = section(seg, Functional{{q(1), q(0)}}, q(3, 4));
    CHECK(cut == seg);
}

TEST_CASE("section support pins the exact level") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        auto k = rand_polytope(rng, 2 + t % 2, 5 + t % 5);
        Functional f{{q(1 + t % 3), q(-1)}};
        if (k.dim == 3) f.coeffs.push_back(q(2));
        Rat theta = q(t % 5, 4);
        auto s = support(k, f);
        auto cut = section(k, f, theta);
        auto s2 = support(cut, f);
        const Rat level =
            s.degenerate() ? s.low : (Rat(1) - theta) * s.low + theta * s.high;
        CHECK(s2.low == level);
        CHECK(s2.high == level);
    }
}

TEST_CASE("every point lies in its own theta section") {
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 20; ++t) {
        auto k = rand_polytope(rng, 2, 6);
        auto p = rand_point_in(k, rng);
        Functional f{{q(1), q(2)}};
        auto s = support(k, f);
        Rat theta =
            s.degenerate() ? Rat(0) : (f(p) - s.low) / (s.high - s.low);
        CHECK(contains(section(k, f, theta), p));
    }
}

TEST_CASE("minkowski sums") {
    auto a = canonicalize({{q(0)}, {q(1)}});
    auto b = canonicalize({{q(2)}, {q(3)}});
    CHECK(minkowski_sum(a, b) == canonicalize({{q(2)}, {q(4)}}));

    auto ex = canonicalize({{q(0), q(0)}, {q(1), q(0)}});
    auto ey = canonicalize({{q(0), q(0)}, {q(0), q(1)}});
    CHECK(minkowski_sum(ex, ey) == unit_square());

    auto t1 = canonicalize({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
    auto t2 = canonicalize({{q(0), q(0)}, {q(-1), q(0)}, {q(0), q(-1)}});
    auto hex = canonicalize({{q(1), q(0)}, {q(-1), q(0)}, {q(0), q(1)},
                             {q(0), q(-1)}, {q(1), q(-1)}, {q(-1), q(1)}});
    CHECK(minkowski_sum(t1, t2) == hex);
}

TEST_CASE("support is additive over minkowski sums") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 15; ++t) {
        auto a = rand_polytope(rng, 2, 5);
        auto b = rand_polytope(rng, 2, 5);
        auto sum = minkowski_sum(a, b);
        for (long fx = -2; fx <= 2; ++fx) {
            Functional f{{q(fx), q(3)}};
            auto sa = support(a, f), sb = support(b, f), ss = support(sum, f);
            CHECK(ss.low == sa.low + sb.low);
            CHECK(ss.high == sa.high + sb.high);
        }
    }
}

TEST_CASE("minkowski algebra: commutative, associative, scale distributes") {
    std::mt19937_64 rng(56);
    auto a = rand_polytope(rng, 2, 4);
    auto b = rand_polytope(rng, 2, 5);
    auto c = rand_polytope(rng, 2, 4);
    CHECK(minkowski_sum(a, b) == minkowski_sum(b, a));
    CHECK(minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c)));
    Rat lam = q(3, 2);
    CHECK(scale(minkowski_sum(a, b), lam) ==
          minkowski_sum(scale(a, lam), scale(b, lam)));
}

TEST_CASE("scale basics") {
    auto seg = canonicalize({{q(0)}, {q(1)}});
    CHECK(scale(seg, q(2)) == canonicalize({{q(0)}, {q(2)}}));
    CHECK(scale(seg, q(1)) == seg);
    auto s2 = canonicalize({{q(0), q(0)}, {q(3), q(0)}});
    CHECK(scale(s2, q(1, 3)) == canonicalize({{q(0), q(0)}, {q(1), q(0)}}));
    CHECK_THROWS_AS(scale(seg, q(0)), NonpositiveScalar);
}

TEST_CASE("contains") {
    auto sq = unit_square();
    CHECK(contains(sq, {q(1, 2), q(1, 2)}));
    CHECK(!contains(sq, {q(2), q(0)}));
    auto tri = triangle_002_200();
    CHECK(contains(tri, {q(1), q(1)}));
}

TEST_CASE("is_simplex") {
    CHECK(is_simplex(triangle_002_200()));
    CHECK(!is_simplex(unit_square()));
    auto tet = canonicalize({{q(0), q(0), q(0)},
                             {q(1), q(0), q(0)},
                             {q(0), q(1), q(0)},
                             {q(0), q(0), q(1)}});
    CHECK(is_simplex(tet));
}

TEST_CASE("simplex membership representation is unique") {
    std::mt19937_64 rng(77);
    auto tri = triangle_002_200();
    for (int t = 0; t < 10; ++t) {
        auto p = rand_point_in(tri, rng);
        auto bc = barycentric_coords(tri, p);
        RatVec rebuilt = zero_vec(2);
        for (std::size_t i = 0; i < bc.size(); ++i)
            rebuilt = vec_add(rebuilt, vec_scale(bc[i], tri.vertices[i]));
        CHECK(rebuilt == p);
    }
    // On the square representations are not unique: the linear system for the
    // center admits a kernel.
    auto sq = unit_square();
    CHECK_THROWS_AS(barycentric_coords(sq, {q(1, 2), q(1, 2)}), PointOutside);
}

TEST_CASE("is_simplex matches uniqueness of vertex representations") {
    // The representation system over the vertices has a trivial kernel iff
    // the canonical vertices are affinely independent.
    std::mt19937_64 rng(88);
    for (int t = 0; t < 30; ++t) {
        auto k = rand_polytope(rng, 2 + t % 3, 3 + t % 6);
        RatMat a(k.dim + 1, RatVec(k.vertices.size()));
        for (std::size_t c = 0; c < k.dim; ++c)
            for (std::size_t j = 0; j < k.vertices.size(); ++j)
                a[c][j] = k.vertices[j][c];
        for (std::size_t j = 0; j < k.vertices.size(); ++j) a[k.dim][j] = 1;
        auto p = rand_point_in(k, rng);
        RatVec b(p);
        b.push_back(q(1));
        auto solved = solve_linear(a, b);
        REQUIRE(solved.solution.has_value());
        CHECK(is_simplex(k) == solved.kernel.empty());
    }
}

TEST_CASE("concave envelope evaluations") {
    // K = [0,1], f = |2x-1| has vertex values (1, 1); every affine majorant
    // of f is >= 1 on the whole segment, so the envelope at 1/2 equals 1.
    auto seg = canonicalize({{q(0)}, {q(1)}});
    CHECK(concave_envelope_eval(seg, {q(1), q(1)}, {q(1, 2)}) == q(1));

    // |x+y-1| on the unit square; canonical vertex order is
    // (0,0),(0,1),(1,0),(1,1) so the data reads (1,0,0,1).
    auto sq = unit_square();
    CHECK(concave_envelope_eval(sq, {q(1), q(0), q(0), q(1)}, {q(1, 2), q(1, 2)}) == q(1));

    // Affine data reproduces itself.
    std::mt19937_64 rng(31);
    auto tri = triangle_002_200();
    std::vector<Rat> affine;
    RatVec coeff{q(2), q(-1)};
    for (const auto& v : tri.vertices) affine.push_back(dot(coeff, v) + q(5));
    for (int t = 0; t < 10; ++t) {
        auto p = rand_point_in(tri, rng);
        CHECK(concave_envelope_eval(tri, affine, p) == dot(coeff, p) + q(5));
    }

    CHECK_THROWS_AS(concave_envelope_eval(seg, {q(1)}, {q(1, 2)}), ArityMismatch);
    CHECK_THROWS_AS(concave_envelope_eval(seg, {q(1), q(1)}, {q(2)}), PointOutside);
}

TEST_CASE("concave envelope is affine exactly on simplexes") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<int> c(-3, 3);
    auto tri = triangle_002_200();
    for (int t = 0; t < 10; ++t) {
        // Convex data: max of two affine functions sampled at the vertices.
        RatVec g1{q(c(rng)), q(c(rng))}, g2{q(c(rng)), q(c(rng))};
        std::vector<Rat> vals;
        for (const auto& v : tri.vertices)
            vals.push_back(std::max(dot(g1, v), dot(g2, v)));
        auto x = rand_point_in(tri, rng);
        auto y = rand_point_in(tri, rng);
        RatVec mid = vec_scale(q(1, 2), vec_add(x, y));
        const Rat lhs = concave_envelope_eval(tri, vals, mid);
        const Rat rhs = (concave_envelope_eval(tri, vals, x) +
                         concave_envelope_eval(tri, vals, y)) / 2;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("hrep round trip") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 15; ++t) {
        auto k = rand_polytope(rng, 2 + t % 3, 4 + t % 5);
        auto h = to_hrep(k);
        auto back = vertices_of_hrep(h);
        CHECK(back == k);
    }
}

TEST_CASE("intersection of polytopes") {
    auto sq = unit_square();
    auto shifted = canonicalize(
        {{q(1, 2), q(0)}, {q(3, 2), q(0)}, {q(1, 2), q(1)}, {q(3, 2), q(1)}});
    auto inter = intersect(sq, shifted);
    CHECK(inter == canonicalize({{q(1, 2), q(0)}, {q(1), q(0)}, {q(1, 2), q(1)}, {q(1), q(1)}}));

    auto far = canonicalize({{q(5), q(5)}, {q(6), q(5)}, {q(5), q(6)}});
    CHECK(intersect(sq, far).vertices.empty());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "linsel/fixtures.hpp"
#include "linsel/svmap.hpp"

#include <chrono>

using namespace linsel;
using namespace linsel::fixtures;

namespace {

Rat q(long n, long d = 1) { return Rat(n, d); }

Polytope interval(long lo_n, long lo_d, long hi_n, long hi_d) {
    return canonicalize({{q(lo_n, lo_d)}, {q(hi_n, hi_d)}});
}

SetValuedMap unit_square_map() {
    const Cone quadrant = make_cone({{q(1), q(0)}, {q(0), q(1)}}, 2);
    // generators sorted lex: e2 first, then e1
    return make_basis_linear(
        quadrant, {canonicalize({{q(0), q(0)}, {q(0), q(1)}}),
                   canonicalize({{q(0), q(0)}, {q(1), q(0)}})});
}

SetValuedMap three_sample_map() {
    return make_sampled({{{q(1), q(0)}, interval(0, 1, 1, 1)},
                         {{q(0), q(1)}, interval(0, 1, 1, 1)},
                         {{q(1), q(1)}, interval(0, 1, 3, 1)}},
                        2);
}

}  // namespace

TEST_CASE("basis-linear evaluation is the weighted minkowski sum") {
    auto t = unit_square_map();
    auto sq = evaluate_poly(t, {q(1), q(1)});
    CHECK(sq == canonicalize({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}));
    CHECK(evaluate_poly(t, {q(0), q(0)}) == canonicalize({{q(0), q(0)}}));
    CHECK_THROWS_AS(evaluate_poly(t, {q(-1), q(0)}), NotInDomain);
}

TEST_CASE("sampled evaluation via decomposition vertices") {
    auto t = three_sample_map();
    CHECK(evaluate_poly(t, {q(1), q(1)}) == interval(0, 1, 3, 1));
    CHECK(evaluate_poly(t, {q(1), q(0)}) == interval(0, 1, 1, 1));
    CHECK(evaluate_poly(t, {q(2), q(1)}) == interval(0, 1, 4, 1));
    CHECK_THROWS_AS(evaluate_poly(t, {q(-1), q(0)}), NotInDomain);
}

TEST_CASE("sampled evaluation support equality against direct optimization") {
    // Support reduction lemma: R_g of the evaluation equals the maximum of
    // sum lambda_i R_g(P_i) over the decomposition polytope, computed here by
    // an independent LP over lambda.
    auto t = three_sample_map();
    const auto& ss = std::get<SampledSuperlinear>(t.impl);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const RatVec x = random_cone_point(t.domain, rng);
        const Rat g = random_rat(rng) - q(1, 2);
        const Functional f{{g}};
        const Rat direct = support(evaluate_poly(t, x), f).high;

        LinearProgram lp;
        lp.num_vars = ss.samples.size();
        for (std::size_t j = 0; j < lp.num_vars; ++j) lp.nonneg.push_back(j);
        RatVec obj(lp.num_vars);
        for (std::size_t j = 0; j < lp.num_vars; ++j)
            obj[j] = support(ss.samples[j].second, f).high;
        lp.objective = obj;
        for (std::size_t c = 0; c < 2; ++c) {
            RatVec row(lp.num_vars);
            for (std::size_t j = 0; j < lp.num_vars; ++j) row[j] = ss.samples[j].first[c];
            lp.equalities.push_back({std::move(row), x[c]});
        }
        auto res = optimize(lp, Sense::Maximize);
        REQUIRE(res.status == LpStatus::Optimal);
        CHECK(res.value == direct);
    }
}

TEST_CASE("boolean region fixture evaluation") {
    auto t = square_base_submap_fixture();
    CHECK(evaluate_bool(t, {q(1, 2), q(1, 2), q(1)}) == 1);
    CHECK(evaluate_bool(t, {q(0), q(1, 2), q(1)}) == 1);   // wedge
    CHECK(evaluate_bool(t, {q(0), q(0), q(3)}) == 0);      // edge ray
    CHECK(evaluate_bool(t, {q(0), q(2), q(2)}) == 0);      // diag ray
    CHECK(evaluate_bool(t, {q(0), q(0), q(0)}) == 0);      // apex
    CHECK_THROWS_AS(evaluate_bool(t, {q(1), q(0), q(1)}), NotInDomain);
}

TEST_CASE("check_superlinear and check_linear") {
    CHECK(check_superlinear(unit_square_map(), 40, 7).pass);
    CHECK(check_linear(unit_square_map(), 40, 7).pass);

    auto t = three_sample_map();
    CHECK(check_superlinear(t, 40, 7).pass);
    auto lin = check_linear(t, 60, 7);
    CHECK(!lin.pass);

    // interior-only boolean map is superlinear
    auto interior_map = make_boolean(square_base_cone(), {{kApex, 0},
                                                          {kEdgeRay, 0},
                                                          {kDiagRay, 0},
                                                          {kWedge, 0},
                                                          {kInterior, 1}});
    CHECK(check_superlinear(interior_map, 300, 7).pass);

    // edge-ray-only assignment is refuted: edge + diag lands in the wedge
    auto edge_only = make_boolean(square_base_cone(), {{kApex, 0},
                                                       {kEdgeRay, 1},
                                                       {kDiagRay, 0},
                                                       {kWedge, 0},
                                                       {kInterior, 0}});
    auto res = check_superlinear(edge_only, 500, 7);
    CHECK(!res.pass);
}

TEST_CASE("exactly six superlinear boolean maps survive the sampler") {
    const auto survivors = enumerate_superlinear_boolean_maps(600, 20240817);
    REQUIRE(survivors.size() == 6);
    auto expect = [&](std::map<std::string, int> v) {
        CHECK(std::count(survivors.begin(), survivors.end(), v) == 1);
    };
    expect({{kApex, 0}, {kEdgeRay, 0}, {kDiagRay, 0}, {kWedge, 0}, {kInterior, 0}});
    expect({{kApex, 0}, {kEdgeRay, 0}, {kDiagRay, 0}, {kWedge, 0}, {kInterior, 1}});
    expect({{kApex, 0}, {kEdgeRay, 0}, {kDiagRay, 0}, {kWedge, 1}, {kInterior, 1}});
    expect({{kApex, 0}, {kEdgeRay, 1}, {kDiagRay, 0}, {kWedge, 1}, {kInterior, 1}});
    expect({{kApex, 0}, {kEdgeRay, 0}, {kDiagRay, 1}, {kWedge, 1}, {kInterior, 1}});
    expect({{kApex, 0}, {kEdgeRay, 1}, {kDiagRay, 1}, {kWedge, 1}, {kInterior, 1}});
}

TEST_CASE("greatest linear submap refuses refuted maps when asked to check") {
    auto edge_only = make_boolean(square_base_cone(), {{kApex, 0},
                                                       {kEdgeRay, 1},
                                                       {kDiagRay, 0},
                                                       {kWedge, 0},
                                                       {kInterior, 0}});
    CHECK_THROWS_AS(greatest_linear_submap(edge_only, 2, 500, 7), NotSuperlinear);
}

TEST_CASE("greatest linear submap of a basis-linear map is itself") {
    auto t = unit_square_map();
    auto report = greatest_linear_submap(t, 2);
    CHECK(report.exact);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        auto x = random_cone_point(t.domain, rng);
        CHECK(evaluate_poly(report.map, x) == evaluate_poly(t, x));
    }
}

TEST_CASE("greatest linear submap of the three-sample map is exact") {
    auto report = greatest_linear_submap(three_sample_map(), 2);
    REQUIRE(report.exact);
    CHECK(report.map.is_basis_linear());
    CHECK(evaluate_poly(report.map, {q(1), q(1)}) == interval(0, 1, 2, 1));
    // Submap property and maximality against random linear submaps.
    auto t = three_sample_map();
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
        auto x = random_cone_point(t.domain, rng);
        auto sx = evaluate_poly(report.map, x);
        auto tx = evaluate_poly(t, x);
        for (const auto& v : sx.vertices) CHECK(contains(tx, v));
    }
    CHECK(check_linear(report.map, 100, 8).pass);

    // Random linear submaps R(b) built from sub-polytopes of S(b) stay below S.
    const auto& basis = report.map.domain.generators;
    const auto& values = std::get<BasisLinear>(report.map.impl).values;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Polytope> sub;
        for (const auto& p : values) {
            // midpoint of a random pair of vertices is always inside
            std::uniform_int_distribution<std::size_t> pick(0, p.vertices.size() - 1);
            auto a = p.vertices[pick(rng)], b = p.vertices[pick(rng)];
            sub.push_back(canonicalize({vec_scale(q(1, 2), vec_add(a, b))}));
        }
        auto r = make_basis_linear(report.map.domain, sub);
        for (int i = 0; i < 5; ++i) {
            auto x = random_cone_point(t.domain, rng);
            for (const auto& v : evaluate_poly(r, x).vertices)
                CHECK(contains(evaluate_poly(report.map, x), v));
        }
        (void)basis;
    }
}

TEST_CASE("greatest linear submap of the boolean fixture") {
    auto t = square_base_submap_fixture();
    auto report = greatest_linear_submap(t, 4, 400, 99);
    CHECK(!report.exact);
    CHECK(evaluate_bool(report.map, {q(1, 4), q(1, 4), q(1)}) == 1);
    CHECK(evaluate_bool(report.map, {q(0), q(1, 2), q(1)}) == 0);
    CHECK(evaluate_bool(report.map, {q(0), q(0), q(1)}) == 0);
    CHECK(evaluate_bool(report.map, {q(0), q(1), q(1)}) == 0);
    // Wedge points decompose into the two zero rays; the witness re-verifies.
    REQUIRE(report.zero_witnesses.count(kWedge));
    const auto& parts = report.zero_witnesses.at(kWedge);
    REQUIRE(!parts.empty());
    RatVec sum = zero_vec(3);
    for (const auto& p : parts) {
        auto region = square_base_cone()->classify(p);
        REQUIRE(region.has_value());
        CHECK(evaluate_bool(t, p) == 0);
        sum = vec_add(sum, p);
    }
    CHECK(square_base_cone()->classify(sum) == std::string(kWedge));
    CHECK(std::count(report.not_refuted.begin(), report.not_refuted.end(),
                     std::string(kInterior)) == 1);
    // The reported submap is itself additive on samples.
    CHECK(check_linear(report.map, 400, 3).pass);
}

TEST_CASE("depth-limited submap on a non-simplicial domain refines monotonically") {
    // Interval-valued map on the square-base closure: value [0,1] on each of
    // the four extreme rays, [0,3] on the central ray.
    const Cone closure = square_base_cone()->closure;
    std::vector<std::pair<RatVec, Polytope>> samples;
    for (const auto& g : closure.generators) samples.push_back({g, interval(0, 1, 1, 1)});
    samples.push_back({{q(1, 2), q(1, 2), q(1)}, interval(0, 1, 3, 1)});
    auto t = make_sampled(samples, 3);
    REQUIRE(!t.domain.basis_flag);

    auto s1 = greatest_linear_submap(t, 1);
    auto s2 = greatest_linear_submap(t, 2);
    auto s3 = greatest_linear_submap(t, 3);
    CHECK(!s1.exact);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 8; ++i) {
        auto x = random_cone_point(t.domain, rng);
        auto v1 = evaluate_poly(s1.map, x);
        auto v2 = evaluate_poly(s2.map, x);
        auto v3 = evaluate_poly(s3.map, x);
        auto tx = evaluate_poly(t, x);
        for (const auto& v : v2.vertices) CHECK(contains(v1, v));
        for (const auto& v : v3.vertices) CHECK(contains(v2, v));
        for (const auto& v : v1.vertices) CHECK(contains(tx, v));
    }
}

TEST_CASE("support-measure maps admit linear submaps on finite truncations") {
    // The scalar map x -> |supp(x)| * sum(x) on the nonnegative orthant is
    // superlinear, and on every finite truncation the coordinate-sum map is a
    // linear submap; only the measure-space limit loses all of them.
    std::mt19937_64 rng(41);
    for (std::size_t n : {2, 3, 5}) {
        std::vector<RatVec> gens;
        for (std::size_t i = 0; i < n; ++i) {
            RatVec e = zero_vec(n);
            e[i] = 1;
            gens.push_back(e);
        }
        const Cone orthant = make_cone(gens, n);
        for (int trial = 0; trial < 40; ++trial) {
            const RatVec x = random_cone_point(orthant, rng);
            Rat sum(0);
            long supp = 0;
            for (const auto& v : x) {
                sum += v;
                if (v != 0) ++supp;
            }
            if (supp == 0) continue;
            CHECK(sum <= Rat(supp) * sum);  // S(x) = sum(x) sits below T(x)
        }
    }
}

TEST_CASE("rational homogeneity holds exactly for maps passing additivity") {
    auto t = unit_square_map();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        auto x = random_cone_point(t.domain, rng);
        std::uniform_int_distribution<int> num(1, 7), den(1, 7);
        const Rat lambda(num(rng), den(rng));
        CHECK(evaluate_poly(t, vec_scale(lambda, x)) == scale(evaluate_poly(t, x), lambda));
    }
}

TEST_CASE("support functions of basis-linear maps are linear") {
    auto t = unit_square_map();
    std::mt19937_64 rng(14);
    for (int i = 0; i < 30; ++i) {
        Functional g{{random_rat(rng) - q(1, 2), random_rat(rng) - q(1, 2)}};
        auto x = random_cone_point(t.domain, rng);
        auto y = random_cone_point(t.domain, rng);
        const Rat rx = support(evaluate_poly(t, x), g).high;
        const Rat ry = support(evaluate_poly(t, y), g).high;
        const Rat rxy = support(evaluate_poly(t, vec_add(x, y)), g).high;
        CHECK(rxy == rx + ry);
        const Rat lambda = random_rat(rng) + q(1, 3);
        CHECK(support(evaluate_poly(t, vec_scale(lambda, x)), g).high == lambda * rx);
    }
}

TEST_CASE("greatest affine submap collapses the hat map to zero") {
    // K = [0,1], T(x) = [0, 1 - |2x - 1|] handed over as data at 0, 1/2, 1.
    auto k = canonicalize({{q(0)}, {q(1)}});
    auto t_sus = lift_to_suspension(
        k,
        {{{q(0)}, canonicalize({{q(0)}})},
         {{q(1, 2)}, interval(0, 1, 1, 1)},
         {{q(1)}, canonicalize({{q(0)}})}},
        1);
    auto report = greatest_affine_submap(t_sus, k, 2);
    CHECK(report.suspension.exact);
    for (long num = 0; num <= 4; ++num) {
        CHECK(report.eval({q(num, 4)}) == canonicalize({{q(0)}}));
    }
}

TEST_CASE("greatest affine submap of an affine map is itself") {
    // T(x) = [x, x+1] on [0,1].
    auto k = canonicalize({{q(0)}, {q(1)}});
    auto t_sus = lift_to_suspension(
        k, {{{q(0)}, interval(0, 1, 1, 1)}, {{q(1)}, interval(1, 1, 2, 1)}}, 1);
    auto report = greatest_affine_submap(t_sus, k, 2);
    CHECK(report.suspension.exact);
    CHECK(report.eval({q(1, 2)}) == interval(1, 2, 3, 2));
    CHECK(report.eval({q(1, 4)}) == interval(1, 4, 5, 4));
}

TEST_CASE("region riesz: the bundled instance is infeasible with verifiable branches") {
    const auto sc = square_base_cone();
    const auto inst = square_base_riesz_instance();
    const auto start = std::chrono::steady_clock::now();
    auto res = riesz_interpolate_regions(*sc, inst.xs, inst.ys);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    REQUIRE(!res.feasible);
    CHECK(verify_region_riesz(*sc, inst.xs, inst.ys, res.branches));
    MESSAGE("region riesz search took ", elapsed, " ms over ", res.branches.size(),
            " branches");
    CHECK(elapsed < 1000);
}

TEST_CASE("region riesz: a compatible instance produces a grid in the cone") {
    const auto sc = square_base_cone();
    std::vector<RatVec> xs{{q(1, 4), q(1, 4), q(1)}, {q(1, 4), q(1, 4), q(1)}};
    std::vector<RatVec> ys{{q(1, 2), q(1, 2), q(2)}};
    auto res = riesz_interpolate_regions(*sc, xs, ys);
    REQUIRE(res.feasible);
    CHECK(vec_add(res.grid[0][0], res.grid[1][0]) == ys[0]);
    CHECK(res.grid[0][0] == xs[0]);
    for (const auto& row : res.grid)
        for (const auto& cell : row) CHECK(sc->classify(cell).has_value());
}

TEST_CASE("region riesz validates input") {
    const auto sc = square_base_cone();
    CHECK_THROWS_AS(riesz_interpolate_regions(*sc, {{q(0), q(0), q(1)}},
                                              {{q(0), q(0), q(2)}}),
                    SumMismatch);
    // A target that is not a sum of cone elements is simply infeasible.
    auto res =
        riesz_interpolate_regions(*sc, {{q(1), q(0), q(1)}}, {{q(1), q(0), q(1)}});
    CHECK(!res.feasible);
    CHECK(verify_region_riesz(*sc, {{q(1), q(0), q(1)}}, {{q(1), q(0), q(1)}},
                              res.branches));
}

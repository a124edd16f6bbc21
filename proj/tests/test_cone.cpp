// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vopt/cone.hpp"
#include "vopt/problems.hpp"

#include <numbers>
#include <random>

using namespace vopt;
using Vec = VecX<double>;
using Mat = MatX<double>;

namespace {

Vec vec2(double a, double b)
{
    Vec v(2);
    v << a, b;
    return v;
}

// The cone of problem ex6.1 at parameter x.
ConeRep<double> cone61(double x)
{
    Mat rows(2, 2);
    rows.row(0) << 1.0, 0.0;
    rows.row(1) << -(x * x + 1.0), x + 1.0;
    return ConeRep<double>::polyhedral(std::move(rows));
}

// Uniform sample of the 2D cone via its dual generators' primal rays.
std::vector<Vec> sample_cone(const ConeRep<double>& K, int count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Vec> out;
    while (static_cast<int>(out.size()) < count) {
        Vec z = vec2(2 * unif(rng) - 1, 2 * unif(rng) - 1) * (0.1 + 4 * unif(rng));
        if (cone_contains(K, z, 0.0)) out.push_back(z);
    }
    return out;
}

} // namespace

TEST_CASE("polyhedral membership on the ex6.1 cone")
{
    const auto K = cone61(1.0); // rows: z1 >= 0, 2 z1 - 2 z2 <= 0
    CHECK(cone_contains(K, vec2(1.0, 1.0), 0.0));
    CHECK(cone_contains(K, vec2(0.0, 0.0), 0.0)); // 0 in every closed cone
    CHECK(cone_contains(K, vec2(0.0, 3.0), 0.0));
    CHECK_FALSE(cone_contains(K, vec2(1.0, 0.5), 0.0));
    CHECK_FALSE(cone_contains(K, vec2(-1.0, 1.0), 0.0));
    CHECK_THROWS_AS(cone_contains(K, Vec(Vec::Ones(3)), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_contains(K, vec2(1, 1), -0.1), std::invalid_argument);
}

TEST_CASE("norm-cone membership")
{
    // Axis from the image-indexed order of ex6.2 evaluated at y = (1,1).
    const double pi = std::numbers::pi;
    const auto K = ConeRep<double>::norm_cone(vec2(3.0 / pi, -2.0 / pi));
    CHECK_FALSE(cone_contains(K, vec2(0.0, 1.0), 0.0)); // a^T z = -2/pi < ||z||
    CHECK(cone_contains(K, vec2(0.0, 0.0), 0.0));
    const Vec axis_dir = vec2(3.0, -2.0).normalized();
    CHECK(cone_contains(K, axis_dir, 0.0));
    CHECK(cone_strict_contains(K, axis_dir, 1e-9));
    CHECK_THROWS_AS(ConeRep<double>::norm_cone(vec2(0.2, 0.2)), std::invalid_argument);
}

TEST_CASE("strict membership")
{
    const auto K = cone61(1.0);
    CHECK(cone_strict_contains(K, vec2(1.0, 2.0), 1e-9)); // slacks 1 and 2 (raw rows)
    CHECK_FALSE(cone_strict_contains(K, vec2(0.0, 0.0), 1e-9));
    CHECK_FALSE(cone_strict_contains(K, vec2(1.0, 1.0), 1e-9)); // boundary: second row slack 0
    // strict implies closed membership; membership is scale invariant
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Vec z = vec2(unif(rng), unif(rng));
        if (cone_strict_contains(K, z, 1e-9)) CHECK(cone_contains(K, z, 0.0));
        if (z.norm() > 1e-6)
            CHECK(cone_contains(K, z, 0.0) == cone_contains(K, Vec(3.7 * z), 0.0));
    }
}

TEST_CASE("pointedness (sampled)")
{
    for (double x : {0.0, 0.25, 0.7, 1.0}) {
        const auto K = cone61(x);
        for (const Vec& z : sample_cone(K, 100, 11)) {
            if (z.norm() < 1e-9) continue;
            CHECK_FALSE(cone_contains(K, Vec(-z), 0.0));
        }
    }
}

TEST_CASE("dual generators of the ex6.1 cone at x = 1")
{
    // Same cone as spanned by the rays (0,1) and (1,1).
    const auto G = dual_generators(cone61(1.0));
    REQUIRE(G.count() == 2);
    CHECK(G.col(0).isApprox(vec2(1.0, 0.0), 1e-12));
    CHECK(G.col(1).isApprox(vec2(-1.0, 1.0).normalized(), 1e-12));

    const auto K_rays = ConeRep<double>::polyhedral_from_rays_2d(vec2(0, 1), vec2(1, 1));
    const auto G2 = dual_generators(K_rays);
    CHECK(hausdorff_distance(G, G2) < 1e-12);
}

TEST_CASE("the nonnegative orthant is self-dual")
{
    const auto G = dual_generators(ConeRep<double>::orthant(2));
    REQUIRE(G.count() == 2);
    CHECK(G.col(0).isApprox(vec2(1, 0), 1e-12));
    CHECK(G.col(1).isApprox(vec2(0, 1), 1e-12));
}

TEST_CASE("norm-cone dual generators via the circular-cone angle identity")
{
    const auto K = ConeRep<double>::norm_cone(vec2(0.0, 2.0));
    const auto G = dual_generators(K);
    // alpha = arccos(1/2) = pi/3, generators at pi/2 -+ pi/6
    const double pi = std::numbers::pi;
    CHECK(G.col(0).isApprox(vec2(std::cos(pi / 3), std::sin(pi / 3)), 1e-12));
    CHECK(G.col(1).isApprox(vec2(std::cos(2 * pi / 3), std::sin(2 * pi / 3)), 1e-12));
    // every generator has nonnegative product with sampled cone members
    for (const Vec& z : sample_cone(K, 1000, 3)) {
        CHECK(G.col(0).dot(z) >= -1e-10);
        CHECK(G.col(1).dot(z) >= -1e-10);
    }
}

TEST_CASE("duality of generators, sampled over the ex6.1 mapping")
{
    for (double x : {0.0, 0.3, 0.6557, 1.0}) {
        const auto K = cone61(x);
        const auto G = dual_generators(K);
        for (const Vec& z : sample_cone(K, 250, 17)) {
            for (Index i = 0; i < G.count(); ++i) CHECK(G.col(i).dot(z) >= -1e-10);
        }
    }
}

TEST_CASE("2D completeness: dual members are nonnegative combinations of the generators")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double x : {0.1, 0.5, 0.9}) {
        const auto K = cone61(x);
        const auto G = dual_generators(K);
        const auto members = sample_cone(K, 200, 29);
        for (int t = 0; t < 50; ++t) {
            const double ang = 2 * std::numbers::pi * unif(rng);
            const Vec w = vec2(std::cos(ang), std::sin(ang));
            bool in_dual = true;
            for (const Vec& z : members) in_dual = in_dual && (w.dot(z) >= -1e-10);
            if (!in_dual) continue;
            // solve w = c0 g0 + c1 g1 and check c >= 0
            Mat A(2, 2);
            A.col(0) = G.col(0);
            A.col(1) = G.col(1);
            const Vec c = A.colPivHouseholderQr().solve(w);
            CHECK((A * c - w).norm() <= 1e-8);
            CHECK(c(0) >= -1e-8);
            CHECK(c(1) >= -1e-8);
        }
    }
}

TEST_CASE("hausdorff distance on finite sets")
{
    GeneratorSet<double> A{(Mat(2, 2) << 1, 0, 0, 1).finished()};
    GeneratorSet<double> B{(Mat(2, 1) << 1, 0).finished()};
    GeneratorSet<double> C{(Mat(2, 1) << 0, 1).finished()};
    CHECK(hausdorff_distance(A, A) == doctest::Approx(0.0));
    CHECK(hausdorff_distance(B, C) == doctest::Approx(std::sqrt(2.0)));
    // sup over the A side dominates: the lone point of B is sqrt(2) away
    // from (0,1) and 0 away from (1,0)
    CHECK(hausdorff_distance(A, B) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(hausdorff_distance(A, GeneratorSet<double>{Mat(2, 0)}), std::invalid_argument);
}

TEST_CASE("hausdorff distance is symmetric and satisfies the triangle inequality")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> sz(1, 5);
    auto random_set = [&]() {
        Mat m(2, sz(rng));
        for (Index i = 0; i < m.size(); ++i) m(i) = unif(rng);
        return GeneratorSet<double>{m};
    };
    for (int t = 0; t < 100; ++t) {
        const auto A = random_set(), B = random_set(), C = random_set();
        const double ab = hausdorff_distance(A, B);
        CHECK(ab == doctest::Approx(hausdorff_distance(B, A)));
        CHECK(ab <= hausdorff_distance(A, C) + hausdorff_distance(C, B) + 1e-12);
    }
}

TEST_CASE("generator Lipschitz estimator")
{
    const auto p = problems::example_6_1<double>();

    VariableOrder<double> constant_order;
    constant_order.mapping = [](const Vec&) { return ConeRep<double>::orthant(2); };
    std::vector<std::pair<Vec, Vec>> pairs{{Vec::Zero(1), Vec::Ones(1)}};
    CHECK(estimate_generator_lipschitz(constant_order, pairs) == doctest::Approx(0.0));

    // ex6.1 second generator is (-(x^2+1), x+1) normalized: identical at x=0 and x=1
    std::vector<std::pair<Vec, Vec>> p01{{Vec::Zero(1), Vec::Ones(1)}};
    CHECK(estimate_generator_lipschitz(p.order, p01) == doctest::Approx(0.0).epsilon(1e-9));

    std::vector<std::pair<Vec, Vec>> phalf{{Vec::Zero(1), Vec::Constant(1, 0.5)}};
    CHECK(estimate_generator_lipschitz(p.order, phalf) == doctest::Approx(0.18126).epsilon(1e-3));

    std::vector<std::pair<Vec, Vec>> bad{{Vec::Zero(1), Vec::Zero(1)}};
    CHECK_THROWS_AS(estimate_generator_lipschitz(p.order, bad), std::invalid_argument);
    CHECK_THROWS_AS(estimate_generator_lipschitz(p.order, {}), std::invalid_argument);
}

TEST_CASE("degenerate cone constructions are rejected")
{
    Mat one_row(1, 2);
    one_row << 1, 0; // halfspace, not pointed
    CHECK_THROWS_AS(ConeRep<double>::polyhedral(one_row), std::invalid_argument);
    Mat opposed(2, 2);
    opposed << 1, 0, -1, 0; // empty interior
    CHECK_THROWS_AS(ConeRep<double>::polyhedral(opposed), std::invalid_argument);
    Mat zero_row(2, 2);
    zero_row << 0, 0, 1, 0;
    CHECK_THROWS_AS(ConeRep<double>::polyhedral(zero_row), std::invalid_argument);
}

TEST_CASE("float instantiation of the cone layer")
{
    VecX<float> a(2);
    a << 0.f, 2.f;
    const auto K = ConeRep<float>::norm_cone(a);
    const auto G = dual_generators(K);
    CHECK(G.count() == 2);
    VecX<float> z(2);
    z << 0.f, 1.f;
    CHECK(cone_contains(K, z, 0.f));
}

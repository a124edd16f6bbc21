// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/problem.hpp"

#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace vopt {

//! Built-in benchmark problems. "ex6.1" and "ex6.3" are domain-indexed
//! (solved with IPG), "ex6.2" is image-indexed (solved with FIPG).
namespace problems {

//! Scalar instance on [0,1]: F(x) = (x+1, x^2+1) with the polyhedral cone
//! K(x) = { z : z1 >= 0, (x^2+1) z1 - (x+1) z2 <= 0 }. The solution set is
//! the interval [0, sqrt(2)-1].
template <typename Scalar>
VectorProblem<Scalar> example_6_1()
{
    using Vec = VecX<Scalar>;
    VectorProblem<Scalar> p;
    p.name = "ex6.1";
    p.n = 1;
    p.m = 2;
    p.F = [](const Vec& x) {
        Vec f(2);
        f << x(0) + Scalar(1), x(0) * x(0) + Scalar(1);
        return f;
    };
    p.J = [](const Vec& x) {
        MatX<Scalar> j(2, 1);
        j << Scalar(1), Scalar(2) * x(0);
        return j;
    };
    p.feasible = FeasibleSet<Scalar>::box(Vec::Zero(1), Vec::Ones(1));
    p.order.indexing = Indexing::DomainIndexed;
    p.order.mapping = [](const Vec& x) {
        MatX<Scalar> rows(2, 2);
        rows.row(0) << Scalar(1), Scalar(0);
        rows.row(1) << -(x(0) * x(0) + Scalar(1)), x(0) + Scalar(1);
        return ConeRep<Scalar>::polyhedral(std::move(rows));
    };
    const Scalar upper = std::numbers::sqrt2_v<Scalar> - Scalar(1);
    p.solution_checker = [upper](const Vec& x, Scalar tol) {
        const Scalar t = x(0);
        const Scalar dist = std::max({Scalar(0) - t, t - upper, Scalar(0)});
        return dist <= tol;
    };
    return p;
}

//! Planar instance on the annulus pi <= ||x||^2 <= 2*pi: F(x) = (x1^2, x2^2)
//! with the image-indexed norm cone of axis A*y/pi, A = [[2,1],[-1,-1]].
//! The reference solution set is the pair of circles ||x||^2 in {pi, 2*pi}.
template <typename Scalar>
VectorProblem<Scalar> example_6_2()
{
    using Vec = VecX<Scalar>;
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    VectorProblem<Scalar> p;
    p.name = "ex6.2";
    p.n = 2;
    p.m = 2;
    p.F = [](const Vec& x) {
        Vec f(2);
        f << x(0) * x(0), x(1) * x(1);
        return f;
    };
    p.J = [](const Vec& x) {
        MatX<Scalar> j = MatX<Scalar>::Zero(2, 2);
        j(0, 0) = Scalar(2) * x(0);
        j(1, 1) = Scalar(2) * x(1);
        return j;
    };
    p.feasible = FeasibleSet<Scalar>::annulus(Vec::Zero(2), std::sqrt(pi), std::sqrt(Scalar(2) * pi));
    p.order.indexing = Indexing::ImageIndexed;
    p.order.mapping = [](const Vec& y) {
        Vec a(2);
        a << (Scalar(2) * y(0) + y(1)) / pi, (-y(0) - y(1)) / pi;
        if (a.norm() <= Scalar(1) + Scalar(1e-12))
            throw std::domain_error("order cone has empty interior at y = (" + std::to_string(y(0)) +
                                    ", " + std::to_string(y(1)) + "): ||A*y||/pi <= 1");
        return ConeRep<Scalar>::norm_cone(std::move(a));
    };
    p.solution_checker = [pi](const Vec& x, Scalar tol) {
        const Scalar r2 = x.squaredNorm();
        return std::min(std::abs(r2 - pi), std::abs(r2 - Scalar(2) * pi)) <= tol;
    };
    return p;
}

namespace detail63 {

template <typename Scalar>
Scalar ring_angle(const VecX<Scalar>& x)
{
    // Two-argument form of arctan(x1/x2); the feasible region has x2 > 0 so
    // the readings agree there.
    return std::atan2(x(0), x(1));
}

//! Sinusoidal-ring constraint; >= 0 on the feasible side.
template <typename Scalar>
Scalar ring_value(const VecX<Scalar>& x)
{
    return x.squaredNorm() - Scalar(1) -
           Scalar(0.1) * std::cos(Scalar(16) * ring_angle(x));
}

//! Ring boundary radius along the unit direction u (the cosine term is
//! constant along rays from the origin).
template <typename Scalar>
Scalar ring_radius(const VecX<Scalar>& u)
{
    return std::sqrt(Scalar(1) + Scalar(0.1) * std::cos(Scalar(16) * ring_angle(u)));
}

template <typename Scalar>
Scalar violation(const VecX<Scalar>& x)
{
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    VecX<Scalar> c(2);
    c << Scalar(0.5), Scalar(0.5);
    Scalar v = -std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < 2; ++i) v = std::max({v, -x(i), x(i) - pi});
    v = std::max(v, (x - c).norm() - std::sqrt(Scalar(0.5)));
    v = std::max(v, -ring_value(x));
    return v;
}

template <typename Scalar>
VecX<Scalar> project(const VecX<Scalar>& q)
{
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    VecX<Scalar> c(2);
    c << Scalar(0.5), Scalar(0.5);
    const Scalar R = std::sqrt(Scalar(0.5));

    VecX<Scalar> x = q;
    for (int round = 0; round < 8; ++round) {
        x = x.cwiseMax(Scalar(0)).cwiseMin(pi);
        VecX<Scalar> d = x - c;
        const Scalar rho = d.norm();
        if (rho > R) x = c + d * (R / rho);
        if (ring_value(x) < Scalar(0)) {
            VecX<Scalar> u = x;
            if (u.norm() < Scalar(1e-14)) {
                u.resize(2);
                u << Scalar(1), Scalar(1);
            }
            u /= u.norm();
            x = (ring_radius(u) + Scalar(1e-12)) * u;
        }
        if (violation(x) <= Scalar(1e-10)) return x;
    }
    // Deterministic polar-grid fallback: the feasible set lives in the first
    // quadrant; along a ray the feasible radii are
    // [ring_radius(u), u1 + u2] (the disk chord through the origin).
    const int kAngles = 4096;
    VecX<Scalar> best = VecX<Scalar>::Zero(2);
    Scalar best_d = std::numeric_limits<Scalar>::infinity();
    for (int i = 1; i < kAngles; ++i) {
        const Scalar th = (pi / Scalar(2)) * Scalar(i) / Scalar(kAngles);
        VecX<Scalar> u(2);
        u << std::sin(th), std::cos(th);
        const Scalar r_lo = ring_radius(u) + Scalar(1e-12);
        const Scalar r_hi = u(0) + u(1); // disk exit radius, centre (1/2,1/2)
        if (r_lo > r_hi) continue;
        const Scalar r = std::clamp(q.dot(u), r_lo, r_hi);
        VecX<Scalar> cand = r * u;
        if (violation<Scalar>(cand) > Scalar(1e-12)) continue;
        const Scalar dist = (cand - q).norm();
        if (dist < best_d) {
            best_d = dist;
            best = cand;
        }
    }
    detail::require<Scalar>(best_d < std::numeric_limits<Scalar>::infinity(),
                            "ring-sector projection fallback found no feasible candidate");
    return best;
}

} // namespace detail63

//! Planar instance with the identity objective on the sinusoidal ring sector
//! inside the disk around (1/2, 1/2) (intersected with [0,pi]^2), ordered by
//! the norm cone of axis 2x / min(x1, x2). No closed-form solution set.
template <typename Scalar>
VectorProblem<Scalar> example_6_3()
{
    using Vec = VecX<Scalar>;
    VectorProblem<Scalar> p;
    p.name = "ex6.3";
    p.n = 2;
    p.m = 2;
    p.F = [](const Vec& x) { return x; };
    p.J = [](const Vec&) { return MatX<Scalar>(MatX<Scalar>::Identity(2, 2)); };
    p.feasible = FeasibleSet<Scalar>::custom(
        2, [](const Vec& x) { return detail63::violation<Scalar>(x); },
        [](const Vec& q) { return detail63::project<Scalar>(q); }, /*convex=*/false);
    p.order.indexing = Indexing::DomainIndexed;
    p.order.mapping = [](const Vec& x) {
        const Scalar mn = std::min(x(0), x(1));
        if (mn <= Scalar(1e-12))
            throw std::domain_error("order cone axis undefined at x = (" + std::to_string(x(0)) +
                                    ", " + std::to_string(x(1)) + "): min coordinate <= 0");
        return ConeRep<Scalar>::norm_cone(Vec(Scalar(2) / mn * x));
    };
    return p;
}

//! Reference starting points for reproducing the published batch runs.
template <typename Scalar>
std::vector<VecX<Scalar>> reference_starts(const std::string& name)
{
    auto pack1 = [](std::initializer_list<Scalar> xs) {
        std::vector<VecX<Scalar>> out;
        for (Scalar v : xs) {
            VecX<Scalar> p(1);
            p << v;
            out.push_back(p);
        }
        return out;
    };
    auto pack2 = [](std::initializer_list<std::pair<Scalar, Scalar>> xs) {
        std::vector<VecX<Scalar>> out;
        for (auto [a, b] : xs) {
            VecX<Scalar> p(2);
            p << a, b;
            out.push_back(p);
        }
        return out;
    };
    if (name == "ex6.1")
        return pack1({Scalar(0.6557), Scalar(0.6948), Scalar(0.8491), Scalar(0.9340), Scalar(0.6787),
                      Scalar(0.7577), Scalar(0.7431), Scalar(0.4387), Scalar(0.6555), Scalar(0.9502)});
    if (name == "ex6.2")
        return pack2({{Scalar(1.8650), Scalar(1.6400)},
                      {Scalar(1.7525), Scalar(1.6350)},
                      {Scalar(2.4190), Scalar(0.0835)},
                      {Scalar(1.9573), Scalar(0.2813)},
                      {Scalar(0.7931), Scalar(-2.0321)},
                      {Scalar(1.2683), Scalar(-1.6814)},
                      {Scalar(1.8135), Scalar(0.3050)},
                      {Scalar(-2.0485), Scalar(0.3229)},
                      {Scalar(-0.6446), Scalar(1.9606)},
                      {Scalar(-0.8561), Scalar(2.1011)}});
    if (name == "ex6.3")
        return pack2({{Scalar(0.9735), Scalar(0.6608)},
                      {Scalar(0.7932), Scalar(0.9050)},
                      {Scalar(0.8403), Scalar(0.8664)},
                      {Scalar(0.9847), Scalar(0.6228)},
                      {Scalar(0.7508), Scalar(0.9326)},
                      {Scalar(0.9786), Scalar(0.6448)},
                      {Scalar(0.9790), Scalar(0.6433)},
                      {Scalar(0.9679), Scalar(0.6762)},
                      {Scalar(0.8082), Scalar(0.8937)},
                      {Scalar(0.8965), Scalar(0.8046)}});
    throw std::invalid_argument("unknown problem name: " + name);
}

//! Reference final points of the published batch runs (informational).
template <typename Scalar>
std::vector<VecX<Scalar>> reference_solutions(const std::string& name)
{
    if (name == "ex6.1") {
        std::vector<VecX<Scalar>> out;
        for (Scalar v : {Scalar(0.4115), Scalar(0.4128), Scalar(0.4140), Scalar(0.4135), Scalar(0.4116),
                         Scalar(0.4131), Scalar(0.4127), Scalar(0.4136), Scalar(0.4114), Scalar(0.4130)}) {
            VecX<Scalar> p(1);
            p << v;
            out.push_back(p);
        }
        return out;
    }
    auto pack2 = [](std::initializer_list<std::pair<Scalar, Scalar>> xs) {
        std::vector<VecX<Scalar>> out;
        for (auto [a, b] : xs) {
            VecX<Scalar> p(2);
            p << a, b;
            out.push_back(p);
        }
        return out;
    };
    if (name == "ex6.2")
        return pack2({{Scalar(1.1632), Scalar(2.2204)},
                      {Scalar(0.9850), Scalar(2.3050)},
                      {Scalar(1.7705), Scalar(0.0841)},
                      {Scalar(1.7492), Scalar(0.2859)},
                      {Scalar(0.8634), Scalar(-2.3532)},
                      {Scalar(1.4208), Scalar(-2.0650)},
                      {Scalar(1.7456), Scalar(0.3074)},
                      {Scalar(-1.7438), Scalar(0.3172)},
                      {Scalar(-0.8016), Scalar(2.3750)},
                      {Scalar(-0.9535), Scalar(2.3182)}});
    if (name == "ex6.3")
        return pack2({{Scalar(0.9011), Scalar(0.5589)},
                      {Scalar(0.7407), Scalar(0.7916)},
                      {Scalar(0.7854), Scalar(0.7541)},
                      {Scalar(0.9096), Scalar(0.5228)},
                      {Scalar(0.7004), Scalar(0.8182)},
                      {Scalar(0.9050), Scalar(0.5437)},
                      {Scalar(0.9054), Scalar(0.5423)},
                      {Scalar(0.8967), Scalar(0.5735)},
                      {Scalar(0.7551), Scalar(0.7806)},
                      {Scalar(0.7754), Scalar(0.5859)}});
    throw std::invalid_argument("unknown problem name: " + name);
}

//! Feasible random starting points, uniform over the bounding box of the
//! feasible set with rejection, deterministic under a fixed seed.
template <typename Scalar>
std::vector<VecX<Scalar>> random_starts(const VectorProblem<Scalar>& p, int count,
                                        std::uint64_t seed)
{
    detail::require<Scalar>(count >= 1, "need at least one start");
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    VecX<Scalar> lo, hi;
    if (p.name == "ex6.1") {
        lo = VecX<Scalar>::Zero(1);
        hi = VecX<Scalar>::Ones(1);
    } else if (p.name == "ex6.2") {
        const Scalar r = std::sqrt(Scalar(2) * pi);
        lo = VecX<Scalar>::Constant(2, -r);
        hi = VecX<Scalar>::Constant(2, r);
    } else {
        lo = VecX<Scalar>::Zero(2);
        hi = VecX<Scalar>::Constant(2, pi);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<VecX<Scalar>> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard < 1000000) {
        ++guard;
        VecX<Scalar> x(p.n);
        for (Index i = 0; i < p.n; ++i)
            x(i) = lo(i) + Scalar(unif(rng)) * (hi(i) - lo(i));
        if (!p.feasible.contains(x, Scalar(0))) continue;
        // skip points that are already solutions when the solution set is known
        if (p.solution_checker && p.solution_checker(x, Scalar(1e-3))) continue;
        out.push_back(x);
    }
    detail::require<Scalar>(static_cast<int>(out.size()) == count,
                            "rejection sampling failed to find feasible starts");
    return out;
}

template <typename Scalar>
VectorProblem<Scalar> by_name(const std::string& name)
{
    if (name == "ex6.1") return example_6_1<Scalar>();
    if (name == "ex6.2") return example_6_2<Scalar>();
    if (name == "ex6.3") return example_6_3<Scalar>();
    throw std::invalid_argument("unknown problem name: " + name);
}

inline const std::map<std::string, std::string>& registry()
{
    static const std::map<std::string, std::string> reg = {
        {"ex6.1", "ipg"}, {"ex6.2", "fipg"}, {"ex6.3", "ipg"}};
    return reg;
}

} // namespace problems
} // namespace vopt

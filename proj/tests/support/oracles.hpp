// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force oracles for the property suites. These never participate in
// the solve path; they exist to cross-check it.

#pragma once

#include "vopt/scalarization.hpp"

#include <stdexcept>
#include <vector>

namespace vopt::oracles {

struct GridSpec {
    std::vector<std::pair<double, double>> bounds; //!< per-dimension [lo, hi]
    double step = 1e-3;
    long max_points = 10000000;
};

template <typename Scalar>
struct GridMinResult {
    VecX<Scalar> v_best;
    Scalar model_best;
    long evaluated;
};

//! Exhaustive minimization of the direction model ||v||^2/2 + beta*phi(x,v)
//! over feasible grid points of C - x. Within L*h of the true minimum for
//! models with Lipschitz constant L.
template <typename Scalar>
GridMinResult<Scalar> grid_min_model(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x,
                                     Scalar beta, const FeasibleSet<Scalar>& set,
                                     const GridSpec& grid)
{
    if (grid.step <= 0) throw std::invalid_argument("grid step must be positive");
    const Index n = ctx.problem->n;
    if (static_cast<Index>(grid.bounds.size()) != n)
        throw std::invalid_argument("grid bounds dimension mismatch");

    std::vector<long> counts(n);
    long total = 1;
    for (Index i = 0; i < n; ++i) {
        counts[i] = static_cast<long>((grid.bounds[i].second - grid.bounds[i].first) / grid.step) + 1;
        if (counts[i] < 1) counts[i] = 1;
        total *= counts[i];
        if (total > grid.max_points) throw std::invalid_argument("grid point cap exceeded");
    }

    const GeneratorSet<Scalar> G = ctx.generator_set(x);
    const MatX<Scalar> Jx = ctx.problem->J(x);

    GridMinResult<Scalar> res;
    res.model_best = std::numeric_limits<Scalar>::infinity();
    res.evaluated = 0;
    std::vector<long> idx(n, 0);
    VecX<Scalar> v(n);
    while (true) {
        for (Index i = 0; i < n; ++i)
            v(i) = Scalar(grid.bounds[i].first + idx[i] * grid.step);
        if (set.contains(VecX<Scalar>(x + v), Scalar(1e-12))) {
            const VecX<Scalar> Jv = Jx * v;
            Scalar mx = G.col(0).dot(Jv);
            for (Index g = 1; g < G.count(); ++g) mx = std::max(mx, G.col(g).dot(Jv));
            const Scalar model = v.squaredNorm() / Scalar(2) + beta * mx;
            ++res.evaluated;
            if (model < res.model_best) {
                res.model_best = model;
                res.v_best = v;
            }
        }
        Index d = 0;
        while (d < n && ++idx[d] == counts[d]) {
            idx[d] = 0;
            ++d;
        }
        if (d == n) break;
    }
    if (res.evaluated == 0) throw std::runtime_error("no feasible grid point (empty translated set)");
    return res;
}

//! Central finite-difference Jacobian.
template <typename Scalar, typename F>
MatX<Scalar> finite_diff_jacobian(F&& f, const VecX<Scalar>& x, Scalar step)
{
    if (step <= Scalar(0)) throw std::invalid_argument("fd step must be positive");
    const VecX<Scalar> f0 = f(x);
    MatX<Scalar> J(f0.size(), x.size());
    for (Index i = 0; i < x.size(); ++i) {
        VecX<Scalar> xp = x, xm = x;
        xp(i) += step;
        xm(i) -= step;
        J.col(i) = (f(xp) - f(xm)) / (Scalar(2) * step);
    }
    return J;
}

} // namespace vopt::oracles

// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/problem.hpp"

namespace vopt {

//! Value of a finite max together with a deterministic argmax (first index
//! attaining the max).
template <typename Scalar>
struct MaxResult {
    Scalar value;
    Index argmax;
};

//! Binds a problem for scalarization queries. Pure and shareable.
template <typename Scalar>
struct ScalarizationContext {
    const VectorProblem<Scalar>* problem;

    GeneratorSet<Scalar> generator_set(const VecX<Scalar>& x) const
    {
        return problem->generators_at(x);
    }
};

//! Support value rho(x, w) = max_{y in G(x)} y^T w over the finite generator
//! set, ties broken by first index.
template <typename Scalar>
MaxResult<Scalar> rho(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x,
                      const VecX<Scalar>& w)
{
    const GeneratorSet<Scalar> G = ctx.generator_set(x);
    detail::require<Scalar>(w.size() == G.dim(), "dimension mismatch");
    MaxResult<Scalar> best{G.col(0).dot(w), 0};
    for (Index i = 1; i < G.count(); ++i) {
        const Scalar v = G.col(i).dot(w);
        if (v > best.value) best = {v, i};
    }
    return best;
}

//! Directional scalarization phi(x, v) = max_{y in G(x)} y^T J_F(x) v.
//! Negative exactly on descent directions (J_F(x) v interior to -K(x)).
template <typename Scalar>
MaxResult<Scalar> phi(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x,
                      const VecX<Scalar>& v)
{
    detail::require<Scalar>(v.size() == ctx.problem->n, "dimension mismatch");
    return rho(ctx, x, VecX<Scalar>(ctx.problem->J(x) * v));
}

//! phi evaluated against a precomputed generator set and Jacobian (hot path).
template <typename Scalar>
MaxResult<Scalar> phi_with(const GeneratorSet<Scalar>& G, const MatX<Scalar>& Jx,
                           const VecX<Scalar>& v)
{
    const VecX<Scalar> w = Jx * v;
    MaxResult<Scalar> best{G.col(0).dot(w), 0};
    for (Index i = 1; i < G.count(); ++i) {
        const Scalar val = G.col(i).dot(w);
        if (val > best.value) best = {val, i};
    }
    return best;
}

//! Merit value theta_beta(x) = ||v(x)||^2 / 2 + beta * phi(x, v(x)) for an
//! exact subproblem solution v_exact. Nonpositive for feasible x; a clearly
//! positive value indicates a broken subproblem solve.
template <typename Scalar>
Scalar theta(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x, Scalar beta,
             const VecX<Scalar>& v_exact)
{
    detail::require<Scalar>(beta > Scalar(0), "beta must be positive");
    const Scalar value = v_exact.squaredNorm() / Scalar(2) + beta * phi(ctx, x, v_exact).value;
    if (value > Scalar(1e-8))
        throw std::logic_error("theta came out positive; exact subproblem solution is inconsistent");
    return value;
}

} // namespace vopt

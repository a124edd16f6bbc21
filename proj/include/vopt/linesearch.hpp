// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/scalarization.hpp"

#include <string>

namespace vopt {

template <typename Scalar>
struct ArmijoParams {
    Scalar sigma = Scalar(0.1);
    Scalar gamma = Scalar(0.5);
    int max_backtracks = 60;

    void validate() const
    {
        detail::require<Scalar>(sigma > Scalar(0) && sigma < Scalar(1), "sigma must be in (0,1)");
        detail::require<Scalar>(gamma > Scalar(0) && gamma < Scalar(1), "gamma must be in (0,1)");
        detail::require<Scalar>(max_backtracks > 0, "max_backtracks must be positive");
    }
};

struct LineSearchFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct ArmijoResult {
    Scalar gamma_k;
    int j;
    int trials;
    bool rho_diagnostic_agreed; //!< scalarized test matched the cone test at the accepted step
};

//! Backtracking line search with the cone-valued sufficient-decrease test:
//! the smallest j >= 0 with
//!   F(x) - F(x + gamma^j v) + sigma * gamma^j * J_F(x) v  in  K,
//! where K is the ordering cone at x (evaluated at x for domain-indexed
//! orders and at F(x) for image-indexed ones). The scalarized surrogate
//! min_{y in G} y^T D >= 0 is evaluated alongside as a consistency
//! diagnostic.
template <typename Scalar>
ArmijoResult<Scalar> armijo_step(const VectorProblem<Scalar>& problem, const VecX<Scalar>& x,
                                 const VecX<Scalar>& v, const ArmijoParams<Scalar>& params)
{
    params.validate();
    detail::require<Scalar>(v.norm() > Scalar(0), "line search needs a nonzero direction");

    const ConeRep<Scalar> K = problem.cone_at(x);
    const GeneratorSet<Scalar> G = dual_generators(K);
    const MatX<Scalar> Jx = problem.J(x);
    const VecX<Scalar> Jv = Jx * v;

    Scalar phi_val = G.col(0).dot(Jv);
    for (Index i = 1; i < G.count(); ++i) phi_val = std::max(phi_val, G.col(i).dot(Jv));
    detail::require<Scalar>(phi_val < Scalar(0), "line search needs a descent direction (phi < 0)");

    const VecX<Scalar> Fx = problem.F(x);
    Scalar step = Scalar(1);
    for (int j = 0; j <= params.max_backtracks; ++j) {
        const VecX<Scalar> D = Fx - problem.F(x + step * v) + params.sigma * step * Jv;
        if (cone_contains(K, D, Scalar(0))) {
            Scalar min_gen = G.col(0).dot(D);
            for (Index i = 1; i < G.count(); ++i) min_gen = std::min(min_gen, G.col(i).dot(D));
            const bool agree = min_gen >= -Scalar(1e-10) * std::max(Scalar(1), D.norm());
            return ArmijoResult<Scalar>{step, j, j + 1, agree};
        }
        step *= params.gamma;
    }
    throw LineSearchFailure(
        "Armijo backtracking exceeded " + std::to_string(params.max_backtracks) +
        " trials; the direction is not a descent direction for the cone at x, or the "
        "Jacobian is inconsistent with F");
}

} // namespace vopt

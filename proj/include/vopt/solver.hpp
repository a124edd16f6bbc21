// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/linesearch.hpp"
#include "vopt/subproblem.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace vopt {

enum class SolveStatus { Stationary, MaxIter, LineSearchFail, SubproblemFail };

inline const char* to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Stationary: return "Stationary";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::LineSearchFail: return "LineSearchFail";
    case SolveStatus::SubproblemFail: return "SubproblemFail";
    }
    return "?";
}

enum class DirectionSelect { Exact, DeltaApprox };

template <typename Scalar>
struct BetaSchedule {
    std::vector<Scalar> values{Scalar(0.5)}; //!< single entry = constant
    bool constant = true;

    static BetaSchedule make_constant(Scalar v) { return BetaSchedule{{v}, true}; }
    static BetaSchedule sequence(std::vector<Scalar> vals)
    {
        detail::require<Scalar>(!vals.empty(), "beta sequence must be nonempty");
        return BetaSchedule{std::move(vals), false};
    }

    Scalar at(int k, Scalar lo, Scalar hi, bool* clamped) const
    {
        Scalar v = constant ? values.front()
                            : values[std::min<std::size_t>(k, values.size() - 1)];
        const Scalar c = std::clamp(v, lo, hi);
        if (clamped && c != v) *clamped = true;
        return c;
    }
};

template <typename Scalar>
struct SolverConfig {
    Scalar delta = Scalar(0.5);
    DirectionSelect direction_mode = DirectionSelect::DeltaApprox;
    ArmijoParams<Scalar> armijo{};
    Scalar beta_lo = Scalar(1e-3);
    Scalar beta_hi = Scalar(1e3);
    BetaSchedule<Scalar> beta = BetaSchedule<Scalar>::make_constant(Scalar(0.5));
    Scalar tol_stat = Scalar(1e-4);
    int max_iter = 30;
    SubproblemOptions<Scalar> subproblem{};

    void validate() const
    {
        detail::require<Scalar>(delta >= Scalar(0) && delta < Scalar(1), "delta must be in [0,1)");
        armijo.validate();
        detail::require<Scalar>(Scalar(0) < beta_lo && beta_lo <= beta_hi, "need 0 < beta_lo <= beta_hi");
        detail::require<Scalar>(tol_stat > Scalar(0), "tol_stat must be positive");
        detail::require<Scalar>(max_iter > 0, "max_iter must be positive");
    }
};

template <typename Scalar>
struct IterationRecord {
    int k;
    VecX<Scalar> x;            //!< iterate the step started from
    VecX<Scalar> v;            //!< accepted direction
    Scalar v_norm;
    Scalar phi_value;
    Scalar model_value;
    Scalar gamma;
    int j;
    int armijo_trials;
    Scalar beta;
    Scalar feasibility_residual; //!< violation of x + gamma v before any repair
    bool cone_decrease_ok;
    bool repaired;
    DirectionMode dir_mode;
    int dual_evals;
};

template <typename Scalar>
struct SolverTrace {
    std::vector<IterationRecord<Scalar>> steps;
    VecX<Scalar> x0_requested;
    VecX<Scalar> x0_used;
    bool x0_repaired = false;
    VecX<Scalar> final_x;
    Scalar final_direction_norm = Scalar(0);
    SolveStatus status = SolveStatus::MaxIter;
    int iterations = 0; //!< accepted steps
    double wall_seconds = 0;
    long total_dual_evals = 0;
    bool nonconvex_flagged = false;
    std::vector<std::string> notes;
};

namespace detail {

template <typename Scalar>
SolverTrace<Scalar> run_projected_gradient(const VectorProblem<Scalar>& problem,
                                           const SolverConfig<Scalar>& config,
                                           const VecX<Scalar>& x0)
{
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    SolverTrace<Scalar> trace;
    trace.x0_requested = x0;
    VecX<Scalar> x = x0;
    if (!problem.feasible.contains(x, Scalar(1e-9))) {
        x = problem.feasible.project(x);
        trace.x0_repaired = true;
        trace.notes.push_back("initial point was infeasible; projected onto the feasible set");
    }
    trace.x0_used = x;
    if (!problem.feasible.convex()) {
        trace.nonconvex_flagged = true;
        trace.notes.push_back("feasible set is nonconvex; projections/dual bounds are heuristic");
    }

    const ScalarizationContext<Scalar> ctx{&problem};
    SubproblemOptions<Scalar> sub = config.subproblem;
    sub.zero_tol = config.tol_stat;

    bool beta_clamped = false;
    for (int k = 0; k < config.max_iter; ++k) {
        const Scalar beta_k = config.beta.at(k, config.beta_lo, config.beta_hi, &beta_clamped);

        DirectionResult<Scalar> dir;
        try {
            dir = (config.direction_mode == DirectionSelect::Exact)
                      ? solve_exact(ctx, x, beta_k, problem.feasible, sub)
                      : delta_approx_direction(ctx, x, beta_k, problem.feasible, config.delta, sub);
        } catch (const std::exception& e) {
            trace.status = SolveStatus::SubproblemFail;
            trace.notes.push_back(std::string("subproblem failure at iteration ") +
                                  std::to_string(k) + ": " + e.what());
            break;
        }
        trace.total_dual_evals += dir.dual_iterations;
        if (dir.convexity_warning)
            trace.notes.push_back("primal/dual model gap at iteration " + std::to_string(k));

        trace.final_direction_norm = dir.v.norm();
        if (dir.mode == DirectionMode::Zero || dir.v.norm() < config.tol_stat) {
            trace.status = SolveStatus::Stationary;
            break;
        }

        ArmijoResult<Scalar> ls;
        try {
            ls = armijo_step(problem, x, dir.v, config.armijo);
        } catch (const LineSearchFailure& e) {
            trace.status = SolveStatus::LineSearchFail;
            trace.notes.push_back(std::string("line search failure at iteration ") +
                                  std::to_string(k) + ": " + e.what());
            break;
        }

        VecX<Scalar> x_next = x + ls.gamma_k * dir.v;
        const Scalar residual = std::max(problem.feasible.violation(x_next), Scalar(0));
        bool repaired = false;
        if (residual > Scalar(1e-9)) {
            x_next = problem.feasible.project(x_next);
            repaired = true;
        }

        // Cone-monotone decrease of F, checked against the cone at x (and
        // the configured bounding cone, when present).
        const VecX<Scalar> dF = problem.F(x_next) - problem.F(x);
        const ConeRep<Scalar> Kx = problem.cone_at(x);
        bool cone_ok = cone_contains(Kx, VecX<Scalar>(-dF), Scalar(1e-10));
        if (problem.order.bounding_cone)
            cone_ok = cone_ok && cone_contains(*problem.order.bounding_cone, VecX<Scalar>(-dF),
                                               Scalar(1e-10));

        trace.steps.push_back(IterationRecord<Scalar>{k, x, dir.v, dir.v.norm(), dir.phi_value,
                                                      dir.model_value, ls.gamma_k, ls.j, ls.trials,
                                                      beta_k, residual, cone_ok, repaired,
                                                      dir.mode, dir.dual_iterations});
        if (repaired)
            trace.notes.push_back("iterate " + std::to_string(k + 1) +
                                  " left the (nonconvex) feasible set and was re-projected");
        x = x_next;
        trace.iterations = k + 1;
        if (!ls.rho_diagnostic_agreed)
            trace.notes.push_back("scalarized line-search diagnostic disagreed at iteration " +
                                  std::to_string(k));
    }
    if (beta_clamped) trace.notes.push_back("beta schedule values were clamped to [beta_lo, beta_hi]");

    trace.final_x = x;
    trace.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return trace;
}

} // namespace detail

//! Projected gradient iteration for domain-indexed orders K(x).
template <typename Scalar>
SolverTrace<Scalar> solve_ipg(const VectorProblem<Scalar>& problem, const SolverConfig<Scalar>& config,
                              const VecX<Scalar>& x0)
{
    detail::require<Scalar>(problem.order.indexing == Indexing::DomainIndexed,
                            "solve_ipg requires a domain-indexed order");
    return detail::run_projected_gradient(problem, config, x0);
}

//! Projected gradient iteration for image-indexed orders K(F(x)).
template <typename Scalar>
SolverTrace<Scalar> solve_fipg(const VectorProblem<Scalar>& problem, const SolverConfig<Scalar>& config,
                               const VecX<Scalar>& x0)
{
    detail::require<Scalar>(problem.order.indexing == Indexing::ImageIndexed,
                            "solve_fipg requires an image-indexed order");
    return detail::run_projected_gradient(problem, config, x0);
}

template <typename Scalar>
struct StationarityReport {
    Scalar theta;
    bool is_stationary;
    Scalar direction_norm;
};

//! Merit value theta_beta(x) from an exact subproblem solve, plus the
//! ||v(x)|| < tol stationarity flag.
template <typename Scalar>
StationarityReport<Scalar> check_stationarity(const VectorProblem<Scalar>& problem,
                                              const VecX<Scalar>& x, Scalar beta,
                                              Scalar tol_stat = Scalar(1e-4))
{
    const ScalarizationContext<Scalar> ctx{&problem};
    SubproblemOptions<Scalar> sub;
    sub.zero_tol = Scalar(0); // keep the raw direction; classify explicitly below
    const DirectionResult<Scalar> d = solve_exact(ctx, x, beta, problem.feasible, sub);
    return StationarityReport<Scalar>{d.model_value, d.v.norm() < tol_stat, d.v.norm()};
}

} // namespace vopt

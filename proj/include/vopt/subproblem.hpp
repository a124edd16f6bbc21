// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/scalarization.hpp"

#include <optional>

namespace vopt {

enum class DirectionMode { Exact, DeltaApprox, Zero };

//! Candidate descent direction for the subproblem
//!   min_{v in C-x} ||v||^2/2 + beta * phi(x, v).
template <typename Scalar>
struct DirectionResult {
    VecX<Scalar> v;
    Scalar phi_value = Scalar(0);
    Scalar model_value = Scalar(0); //!< ||v||^2/2 + beta*phi(x,v)
    DirectionMode mode = DirectionMode::Exact;
    Scalar delta = Scalar(0);
    std::optional<VecX<Scalar>> weight; //!< combined w in conv(G(x)), when s-compatible
    int dual_iterations = 0;            //!< dual probe count (solver effort)
    Scalar dual_bound = Scalar(0);      //!< certified lower bound on theta (convex C)
    bool convexity_warning = false;     //!< primal/dual gap beyond tolerance
};

template <typename Scalar>
struct SubproblemOptions {
    Scalar model_tol = Scalar(1e-9);   //!< gap tolerance before warning
    Scalar gs_tol = Scalar(1e-10);     //!< golden-section bracket width
    Scalar zero_tol = Scalar(1e-4);    //!< ||v|| below which the step is Zero
    int budget = 24;                   //!< probe budget for delta-approximate search
    int polish_steps = 50;             //!< primal polish steps on nonconvex sets
    int ascent_cap = 10000;            //!< simplex-ascent cap for |G| > 2
    Scalar feas_tol = Scalar(1e-9);
};

namespace detail {

template <typename Scalar>
struct ProbeEval {
    VecX<Scalar> weights; //!< simplex weights over generators
    VecX<Scalar> wbar;    //!< combined generator point
    VecX<Scalar> v;
    Scalar L;     //!< dual value ||v||^2/2 + beta * wbar^T J v
    Scalar model; //!< primal model ||v||^2/2 + beta * phi(x, v)
    Scalar phi;
};

template <typename Scalar>
struct SubproblemWork {
    const GeneratorSet<Scalar>* G;
    const MatX<Scalar>* Jx;
    Scalar beta;
    const TranslatedProjector<Scalar>* proj;

    ProbeEval<Scalar> probe(const VecX<Scalar>& weights) const
    {
        ProbeEval<Scalar> e;
        e.weights = weights;
        e.wbar = G->generators * weights;
        e.v = (*proj)(VecX<Scalar>(-beta * (Jx->transpose() * e.wbar)));
        const VecX<Scalar> Jv = (*Jx) * e.v;
        Scalar mx = G->col(0).dot(Jv);
        for (Index i = 1; i < G->count(); ++i) mx = std::max(mx, G->col(i).dot(Jv));
        e.phi = mx;
        const Scalar half_sq = e.v.squaredNorm() / Scalar(2);
        e.L = half_sq + beta * e.wbar.dot(Jv);
        e.model = half_sq + beta * e.phi;
        return e;
    }

    ProbeEval<Scalar> probe_lambda(Scalar lambda) const
    {
        VecX<Scalar> w(2);
        w << Scalar(1) - lambda, lambda;
        return probe(w);
    }

    Scalar model_of(const VecX<Scalar>& v) const
    {
        const VecX<Scalar> Jv = (*Jx) * v;
        Scalar mx = G->col(0).dot(Jv);
        for (Index i = 1; i < G->count(); ++i) mx = std::max(mx, G->col(i).dot(Jv));
        return v.squaredNorm() / Scalar(2) + beta * mx;
    }

    Scalar phi_of(const VecX<Scalar>& v) const
    {
        const VecX<Scalar> Jv = (*Jx) * v;
        Scalar mx = G->col(0).dot(Jv);
        for (Index i = 1; i < G->count(); ++i) mx = std::max(mx, G->col(i).dot(Jv));
        return mx;
    }
};

//! Euclidean projection onto the probability simplex.
template <typename Scalar>
VecX<Scalar> project_simplex(VecX<Scalar> w)
{
    std::vector<Scalar> u(w.data(), w.data() + w.size());
    std::sort(u.begin(), u.end(), std::greater<Scalar>());
    Scalar cssum = Scalar(0), tau = Scalar(0);
    Index rho_idx = -1;
    Scalar running = Scalar(0);
    for (Index i = 0; i < static_cast<Index>(u.size()); ++i) {
        running += u[i];
        const Scalar t = (running - Scalar(1)) / Scalar(i + 1);
        if (u[i] - t > Scalar(0)) {
            rho_idx = i;
            cssum = running;
        }
    }
    tau = (cssum - Scalar(1)) / Scalar(rho_idx + 1);
    for (Index i = 0; i < w.size(); ++i) w(i) = std::max(w(i) - tau, Scalar(0));
    return w;
}

// Drives probes in a deterministic order (seed at lambda = 1/2, bracket
// corners, then golden-section refinement of the concave dual) and calls
// `visit` after each; stops early when visit returns true. Returns the
// final bracket around the dual maximizer.
template <typename Scalar, typename Visit>
std::pair<Scalar, Scalar> golden_section_probes(const SubproblemWork<Scalar>& work, Scalar gs_tol,
                                                int probe_cap, Visit&& visit)
{
    const Scalar inv_phi = Scalar(0.6180339887498949);
    Scalar a = Scalar(0), b = Scalar(1);
    int used = 0;
    auto run = [&](Scalar lambda) {
        ++used;
        return visit(work.probe_lambda(lambda), used);
    };
    if (run(Scalar(0.5)) || used >= probe_cap) return {a, b};
    if (run(Scalar(0)) || used >= probe_cap) return {a, b};
    if (run(Scalar(1)) || used >= probe_cap) return {a, b};

    Scalar x1 = b - inv_phi * (b - a);
    Scalar x2 = a + inv_phi * (b - a);
    ProbeEval<Scalar> e1 = work.probe_lambda(x1);
    ++used;
    if (visit(e1, used) || used >= probe_cap) return {a, b};
    ProbeEval<Scalar> e2 = work.probe_lambda(x2);
    ++used;
    if (visit(e2, used) || used >= probe_cap) return {a, b};

    while (b - a > gs_tol && used < probe_cap) {
        if (e1.L < e2.L) {
            a = x1;
            x1 = x2;
            e1 = e2;
            x2 = a + inv_phi * (b - a);
            e2 = work.probe_lambda(x2);
            ++used;
            if (visit(e2, used)) return {a, b};
        } else {
            b = x2;
            x2 = x1;
            e2 = e1;
            x1 = b - inv_phi * (b - a);
            e1 = work.probe_lambda(x1);
            ++used;
            if (visit(e1, used)) return {a, b};
        }
    }
    return {a, b};
}

// Projected supergradient ascent over the generator simplex; used when the
// generator set has more than two elements.
template <typename Scalar, typename Visit>
void simplex_ascent_probes(const SubproblemWork<Scalar>& work, int cap, Visit&& visit)
{
    const Index k = work.G->count();
    VecX<Scalar> w = VecX<Scalar>::Constant(k, Scalar(1) / Scalar(k));
    const Scalar t0 = Scalar(1) / (Scalar(1) + work.beta * work.Jx->norm() * work.Jx->norm());
    int used = 0;
    for (int it = 0; it < cap; ++it) {
        ProbeEval<Scalar> e = work.probe(w);
        ++used;
        if (visit(e, used)) return;
        const VecX<Scalar> grad = work.beta * (work.G->generators.transpose() * ((*work.Jx) * e.v));
        const Scalar step = t0 / std::sqrt(Scalar(it + 1));
        VecX<Scalar> w_next = project_simplex<Scalar>(w + step * grad);
        if ((w_next - w).norm() < Scalar(1e-14)) return; // ascent fixed point
        w = w_next;
    }
}

} // namespace detail

//! The s-compatible direction P_{C-x}(-beta * J_F(x)^T * wbar) for simplex
//! weights over the generator set.
template <typename Scalar>
VecX<Scalar> s_compatible_direction(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x,
                                    Scalar beta, const FeasibleSet<Scalar>& set,
                                    const VecX<Scalar>& weights)
{
    const GeneratorSet<Scalar> G = ctx.generator_set(x);
    detail::require<Scalar>(weights.size() == G.count(), "weight count mismatch");
    detail::require<Scalar>((weights.array() >= Scalar(-1e-12)).all() &&
                                std::abs(weights.sum() - Scalar(1)) <= Scalar(1e-12),
                            "weights must lie on the simplex");
    const MatX<Scalar> Jx = ctx.problem->J(x);
    const TranslatedProjector<Scalar> proj(set, x);
    const VecX<Scalar> wbar = G.generators * weights;
    return proj(VecX<Scalar>(-beta * (Jx.transpose() * wbar)));
}

//! Acceptance test for s-compatible candidates: when it holds, v is a
//! delta-approximate solution of the direction subproblem.
template <typename Scalar>
bool sufficiency_holds(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x, Scalar beta,
                       const VecX<Scalar>& wbar, const VecX<Scalar>& v, Scalar delta)
{
    const VecX<Scalar> Jv = ctx.problem->J(x) * v;
    const Scalar lhs = beta * phi(ctx, x, v).value;
    const Scalar rhs = (Scalar(1) - delta) * beta * wbar.dot(Jv) - delta / Scalar(2) * v.squaredNorm();
    return lhs <= rhs + Scalar(1e-12);
}

//! Exact solution of min_{v in C-x} ||v||^2/2 + beta*phi(x,v) via its
//! concave dual over the generator simplex. For two generators the dual is
//! maximized by golden section on [0,1]; otherwise by projected ascent. On
//! nonconvex sets the dual route is a heuristic: the primal model is
//! polished by projected subgradient steps, the better value kept and a
//! convexity warning raised when the primal/dual gap stays large.
template <typename Scalar>
DirectionResult<Scalar> solve_exact(const ScalarizationContext<Scalar>& ctx, const VecX<Scalar>& x,
                                    Scalar beta, const FeasibleSet<Scalar>& set,
                                    const SubproblemOptions<Scalar>& opts = {})
{
    detail::require<Scalar>(beta > Scalar(0), "beta must be positive");
    detail::require<Scalar>(set.contains(x, Scalar(1e-6)), "x must be feasible");

    const GeneratorSet<Scalar> G = ctx.generator_set(x);
    const MatX<Scalar> Jx = ctx.problem->J(x);
    const TranslatedProjector<Scalar> proj(set, x);
    const detail::SubproblemWork<Scalar> work{&G, &Jx, beta, &proj};

    detail::ProbeEval<Scalar> best_dual;
    best_dual.L = -std::numeric_limits<Scalar>::infinity();
    detail::ProbeEval<Scalar> best_primal;
    best_primal.model = std::numeric_limits<Scalar>::infinity();
    int probes = 0;

    auto visit = [&](const detail::ProbeEval<Scalar>& e, int used) {
        probes = used;
        if (e.L > best_dual.L) best_dual = e;
        if (e.model < best_primal.model) best_primal = e;
        return false;
    };
    if (G.count() == 2) {
        const auto bracket = detail::golden_section_probes<Scalar>(work, opts.gs_tol, 1 << 20, visit);
        // The bracket midpoint is accurate to the bracket width, which beats
        // value-based probe selection once model differences fall below
        // floating precision.
        const auto mid = work.probe_lambda((bracket.first + bracket.second) / Scalar(2));
        ++probes;
        if (mid.L > best_dual.L) best_dual = mid;
        const Scalar tie = Scalar(1e-13) * std::max(Scalar(1), std::abs(mid.model));
        if (mid.model <= best_primal.model + tie) best_primal = mid;
    } else if (G.count() == 1) {
        VecX<Scalar> w1 = VecX<Scalar>::Ones(1);
        visit(work.probe(w1), 1);
    } else {
        detail::simplex_ascent_probes<Scalar>(work, opts.ascent_cap, visit);
    }

    // Primal candidates: best probe, the zero direction, and (on nonconvex
    // sets) a polished refinement of the best probe.
    VecX<Scalar> v = best_primal.v;
    Scalar model = best_primal.model;
    if (model > Scalar(0)) {
        v = VecX<Scalar>::Zero(x.size());
        model = Scalar(0);
    }
    if (!set.convex() && opts.polish_steps > 0) {
        VecX<Scalar> vp = v;
        const Scalar step = Scalar(1) / (Scalar(1) + beta * Jx.norm() * Jx.norm());
        for (int i = 0; i < opts.polish_steps; ++i) {
            const VecX<Scalar> Jv = Jx * vp;
            Index arg = 0;
            Scalar mx = G.col(0).dot(Jv);
            for (Index j = 1; j < G.count(); ++j) {
                const Scalar val = G.col(j).dot(Jv);
                if (val > mx) {
                    mx = val;
                    arg = j;
                }
            }
            const VecX<Scalar> sub = vp + beta * (Jx.transpose() * G.col(arg));
            vp = proj(VecX<Scalar>(vp - step * sub));
            const Scalar mp = work.model_of(vp);
            if (mp < model) {
                model = mp;
                v = vp;
            }
        }
    }

    DirectionResult<Scalar> res;
    res.dual_iterations = probes;
    res.dual_bound = best_dual.L;
    res.weight = best_dual.wbar;
    res.delta = Scalar(0);
    res.convexity_warning = (model - best_dual.L) > Scalar(10) * opts.model_tol + Scalar(1e-12);
    if (v.norm() < opts.zero_tol) {
        res.v = VecX<Scalar>::Zero(x.size());
        res.phi_value = Scalar(0);
        res.model_value = Scalar(0);
        res.mode = DirectionMode::Zero;
        return res;
    }
    res.v = v;
    res.model_value = model;
    res.phi_value = work.phi_of(v);
    res.mode = DirectionMode::Exact;
    return res;
}

//! Delta-approximate direction: probes the dual in the same deterministic
//! order as the exact solve, and accepts the scaled candidate
//! u = (1-delta) * v_best as soon as its model value is certified against
//! the running dual lower bound:  model(u) <= (1-delta) * g_best <=
//! (1-delta) * theta. Larger delta therefore accepts earlier (cheaper) and
//! returns shorter directions. delta = 0 reduces to the exact solve.
template <typename Scalar>
DirectionResult<Scalar> delta_approx_direction(const ScalarizationContext<Scalar>& ctx,
                                               const VecX<Scalar>& x, Scalar beta,
                                               const FeasibleSet<Scalar>& set, Scalar delta,
                                               const SubproblemOptions<Scalar>& opts = {})
{
    detail::require<Scalar>(delta >= Scalar(0) && delta < Scalar(1), "delta must be in [0,1)");
    if (delta < Scalar(1e-12)) return solve_exact(ctx, x, beta, set, opts);

    const GeneratorSet<Scalar> G = ctx.generator_set(x);
    const MatX<Scalar> Jx = ctx.problem->J(x);
    const TranslatedProjector<Scalar> proj(set, x);
    const detail::SubproblemWork<Scalar> work{&G, &Jx, beta, &proj};
    const Scalar tau = Scalar(1) - delta;

    detail::ProbeEval<Scalar> best_dual;
    best_dual.L = -std::numeric_limits<Scalar>::infinity();
    std::optional<DirectionResult<Scalar>> accepted;

    auto visit = [&](const detail::ProbeEval<Scalar>& e, int used) {
        if (e.L > best_dual.L) best_dual = e;
        VecX<Scalar> u = tau * best_dual.v;
        if (!set.convex() && !set.contains(VecX<Scalar>(x + u), opts.feas_tol)) return false;
        const Scalar model_u = work.model_of(u);
        const Scalar slack = Scalar(1e-15) * std::max(Scalar(1), std::abs(best_dual.L));
        if (model_u <= tau * best_dual.L + slack) {
            const Scalar phi_u = work.phi_of(u);
            if (u.norm() > Scalar(0) && phi_u >= Scalar(0)) return false;
            DirectionResult<Scalar> r;
            r.v = std::move(u);
            r.phi_value = phi_u;
            r.model_value = model_u;
            r.mode = DirectionMode::DeltaApprox;
            r.delta = delta;
            r.weight = best_dual.wbar;
            r.dual_iterations = used;
            r.dual_bound = best_dual.L;
            accepted = std::move(r);
            return true;
        }
        return false;
    };

    if (G.count() == 2)
        detail::golden_section_probes<Scalar>(work, opts.gs_tol, opts.budget, visit);
    else if (G.count() > 2)
        detail::simplex_ascent_probes<Scalar>(work, std::min(opts.budget, opts.ascent_cap), visit);

    if (accepted) {
        if (accepted->v.norm() < opts.zero_tol) {
            accepted->v = VecX<Scalar>::Zero(x.size());
            accepted->phi_value = Scalar(0);
            accepted->model_value = Scalar(0);
            accepted->mode = DirectionMode::Zero;
        }
        return *accepted;
    }
    // Budget exhausted: fall back to the exact direction, which is trivially
    // delta-approximate.
    DirectionResult<Scalar> exact = solve_exact(ctx, x, beta, set, opts);
    exact.dual_iterations += opts.budget;
    return exact;
}

} // namespace vopt

// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/types.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vopt {

struct DykstraFailure : std::runtime_error {
    double residual;
    explicit DykstraFailure(double res)
        : std::runtime_error("Dykstra projection did not converge; residual " + std::to_string(res)),
          residual(res)
    {
    }
};

//! Closed nonempty feasible set with a closest-point projection.
//!
//! Box, Ball and Annulus have closed-form projections; Intersection of
//! convex members uses Dykstra's scheme; Custom delegates to user oracles
//! (which must be pure). Immutable after construction.
template <typename Scalar>
class FeasibleSet {
public:
    using Vec = VecX<Scalar>;
    using ViolationFn = std::function<Scalar(const Vec&)>;
    using ProjectFn = std::function<Vec(const Vec&)>;

    static FeasibleSet box(Vec lower, Vec upper)
    {
        detail::require<Scalar>(lower.size() == upper.size(), "box bound dimension mismatch");
        detail::require<Scalar>((lower.array() <= upper.array()).all(), "box needs lower <= upper");
        FeasibleSet s(Kind::Box, lower.size(), true);
        s.lo_ = std::move(lower);
        s.hi_ = std::move(upper);
        return s;
    }

    static FeasibleSet ball(Vec center, Scalar radius)
    {
        detail::require<Scalar>(radius >= Scalar(0), "ball radius must be nonnegative");
        FeasibleSet s(Kind::Ball, center.size(), true);
        s.center_ = std::move(center);
        s.r_outer_ = radius;
        return s;
    }

    static FeasibleSet annulus(Vec center, Scalar r_inner, Scalar r_outer)
    {
        detail::require<Scalar>(Scalar(0) <= r_inner && r_inner <= r_outer, "annulus needs 0 <= ri <= ro");
        FeasibleSet s(Kind::Annulus, center.size(), r_inner == Scalar(0));
        s.center_ = std::move(center);
        s.r_inner_ = r_inner;
        s.r_outer_ = r_outer;
        return s;
    }

    static FeasibleSet intersection(std::vector<FeasibleSet> members)
    {
        detail::require<Scalar>(!members.empty(), "empty intersection list");
        const Index d = members.front().dim();
        bool convex = true;
        for (const auto& m : members) {
            detail::require<Scalar>(m.dim() == d, "intersection member dimension mismatch");
            convex = convex && m.convex();
        }
        FeasibleSet s(Kind::Intersection, d, convex);
        s.members_ = std::make_shared<std::vector<FeasibleSet>>(std::move(members));
        return s;
    }

    //! `violation` must return a value <= 0 exactly on members of the set.
    static FeasibleSet custom(Index dim, ViolationFn violation, ProjectFn project, bool convex)
    {
        FeasibleSet s(Kind::Custom, dim, convex);
        s.violation_fn_ = std::move(violation);
        s.project_fn_ = std::move(project);
        return s;
    }

    Index dim() const { return dim_; }
    bool convex() const { return convex_; }

    //! Max constraint violation; <= 0 iff feasible.
    Scalar violation(const Vec& x) const
    {
        detail::require<Scalar>(x.size() == dim_, "dimension mismatch");
        switch (kind_) {
        case Kind::Box: {
            Scalar v = -std::numeric_limits<Scalar>::infinity();
            for (Index i = 0; i < dim_; ++i)
                v = std::max({v, lo_(i) - x(i), x(i) - hi_(i)});
            return v;
        }
        case Kind::Ball:
            return (x - center_).norm() - r_outer_;
        case Kind::Annulus: {
            const Scalar rho = (x - center_).norm();
            return std::max(r_inner_ - rho, rho - r_outer_);
        }
        case Kind::Intersection: {
            Scalar v = -std::numeric_limits<Scalar>::infinity();
            for (const auto& m : *members_) v = std::max(v, m.violation(x));
            return v;
        }
        case Kind::Custom:
            return violation_fn_(x);
        }
        return Scalar(0);
    }

    bool contains(const Vec& x, Scalar tol) const { return violation(x) <= tol; }

    Vec project(const Vec& x) const
    {
        detail::require<Scalar>(x.size() == dim_, "dimension mismatch");
        switch (kind_) {
        case Kind::Box:
            return x.cwiseMax(lo_).cwiseMin(hi_);
        case Kind::Ball: {
            const Vec d = x - center_;
            const Scalar rho = d.norm();
            if (rho <= r_outer_) return x;
            return center_ + d * (r_outer_ / rho);
        }
        case Kind::Annulus: {
            const Vec d = x - center_;
            const Scalar rho = d.norm();
            if (rho == Scalar(0)) {
                Vec e = Vec::Zero(dim_);
                e(0) = Scalar(1);
                return center_ + r_inner_ * e; // deterministic tie-break
            }
            const Scalar r = std::clamp(rho, r_inner_, r_outer_);
            return center_ + d * (r / rho);
        }
        case Kind::Intersection:
            return project_dykstra(x);
        case Kind::Custom:
            return project_fn_(x);
        }
        return x;
    }

    int dykstra_cap = 10000;
    Scalar dykstra_tol = Scalar(1e-10);

private:
    enum class Kind { Box, Ball, Annulus, Intersection, Custom };

    FeasibleSet(Kind k, Index d, bool convex) : kind_(k), dim_(d), convex_(convex) {}

    Vec project_dykstra(const Vec& x0) const
    {
        const auto& sets = *members_;
        Vec x = x0;
        std::vector<Vec> p(sets.size(), Vec::Zero(dim_));
        Scalar change = std::numeric_limits<Scalar>::infinity();
        for (int it = 0; it < dykstra_cap; ++it) {
            change = Scalar(0);
            for (std::size_t i = 0; i < sets.size(); ++i) {
                const Vec y = sets[i].project(x + p[i]);
                change = std::max(change, (y - x).norm());
                p[i] = x + p[i] - y;
                x = y;
            }
            if (change < dykstra_tol) return x;
        }
        // A residual that stalls above tolerance also covers the
        // empty-intersection case.
        throw DykstraFailure(static_cast<double>(change));
    }

    Kind kind_;
    Index dim_;
    bool convex_;
    Vec lo_, hi_, center_;
    Scalar r_inner_ = Scalar(0), r_outer_ = Scalar(0);
    std::shared_ptr<std::vector<FeasibleSet>> members_;
    ViolationFn violation_fn_;
    ProjectFn project_fn_;

    template <typename S>
    friend FeasibleSet<S> translate(const FeasibleSet<S>& set, const VecX<S>& shift);
};

//! The set C - x, with P_{C-x}(u) = P_C(u + x) - x.
template <typename Scalar>
FeasibleSet<Scalar> translate(const FeasibleSet<Scalar>& set, const VecX<Scalar>& shift)
{
    using FS = FeasibleSet<Scalar>;
    detail::require<Scalar>(shift.size() == set.dim(), "dimension mismatch");
    switch (set.kind_) {
    case FS::Kind::Box:
        return FS::box(set.lo_ - shift, set.hi_ - shift);
    case FS::Kind::Ball:
        return FS::ball(set.center_ - shift, set.r_outer_);
    case FS::Kind::Annulus:
        return FS::annulus(set.center_ - shift, set.r_inner_, set.r_outer_);
    case FS::Kind::Intersection: {
        std::vector<FS> shifted;
        shifted.reserve(set.members_->size());
        for (const auto& m : *set.members_) shifted.push_back(translate(m, shift));
        return FS::intersection(std::move(shifted));
    }
    case FS::Kind::Custom: {
        auto viol = set.violation_fn_;
        auto proj = set.project_fn_;
        return FS::custom(
            set.dim(),
            [viol, shift](const VecX<Scalar>& u) -> Scalar { return viol(VecX<Scalar>(u + shift)); },
            [proj, shift](const VecX<Scalar>& u) -> VecX<Scalar> {
                return proj(VecX<Scalar>(u + shift)) - shift;
            },
            set.convex());
    }
    }
    return set;
}

//! Projection onto C - x used by the direction subproblem. For heuristic
//! (custom, nonconvex) projections the zero direction is kept as a fallback
//! candidate, which preserves the direction-norm bound ||v|| <= 2*beta*||J||
//! even when the user projection is not the true closest point.
template <typename Scalar>
class TranslatedProjector {
public:
    TranslatedProjector(const FeasibleSet<Scalar>& set, VecX<Scalar> anchor)
        : set_(&set), anchor_(std::move(anchor)),
          anchor_feasible_(set.contains(anchor_, Scalar(1e-9)))
    {
    }

    //! P_{C - anchor}(q).
    VecX<Scalar> operator()(const VecX<Scalar>& q) const
    {
        VecX<Scalar> cand = set_->project(anchor_ + q) - anchor_;
        if (anchor_feasible_ && (cand - q).norm() > q.norm() + detail::abs_margin<Scalar>())
            return VecX<Scalar>::Zero(q.size());
        return cand;
    }

private:
    const FeasibleSet<Scalar>* set_;
    VecX<Scalar> anchor_;
    bool anchor_feasible_;
};

} // namespace vopt

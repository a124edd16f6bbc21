// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/types.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace vopt {

enum class ConeKind { Polyhedral, NormCone };

//! Finite representation of a closed, convex, pointed cone with nonempty
//! interior in R^m.
//!
//! Polyhedral cones are stored as unit inequality rows r_i with
//! K = { z : r_i^T z >= 0 for all i }. NormCone(a) is the second-order set
//! { z : ||z||_2 <= a^T z }, which is a proper cone exactly when ||a|| > 1.
template <typename Scalar>
struct ConeRep {
    ConeKind kind;
    Index dim;
    MatX<Scalar> rows; //!< Polyhedral: one unit row per inequality.
    VecX<Scalar> axis; //!< NormCone only.

    static ConeRep polyhedral(MatX<Scalar> inequality_rows)
    {
        detail::require<Scalar>(inequality_rows.rows() >= 1, "polyhedral cone needs at least one row");
        const Index m = inequality_rows.cols();
        for (Index i = 0; i < inequality_rows.rows(); ++i) {
            const Scalar n = inequality_rows.row(i).norm();
            detail::require<Scalar>(n > Scalar(0), "zero inequality row");
            inequality_rows.row(i) /= n;
        }
        ConeRep c{ConeKind::Polyhedral, m, std::move(inequality_rows), VecX<Scalar>()};
        if (m == 2) c.validate_2d();
        return c;
    }

    //! 2D cone spanned by two extreme rays. The defining rows are the unit
    //! normals g_i with g_i ^|_ r_i oriented so that g_i^T r_other >= 0.
    static ConeRep polyhedral_from_rays_2d(const VecX<Scalar>& r1, const VecX<Scalar>& r2)
    {
        detail::require<Scalar>(r1.size() == 2 && r2.size() == 2, "rays must be 2D");
        auto normal_for = [](const VecX<Scalar>& ray, const VecX<Scalar>& other) {
            VecX<Scalar> g(2);
            g << -ray(1), ray(0);
            if (g.dot(other) < Scalar(0)) g = -g;
            detail::require<Scalar>(g.dot(other) > Scalar(0), "rays are collinear");
            return g;
        };
        MatX<Scalar> rows(2, 2);
        rows.row(0) = normal_for(r1, r2).transpose();
        rows.row(1) = normal_for(r2, r1).transpose();
        return polyhedral(std::move(rows));
    }

    //! { z : ||z||_2 <= axis^T z }. Requires ||axis|| > 1 (else the set is
    //! {0} and has empty interior).
    static ConeRep norm_cone(VecX<Scalar> a)
    {
        detail::require<Scalar>(a.norm() > Scalar(1), "norm cone axis must satisfy ||a|| > 1");
        const Index m = a.size();
        return ConeRep{ConeKind::NormCone, m, MatX<Scalar>(), std::move(a)};
    }

    static ConeRep orthant(Index m)
    {
        return polyhedral(MatX<Scalar>::Identity(m, m));
    }

    //! Slack of every defining inequality at z (>= 0 componentwise iff z in K).
    VecX<Scalar> slacks(const VecX<Scalar>& z) const
    {
        detail::require<Scalar>(z.size() == dim, "dimension mismatch");
        if (kind == ConeKind::Polyhedral) return rows * z;
        VecX<Scalar> s(1);
        s(0) = axis.dot(z) - z.norm();
        return s;
    }

private:
    // A 2D polyhedral rep is proper iff the rows span an angular width in
    // (0, pi): width 0 is a halfspace (not pointed), width >= pi is empty
    // interior.
    void validate_2d() const
    {
        Scalar widest = Scalar(0);
        for (Index i = 0; i < rows.rows(); ++i)
            for (Index j = i + 1; j < rows.rows(); ++j) {
                const Scalar c = std::clamp<Scalar>(rows.row(i).dot(rows.row(j)), Scalar(-1), Scalar(1));
                widest = std::max(widest, std::acos(c));
            }
        if (rows.rows() == 1) widest = Scalar(0);
        detail::require<Scalar>(widest > Scalar(1e-12), "rows describe a halfspace (cone not pointed)");
        detail::require<Scalar>(widest < Scalar(3.14159265358979) - Scalar(1e-9),
                                "rows describe a cone with empty interior");
    }
};

//! z in K with relative tolerance `margin` (>= 0). Exact closed membership
//! at margin 0 up to an absolute 1e-12 slack.
template <typename Scalar>
bool cone_contains(const ConeRep<Scalar>& cone, const VecX<Scalar>& z, Scalar margin)
{
    detail::require<Scalar>(margin >= Scalar(0), "membership margin must be nonnegative");
    const Scalar tol = margin * z.norm() + detail::abs_margin<Scalar>();
    return (cone.slacks(z).array() >= -tol).all();
}

//! z in int(K), scale-invariantly: every defining slack >= margin * ||z||.
//! The origin is never interior.
template <typename Scalar>
bool cone_strict_contains(const ConeRep<Scalar>& cone, const VecX<Scalar>& z, Scalar margin)
{
    detail::require<Scalar>(margin > Scalar(0), "strict membership margin must be positive");
    const Scalar nz = z.norm();
    if (nz == Scalar(0)) return false;
    return (cone.slacks(z).array() >= margin * nz).all();
}

//! Unit generators of the dual cone K*; their convex-conic hull is K*.
template <typename Scalar>
struct GeneratorSet {
    MatX<Scalar> generators; //!< m x k, one generator per column.

    Index count() const { return generators.cols(); }
    Index dim() const { return generators.rows(); }
    VecX<Scalar> col(Index i) const { return generators.col(i); }
};

//! Extreme rays of K*, unit-normalized.
//!
//! 2D polyhedral cones reduce to the two angular extremes of the inequality
//! rows (K* is the conic hull of the rows). Higher-dimensional polyhedral
//! reps are accepted only when their rows already are the dual extreme rays.
//! 2D norm cones use the circular-cone identity: dual half-angle
//! pi/2 - alpha with alpha = arccos(1/||a||).
template <typename Scalar>
GeneratorSet<Scalar> dual_generators(const ConeRep<Scalar>& cone)
{
    if (cone.kind == ConeKind::Polyhedral) {
        if (cone.dim == 2) {
            Index gi = 0, gj = cone.rows.rows() > 1 ? 1 : 0;
            Scalar widest = Scalar(-1);
            for (Index i = 0; i < cone.rows.rows(); ++i)
                for (Index j = i + 1; j < cone.rows.rows(); ++j) {
                    const Scalar c =
                        std::clamp<Scalar>(cone.rows.row(i).dot(cone.rows.row(j)), Scalar(-1), Scalar(1));
                    const Scalar ang = std::acos(c);
                    if (ang > widest) {
                        widest = ang;
                        gi = i;
                        gj = j;
                    }
                }
            detail::require<Scalar>(cone.rows.rows() >= 2, "single-row 2D cone is not pointed");
            MatX<Scalar> g(2, 2);
            g.col(0) = cone.rows.row(gi).transpose();
            g.col(1) = cone.rows.row(gj).transpose();
            return GeneratorSet<Scalar>{std::move(g)};
        }
        // dim > 2: rows are taken as the dual's extreme rays.
        return GeneratorSet<Scalar>{cone.rows.transpose()};
    }
    detail::require<Scalar>(cone.dim == 2, "norm-cone dual generators only available in 2D");
    const Scalar na = cone.axis.norm();
    const VecX<Scalar> u = cone.axis / na;
    const Scalar alpha = std::acos(Scalar(1) / na);
    const Scalar half = Scalar(1.5707963267948966) - alpha; // dual half-angle
    MatX<Scalar> g(2, 2);
    g.col(0) = detail::rotate2d<Scalar>(u, -half);
    g.col(1) = detail::rotate2d<Scalar>(u, half);
    return GeneratorSet<Scalar>{std::move(g)};
}

//! Hausdorff distance between two finite point sets.
template <typename Scalar>
Scalar hausdorff_distance(const GeneratorSet<Scalar>& A, const GeneratorSet<Scalar>& B)
{
    detail::require<Scalar>(A.count() > 0 && B.count() > 0, "hausdorff distance of empty set");
    detail::require<Scalar>(A.dim() == B.dim(), "dimension mismatch");
    auto directed = [](const MatX<Scalar>& from, const MatX<Scalar>& to) {
        Scalar sup = Scalar(0);
        for (Index i = 0; i < from.cols(); ++i) {
            Scalar inf = std::numeric_limits<Scalar>::infinity();
            for (Index j = 0; j < to.cols(); ++j)
                inf = std::min(inf, (from.col(i) - to.col(j)).norm());
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(A.generators, B.generators), directed(B.generators, A.generators));
}

enum class Indexing { DomainIndexed, ImageIndexed };

//! Point-to-cone mapping defining the variable order, together with the
//! space its argument lives in (domain points x, or image points F(x)).
template <typename Scalar>
struct VariableOrder {
    std::function<ConeRep<Scalar>(const VecX<Scalar>&)> mapping;
    Indexing indexing = Indexing::DomainIndexed;
    std::optional<ConeRep<Scalar>> bounding_cone; //!< diagnostic only

    ConeRep<Scalar> cone_at(const VecX<Scalar>& p) const { return mapping(p); }
    GeneratorSet<Scalar> generators_at(const VecX<Scalar>& p) const { return dual_generators(mapping(p)); }
};

//! Empirical lower bound on the Lipschitz constant of x -> G(x) w.r.t. the
//! Hausdorff distance, over the given sample pairs. Diagnostic only.
template <typename Scalar>
Scalar estimate_generator_lipschitz(const VariableOrder<Scalar>& order,
                                    const std::vector<std::pair<VecX<Scalar>, VecX<Scalar>>>& pairs)
{
    detail::require<Scalar>(!pairs.empty(), "need at least one sample pair");
    Scalar best = Scalar(0);
    for (const auto& [a, b] : pairs) {
        const Scalar d = (a - b).norm();
        detail::require<Scalar>(d > Scalar(0), "coincident sample pair");
        best = std::max(best, hausdorff_distance(order.generators_at(a), order.generators_at(b)) / d);
    }
    return best;
}

} // namespace vopt

// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/cone.hpp"
#include "vopt/feasible_set.hpp"

#include <functional>
#include <string>

namespace vopt {

//! A constrained vector optimization instance under a variable cone order:
//! minimize F : R^n -> R^m over the feasible set, where "decrease" at x is
//! measured against the cone supplied by the order mapping.
template <typename Scalar>
struct VectorProblem {
    using Vec = VecX<Scalar>;
    using Mat = MatX<Scalar>;

    Index n = 0;
    Index m = 0;
    std::function<Vec(const Vec&)> F;
    std::function<Mat(const Vec&)> J; //!< Jacobian of F, m x n
    FeasibleSet<Scalar> feasible = FeasibleSet<Scalar>::box(Vec::Zero(1), Vec::Zero(1));
    VariableOrder<Scalar> order;
    //! Membership test for the known solution/stationary set, when one exists.
    std::function<bool(const Vec&, Scalar)> solution_checker;
    std::string name;

    //! Point the order mapping is evaluated at: x itself for domain-indexed
    //! orders, F(x) for image-indexed ones.
    Vec order_index_point(const Vec& x) const
    {
        return order.indexing == Indexing::DomainIndexed ? x : F(x);
    }

    ConeRep<Scalar> cone_at(const Vec& x) const { return order.cone_at(order_index_point(x)); }
    GeneratorSet<Scalar> generators_at(const Vec& x) const
    {
        return order.generators_at(order_index_point(x));
    }
};

} // namespace vopt

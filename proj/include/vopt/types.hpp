// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace vopt {

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Eigen::Index;

namespace detail {

// Absolute slack added to every relative membership margin so that tests
// behave sensibly for vectors near the origin.
template <typename Scalar>
constexpr Scalar abs_margin()
{
    return Scalar(1e-12);
}

template <typename Scalar>
VecX<Scalar> rotate2d(const VecX<Scalar>& v, Scalar angle)
{
    VecX<Scalar> out(2);
    const Scalar c = std::cos(angle), s = std::sin(angle);
    out << c * v(0) - s * v(1), s * v(0) + c * v(1);
    return out;
}

template <typename Scalar>
void require(bool cond, const char* what)
{
    if (!cond) throw std::invalid_argument(what);
}

} // namespace detail

} // namespace vopt

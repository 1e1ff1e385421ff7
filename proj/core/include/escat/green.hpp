#pragma once

#include "escat/material.hpp"
#include "escat/types.hpp"

namespace escat {

/// 2D Kupradze fundamental tensor of the time-harmonic Navier operator,
///   G(x,y) = (i/(4 mu)) H0(ks r) I + (i/(4 w^2)) grad grad^T [H0(ks r) - H0(kp r)],
/// r = |x - y|. Each column solves the homogeneous Navier equation in x away
/// from y and satisfies the outgoing (Kupradze) radiation behaviour.
CMat2 green_tensor(const Vec2& x, const Vec2& y, const LameParameters& params,
                   const WaveContext& context);

/// Exact integral of the tensor over a disk of radius a centred at the
/// singularity: int_{B_a(x)} G(x,y) dy (a multiple of the identity).
/// This is the self-cell weight of the volume-integral discretization.
Complex green_disk_integral(Real a, const LameParameters& params, const WaveContext& context);

}  // namespace escat

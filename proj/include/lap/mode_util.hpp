#pragma once

#include "lap/problem.hpp"

namespace lap {

// v = r^{(n-1)/2} u conversions between mode data and renormalized profiles.
RadialFunction to_v_form(const RadialFunction& u_fn, int n);
RadialFunction to_u_form(const RadialFunction& v_fn, int n);

// v-form samples of (d/dr - sign * i z) u.
RadialFunction sommerfeld_defect_vform(const RadialFunction& v, int n, cplx z,
                                       double sign);

// Smooth normalized bump supported on [center - width, center + width];
// normalization: L1 (unit integral) or L2 (unit norm).
enum class BumpNormalization { l1, l2 };
RadialFunction smooth_bump(GridPtr g, double center, double width,
                           BumpNormalization norm = BumpNormalization::l1);

}  // namespace lap

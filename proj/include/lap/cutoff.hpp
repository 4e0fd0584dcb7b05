#pragma once

namespace lap {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);
double smooth_step_d1(double t);
double smooth_step_d2(double t);

// Smooth bump equal to 1 on [a + w, b - w], 0 outside [a, b].
double smooth_box(double r, double a, double b, double w);

}  // namespace lap

#include "lap/cutoff.hpp"

#include <cmath>

namespace lap {

namespace {

double bump_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double bump_g1(double t) { return t > 0.0 ? bump_g(t) / (t * t) : 0.0; }
double bump_g2(double t) {
    if (t <= 0.0) return 0.0;
    const double g = bump_g(t);
    return g * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
}

}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g = bump_g(t), gc = bump_g(1.0 - t);
    return g / (g + gc);
}

double smooth_step_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double g = bump_g(t), gc = bump_g(1.0 - t);
    const double G = g + gc;
    const double G1 = bump_g1(t) - bump_g1(1.0 - t);
    return bump_g1(t) / G - g * G1 / (G * G);
}

double smooth_step_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double g = bump_g(t), gc = bump_g(1.0 - t);
    const double g1 = bump_g1(t), g2 = bump_g2(t);
    const double G = g + gc;
    const double G1 = g1 - bump_g1(1.0 - t);
    const double G2 = g2 + bump_g2(1.0 - t);
    return g2 / G - 2.0 * g1 * G1 / (G * G) - g * G2 / (G * G) +
           2.0 * g * G1 * G1 / (G * G * G);
}

double smooth_box(double r, double a, double b, double w) {
    return smooth_step((r - a) / w) * smooth_step((b - r) / w);
}

}  // namespace lap

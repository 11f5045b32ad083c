#pragma once

namespace hyp {

// Named lengths shared by the example surfaces and the defect tables.
struct Constants {
    double cosh_d_beta;  // real root of x^3 - 14x^2 - 15x - 4
    double d_beta;
    double cosh_r_beta;  // cosh(d_beta/2)
    double r_beta;
    double cosh_r_alpha;  // 1/(2 sin(pi/18))
    double r_alpha;
    double cosh_d_alpha;
    double d_alpha;
    double b_beta;  // b0(d_beta, d_beta)
    double d1;      // acosh(15.0166)
    double r1;      // acosh(2.8298)
    double d2;      // acosh(15.0167)
    double r2;      // acosh(2.8299)
};

const Constants& constants();

// Centered-edge length bound: acosh(2 cosh(2R) - 1).
double B0_of(double R);

}  // namespace hyp

#include "hyp/constants.hpp"

#include <cmath>

#include "hyp/cyclic.hpp"

namespace hyp {

static Constants compute() {
    Constants c{};
    auto cubic = [](double x) { return ((x - 14.0) * x - 15.0) * x - 4.0; };
    c.cosh_d_beta = bisect(cubic, 14.0, 16.0);
    c.d_beta = std::acosh(c.cosh_d_beta);
    c.r_beta = c.d_beta / 2.0;
    c.cosh_r_beta = std::cosh(c.r_beta);
    c.cosh_r_alpha = 1.0 / (2.0 * std::sin(M_PI / 18.0));
    c.r_alpha = std::acosh(c.cosh_r_alpha);
    c.d_alpha = 2.0 * c.r_alpha;
    c.cosh_d_alpha = std::cosh(c.d_alpha);
    c.b_beta = b0({c.d_beta, c.d_beta});
    c.d1 = std::acosh(15.0166);
    c.r1 = std::acosh(2.8298);
    c.d2 = std::acosh(15.0167);
    c.r2 = std::acosh(2.8299);
    return c;
}

const Constants& constants() {
    static const Constants c = compute();
    return c;
}

double B0_of(double R) {
    return std::acosh(2.0 * std::cosh(2.0 * R) - 1.0);
}

}  // namespace hyp

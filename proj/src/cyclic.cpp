#include "hyp/cyclic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyp {

namespace {

double theta_angle(double d, double J) {
    double s = std::sinh(d / 2.0) / std::sinh(J);
    return std::asin(std::clamp(s, -1.0, 1.0));
}

double beta_angle(double d, double J) {
    double c = std::tanh(d / 2.0) / std::tanh(J);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double angle_sum(const std::vector<double>& sides, double J) {
    double s = 0.0;
    for (double d : sides) s += theta_angle(d, J);
    return s;
}

size_t longest_index(const std::vector<double>& sides) {
    return static_cast<size_t>(std::max_element(sides.begin(), sides.end()) - sides.begin());
}

// Circumradius solve parametrized by phi = theta(d_max, J), so sinh J =
// sinh(d_max/2)/sin(phi). The defining equations keep bounded slope in phi
// even where they are singular in J (J near d_max/2), which keeps the solved
// half-angles accurate to bisection precision.
double solve_phi(const std::vector<double>& sides, size_t imax, bool centered) {
    double s = std::sinh(sides[imax] / 2.0);
    std::vector<double> q;
    for (size_t i = 0; i < sides.size(); ++i)
        if (i != imax) q.push_back(std::sinh(sides[i] / 2.0) / s);
    auto g = [&](double phi) {
        double sp = std::sin(phi);
        double acc = centered ? phi - M_PI : -phi;
        for (double qi : q) acc += std::asin(std::min(1.0, qi * sp));
        return acc;
    };
    if (centered) {
        // increasing; g(pi/2) is the classification margin
        if (g(M_PI / 2.0) <= 0.0) return M_PI / 2.0;
        return bisect(g, 1e-30, M_PI / 2.0);
    }
    // sum of the other half-angles minus phi: positive near zero whenever the
    // tuple is cyclic, negative at pi/2 whenever it is non-centered
    if (g(M_PI / 2.0) >= 0.0) return M_PI / 2.0;
    return bisect(g, 1e-30, M_PI / 2.0);
}

double radius_from_phi(double dmax, double phi) {
    return std::asinh(std::sinh(dmax / 2.0) / std::sin(phi));
}

// 1 - sin(phi), stable near phi = pi/2
double one_minus_sin(double phi) {
    double v = std::sin(M_PI / 4.0 - phi / 2.0);
    return 2.0 * v * v;
}

// beta(d_i, J) = acos(tanh(d_i/2)/tanh J) through the rearrangement
// 1 - tanh(m)/tanh(J) = w(2-w) / (cosh m (cosh m + sqrt(cosh^2 m - w(2-w))))
// with w = 1 - sinh(m)/sinh(J), free of the cancellation at J near m.
double beta_from_w(double mi, double wi) {
    double u = std::max(0.0, wi * (2.0 - wi));
    double c = std::cosh(mi);
    double eps = u / (c * (c + std::sqrt(std::max(0.0, c * c - u))));
    return 2.0 * std::asin(std::sqrt(eps / 2.0));
}

}  // namespace

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("bisect: no sign change over the bracket");
    for (int i = 0; i < kBisectMaxIter; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= kBisectRelTol * std::max(1.0, std::abs(mid))) return mid;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CyclicTuple classify(const std::vector<double>& sides) {
    if (sides.size() < 3) throw std::runtime_error("classify: need at least 3 sides");
    for (double d : sides)
        if (d <= 0.0) throw std::runtime_error("classify: sides must be positive");

    CyclicTuple t;
    t.sides = sides;
    size_t imax = longest_index(sides);
    double sum_half = 0.0;
    for (size_t i = 0; i < sides.size(); ++i)
        if (i != imax) sum_half += std::sinh(sides[i] / 2.0);
    if (std::sinh(sides[imax] / 2.0) >= sum_half) {
        t.cls = Centering::NotCyclic;
        t.radius = std::numeric_limits<double>::quiet_NaN();
        return t;
    }

    double s = angle_sum(sides, sides[imax] / 2.0);
    if (std::abs(s - M_PI) <= kClassifyDeadBand)
        t.cls = Centering::BoundaryCentered;
    else if (s > M_PI)
        t.cls = Centering::Centered;
    else
        t.cls = Centering::NonCentered;
    t.radius = radius(t);
    return t;
}

double radius(const CyclicTuple& t) {
    if (t.cls == Centering::NotCyclic) throw std::runtime_error("radius: tuple is not cyclic");
    size_t imax = longest_index(t.sides);
    double dmax = t.sides[imax];
    if (t.cls == Centering::BoundaryCentered) return dmax / 2.0;
    double phi = solve_phi(t.sides, imax, t.cls == Centering::Centered);
    return radius_from_phi(dmax, phi);
}

double b0(const std::vector<double>& others) {
    if (others.size() < 2) throw std::runtime_error("b0: need at least two values");
    for (double d : others)
        if (d <= 0.0) throw std::runtime_error("b0: values must be positive");
    if (others.size() == 2)
        return std::acosh(std::cosh(others[0]) + std::cosh(others[1]) - 1.0);
    size_t imax = longest_index(others);
    double s = std::sinh(others[imax] / 2.0);
    std::vector<double> q;
    for (size_t i = 0; i < others.size(); ++i)
        if (i != imax) q.push_back(std::sinh(others[i] / 2.0) / s);
    auto g = [&](double psi) {
        double sp = std::sin(psi);
        double acc = psi - M_PI / 2.0;
        for (double qi : q) acc += std::asin(std::min(1.0, qi * sp));
        return acc;
    };
    if (g(M_PI / 2.0) <= 0.0) return others[imax];
    double psi = bisect(g, 1e-30, M_PI / 2.0);
    return 2.0 * radius_from_phi(others[imax], psi);
}

double h0(const std::vector<double>& others) {
    if (others.size() < 2) throw std::runtime_error("h0: need at least two values");
    double s = 0.0;
    for (double d : others) {
        if (d <= 0.0) throw std::runtime_error("h0: values must be positive");
        s += std::sinh(d / 2.0);
    }
    return 2.0 * std::asinh(s);
}

double isosceles_defect(double d, double J, double R) {
    if (d <= 0.0) throw std::runtime_error("isosceles_defect: base must be positive");
    if (J < d / 2.0 - 1e-12)
        throw std::runtime_error("isosceles_defect: legs shorter than half the base");
    // The formula extends smoothly past R = d/2; gate comparisons evaluate a
    // hair beyond it, so only reject clearly out-of-range radii.
    if (R < 0.0 || R > d / 2.0 + 1e-3)
        throw std::runtime_error("isosceles_defect: disk radius out of range");
    return M_PI - 2.0 * theta_angle(d, J) - 2.0 * beta_angle(d, J) * std::cosh(R);
}

double defect(const CyclicTuple& t, double R) {
    if (t.cls == Centering::NotCyclic) throw std::runtime_error("defect: tuple is not cyclic");
    double dmin = *std::min_element(t.sides.begin(), t.sides.end());
    if (R < 0.0 || R > dmin / 2.0 + 1e-3)
        throw std::runtime_error("defect: disk radius exceeds half the shortest side");
    size_t imax = longest_index(t.sides);
    double s = std::sinh(t.sides[imax] / 2.0);
    double coshR = std::cosh(R);

    if (t.cls == Centering::BoundaryCentered) {
        double m = t.sides[imax] / 2.0;
        double total = 0.0;  // the longest side contributes pi - 2(pi/2) - 0
        for (size_t i = 0; i < t.sides.size(); ++i) {
            if (i == imax) continue;
            total += M_PI - 2.0 * theta_angle(t.sides[i], m) -
                     2.0 * beta_angle(t.sides[i], m) * coshR;
        }
        return total;
    }

    double phi = solve_phi(t.sides, imax, t.cls == Centering::Centered);
    double sinphi = std::sin(phi);
    double w = one_minus_sin(phi);
    double total = 0.0;
    for (size_t i = 0; i < t.sides.size(); ++i) {
        double si = std::sinh(t.sides[i] / 2.0);
        double theta = i == imax ? phi : std::asin(std::min(1.0, si * sinphi / s));
        double wi = w + sinphi * (s - si) / s;  // = 1 - sinh(d_i/2)/sinh(J)
        double beta = beta_from_w(t.sides[i] / 2.0, wi);
        double term = M_PI - 2.0 * theta - 2.0 * beta * coshR;
        if (t.cls == Centering::NonCentered && i == imax)
            total -= term;
        else
            total += term;
    }
    return total;
}

double defect(const std::vector<double>& sides, double R) {
    return defect(classify(sides), R);
}

double defect_partial(const CyclicTuple& t, size_t i, double R) {
    if (t.cls == Centering::NotCyclic)
        throw std::runtime_error("defect_partial: tuple is not cyclic");
    if (t.cls == Centering::BoundaryCentered)
        throw std::runtime_error("defect_partial: derivative is one-sided on the class boundary");
    if (i >= t.sides.size()) throw std::runtime_error("defect_partial: side index out of range");
    size_t imax = longest_index(t.sides);
    double phi = solve_phi(t.sides, imax, t.cls == Centering::Centered);
    double sinphi = std::sin(phi);
    double s = std::sinh(t.sides[imax] / 2.0);
    double S = s / sinphi;  // sinh J
    double si = std::sinh(t.sides[i] / 2.0);
    double wi = one_minus_sin(phi) + sinphi * (s - si) / s;
    double u = std::max(0.0, wi * (2.0 - wi));  // 1 - sinh^2(d_i/2)/sinh^2 J
    double g = std::cosh(R) * S * std::sqrt(u) /
               (std::cosh(t.sides[i] / 2.0) * std::sqrt(1.0 + S * S));
    if (t.cls == Centering::NonCentered && i == imax) return -g;
    return g;
}

double horocyclic_defect(const std::vector<double>& others, double R) {
    if (others.size() < 2) throw std::runtime_error("horocyclic_defect: need at least two values");
    double h = h0(others);
    double dmin = std::min(h, *std::min_element(others.begin(), others.end()));
    if (R < 0.0 || R > dmin / 2.0 + 1e-3)
        throw std::runtime_error("horocyclic_defect: disk radius out of range");
    auto beta_inf = [](double d) { return std::acos(std::tanh(d / 2.0)); };
    double n = static_cast<double>(others.size()) + 1.0;
    double s = -beta_inf(h);
    for (double d : others) s += beta_inf(d);
    return (n - 2.0) * M_PI - 2.0 * std::cosh(R) * s;
}

double regular_radius(int n, double d) {
    if (n < 3) throw std::runtime_error("regular_radius: need n >= 3");
    if (d <= 0.0) throw std::runtime_error("regular_radius: side must be positive");
    return std::asinh(std::sinh(d / 2.0) / std::sin(M_PI / n));
}

double regular_defect(int n, double d, double R) {
    return n * isosceles_defect(d, regular_radius(n, d), R);
}

}  // namespace hyp

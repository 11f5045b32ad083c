#pragma once

#include <functional>
#include <vector>

namespace hyp {

enum class Centering { NotCyclic, NonCentered, BoundaryCentered, Centered };

// Side-length tuple of a cyclic polygon with its centeredness class and circumradius.
// radius is +infinity on the horocyclic boundary and NaN for NotCyclic tuples.
struct CyclicTuple {
    std::vector<double> sides;
    Centering cls = Centering::NotCyclic;
    double radius = 0.0;
};

inline constexpr double kClassifyDeadBand = 1e-11;
inline constexpr double kBisectRelTol = 1e-12;
inline constexpr int kBisectMaxIter = 200;

// Root of a monotone function by bisection; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi);

CyclicTuple classify(const std::vector<double>& sides);

// Circumradius of the tuple's class equation; J = d_max/2 exactly for BoundaryCentered.
double radius(const CyclicTuple& t);

// First entry making (b0, others) exactly BoundaryCentered; closed form for two others.
double b0(const std::vector<double>& others);

// First entry reaching the horocyclic boundary: 2*asinh(sum sinh(d_i/2)).
double h0(const std::vector<double>& others);

// pi - 2*theta - 2*beta*cosh(R) for the isosceles piece with base d and legs J.
double isosceles_defect(double d, double J, double R);

// Radius-R defect: sum of signed isosceles pieces, the longest side negated
// for NonCentered tuples.
double defect(const CyclicTuple& t, double R);
double defect(const std::vector<double>& sides, double R);

// Partial derivative of defect in side i.
double defect_partial(const CyclicTuple& t, size_t i, double R);

// J -> infinity limit of defect on (h0(others), others).
double horocyclic_defect(const std::vector<double>& others, double R);

// Circumradius and defect of the regular n-gon with side d: sinh J = sinh(d/2)/sin(pi/n).
double regular_radius(int n, double d);
double regular_defect(int n, double d, double R);

}  // namespace hyp

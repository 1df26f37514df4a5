#pragma once

#include <vector>

#include "openres/errors.hpp"

// Integer-order cylinder functions for |m| <= 60.
// Complex arguments are supported for |Im z| <= 10 and |z| <= 200; real
// arguments extend further through the Hankel asymptotic region.
namespace openres::specfun {

enum class Cyl { J, Y, H1, H2 };

inline constexpr int kMaxOrder = 60;

cplx bessel_j(int m, cplx z);
double bessel_j(int m, double x);

// Real argument, x > 0.
double bessel_y(int m, double x);
// Complex Y, used internally and for H = J +- iY consistency checks.
cplx bessel_y(int m, cplx z);

cplx hankel1(int m, cplx z);
cplx hankel2(int m, cplx z);
cplx hankel(int kind, int m, cplx z);

cplx cyl(Cyl f, int m, cplx z);
// d/dz C_m(z) = (C_{m-1} - C_{m+1}) / 2
cplx cyl_deriv(Cyl f, int m, cplx z);

struct CylValue {
    cplx value;
    cplx deriv;
};
CylValue cyl_with_deriv(Cyl f, int m, cplx z);

struct BesselZero {
    int m;
    int lambda;
    double x;
};

// lambda-th positive zero of J_m, lambda >= 1.
BesselZero bessel_j_zero(int m, int lambda);
// First `count` zeros, x_{m,1} .. x_{m,count}.
std::vector<double> bessel_j_zeros(int m, int count);
// McMahon expansion, usable for real (non-integer) lambda.
double mcmahon_zero(int m, double lambda);

}  // namespace openres::specfun

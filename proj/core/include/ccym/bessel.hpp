#pragma once

namespace ccym {

// Modified Bessel functions of real order nu >= 0 at x > 0, with derivatives.
struct BesselKI {
    double K = 0.0, I = 0.0;
    double dK = 0.0, dI = 0.0;
};

BesselKI bessel_KI(double nu, double x);

}  // namespace ccym

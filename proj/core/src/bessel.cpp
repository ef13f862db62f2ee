#include "ccym/bessel.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "ccym/errors.hpp"

namespace ccym {

BesselKI bessel_KI(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_KI: x must be positive");
    if (!(nu >= 0.0)) throw DomainError("bessel_KI: order must be non-negative");
    BesselKI r;
    r.K = boost::math::cyl_bessel_k(nu, x);
    r.I = boost::math::cyl_bessel_i(nu, x);
    r.dK = boost::math::cyl_bessel_k_prime(nu, x);
    r.dI = boost::math::cyl_bessel_i_prime(nu, x);
    return r;
}

}  // namespace ccym

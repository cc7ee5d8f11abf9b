#include "ma_radial/error.hpp"

#include <sstream>

namespace ma_radial {

namespace {

std::string negative_rhs_message(double t, double xi, double zeta, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "negative right hand side f(" << t << ", " << xi << ", " << zeta << ") = " << value;
    return os.str();
}

}  // namespace

NegativeRhsError::NegativeRhsError(double t, double xi, double zeta, double value)
    : Error(negative_rhs_message(t, xi, zeta, value)), t(t), xi(xi), zeta(zeta), value(value) {}

}  // namespace ma_radial

#include "plexp/params.hpp"

#include <stdexcept>
#include <string>

namespace plexp {

void PlasmaParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("PlasmaParams: " + msg); };
    if (!(eps > 0.0 && eps < 1.0)) fail("eps must be in (0,1), got " + std::to_string(eps));
    if (!(mu >= 0.0 && mu < 1.0)) fail("mu must be in [0,1), got " + std::to_string(mu));
    if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must be in [0,1], got " + std::to_string(gamma));
    if (!(b > 0.0)) fail("b must be positive, got " + std::to_string(b));
    if (!(Ti0 > 0.0)) fail("Ti0 must be positive, got " + std::to_string(Ti0));
}

} // namespace plexp

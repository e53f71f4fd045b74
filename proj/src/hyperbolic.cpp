#include "kontext/hyperbolic.hpp"

#include <cmath>
#include <sstream>

namespace kontext {

HyperbolicPhase hyperbolic_phase(double lambda_value) {
    double magnitude = std::abs(lambda_value);
    if (magnitude < 1.0) {
        if (1.0 - magnitude > 1e-9) {
            std::ostringstream os;
            os << "|lambda| = " << magnitude
               << " < 1: no cosh lift exists, use the trigonometric branch";
            throw classification_error(os.str());
        }
        magnitude = 1.0;  // boundary noise
    }
    HyperbolicPhase p;
    p.sign = lambda_value < 0 ? -1 : +1;
    p.theta = std::acosh(magnitude);
    return p;
}

HyperbolicState represent_hyperbolic(const ContextNumbers& c) {
    if (c.cls.tag != ContextClass::hyperbolic) {
        std::ostringstream os;
        os << "context " << c.label << " is " << to_string(c.cls.tag)
           << " (lambda = " << c.lambda[0] << ", " << c.lambda[1]
           << "); only hyperbolic contexts admit a split-complex amplitude";
        throw classification_error(os.str());
    }
    HyperbolicState state;
    state.context_label = c.label;
    state.pb = c.pb;
    for (std::size_t x = 0; x < 2; ++x) {
        auto phase = hyperbolic_phase(c.lambda[x]);
        state.sign[x] = phase.sign;
        state.theta[x] = phase.theta;
        double lead = std::sqrt(c.pa[0] * c.t[0][x]);
        double trail = std::sqrt(c.pa[1] * c.t[1][x]);
        SplitComplex carrier{std::cosh(phase.theta), std::sinh(phase.theta)};
        state.amp[x] = SplitComplex{lead, 0} + (phase.sign * trail) * carrier;
    }
    return state;
}

}  // namespace kontext

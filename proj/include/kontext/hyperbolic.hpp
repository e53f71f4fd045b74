// Split-complex amplitudes for hyperbolic contexts: the algebra with
// j^2 = +1, the cosh-phase lift, and the hyperbolic Born identity
// z * conj(z) = p_C^b(x).

#pragma once

#include <array>
#include <string>

#include "kontext/calculus.hpp"

namespace kontext {

/// Element re + j*hy of the two-dimensional algebra with j^2 = +1.
struct SplitComplex {
    double re = 0;
    double hy = 0;

    SplitComplex conj() const { return {re, -hy}; }

    friend SplitComplex operator+(SplitComplex a, SplitComplex b) { return {a.re + b.re, a.hy + b.hy}; }
    friend SplitComplex operator-(SplitComplex a, SplitComplex b) { return {a.re - b.re, a.hy - b.hy}; }
    friend SplitComplex operator*(SplitComplex a, SplitComplex b) {
        return {a.re * b.re + a.hy * b.hy, a.re * b.hy + a.hy * b.re};
    }
    friend SplitComplex operator*(double s, SplitComplex z) { return {s * z.re, s * z.hy}; }
};

/// z * conj(z) = re^2 − hy^2. Indefinite: may be negative or zero.
inline double split_modulus(SplitComplex z) { return z.re * z.re - z.hy * z.hy; }

struct HyperbolicPhase {
    int sign = +1;     // sign of lambda
    double theta = 0;  // arccosh |lambda|, nonnegative
};

/// Lift of an interference coefficient with |lambda| >= 1 into cosh form:
/// lambda = sign * cosh(theta).
HyperbolicPhase hyperbolic_phase(double lambda_value);

struct HyperbolicState {
    std::array<SplitComplex, 2> amp{};
    std::array<double, 2> theta{};
    std::array<int, 2> sign{};
    std::array<double, 2> pb{};
    std::string context_label;
};

/// Amplitude z(x) = sqrt(A) + sign*(cosh th + j sinh th)*sqrt(B) with
/// A = p_C^a(a1) p(x|a1), B = p_C^a(a2) p(x|a2); then z*conj(z) = p_C^b(x).
HyperbolicState represent_hyperbolic(const ContextNumbers& c);

template <class S>
HyperbolicState represent_hyperbolic(const FiniteSpace<S>& space, const RandomVariable& a,
                                     const RandomVariable& b, Event context) {
    return represent_hyperbolic(interference_lambda(space, a, b, context).numbers());
}

}  // namespace kontext

// Complex-amplitude representation of trigonometric contexts: the state
// construction with its phase bookkeeping, the a-observable basis and its
// unitarity, observable operators with their commutator, and the empirical
// scan of the image on the unit sphere.

#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "kontext/calculus.hpp"

namespace kontext {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix; all the operator algebra this artifact needs.
struct Mat2 {
    std::array<Complex, 4> m{};  // row-major

    Complex& at(std::size_t r, std::size_t c) { return m[2 * r + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return m[2 * r + c]; }

    static Mat2 identity() { return Mat2{{Complex(1), Complex(0), Complex(0), Complex(1)}}; }
    static Mat2 diagonal(double d0, double d1) {
        return Mat2{{Complex(d0), Complex(0), Complex(0), Complex(d1)}};
    }

    Mat2 adjoint() const {
        return Mat2{{std::conj(at(0, 0)), std::conj(at(1, 0)), std::conj(at(0, 1)), std::conj(at(1, 1))}};
    }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                r.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
        return r;
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (std::size_t i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
        return r;
    }

    double max_abs() const;
    bool self_adjoint(double tol = 1e-12) const;
    /// Eigenvalues, ascending; meaningful for self-adjoint matrices.
    std::array<double, 2> eigenvalues_sym() const;
};

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

enum class Branch { plus, minus };

inline const char* to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

/// How the two outcome phases relate. `paired` is the convention that makes
/// one fixed a-basis serve every context (theta(b2) = theta(b1) + pi, needs a
/// double stochastic transition matrix); `independent` lifts each lambda
/// through arccos separately.
enum class PhaseConvention { paired, independent };

struct PhaseAssignment {
    std::array<double, 2> theta{};  // per b-outcome, in [0, 2*pi)
    Branch branch = Branch::plus;
};

struct StateVector {
    std::array<Complex, 2> amp{};

    double norm_sq() const { return std::norm(amp[0]) + std::norm(amp[1]); }
};

inline Complex inner(const StateVector& phi, const StateVector& psi) {
    return phi.amp[0] * std::conj(psi.amp[0]) + phi.amp[1] * std::conj(psi.amp[1]);
}

struct RepresentedState {
    StateVector state;
    PhaseAssignment phases;
    std::array<double, 2> pb{};  // the probabilities the state must reproduce
    std::array<double, 2> pa{};
    std::string context_label;
};

/// Orthonormal b-basis (delta functions) together with the a-basis vectors
/// and the basis-change matrix V whose columns are the a-basis in b
/// coordinates.
struct BasisPair {
    std::array<StateVector, 2> e_b;
    std::array<StateVector, 2> e_a;
    Mat2 V;
    std::array<double, 2> q{};  // q1 = sqrt(p11) = sqrt(p22), q2 = sqrt(p12)
    Branch branch = Branch::plus;
    std::string basis_context_label;
};

struct ObservableOperator {
    Mat2 matrix;
    std::array<double, 2> spectrum{};
};

// --- core operations on the double-precision context view ---------------

RepresentedState represent(const ContextNumbers& c, Branch branch,
                           PhaseConvention convention = PhaseConvention::paired);

/// max_x | |<phi, e_x^b>|^2 − p_C^b(x) |.
double born_b_residual(const StateVector& state, const std::array<double, 2>& pb);

BasisPair build_a_basis(const ContextNumbers& basis_context, Branch branch);

/// max_j | |<phi_C, e_j^a>|^2 − p_C^a(a_j) | against a basis built for a
/// possibly different context.
double born_a_residual(const RepresentedState& of_c, const BasisPair& basis);

ObservableOperator operator_b(const std::array<double, 2>& b_spectrum);
ObservableOperator operator_a(const std::array<double, 2>& a_spectrum, const BasisPair& basis);

/// <op·phi, phi>; the state must be normalized.
double expectation(const ObservableOperator& op, const StateVector& state);

// --- convenience wrappers bound to a sample space ------------------------

template <class S>
RepresentedState represent(const FiniteSpace<S>& space, const RandomVariable& a,
                           const RandomVariable& b, Event context, Branch branch,
                           PhaseConvention convention = PhaseConvention::paired) {
    return represent(interference_lambda(space, a, b, context).numbers(), branch, convention);
}

template <class S>
BasisPair build_a_basis(const FiniteSpace<S>& space, const RandomVariable& a,
                        const RandomVariable& b, Event basis_context, Branch branch) {
    return build_a_basis(interference_lambda(space, a, b, basis_context).numbers(), branch);
}

template <class S>
double born_a_residual(const FiniteSpace<S>& space, const RandomVariable& a,
                       const RandomVariable& b, Event context, Event basis_context, Branch branch) {
    auto basis = build_a_basis(space, a, b, basis_context, branch);
    auto rep = represent(space, a, b, context, branch, PhaseConvention::paired);
    return born_a_residual(rep, basis);
}

// --- image of the trigonometric contexts on the sphere -------------------

struct ImageEntry {
    StateVector state;
    Branch branch = Branch::plus;
    std::size_t context_count = 0;
    Event first_context;
};

struct ImageScan {
    std::vector<ImageEntry> states;
    std::size_t contexts_seen = 0;
    std::size_t trigonometric = 0;
    std::size_t skipped = 0;  // non-trigonometric, counted but not mapped
};

namespace detail {

inline std::array<long long, 4> image_key(const StateVector& s) {
    auto q = [](double v) { return static_cast<long long>(std::llround(v * 1e10)); };
    return {q(s.amp[0].real()), q(s.amp[0].imag()), q(s.amp[1].real()), q(s.amp[1].imag())};
}

}  // namespace detail

template <class S>
ImageScan image_scan(const FiniteSpace<S>& space, const RandomVariable& a, const RandomVariable& b,
                     const std::vector<Event>& contexts,
                     std::initializer_list<Branch> branches = {Branch::plus, Branch::minus}) {
    ImageScan scan;
    std::map<std::array<long long, 4>, std::size_t> seen;
    for (Event c : contexts) {
        ++scan.contexts_seen;
        auto profile = interference_lambda(space, a, b, c);
        if (profile.cls.tag != ContextClass::trigonometric) {
            ++scan.skipped;
            continue;
        }
        ++scan.trigonometric;
        for (Branch br : branches) {
            auto rep = represent(profile.numbers(), br);
            auto key = detail::image_key(rep.state);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(key, scan.states.size());
                scan.states.push_back({rep.state, br, 1, c});
            } else {
                ++scan.states[it->second].context_count;
            }
        }
    }
    return scan;
}

/// Enumerates every nonempty subset up to the cardinality bound.
template <class S>
ImageScan image_scan(const FiniteSpace<S>& space, const RandomVariable& a, const RandomVariable& b,
                     std::size_t max_context_size) {
    std::vector<Event> contexts;
    std::uint64_t full = space.full_event().mask;
    for (std::uint64_t m = 1; m <= full; ++m) {
        Event e{m};
        if (e.cardinality() <= max_context_size) contexts.push_back(e);
    }
    return image_scan(space, a, b, contexts);
}

}  // namespace kontext

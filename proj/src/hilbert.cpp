#include "kontext/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kontext {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0) t += two_pi;
    return t;
}

/// arccos with the documented clamp: inputs within 1e-9 outside [-1,1] are
/// rounding noise, anything further is a hard error.
double safe_acos(double v) {
    if (v > 1.0 || v < -1.0) {
        if (std::abs(v) - 1.0 > 1e-9)
            throw classification_error("cosine argument " + std::to_string(v) + " outside [-1,1]");
        v = v > 0 ? 1.0 : -1.0;
    }
    return std::acos(v);
}

std::string column_sum_message(const ContextNumbers& c) {
    std::ostringstream os;
    os << "transition matrix is not double stochastic: column sums " << (c.t[0][0] + c.t[1][0])
       << ", " << (c.t[0][1] + c.t[1][1]);
    return os.str();
}

}  // namespace

double Mat2::max_abs() const {
    double best = 0;
    for (const auto& v : m) best = std::max(best, std::abs(v));
    return best;
}

bool Mat2::self_adjoint(double tol) const { return (*this - adjoint()).max_abs() <= tol; }

std::array<double, 2> Mat2::eigenvalues_sym() const {
    double tr = at(0, 0).real() + at(1, 1).real();
    double diff = at(0, 0).real() - at(1, 1).real();
    double disc = std::sqrt(diff * diff / 4.0 + std::norm(at(0, 1)));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

RepresentedState represent(const ContextNumbers& c, Branch branch, PhaseConvention convention) {
    if (c.cls.tag != ContextClass::trigonometric) {
        std::ostringstream os;
        os << "context " << c.label << " is " << to_string(c.cls.tag)
           << " (lambda = " << c.lambda[0] << ", " << c.lambda[1]
           << "); only trigonometric contexts admit a complex amplitude";
        throw classification_error(os.str());
    }
    if (convention == PhaseConvention::paired && !c.double_stochastic)
        throw convention_error(column_sum_message(c));

    RepresentedState rep;
    rep.phases.branch = branch;
    rep.pa = c.pa;
    rep.pb = c.pb;
    rep.context_label = c.label;

    double theta1 = safe_acos(c.lambda[0]);  // in [0, pi]
    if (branch == Branch::minus) theta1 = wrap_angle(-theta1);
    rep.phases.theta[0] = theta1;
    if (convention == PhaseConvention::paired) {
        rep.phases.theta[1] = wrap_angle(theta1 + std::numbers::pi);
    } else {
        double theta2 = safe_acos(c.lambda[1]);
        if (branch == Branch::minus) theta2 = wrap_angle(-theta2);
        rep.phases.theta[1] = theta2;
    }

    for (std::size_t x = 0; x < 2; ++x) {
        double lead = std::sqrt(c.pa[0] * c.t[0][x]);
        double trail = std::sqrt(c.pa[1] * c.t[1][x]);
        rep.state.amp[x] = lead + std::polar(trail, rep.phases.theta[x]);
    }
    return rep;
}

double born_b_residual(const StateVector& state, const std::array<double, 2>& pb) {
    double worst = 0;
    for (std::size_t x = 0; x < 2; ++x)
        worst = std::max(worst, std::abs(std::norm(state.amp[x]) - pb[x]));
    return worst;
}

BasisPair build_a_basis(const ContextNumbers& c0, Branch branch) {
    if (!c0.double_stochastic) throw unitarity_error(column_sum_message(c0));

    auto rep = represent(c0, branch, PhaseConvention::paired);  // fixes theta_1, theta_2
    BasisPair basis;
    basis.branch = branch;
    basis.basis_context_label = c0.label;
    basis.e_b[0].amp = {Complex(1), Complex(0)};
    basis.e_b[1].amp = {Complex(0), Complex(1)};
    double q1 = std::sqrt(c0.t[0][0]);
    double q2 = std::sqrt(c0.t[0][1]);
    basis.q = {q1, q2};
    basis.e_a[0].amp = {Complex(q1), Complex(q2)};
    Complex global = std::polar(1.0, rep.phases.theta[1]);
    basis.e_a[1].amp = {global * (-q2), global * q1};
    for (std::size_t col = 0; col < 2; ++col)
        for (std::size_t row = 0; row < 2; ++row) basis.V.at(row, col) = basis.e_a[col].amp[row];
    return basis;
}

double born_a_residual(const RepresentedState& of_c, const BasisPair& basis) {
    if (of_c.phases.branch != basis.branch)
        throw convention_error("state and basis were built on different phase branches");
    double worst = 0;
    for (std::size_t j = 0; j < 2; ++j) {
        double p = std::norm(inner(of_c.state, basis.e_a[j]));
        worst = std::max(worst, std::abs(p - of_c.pa[j]));
    }
    return worst;
}

ObservableOperator operator_b(const std::array<double, 2>& b_spectrum) {
    ObservableOperator op;
    op.matrix = Mat2::diagonal(b_spectrum[0], b_spectrum[1]);
    op.spectrum = b_spectrum;
    return op;
}

ObservableOperator operator_a(const std::array<double, 2>& a_spectrum, const BasisPair& basis) {
    Mat2 unitary_defect = basis.V * basis.V.adjoint() - Mat2::identity();
    if (unitary_defect.max_abs() > 1e-9)
        throw unitarity_error("basis-change matrix is not unitary (defect " +
                              std::to_string(unitary_defect.max_abs()) + ")");
    ObservableOperator op;
    op.matrix = basis.V * Mat2::diagonal(a_spectrum[0], a_spectrum[1]) * basis.V.adjoint();
    op.spectrum = a_spectrum;
    return op;
}

double expectation(const ObservableOperator& op, const StateVector& state) {
    if (std::abs(state.norm_sq() - 1.0) > 1e-9)
        throw model_error("expectation requires a normalized state (norm^2 = " +
                          std::to_string(state.norm_sq()) + ")");
    StateVector mapped;
    mapped.amp[0] = op.matrix.at(0, 0) * state.amp[0] + op.matrix.at(0, 1) * state.amp[1];
    mapped.amp[1] = op.matrix.at(1, 0) * state.amp[0] + op.matrix.at(1, 1) * state.amp[1];
    Complex value = inner(mapped, state);
    if (std::abs(value.imag()) > 1e-12)
        throw model_error("expectation came out non-real; operator is not self-adjoint");
    return value.real();
}

}  // namespace kontext

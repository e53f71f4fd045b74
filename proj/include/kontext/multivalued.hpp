// Inductive splitting of n-valued reference variables into dichotomous
// steps: per-outcome trace of tail probabilities and interference
// coefficients, the gamma/alpha/beta phase recursion, and the resulting
// n-term complex amplitude obeying Born's rule.

#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "kontext/calculus.hpp"

namespace kontext {

enum class GammaBranch { plus, minus };

/// One splitting step for a fixed outcome x. Steps j = 1..n-2 split off A_j
/// against the tail A_{j+1} ∪ ... ∪ A_n (coefficient mu); the last step
/// j = n-1 resolves {A_{n-1}, A_n} (coefficient lambda, phase theta).
template <class S>
struct SplitStep {
    std::size_t index = 0;  // j, 1-based
    bool final_step = false;
    S tail;       // T_j = P(B_x (A_j ∪ ... ∪ A_n) | C)
    S head;       // P(B_x|A_j) P(A_j|C)
    S numerator;  // T_j − head − (T_{j+1} or head_n)
    S weight;     // head · T_{j+1} (mu step) or head_{n-1} · head_n (last step)
    S coeff_sq;   // numerator² / (4·weight) when weight > 0
    double coeff = 0;  // mu_j, or lambda for the last step
    double gamma = 0;  // arccos(coeff); equals theta_C(x) on the last step
    double alpha = 0;  // arg of the step amplitude, defined for j >= 2
    bool zero_tail = false;        // T_{j+1} = 0 and numerator = 0: coeff taken as 0
    bool alpha_defaulted = false;  // step amplitude vanished, arg taken as 0
};

template <class S>
struct SplitTrace {
    std::size_t outcome_index = 0;
    double outcome_value = 0;
    std::vector<SplitStep<S>> steps;  // j = 1..n-1
    std::vector<S> head_probs;        // h_y = P(B_x|A_y) P(A_y|C), y = 1..n
    double final_theta = 0;
    std::vector<double> beta;  // β^{(1)}..β^{(n)}, β^{(1)} = 0
    std::complex<double> amplitude{};
    S pbx;  // p_C^b(x) = T_1
};

template <class S>
struct MultiAmplitude {
    std::vector<std::complex<double>> amp;   // per b-outcome
    std::vector<std::vector<double>> beta;   // [outcome][a-index]
    std::vector<S> pa, pb;
    TransitionMatrix<S> transitions;
    std::vector<SplitTrace<S>> traces;
    GammaBranch branch = GammaBranch::plus;
};

namespace detail {

inline double clamped_ratio(double num, double den) {
    double v = num / den;
    if (v > 1.0 || v < -1.0) {
        if (std::abs(v) - 1.0 > 1e-9)
            throw classification_error("phase-ratio " + std::to_string(v) + " outside [-1,1]");
        v = v > 0 ? 1.0 : -1.0;
    }
    return v;
}

template <class S>
void check_multivalued_inputs(const FiniteSpace<S>& space, const RandomVariable& a,
                              const RandomVariable& b, Event context) {
    if (a.arity() < 2) throw model_error("splitting variable must take at least two values");
    if (!is_incompatible(space, a, b))
        throw incompatible_pair_error("variables '" + a.name() + "' and '" + b.name() +
                                      "' are not incompatible");
    if (scalar_traits<S>::is_zero(measure(space, context)))
        throw degenerate_context_error("context " + space.event_label(context) + " has zero measure");
    for (std::size_t j = 0; j < a.arity(); ++j)
        if (scalar_traits<S>::is_zero(measure(space, a.cell(j) & context)))
            throw degenerate_context_error("context " + space.event_label(context) +
                                           " is degenerate: no mass in cell " +
                                           space.event_label(a.cell(j)));
}

}  // namespace detail

/// Splitting trace for one outcome of b. Throws non_representable_error when
/// some step coefficient leaves [-1, 1].
template <class S>
SplitTrace<S> split_trace(const FiniteSpace<S>& space, const RandomVariable& a,
                          const RandomVariable& b, Event context, std::size_t outcome_index,
                          GammaBranch branch = GammaBranch::plus) {
    using traits = scalar_traits<S>;
    detail::check_multivalued_inputs(space, a, b, context);
    if (outcome_index >= b.arity())
        throw model_error("outcome index " + std::to_string(outcome_index) + " out of range for '" +
                          b.name() + "'");

    const std::size_t n = a.arity();
    Event bx = b.cell(outcome_index);
    SplitTrace<S> trace;
    trace.outcome_index = outcome_index;
    trace.outcome_value = b.spectrum()[outcome_index];

    auto tail_event = [&](std::size_t j) {  // A_j ∪ ... ∪ A_n, 1-based j
        Event u;
        for (std::size_t k = j - 1; k < n; ++k) u = u | a.cell(k);
        return bx & u;
    };

    std::vector<S> tails(n + 1, traits::zero());  // T_1..T_n; T_{n} only feeds step n-1 checks
    for (std::size_t j = 1; j <= n; ++j) tails[j] = cond_prob(space, tail_event(j), context);
    for (std::size_t y = 0; y < n; ++y)
        trace.head_probs.push_back(cond_prob(space, bx, a.cell(y)) *
                                   cond_prob(space, a.cell(y), context));
    trace.pbx = tails[1];

    for (std::size_t j = 1; j + 1 <= n; ++j) {
        SplitStep<S> step;
        step.index = j;
        step.final_step = (j == n - 1);
        step.tail = tails[j];
        step.head = trace.head_probs[j - 1];
        const S& second = step.final_step ? trace.head_probs[n - 1] : tails[j + 1];
        step.numerator = step.tail - step.head - second;
        step.weight = step.head * second;
        if (traits::is_zero(step.weight)) {
            if (!traits::is_zero(step.numerator))
                throw non_representable_error(
                    "step " + std::to_string(j) + " for outcome b=" +
                        std::to_string(trace.outcome_value) +
                        ": interference coefficient is infinite (zero tail, nonzero perturbation)",
                    j);
            step.zero_tail = true;
            step.coeff_sq = traits::zero();
            step.coeff = 0.0;
            step.gamma = std::numbers::pi / 2;  // contribution vanishes; phase immaterial
        } else {
            step.coeff_sq = (step.numerator * step.numerator) / (4 * step.weight);
            if (traits::unit_band(step.coeff_sq) > 0)
                throw non_representable_error(
                    "step " + std::to_string(j) + " for outcome b=" +
                        std::to_string(trace.outcome_value) + ": |coefficient| = " +
                        std::to_string(std::sqrt(traits::to_double(step.coeff_sq))) + " exceeds 1",
                    j);
            double magnitude = std::min(1.0, std::sqrt(traits::to_double(step.coeff_sq)));
            step.coeff = (step.numerator < traits::zero()) ? -magnitude : magnitude;
            step.gamma = std::acos(step.coeff);
        }
        trace.steps.push_back(std::move(step));
    }
    trace.final_theta = trace.steps.back().gamma;

    // alpha_j = arg of the step amplitude sqrt(T_j)·e^{i·alpha_j}, j >= 2
    for (std::size_t j = 2; j <= n - 1; ++j) {
        SplitStep<S>& step = trace.steps[j - 1];
        double nj = std::sqrt(traits::to_double(step.tail));
        if (nj == 0.0) {
            step.alpha = 0.0;
            step.alpha_defaulted = true;
            continue;
        }
        const S& second = step.final_step ? trace.head_probs[n - 1] : tails[j + 1];
        double mj = std::sqrt(traits::to_double(step.head)) +
                    step.coeff * std::sqrt(traits::to_double(second));
        step.alpha = std::acos(detail::clamped_ratio(mj, nj));
    }

    // beta recursion: β1 = 0, β_{j} = β_{j-1} + γ_{j-1} − α_j, β_n = β_{n-1} + θ
    trace.beta.assign(n, 0.0);
    for (std::size_t j = 2; j <= n - 1; ++j)
        trace.beta[j - 1] = trace.beta[j - 2] + trace.steps[j - 2].gamma - trace.steps[j - 1].alpha;
    trace.beta[n - 1] = trace.beta[n - 2] + trace.final_theta;

    if (branch == GammaBranch::minus) {
        for (auto& step : trace.steps) {
            step.gamma = -step.gamma;
            step.alpha = -step.alpha;
        }
        trace.final_theta = -trace.final_theta;
        for (auto& bval : trace.beta) bval = -bval;
    }

    trace.amplitude = {};
    for (std::size_t y = 0; y < n; ++y)
        trace.amplitude += std::polar(std::sqrt(traits::to_double(trace.head_probs[y])),
                                      trace.beta[y]);
    return trace;
}

/// Full amplitude map for an n-valued pair: one trace per outcome of b.
template <class S>
MultiAmplitude<S> represent_multivalued(const FiniteSpace<S>& space, const RandomVariable& a,
                                        const RandomVariable& b, Event context,
                                        GammaBranch branch = GammaBranch::plus) {
    detail::check_multivalued_inputs(space, a, b, context);
    MultiAmplitude<S> result;
    result.branch = branch;
    result.transitions = transition_matrix(space, a, b);
    for (std::size_t y = 0; y < a.arity(); ++y)
        result.pa.push_back(cond_prob(space, a.cell(y), context));
    for (std::size_t x = 0; x < b.arity(); ++x) {
        result.pb.push_back(cond_prob(space, b.cell(x), context));
        auto trace = split_trace(space, a, b, context, x, branch);
        result.amp.push_back(trace.amplitude);
        result.beta.push_back(trace.beta);
        result.traces.push_back(std::move(trace));
    }
    return result;
}

/// max_x | |amp(x)|² − p_C^b(x) |.
template <class S>
double born_residual(const MultiAmplitude<S>& m) {
    double worst = 0;
    for (std::size_t x = 0; x < m.amp.size(); ++x)
        worst = std::max(worst, std::abs(std::norm(m.amp[x]) -
                                         scalar_traits<S>::to_double(m.pb[x])));
    return worst;
}

/// Residual of the n-term interference expansion
/// p_C^b(x) = Σ_y p_C^a(y)p(x|y) + 2 Σ_{y1<y2} cos(β_{y2}−β_{y1})·sqrt(...).
template <class S>
double interference_expansion_residual(const MultiAmplitude<S>& m) {
    using traits = scalar_traits<S>;
    double worst = 0;
    const std::size_t n = m.pa.size();
    for (std::size_t x = 0; x < m.amp.size(); ++x) {
        double rhs = 0;
        std::vector<double> h(n);
        for (std::size_t y = 0; y < n; ++y) {
            h[y] = traits::to_double(m.pa[y]) * traits::to_double(m.transitions.p[y][x]);
            rhs += h[y];
        }
        for (std::size_t y1 = 0; y1 < n; ++y1)
            for (std::size_t y2 = y1 + 1; y2 < n; ++y2)
                rhs += 2.0 * std::cos(m.beta[x][y2] - m.beta[x][y1]) * std::sqrt(h[y1] * h[y2]);
        worst = std::max(worst, std::abs(rhs - traits::to_double(m.pb[x])));
    }
    return worst;
}

}  // namespace kontext

// Contextual calculus over a reference pair: transition matrices,
// interference coefficients, context classification, and the stochasticity
// lemmas that decide when the pair admits a unitary basis change.

#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "kontext/space.hpp"

namespace kontext {

enum class ContextClass { trigonometric, hyperbolic, mixed, degenerate };

inline const char* to_string(ContextClass c) {
    switch (c) {
        case ContextClass::trigonometric: return "trigonometric";
        case ContextClass::hyperbolic: return "hyperbolic";
        case ContextClass::mixed: return "mixed";
        case ContextClass::degenerate: return "degenerate";
    }
    return "?";
}

/// Why a context landed in the degenerate class (none for the other tags).
enum class DegenerateReason {
    none,
    zero_context,        // P(C) = 0
    zero_cell,           // some P(A_j ∩ C) = 0
    infinite_lambda,     // vanishing denominator with nonzero perturbation
    partially_undefined  // lambda undefined for some outcomes, finite for others
};

inline const char* to_string(DegenerateReason r) {
    switch (r) {
        case DegenerateReason::none: return "none";
        case DegenerateReason::zero_context: return "zero-context";
        case DegenerateReason::zero_cell: return "zero-cell";
        case DegenerateReason::infinite_lambda: return "infinite-lambda";
        case DegenerateReason::partially_undefined: return "partially-undefined";
    }
    return "?";
}

struct ContextClassification {
    ContextClass tag = ContextClass::degenerate;
    DegenerateReason reason = DegenerateReason::none;
    /// true when some |lambda| sits exactly on (float mode: within 1e-9 of)
    /// the unit boundary; such contexts satisfy both class definitions and
    /// are filed as trigonometric.
    bool boundary = false;
};

/// Matrix of conditional probabilities p(col_value_j | row_value_i).
/// Rows always sum to one.
template <class S>
struct TransitionMatrix {
    std::vector<std::vector<S>> p;
    std::vector<double> row_values;
    std::vector<double> col_values;

    bool square() const { return !p.empty() && p.size() == p.front().size(); }

    S column_sum(std::size_t j) const {
        S total = scalar_traits<S>::zero();
        for (const auto& row : p) total += row[j];
        return total;
    }
};

template <class S>
TransitionMatrix<S> transition_matrix(const FiniteSpace<S>& space, const RandomVariable& from,
                                      const RandomVariable& to) {
    TransitionMatrix<S> m;
    m.row_values = from.spectrum();
    m.col_values = to.spectrum();
    for (std::size_t i = 0; i < from.arity(); ++i) {
        Event cell = from.cell(i);
        if (scalar_traits<S>::is_zero(measure(space, cell)))
            throw degenerate_context_error("variable '" + from.name() + "' has a zero-mass cell " +
                                           space.event_label(cell));
        std::vector<S> row;
        for (std::size_t j = 0; j < to.arity(); ++j)
            row.push_back(cond_prob(space, to.cell(j), cell));
        m.p.push_back(std::move(row));
    }
    return m;
}

/// True iff every joint level set P(B_x ∩ A_y) carries positive mass.
template <class S>
bool is_incompatible(const FiniteSpace<S>& space, const RandomVariable& a, const RandomVariable& b) {
    for (std::size_t i = 0; i < a.arity(); ++i)
        for (std::size_t j = 0; j < b.arity(); ++j)
            if (scalar_traits<S>::is_zero(measure(space, a.cell(i) & b.cell(j)))) return false;
    return true;
}

template <class S>
bool is_double_stochastic(const TransitionMatrix<S>& m) {
    if (!m.square()) throw model_error("double stochasticity is defined for square matrices only");
    for (std::size_t j = 0; j < m.p.size(); ++j)
        if (!scalar_traits<S>::sums_to_one(m.column_sum(j))) return false;
    return true;
}

/// Per-outcome interference data: the perturbation delta of the total
/// probability formula and the normalizing product under the square root.
template <class S>
struct OutcomeInterference {
    S delta;       // p_C^b(x) − Σ_y p_C^a(y) p(x|y)
    S weight;      // Π_y p_C^a(y) p(x|y); the denominator is 2·sqrt(weight)
    S lambda_sq;   // delta² / (4·weight), meaningful when weight > 0
    double lambda; // sign(delta)·sqrt(lambda_sq)
    bool weight_zero = false;
    bool defaulted_zero = false;  // delta = 0 with zero weight: lambda taken as 0
    bool infinite = false;        // delta ≠ 0 with zero weight
};

/// Double-precision view of a dichotomous context analysis, the interface
/// between the probability calculus and the amplitude layer.
struct ContextNumbers {
    std::array<double, 2> a_values{}, b_values{};
    std::array<double, 2> pa{}, pb{};
    std::array<std::array<double, 2>, 2> t{};  // t[i][j] = p(b_j | a_i)
    std::array<double, 2> lambda{};
    ContextClassification cls;
    bool double_stochastic = false;
    std::string label;
};

/// Full analysis of one context against a dichotomous reference pair.
template <class S>
struct ContextProfile {
    Event context;
    std::vector<S> pa, pb;
    TransitionMatrix<S> transitions;
    std::vector<OutcomeInterference<S>> outcomes;
    ContextClassification cls;
    bool double_stochastic = false;
    std::string label;

    ContextNumbers numbers() const {
        ContextNumbers n;
        for (std::size_t i = 0; i < 2; ++i) {
            n.a_values[i] = transitions.row_values[i];
            n.b_values[i] = transitions.col_values[i];
            n.pa[i] = scalar_traits<S>::to_double(pa[i]);
            n.pb[i] = scalar_traits<S>::to_double(pb[i]);
            for (std::size_t j = 0; j < 2; ++j)
                n.t[i][j] = scalar_traits<S>::to_double(transitions.p[i][j]);
            n.lambda[i] = outcomes[i].lambda;
        }
        n.cls = cls;
        n.double_stochastic = double_stochastic;
        n.label = label;
        return n;
    }
};

namespace detail {

/// Classification from the per-outcome unit bands: -1 inside, 0 on, +1
/// outside the unit circle. Boundary values satisfy both definitions and
/// are filed trigonometric.
inline ContextClassification classify_bands(const std::vector<int>& bands) {
    ContextClassification c;
    bool all_le = true, all_ge = true, some_strict_above = false, any_boundary = false;
    for (int band : bands) {
        if (band > 0) all_le = false;
        if (band < 0) all_ge = false;
        if (band > 0) some_strict_above = true;
        if (band == 0) any_boundary = true;
    }
    c.boundary = any_boundary;
    if (all_le)
        c.tag = ContextClass::trigonometric;
    else if (all_ge && some_strict_above)
        c.tag = ContextClass::hyperbolic;
    else
        c.tag = ContextClass::mixed;
    return c;
}

template <class S>
OutcomeInterference<S> outcome_interference(const S& pbx, const std::vector<S>& pa,
                                            const std::vector<S>& col) {
    OutcomeInterference<S> o;
    o.delta = pbx;
    o.weight = scalar_traits<S>::one();
    for (std::size_t y = 0; y < pa.size(); ++y) {
        o.delta -= pa[y] * col[y];
        o.weight *= pa[y] * col[y];
    }
    if (scalar_traits<S>::is_zero(o.weight)) {
        o.weight_zero = true;
        if (scalar_traits<S>::is_zero(o.delta)) {
            // no interference and no evidence; lambda taken as zero
            o.defaulted_zero = true;
            o.lambda_sq = scalar_traits<S>::zero();
            o.lambda = 0.0;
        } else {
            o.infinite = true;
            o.lambda_sq = scalar_traits<S>::zero();
            o.lambda = scalar_traits<S>::to_double(o.delta) > 0
                           ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
        }
        return o;
    }
    o.lambda_sq = (o.delta * o.delta) / (4 * o.weight);
    double magnitude = std::sqrt(scalar_traits<S>::to_double(o.lambda_sq));
    o.lambda = (o.delta < scalar_traits<S>::zero()) ? -magnitude : magnitude;
    if (scalar_traits<S>::is_zero(o.delta)) o.lambda = 0.0;
    return o;
}

}  // namespace detail

/// Interference profile of a context for a dichotomous incompatible pair.
/// A degenerate context yields a profile tagged degenerate, not an exception.
template <class S>
ContextProfile<S> interference_lambda(const FiniteSpace<S>& space, const RandomVariable& a,
                                      const RandomVariable& b, Event context) {
    if (!a.dichotomous() || !b.dichotomous())
        throw model_error("interference profile requires dichotomous reference variables");
    if (!is_incompatible(space, a, b))
        throw incompatible_pair_error("variables '" + a.name() + "' and '" + b.name() +
                                      "' are not incompatible: some joint cell has zero mass");

    ContextProfile<S> profile;
    profile.context = context;
    profile.label = space.event_label(context);
    profile.transitions = transition_matrix(space, a, b);
    profile.double_stochastic = is_double_stochastic(profile.transitions);

    if (scalar_traits<S>::is_zero(measure(space, context))) {
        profile.cls = {ContextClass::degenerate, DegenerateReason::zero_context, false};
        return profile;
    }
    for (std::size_t j = 0; j < b.arity(); ++j)
        profile.pb.push_back(cond_prob(space, b.cell(j), context));
    bool zero_cell = false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        profile.pa.push_back(cond_prob(space, a.cell(i), context));
        if (scalar_traits<S>::is_zero(profile.pa.back())) zero_cell = true;
    }
    std::vector<int> bands;
    bool any_infinite = false, any_defined = false;
    for (std::size_t x = 0; x < b.arity(); ++x) {
        std::vector<S> col;
        for (std::size_t y = 0; y < a.arity(); ++y) col.push_back(profile.transitions.p[y][x]);
        auto o = detail::outcome_interference(profile.pb[x], profile.pa, col);
        if (o.infinite)
            any_infinite = true;
        else
            any_defined = true;
        if (!o.weight_zero) bands.push_back(scalar_traits<S>::unit_band(o.lambda_sq));
        else if (o.defaulted_zero) bands.push_back(-1);
        profile.outcomes.push_back(std::move(o));
    }
    if (zero_cell) {
        profile.cls = {ContextClass::degenerate, DegenerateReason::zero_cell, false};
    } else if (any_infinite) {
        profile.cls = {ContextClass::degenerate,
                       any_defined ? DegenerateReason::partially_undefined
                                   : DegenerateReason::infinite_lambda,
                       false};
    } else {
        profile.cls = detail::classify_bands(bands);
    }
    return profile;
}

/// Context classification alone; total over every event including the
/// empty-measure ones.
template <class S>
ContextClassification classify(const FiniteSpace<S>& space, const RandomVariable& a,
                               const RandomVariable& b, Event context) {
    if (scalar_traits<S>::is_zero(measure(space, context)))
        return {ContextClass::degenerate, DegenerateReason::zero_context, false};
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (scalar_traits<S>::is_zero(measure(space, a.cell(i) & context)))
            return {ContextClass::degenerate, DegenerateReason::zero_cell, false};

    std::vector<S> pa, pb;
    for (std::size_t i = 0; i < a.arity(); ++i) pa.push_back(cond_prob(space, a.cell(i), context));
    std::vector<int> bands;
    bool any_infinite = false, any_defined = false;
    for (std::size_t x = 0; x < b.arity(); ++x) {
        std::vector<S> col;
        for (std::size_t y = 0; y < a.arity(); ++y) col.push_back(cond_prob(space, b.cell(x), a.cell(y)));
        auto o = detail::outcome_interference(cond_prob(space, b.cell(x), context), pa, col);
        if (o.infinite)
            any_infinite = true;
        else
            any_defined = true;
        if (!o.weight_zero) bands.push_back(scalar_traits<S>::unit_band(o.lambda_sq));
        else if (o.defaulted_zero) bands.push_back(-1);
    }
    if (any_infinite)
        return {ContextClass::degenerate,
                any_defined ? DegenerateReason::partially_undefined : DegenerateReason::infinite_lambda,
                false};
    return detail::classify_bands(bands);
}

/// Interference coefficient of the two-step splitting formula
/// P(B(D1∪D2)|C) = P(B|D1)P(D1|C) + P(BD2|C) + 2·mu·sqrt(...).
template <class S>
struct MuCoefficient {
    S numerator;  // P(B(D1∪D2)|C) − P(B|D1)P(D1|C) − P(BD2|C)
    S weight;     // P(B|D1)·P(D1|C)·P(BD2|C)
    double mu;    // numerator / (2·sqrt(weight))

    /// Right-hand side of the splitting formula reassembled from the parts;
    /// equals P(B(D1∪D2)|C) identically.
    S reassembled(const S& head, const S& tail) const { return head + tail + numerator; }
};

template <class S>
MuCoefficient<S> interference_mu(const FiniteSpace<S>& space, Event b, Event d1, Event d2,
                                 Event context) {
    if (!(d1 & d2).empty())
        throw model_error("splitting events overlap: " + space.event_label(d1 & d2));
    if (scalar_traits<S>::is_zero(measure(space, b & d1)))
        throw degenerate_context_error("P(B∩D1) vanishes for D1 = " + space.event_label(d1));
    if (scalar_traits<S>::is_zero(measure(space, context & d1)))
        throw degenerate_context_error("P(C∩D1) vanishes for D1 = " + space.event_label(d1));
    if (scalar_traits<S>::is_zero(measure(space, b & d2 & context)))
        throw degenerate_context_error("P(B∩D2∩C) vanishes for D2 = " + space.event_label(d2));

    S head = cond_prob(space, b, d1) * cond_prob(space, d1, context);
    S tail = cond_prob(space, b & d2, context);
    S lhs = cond_prob(space, b & (d1 | d2), context);
    MuCoefficient<S> result;
    result.numerator = lhs - head - tail;
    result.weight = head * tail;
    double w = scalar_traits<S>::to_double(result.weight);
    result.mu = scalar_traits<S>::to_double(result.numerator) / (2.0 * std::sqrt(w));
    return result;
}

/// Lemma-level report: the three equivalent symmetry conditions for a
/// dichotomous incompatible pair.
struct SymmetryReport {
    bool both_double_stochastic = false;
    bool symmetric_transitions = false;
    bool uniform_marginals = false;

    bool equivalent() const {
        return (both_double_stochastic == symmetric_transitions) &&
               (symmetric_transitions == uniform_marginals);
    }
    bool all() const { return both_double_stochastic && symmetric_transitions && uniform_marginals; }
};

template <class S>
SymmetryReport check_symmetry_lemma(const FiniteSpace<S>& space, const RandomVariable& a,
                                    const RandomVariable& b) {
    if (!a.dichotomous() || !b.dichotomous())
        throw model_error("symmetry report requires dichotomous variables");
    if (!is_incompatible(space, a, b))
        throw incompatible_pair_error("symmetry report requires an incompatible pair");
    auto t_ba = transition_matrix(space, a, b);
    auto t_ab = transition_matrix(space, b, a);
    SymmetryReport r;
    r.both_double_stochastic = is_double_stochastic(t_ba) && is_double_stochastic(t_ab);
    r.symmetric_transitions = true;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (!scalar_traits<S>::equal(t_ba.p[i][j], t_ab.p[j][i])) r.symmetric_transitions = false;
    S half = scalar_traits<S>::one() / 2;
    r.uniform_marginals = true;
    for (std::size_t i = 0; i < 2; ++i) {
        if (!scalar_traits<S>::equal(measure(space, a.cell(i)), half)) r.uniform_marginals = false;
        if (!scalar_traits<S>::equal(measure(space, b.cell(i)), half)) r.uniform_marginals = false;
    }
    return r;
}

/// lambda(B_i | A, C = B_i) for a selection context; equals one whenever both
/// transition matrices are double stochastic.
template <class S>
double selection_context_lambda(const FiniteSpace<S>& space, const RandomVariable& a,
                                const RandomVariable& b, std::size_t i) {
    auto t_ba = transition_matrix(space, a, b);
    auto t_ab = transition_matrix(space, b, a);
    if (!is_double_stochastic(t_ba) || !is_double_stochastic(t_ab))
        throw convention_error("selection-context lambda requires both transition matrices double stochastic");
    Event bi = b.cell(i);
    for (std::size_t j = 0; j < a.arity(); ++j)
        if (scalar_traits<S>::is_zero(measure(space, a.cell(j) & bi)))
            throw degenerate_context_error("selection context " + space.event_label(bi) +
                                           " is degenerate for '" + a.name() + "'");
    auto profile = interference_lambda(space, a, b, bi);
    return profile.outcomes[i].lambda;
}

}  // namespace kontext

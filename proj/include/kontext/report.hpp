// Analysis pipeline and report assembly: per-context profile rows with
// representation results and residuals, reference-pair matrix diagnostics,
// and the exhaustive context census.

#pragma once

#include <cstdio>
#include <optional>
#include <thread>

#include "kontext/hilbert.hpp"
#include "kontext/hyperbolic.hpp"
#include "kontext/model.hpp"
#include "kontext/multivalued.hpp"

namespace kontext {

enum class OutputFormat { text, json, csv };

struct AnalysisOptions {
    Branch branch = Branch::plus;
    std::optional<std::string> basis_context;  // overrides the elected C0
    bool exact = true;                         // informational, echoed in reports
};

/// One analyzed context, scalar-free for uniform emission.
struct ContextRow {
    std::string name;
    std::string members;
    std::vector<std::string> pa, pb, delta;  // exact fractions or decimal strings
    std::vector<double> lambda;
    ContextClassification cls;

    std::string representation;  // "complex", "split-complex", "multivalued", or blank
    std::vector<std::array<double, 2>> amplitudes;  // (re, im) or (re, hy)
    std::vector<double> theta;
    std::optional<double> born_b;  // residuals; absent when not represented
    std::optional<double> born_a;
    std::optional<double> expectation_b_classical, expectation_b_operator;
    std::string note;
    bool non_representable = false;  // splitting recursion left [-1,1]
    bool pass = true;

    std::string census_key() const {
        return non_representable ? "non-representable" : to_string(cls.tag);
    }
};

struct MatrixDiagnostics {
    std::vector<std::vector<std::string>> t_ba, t_ab;
    bool pair_dichotomous = true;  // symmetric/uniform checks apply only then
    bool ba_double_stochastic = false;
    bool ab_double_stochastic = false;
    bool symmetric = false;
    bool uniform_marginals = false;
    bool lemma_equivalent = false;
};

struct OperatorBlock {
    bool available = false;
    std::array<std::array<double, 2>, 4> a_matrix{};  // (re, im) row-major
    std::array<double, 2> b_diagonal{};
    std::array<std::array<double, 2>, 4> commutator_ab{};
    double closed_form_residual = 0;  // vs (a1−a2)(b2−b1) q1 q2 pattern
};

struct AnalysisReport {
    std::string title, pair, mode, branch, basis_context;
    bool incompatible = false;
    std::string stop_reason;  // nonempty when analysis stopped early
    MatrixDiagnostics matrices;
    OperatorBlock operators;
    std::vector<ContextRow> rows;
    std::map<std::string, std::size_t> census;
    bool all_pass = true;
};

struct ClassCensus {
    std::map<std::string, std::size_t> counts;
    std::map<std::string, std::string> witness;  // smallest-mask member per class
    std::size_t enumerated = 0;
    bool conserved = false;  // counts sum to the number of enumerated subsets
};

std::string render(const AnalysisReport& report, OutputFormat format);
std::string render(const ClassCensus& census, OutputFormat format);

namespace detail {

inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

template <class S>
std::vector<std::string> str_all(const std::vector<S>& values) {
    std::vector<std::string> out;
    for (const auto& v : values) out.push_back(scalar_traits<S>::str(v));
    return out;
}

}  // namespace detail

/// Elects the basis context C0: the override if given, otherwise the
/// lexicographically smallest named context that classifies trigonometric.
template <class S>
std::optional<std::string> elect_basis_context(const ModelFile& model, const FiniteSpace<S>& space,
                                               const RandomVariable& a, const RandomVariable& b,
                                               const std::optional<std::string>& override_name) {
    if (override_name) {
        Event c = model.context(space, *override_name);
        if (classify(space, a, b, c).tag != ContextClass::trigonometric)
            throw classification_error("basis context '" + *override_name + "' is not trigonometric");
        return override_name;
    }
    for (const auto& [name, ids] : model.contexts) {  // std::map: names in sorted order
        Event c = space.make_event(ids);
        if (classify(space, a, b, c).tag == ContextClass::trigonometric) return name;
    }
    return std::nullopt;
}

template <class S>
ContextRow analyze_context_dichotomous(const FiniteSpace<S>& space, const RandomVariable& a,
                                       const RandomVariable& b, const std::string& name, Event c,
                                       const AnalysisOptions& options,
                                       const std::optional<BasisPair>& basis) {
    using traits = scalar_traits<S>;
    ContextRow row;
    row.name = name;
    row.members = space.event_label(c);
    auto profile = interference_lambda(space, a, b, c);
    row.cls = profile.cls;
    row.pa = detail::str_all(profile.pa);
    row.pb = detail::str_all(profile.pb);
    for (const auto& o : profile.outcomes) {
        row.delta.push_back(traits::str(o.delta));
        row.lambda.push_back(o.lambda);
    }
    auto numbers = profile.numbers();
    if (profile.cls.tag == ContextClass::trigonometric) {
        auto convention = numbers.double_stochastic ? PhaseConvention::paired
                                                    : PhaseConvention::independent;
        auto rep = represent(numbers, options.branch, convention);
        row.representation = "complex";
        for (std::size_t x = 0; x < 2; ++x)
            row.amplitudes.push_back({rep.state.amp[x].real(), rep.state.amp[x].imag()});
        row.theta = {rep.phases.theta[0], rep.phases.theta[1]};
        row.born_b = born_b_residual(rep.state, rep.pb);
        row.pass = row.pass && *row.born_b <= 1e-12;
        if (basis) {
            row.born_a = born_a_residual(rep, *basis);
            row.pass = row.pass && *row.born_a <= 1e-10;
        }
        auto op_b = operator_b({numbers.b_values[0], numbers.b_values[1]});
        row.expectation_b_classical =
            numbers.b_values[0] * numbers.pb[0] + numbers.b_values[1] * numbers.pb[1];
        row.expectation_b_operator = expectation(op_b, rep.state);
        row.pass = row.pass &&
                   std::abs(*row.expectation_b_classical - *row.expectation_b_operator) <= 1e-10;
    } else if (profile.cls.tag == ContextClass::hyperbolic) {
        auto hyp = represent_hyperbolic(numbers);
        row.representation = "split-complex";
        for (std::size_t x = 0; x < 2; ++x) {
            row.amplitudes.push_back({hyp.amp[x].re, hyp.amp[x].hy});
            row.theta.push_back(hyp.sign[x] * hyp.theta[x]);
        }
        double worst = 0;
        for (std::size_t x = 0; x < 2; ++x)
            worst = std::max(worst, std::abs(split_modulus(hyp.amp[x]) - numbers.pb[x]));
        row.born_b = worst;
        row.pass = row.pass && worst <= 1e-12;
    } else {
        row.note = std::string("not represented (") + to_string(profile.cls.tag) +
                   (profile.cls.tag == ContextClass::degenerate
                        ? std::string(", ") + to_string(profile.cls.reason)
                        : "") +
                   ")";
    }
    return row;
}

template <class S>
ContextRow analyze_context_multivalued(const FiniteSpace<S>& space, const RandomVariable& a,
                                       const RandomVariable& b, const std::string& name, Event c,
                                       GammaBranch branch) {
    ContextRow row;
    row.name = name;
    row.members = space.event_label(c);
    try {
        auto multi = represent_multivalued(space, a, b, c, branch);
        row.representation = "multivalued";
        row.pa = detail::str_all(multi.pa);
        row.pb = detail::str_all(multi.pb);
        for (const auto& amp : multi.amp) row.amplitudes.push_back({amp.real(), amp.imag()});
        for (const auto& t : multi.traces) row.theta.push_back(t.final_theta);
        row.born_b = born_residual(multi);
        row.pass = *row.born_b <= 1e-10;
        row.cls.tag = ContextClass::trigonometric;
    } catch (const non_representable_error& e) {
        row.note = e.what();
        row.non_representable = true;
        row.representation = "";
    } catch (const degenerate_context_error& e) {
        row.note = e.what();
        row.cls = {ContextClass::degenerate, DegenerateReason::zero_cell, false};
    }
    return row;
}

/// Full analysis of the named contexts of a model against one pair.
template <class S>
AnalysisReport analyze(const ModelFile& model, const std::string& a_name, const std::string& b_name,
                       const std::vector<std::string>& context_names, const AnalysisOptions& options) {
    auto space = model.space<S>();
    auto a = model.variable(space, a_name);
    auto b = model.variable(space, b_name);

    AnalysisReport report;
    report.title = model.title;
    report.pair = a_name + "," + b_name;
    report.mode = scalar_traits<S>::mode_name;
    report.branch = to_string(options.branch);
    report.incompatible = is_incompatible(space, a, b);
    if (!report.incompatible) {
        report.stop_reason = "variables '" + a_name + "' and '" + b_name +
                             "' are not incompatible; contextual analysis requires positive joint cells";
        report.all_pass = false;
        return report;
    }

    auto t_ba = transition_matrix(space, a, b);
    auto t_ab = transition_matrix(space, b, a);
    for (const auto& r : t_ba.p) report.matrices.t_ba.push_back(detail::str_all(r));
    for (const auto& r : t_ab.p) report.matrices.t_ab.push_back(detail::str_all(r));

    if (t_ba.square()) report.matrices.ba_double_stochastic = is_double_stochastic(t_ba);
    if (t_ab.square()) report.matrices.ab_double_stochastic = is_double_stochastic(t_ab);
    report.matrices.pair_dichotomous = a.dichotomous() && b.dichotomous();

    if (a.dichotomous() && b.dichotomous()) {
        auto sym = check_symmetry_lemma(space, a, b);
        report.matrices.symmetric = sym.symmetric_transitions;
        report.matrices.uniform_marginals = sym.uniform_marginals;
        report.matrices.lemma_equivalent = sym.equivalent();

        std::optional<BasisPair> basis;
        auto c0 = elect_basis_context(model, space, a, b, options.basis_context);
        if (c0 && report.matrices.ba_double_stochastic) {
            basis = build_a_basis(space, a, b, model.context(space, *c0), options.branch);
            report.basis_context = *c0;
            if (report.matrices.ba_double_stochastic) {
                auto op_a = operator_a({a.spectrum()[0], a.spectrum()[1]}, *basis);
                auto op_b = operator_b({b.spectrum()[0], b.spectrum()[1]});
                report.operators.available = true;
                report.operators.b_diagonal = {b.spectrum()[0], b.spectrum()[1]};
                Mat2 comm = commutator(op_a.matrix, op_b.matrix);
                double m12 = (a.spectrum()[0] - a.spectrum()[1]) * (b.spectrum()[1] - b.spectrum()[0]) *
                             basis->q[0] * basis->q[1];
                Mat2 closed;
                closed.at(0, 1) = m12;
                closed.at(1, 0) = -m12;
                report.operators.closed_form_residual = (comm - closed).max_abs();
                for (std::size_t i = 0; i < 4; ++i) {
                    report.operators.a_matrix[i] = {op_a.matrix.m[i].real(), op_a.matrix.m[i].imag()};
                    report.operators.commutator_ab[i] = {comm.m[i].real(), comm.m[i].imag()};
                }
            }
        }
        for (const auto& name : context_names) {
            Event c = model.context(space, name);
            report.rows.push_back(
                analyze_context_dichotomous(space, a, b, name, c, options, basis));
        }
    } else {
        for (const auto& name : context_names) {
            Event c = model.context(space, name);
            report.rows.push_back(analyze_context_multivalued(
                space, a, b, name, c,
                options.branch == Branch::plus ? GammaBranch::plus : GammaBranch::minus));
        }
    }
    for (const auto& row : report.rows) {
        ++report.census[row.census_key()];
        report.all_pass = report.all_pass && row.pass;
    }
    return report;
}

/// Classifies every nonempty subset up to the cardinality bound; parallel
/// over mask ranges, merged deterministically.
template <class S>
ClassCensus scan_contexts(const FiniteSpace<S>& space, const RandomVariable& a,
                          const RandomVariable& b, std::size_t max_size) {
    const std::uint64_t full = space.full_event().mask;
    if (full > (std::uint64_t{1} << 24))
        throw model_error("subset scan guard: 2^" + std::to_string(space.size()) +
                          " subsets exceed the 2^24 limit");

    struct Partial {
        std::map<std::string, std::size_t> counts;
        std::map<std::string, std::uint64_t> witness;
    };
    auto classify_range = [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            Event e{mask};
            if (mask == 0 || e.cardinality() > max_size) continue;
            auto cls = classify(space, a, b, e);
            std::string key = to_string(cls.tag);
            ++out.counts[key];
            auto it = out.witness.find(key);
            if (it == out.witness.end() || mask < it->second) out.witness[key] = mask;
        }
    };

    std::size_t workers = full >= (1u << 14) ? std::max(1u, std::thread::hardware_concurrency()) : 1;
    std::vector<Partial> partials(workers);
    if (workers == 1) {
        classify_range(1, full + 1, partials[0]);
    } else {
        std::vector<std::thread> threads;
        std::uint64_t chunk = (full + workers) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::uint64_t lo = 1 + w * chunk;
            std::uint64_t hi = std::min(full + 1, lo + chunk);
            if (lo >= hi) continue;
            threads.emplace_back(classify_range, lo, hi, std::ref(partials[w]));
        }
        for (auto& t : threads) t.join();
    }

    ClassCensus census;
    std::map<std::string, std::uint64_t> min_witness;
    for (const auto& part : partials) {
        for (const auto& [key, count] : part.counts) census.counts[key] += count;
        for (const auto& [key, mask] : part.witness) {
            auto it = min_witness.find(key);
            if (it == min_witness.end() || mask < it->second) min_witness[key] = mask;
        }
    }
    for (const auto& [key, mask] : min_witness) census.witness[key] = space.event_label(Event{mask});
    for (std::uint64_t mask = 1; mask <= full; ++mask)
        if (Event{mask}.cardinality() <= max_size) ++census.enumerated;
    std::size_t total = 0;
    for (const auto& [key, count] : census.counts) total += count;
    census.conserved = total == census.enumerated;
    return census;
}

}  // namespace kontext

// Acceptance suite: each criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails. Tolerances are pinned here, not
// configurable.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "kontext/hilbert.hpp"
#include "kontext/hyperbolic.hpp"
#include "kontext/multivalued.hpp"
#include "kontext/oracle.hpp"
#include "kontext/report.hpp"

using namespace kontext;
using testsup::bind_fixture;
using testsup::bind_random;

namespace {

struct Criterion {
    int failures = 0;
    std::string first_failure;
    std::string stats;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

int g_failed = 0;

void run(int number, const std::string& title, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    if (c.failures == 0) {
        std::printf("[PASS] criterion %2d: %s%s%s\n", number, title.c_str(),
                    c.stats.empty() ? "" : " -- ", c.stats.c_str());
    } else {
        ++g_failed;
        std::printf("[FAIL] criterion %2d: %s -- %d failure(s); first: %s\n", number, title.c_str(),
                    c.failures, c.first_failure.c_str());
    }
    std::fflush(stdout);
}

std::vector<Event> all_subsets(std::uint64_t full) {
    std::vector<Event> out;
    for (std::uint64_t m = 1; m <= full; ++m) out.push_back(Event{m});
    return out;
}

// 1. classical formula of total probability: residual exactly zero in exact
//    mode, 1000 seeded random models x random contexts
void criterion1(Criterion& c) {
    std::mt19937_64 rng(101);
    int models = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::size_t arity = 2 + seed % 2;  // mix of 2- and 3-valued splitting variables
        std::size_t points = arity * arity + seed % 5;
        auto m = bind_random<Rational>({points, arity, arity, seed});
        auto part = level_partition(m.space, m.a);
        Event ctx = testsup::random_nondegenerate_context(rng, m.space, m.a);
        Event b = testsup::random_event(rng, m.space);
        c.require(classical_ftp_residual(m.space, b, part, ctx) == 0,
                  "nonzero residual at seed " + std::to_string(seed));
        ++models;
    }
    c.stats = std::to_string(models) + " models, residual identically 0";
}

// 2. interference decomposition: delta recomputes, lambda agrees with the
//    independent oracle (exact equality on the rational data, 1e-12 float)
void criterion2(Criterion& c) {
    std::mt19937_64 rng(102);
    // every fixture context against the oracle
    for (const char* name : {"u4", "h6", "skew4", "nonds4"}) {
        auto m = bind_fixture<Rational>(name);
        for (const auto& [ctx_name, ids] : m.file.contexts) {
            Event ctx = m.space.make_event(ids);
            auto record = oracle_context(m.space, m.a, m.b, ctx);
            if (record.context_degenerate) continue;
            auto profile = interference_lambda(m.space, m.a, m.b, ctx);
            for (std::size_t x = 0; x < 2; ++x)
                c.require(record.delta[x] == profile.outcomes[x].delta &&
                              record.weight[x] == profile.outcomes[x].weight,
                          std::string("fixture oracle disagreement: ") + name + "/" + ctx_name);
        }
    }
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        auto m = bind_random<Rational>({6 + seed % 3, 2, 2, seed});
        Event ctx = testsup::random_nondegenerate_context(rng, m.space, m.a);
        auto profile = interference_lambda(m.space, m.a, m.b, ctx);
        auto record = oracle_context(m.space, m.a, m.b, ctx);
        for (std::size_t x = 0; x < 2; ++x) {
            Rational rhs = profile.outcomes[x].delta;
            for (std::size_t y = 0; y < 2; ++y) rhs += profile.pa[y] * profile.transitions.p[y][x];
            c.require(profile.pb[x] == rhs, "decomposition broke at seed " + std::to_string(seed));
            c.require(record.delta[x] == profile.outcomes[x].delta &&
                          record.weight[x] == profile.outcomes[x].weight,
                      "oracle disagreement (exact) at seed " + std::to_string(seed));
        }
    }
    for (std::uint64_t seed = 0; seed < 500; ++seed) {  // float mode against the oracle
        auto m = bind_random<double>({6 + seed % 3, 2, 2, seed});
        Event ctx = testsup::random_nondegenerate_context(rng, m.space, m.a);
        auto profile = interference_lambda(m.space, m.a, m.b, ctx);
        auto record = oracle_context(m.space, m.a, m.b, ctx);
        for (std::size_t x = 0; x < 2; ++x)
            c.require(std::abs(record.lambda[x] - profile.outcomes[x].lambda) <= 1e-12,
                      "oracle disagreement (float) at seed " + std::to_string(seed));
    }
    c.stats = "all fixtures + 500 exact + 500 float seeded models";
}

// 3. the U4 fixture values
void criterion3(Criterion& c) {
    auto u4 = bind_fixture<Rational>("u4");
    auto profile = interference_lambda(u4.space, u4.a, u4.b, u4.ctx("C134"));
    const double s24 = std::sqrt(2.0) / 4;  // 0.35355339...
    c.require(profile.outcomes[0].lambda_sq == Rational(1, 8), "lambda^2 != 1/8");
    c.require(std::abs(profile.outcomes[0].lambda - s24) <= 1e-15, "lambda(b1) != sqrt(2)/4");
    c.require(std::abs(profile.outcomes[1].lambda + s24) <= 1e-15, "lambda(b2) != -sqrt(2)/4");
    auto rep = represent(profile.numbers(), Branch::plus);
    c.require(std::abs(rep.phases.theta[0] - std::acos(s24)) <= 1e-15, "theta(b1) != arccos(sqrt2/4)");
    c.require(std::abs(std::norm(rep.state.amp[0]) - 2.0 / 3) <= 1e-12, "|phi(b1)|^2 != 2/3");
    c.stats = "lambda = +/-0.353553390593, theta = 1.209429, |phi|^2 = 2/3";
}

// 4. Born rule for b: residual <= 1e-12 on every trigonometric context of
//    every seeded model
void criterion4(Criterion& c) {
    std::size_t contexts = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto m = bind_random<Rational>({5 + seed % 3, 2, 2, seed});
        for (Event ctx : all_subsets(m.space.full_event().mask)) {
            auto profile = interference_lambda(m.space, m.a, m.b, ctx);
            if (profile.cls.tag != ContextClass::trigonometric) continue;
            auto numbers = profile.numbers();
            auto convention = numbers.double_stochastic ? PhaseConvention::paired
                                                        : PhaseConvention::independent;
            auto rep = represent(numbers, Branch::plus, convention);
            ++contexts;
            c.require(born_b_residual(rep.state, rep.pb) <= 1e-12,
                      "born-b residual above 1e-12 at seed " + std::to_string(seed));
        }
    }
    c.stats = std::to_string(contexts) + " trigonometric contexts";
}

// 5. unitarity iff double stochasticity
void criterion5(Criterion& c) {
    std::mt19937_64 rng(105);
    for (int i = 0; i < 100; ++i) {
        auto file = testsup::ds_model(testsup::random_unit_rational(rng),
                                      testsup::random_unit_rational(rng));
        auto space = file.space<Rational>();
        auto a = file.variable(space, "a");
        auto b = file.variable(space, "b");
        Event c0 = testsup::random_nondegenerate_context(rng, space, a);
        auto profile = interference_lambda(space, a, b, c0);
        if (profile.cls.tag != ContextClass::trigonometric) continue;
        auto basis = build_a_basis(profile.numbers(), Branch::plus);
        c.require((basis.V * basis.V.adjoint() - Mat2::identity()).max_abs() <= 1e-12,
                  "V not unitary on a doubly stochastic model");
    }
    int rejected = 0, seen = 0;
    for (std::uint64_t seed = 0; seen < 60 && seed < 200; ++seed) {
        auto m = bind_random<Rational>({4 + seed % 4, 2, 2, seed});
        if (is_double_stochastic(transition_matrix(m.space, m.a, m.b))) continue;
        ++seen;
        try {
            build_a_basis(m.space, m.a, m.b, m.space.full_event(), Branch::plus);
        } catch (const unitarity_error&) {
            ++rejected;
        }
    }
    c.require(seen >= 50 && rejected == seen,
              "only " + std::to_string(rejected) + "/" + std::to_string(seen) + " non-DS rejections");
    c.stats = "100 DS models unitary; " + std::to_string(rejected) + " non-DS models rejected";
}

// 6. opposite lambdas under double stochasticity; Born rule for a against a
//    single fixed basis context, residual <= 1e-10
void criterion6(Criterion& c) {
    std::mt19937_64 rng(106);
    std::size_t contexts = 0;
    auto check_model = [&](const FiniteSpace<Rational>& space, const RandomVariable& a,
                           const RandomVariable& b, const std::string& label) {
        if (!is_double_stochastic(transition_matrix(space, a, b))) return;
        std::optional<BasisPair> basis;
        for (Event ctx : all_subsets(space.full_event().mask)) {
            auto profile = interference_lambda(space, a, b, ctx);
            if (profile.cls.tag == ContextClass::degenerate) continue;
            c.require(profile.outcomes[1].delta == -profile.outcomes[0].delta &&
                          profile.outcomes[0].lambda_sq == profile.outcomes[1].lambda_sq,
                      "lambda(b2) != -lambda(b1) on " + label);
            if (profile.cls.tag != ContextClass::trigonometric) continue;
            if (!basis) basis = build_a_basis(profile.numbers(), Branch::plus);
            auto rep = represent(profile.numbers(), Branch::plus);
            ++contexts;
            c.require(born_a_residual(rep, *basis) <= 1e-10, "born-a residual > 1e-10 on " + label);
        }
    };
    for (const char* name : {"u4", "h6"}) {
        auto m = bind_fixture<Rational>(name);
        check_model(m.space, m.a, m.b, name);
    }
    for (int i = 0; i < 200; ++i) {
        auto file = testsup::ds_model(testsup::random_unit_rational(rng),
                                      testsup::random_unit_rational(rng));
        auto space = file.space<Rational>();
        check_model(space, file.variable(space, "a"), file.variable(space, "b"),
                    "seeded model " + std::to_string(i));
    }
    c.stats = std::to_string(contexts) + " trigonometric contexts against fixed bases";
}

// 7. commutator of the observable operators
void criterion7(Criterion& c) {
    auto u4 = bind_fixture<Rational>("u4");
    auto basis = build_a_basis(u4.space, u4.a, u4.b, u4.ctx("C134"), Branch::plus);
    Mat2 m = commutator(operator_a({-1, 1}, basis).matrix, operator_b({-1, 1}).matrix);
    c.require(std::abs(m.at(0, 0)) <= 1e-12 && std::abs(m.at(1, 1)) <= 1e-12 &&
                  std::abs(m.at(0, 1) - Complex(-2)) <= 1e-12 &&
                  std::abs(m.at(1, 0) - Complex(2)) <= 1e-12,
              "U4 commutator != [[0,-2],[2,0]]");

    std::mt19937_64 rng(107);
    for (int i = 0; i < 100; ++i) {
        auto file = testsup::ds_model(testsup::random_unit_rational(rng),
                                      testsup::random_unit_rational(rng));
        auto space = file.space<Rational>();
        auto a = file.variable(space, "a");
        auto b = file.variable(space, "b");
        Event ctx = testsup::random_nondegenerate_context(rng, space, a);
        auto profile = interference_lambda(space, a, b, ctx);
        if (profile.cls.tag != ContextClass::trigonometric) continue;
        auto bs = build_a_basis(profile.numbers(), Branch::plus);
        Mat2 comm = commutator(operator_a({-1, 1}, bs).matrix, operator_b({-1, 1}).matrix);
        double m12 = (-1.0 - 1.0) * (1.0 - -1.0) * bs.q[0] * bs.q[1];
        c.require(std::abs(comm.at(0, 1) - Complex(m12)) <= 1e-12 &&
                      std::abs(comm.at(1, 0) + Complex(m12)) <= 1e-12 &&
                      std::abs(comm.at(0, 0)) <= 1e-12,
                  "closed form mismatch at model " + std::to_string(i));
        c.require(comm.max_abs() > 1e-6, "commutator vanished for an incompatible pair");
    }
    c.stats = "closed form (a1-a2)(b2-b1)q1q2 entrywise";
}

// 8. the simultaneous double stochasticity suite
void criterion8(Criterion& c) {
    std::mt19937_64 rng(108);
    int all_true = 0, all_false = 0;
    for (int i = 0; i < 200; ++i) {
        if (i % 2 == 0) {
            Rational w11 = testsup::random_unit_rational(rng) / 2;
            auto file = testsup::four_point_model(
                to_fraction_string(w11), to_fraction_string(Rational(1, 2) - w11),
                to_fraction_string(Rational(1, 2) - w11), to_fraction_string(w11));
            auto space = file.space<Rational>();
            auto r = check_symmetry_lemma(space, file.variable(space, "a"), file.variable(space, "b"));
            c.require(r.equivalent(), "three-way equivalence broke (symmetric series)");
            if (r.all()) ++all_true;
        } else {
            auto m = bind_random<Rational>({4, 2, 2, static_cast<std::uint64_t>(i)});
            auto r = check_symmetry_lemma(m.space, m.a, m.b);
            c.require(r.equivalent(), "three-way equivalence broke (random series)");
            if (!r.all()) ++all_false;
        }
    }
    c.require(all_true >= 40 && all_false >= 40, "insufficient true/false coverage");

    for (const char* name : {"u4", "h6"}) {
        auto m = bind_fixture<Rational>(name);
        for (std::size_t i = 0; i < 2; ++i)
            c.require(selection_context_lambda(m.space, m.a, m.b, i) == 1.0,
                      std::string("selection lambda != 1 on ") + name);
        // selection contexts map to exact basis states
        for (std::size_t j = 0; j < 2; ++j) {
            auto profile = interference_lambda(m.space, m.a, m.b, m.b.cell(j));
            for (std::size_t x = 0; x < 2; ++x)
                c.require(profile.pb[x] == (x == j ? 1 : 0), "selection pb not a point mass");
            auto rep = represent(profile.numbers(), Branch::plus);
            for (std::size_t x = 0; x < 2; ++x)
                c.require(std::abs(rep.state.amp[x] - Complex(x == j ? 1 : 0)) <= 1e-12,
                          "selection state not a delta function");
        }
    }

    int forward = 0, converse = 0;
    for (int i = 0; i < 100; ++i) {
        Rational alpha = (i % 2 == 0) ? Rational(1, 2) : testsup::random_unit_rational(rng);
        auto file = testsup::ds_model(alpha, testsup::random_unit_rational(rng));
        auto space = file.space<Rational>();
        auto a = file.variable(space, "a");
        auto b = file.variable(space, "b");
        bool reverse_ds = is_double_stochastic(transition_matrix(space, b, a));
        bool trig = classify(space, a, b, b.cell(0)).tag == ContextClass::trigonometric &&
                    classify(space, a, b, b.cell(1)).tag == ContextClass::trigonometric;
        c.require(reverse_ds == trig, "selection-context theorem failed at model " + std::to_string(i));
        (reverse_ds ? forward : converse)++;
    }
    c.require(forward >= 30 && converse >= 30, "theorem directions unbalanced");
    c.stats = "equivalence x200, selection lambdas exact, theorem both directions";
}

// 9. hyperbolic branch on the H6 fixture
void criterion9(Criterion& c) {
    auto h6 = bind_fixture<Rational>("h6");
    auto profile = interference_lambda(h6.space, h6.a, h6.b, h6.ctx("Chyp"));
    c.require(profile.outcomes[0].lambda_sq == Rational(25, 9) &&
                  profile.outcomes[0].delta == Rational(1, 2),
              "lambda(b1) != 5/3 exactly");
    c.require(std::abs(profile.outcomes[0].lambda - 5.0 / 3) <= 1e-15, "lambda(b1) float off");
    c.require(std::abs(profile.outcomes[1].lambda + 5.0 / 3) <= 1e-15, "lambda(b2) != -5/3");
    auto state = represent_hyperbolic(profile.numbers());
    c.require(std::abs(state.theta[0] - std::log(3.0)) <= 1e-12, "theta != ln 3");
    c.require(std::abs(state.theta[1] - std::log(3.0)) <= 1e-12, "theta(b2) != ln 3");
    c.require(std::abs(split_modulus(state.amp[0]) - 1.0) <= 1e-12, "z conj(z) != 1 for b1");
    c.require(std::abs(split_modulus(state.amp[1])) <= 1e-12, "z conj(z) != 0 for b2");
    // the rational identity behind the split-complex product
    for (std::size_t x = 0; x < 2; ++x) {
        Rational lead = profile.pa[0] * profile.transitions.p[0][x];
        Rational trail = profile.pa[1] * profile.transitions.p[1][x];
        c.require(lead + trail + profile.outcomes[x].delta == profile.pb[x],
                  "split-complex Born identity broke at the rational level");
    }
    c.stats = "lambda = +/-5/3, theta = ln 3, Born masses (1, 0)";
}

// 10. multivalued splitting suite
void criterion10(Criterion& c) {
    std::mt19937_64 rng(110);
    std::size_t represented = 0;
    for (std::size_t arity : {3u, 4u, 5u}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto m = bind_random<Rational>({arity * arity + 2, arity, arity, seed});
            for (Event ctx :
                 {m.space.full_event(), testsup::random_nondegenerate_context(rng, m.space, m.a)}) {
                try {
                    auto multi = represent_multivalued(m.space, m.a, m.b, ctx);
                    ++represented;
                    c.require(born_residual(multi) <= 1e-10,
                              "Born residual > 1e-10, arity " + std::to_string(arity));
                    c.require(interference_expansion_residual(multi) <= 1e-10,
                              "expansion residual > 1e-10, arity " + std::to_string(arity));
                } catch (const non_representable_error&) {
                }
            }
        }
    }
    c.require(represented >= 100, "too few representable contexts: " + std::to_string(represented));

    auto u4 = bind_fixture<Rational>("u4");
    for (Event ctx : all_subsets(u4.space.full_event().mask)) {
        auto cls = classify(u4.space, u4.a, u4.b, ctx);
        if (cls.tag != ContextClass::trigonometric) continue;
        auto multi = represent_multivalued(u4.space, u4.a, u4.b, ctx);
        auto rep = represent(u4.space, u4.a, u4.b, ctx, Branch::plus, PhaseConvention::independent);
        for (std::size_t x = 0; x < 2; ++x)
            c.require(std::abs(multi.amp[x] - rep.state.amp[x]) <= 1e-12,
                      "n=2 reduction disagrees with the dichotomous map");
    }

    auto u9 = bind_fixture<Rational>("u9");
    auto multi = represent_multivalued(u9.space, u9.a, u9.b, u9.space.full_event());
    for (const auto& trace : multi.traces)
        for (const auto& step : trace.steps)
            c.require(step.coeff == 0.0, "U9 mu != 0");
    for (const auto& amp : multi.amp)
        c.require(std::abs(std::norm(amp) - 1.0 / 3) <= 1e-12, "U9 |phi|^2 != 1/3");
    c.stats = std::to_string(represented) + " representable contexts, n=2 reduction bit-level";
}

// 11. context census: classes partition the subsets
void criterion11(Criterion& c) {
    auto u4 = bind_fixture<Rational>("u4");
    auto census4 = scan_contexts(u4.space, u4.a, u4.b, u4.space.size());
    c.require(census4.enumerated == 15 && census4.conserved, "U4 census not conserved");
    c.require(census4.counts.count("trigonometric") && census4.counts.count("degenerate"),
              "U4 missing classes");

    auto h6 = bind_fixture<Rational>("h6");
    auto census6 = scan_contexts(h6.space, h6.a, h6.b, h6.space.size());
    c.require(census6.enumerated == 63 && census6.conserved, "H6 census not conserved");
    c.require(census6.counts.count("hyperbolic") && census6.counts.at("hyperbolic") >= 1,
              "H6 lacks a hyperbolic witness");
    c.require(census6.counts.at("trigonometric") > 0 && census6.counts.at("degenerate") > 0,
              "H6 missing trigonometric/degenerate classes");
    std::ostringstream os;
    os << "U4: 9 trig + 6 degen = 15; H6: " << census6.counts.at("trigonometric") << " trig + "
       << census6.counts.at("hyperbolic") << " hyp + " << census6.counts.at("degenerate")
       << " degen = 63";
    c.stats = os.str();
}

}  // namespace

int main() {
    run(1, "classical total probability residual is exactly zero (exact mode)", criterion1);
    run(2, "interference decomposition and oracle agreement", criterion2);
    run(3, "U4 fixture: lambda, theta, Born mass", criterion3);
    run(4, "Born rule for b on every trigonometric context (<= 1e-12)", criterion4);
    run(5, "unitarity iff double stochasticity", criterion5);
    run(6, "opposite lambdas and Born rule for a under a fixed basis (<= 1e-10)", criterion6);
    run(7, "observable commutator closed form (<= 1e-12)", criterion7);
    run(8, "double stochasticity suite: equivalence, selection contexts, both directions",
        criterion8);
    run(9, "hyperbolic branch: H6 coefficients and split-complex Born identity", criterion9);
    run(10, "multivalued splitting: Born and expansion residuals (<= 1e-10)", criterion10);
    run(11, "context census partitions all subsets", criterion11);

    if (g_failed) {
        std::printf("%d criterion(s) failed\n", g_failed);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}

// Shared test support: fixture loading and seeded generators for the
// property suites.

#pragma once

#include <random>
#include <string>

#include "kontext/calculus.hpp"
#include "kontext/model.hpp"

namespace testsup {

inline kontext::ModelFile load_fixture(const std::string& name) {
    return kontext::ModelFile::load(std::string(KONTEXT_FIXTURE_DIR) + "/" + name + ".json");
}

/// A model file bound to concrete space/variable objects for one scalar mode.
template <class S>
struct Bound {
    kontext::ModelFile file;
    kontext::FiniteSpace<S> space;
    kontext::RandomVariable a, b;

    kontext::Event ctx(const std::string& name) const { return file.context(space, name); }
};

template <class S>
Bound<S> bind_fixture(const std::string& name, const std::string& va = "a",
                      const std::string& vb = "b") {
    auto file = load_fixture(name);
    auto space = file.space<S>();
    auto a = file.variable(space, va);
    auto b = file.variable(space, vb);
    return Bound<S>{std::move(file), std::move(space), std::move(a), std::move(b)};
}

template <class S>
Bound<S> bind_random(kontext::RandomModelParams params) {
    auto file = kontext::random_model(params);
    auto space = file.space<S>();
    auto a = file.variable(space, "a");
    auto b = file.variable(space, "b");
    return Bound<S>{std::move(file), std::move(space), std::move(a), std::move(b)};
}

/// Random nonempty subset of the space.
template <class S>
kontext::Event random_event(std::mt19937_64& rng, const kontext::FiniteSpace<S>& space) {
    std::uniform_int_distribution<std::uint64_t> dist(1, space.full_event().mask);
    return kontext::Event{dist(rng)};
}

/// Random context with positive mass in every cell of a's partition.
template <class S>
kontext::Event random_nondegenerate_context(std::mt19937_64& rng, const kontext::FiniteSpace<S>& space,
                                            const kontext::RandomVariable& a) {
    for (int tries = 0; tries < 256; ++tries) {
        kontext::Event c = random_event(rng, space);
        bool ok = true;
        for (std::size_t j = 0; j < a.arity(); ++j)
            if (kontext::scalar_traits<S>::is_zero(measure(space, a.cell(j) & c))) ok = false;
        if (ok) return c;
    }
    return space.full_event();  // always nondegenerate for incompatible pairs
}

/// Four-point model with prescribed joint-cell weights (a, b dichotomous,
/// spectra {-1, +1}); weight strings are exact literals.
inline kontext::ModelFile four_point_model(const std::string& w11, const std::string& w12,
                                           const std::string& w21, const std::string& w22) {
    kontext::ModelFile m;
    m.title = "four-point";
    m.points = {{"w11", w11}, {"w12", w12}, {"w21", w21}, {"w22", w22}};
    m.variables["a"] = {{"w11", -1}, {"w12", -1}, {"w21", 1}, {"w22", 1}};
    m.variables["b"] = {{"w11", -1}, {"w12", 1}, {"w21", -1}, {"w22", 1}};
    m.contexts["Omega"] = {"w11", "w12", "w21", "w22"};
    return m;
}

/// Doubly stochastic four-point model: P(A1) = alpha, p(b1|a1) = p(b2|a2) = p.
/// Both parameters as exact fraction strings.
inline kontext::ModelFile ds_model(const kontext::Rational& alpha, const kontext::Rational& p) {
    using kontext::Rational;
    using kontext::to_fraction_string;
    Rational w11 = alpha * p, w12 = alpha * (1 - p);
    Rational w21 = (1 - alpha) * (1 - p), w22 = (1 - alpha) * p;
    return four_point_model(to_fraction_string(w11), to_fraction_string(w12),
                            to_fraction_string(w21), to_fraction_string(w22));
}

/// Random dyadic rational strictly inside (0, 1), denominator 2^12.
inline kontext::Rational random_unit_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(1, (1 << 12) - 1);
    return kontext::Rational(dist(rng), 1 << 12);
}

}  // namespace testsup

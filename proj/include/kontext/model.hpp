// Model files: the JSON schema binding a sample space, named random
// variables, and named contexts, plus validation and the seeded random
// model generator that fuels the property suites.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kontext/space.hpp"

namespace kontext {

/// Parsed model file. Weights are kept as their literal strings so exact
/// mode can read them digit-exactly.
struct ModelFile {
    std::string title;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> points;  // id, weight literal
    std::map<std::string, std::map<std::string, double>> variables;
    std::map<std::string, std::vector<std::string>> contexts;

    static ModelFile load(const std::string& path);
    static ModelFile parse(const std::string& json_text);
    std::string dump() const;
    void save(const std::string& path) const;

    template <class S>
    FiniteSpace<S> space() const {
        std::vector<std::string> ids;
        std::vector<S> weights;
        for (const auto& [id, literal] : points) {
            ids.push_back(id);
            weights.push_back(scalar_traits<S>::parse(literal));
        }
        return FiniteSpace<S>(std::move(ids), std::move(weights));
    }

    template <class S>
    RandomVariable variable(const FiniteSpace<S>& sp, const std::string& name) const {
        auto it = variables.find(name);
        if (it == variables.end()) throw model_error("unknown variable '" + name + "'");
        return RandomVariable::from_values(sp, name, it->second);
    }

    template <class S>
    Event context(const FiniteSpace<S>& sp, const std::string& name) const {
        auto it = contexts.find(name);
        if (it == contexts.end()) throw model_error("unknown context '" + name + "'");
        return sp.make_event(it->second);
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every invariant the loaders enforce, but collects violations
/// instead of stopping at the first.
template <class S>
ValidationReport validate_model(const ModelFile& model) {
    ValidationReport report;
    std::map<std::string, std::size_t> index;
    S total = scalar_traits<S>::zero();
    bool weights_parse = true;
    for (const auto& [id, literal] : model.points) {
        if (!index.emplace(id, index.size()).second)
            report.violations.push_back("duplicate point identifier '" + id + "'");
        try {
            S w = scalar_traits<S>::parse(literal);
            if (w < scalar_traits<S>::zero())
                report.violations.push_back("negative weight at point '" + id + "'");
            else
                total += w;
        } catch (const error& e) {
            weights_parse = false;
            report.violations.push_back(std::string(e.what()) + " (point '" + id + "')");
        }
    }
    if (model.points.empty()) report.violations.push_back("no sample points");
    if (weights_parse && !model.points.empty() && !scalar_traits<S>::sums_to_one(total))
        report.violations.push_back("total mass " + scalar_traits<S>::str(total) + ", expected 1");

    for (const auto& [name, values] : model.variables) {
        std::map<double, int> distinct;
        for (const auto& [id, v] : values) {
            if (!index.count(id))
                report.violations.push_back("variable '" + name + "' assigns unknown point '" + id + "'");
            distinct[v] = 1;
        }
        for (const auto& [id, w] : model.points)
            if (!values.count(id))
                report.violations.push_back("variable '" + name + "' is undefined at point '" + id + "'");
        if (distinct.size() < 2)
            report.violations.push_back("variable '" + name + "' must take at least two distinct values");
    }
    if (model.variables.size() < 2) report.violations.push_back("model needs at least two variables");
    for (const auto& [name, ids] : model.contexts)
        for (const auto& id : ids)
            if (!index.count(id))
                report.violations.push_back("context '" + name + "' names unknown point '" + id + "'");
    return report;
}

struct RandomModelParams {
    std::size_t points = 8;
    std::size_t values_a = 2;
    std::size_t values_b = 2;
    std::uint64_t seed = 0;
};

/// Seeded, reproducible model with dyadic rational weights and strictly
/// positive joint cells (outputs of the same seed are byte-identical).
ModelFile random_model(const RandomModelParams& params);

}  // namespace kontext

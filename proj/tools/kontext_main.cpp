// kontext: contextual-probability analyzer.
//
// Subcommands: validate, analyze, scan, represent, random, oracle.
// Exit codes: 0 success, 1 invalid model, 2 precondition failure
// (degenerate context / incompatible pair / impossible convention),
// 3 non-representable splitting step.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "kontext/oracle.hpp"
#include "kontext/report.hpp"

using namespace kontext;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string path;
    std::string pair = "a,b";
    std::string context_name;
    std::string branch = "plus";
    std::string basis_context;
    std::string format = "text";
    bool use_float = false;
    std::size_t max_size = 0;
};

std::pair<std::string, std::string> split_pair(const std::string& pair) {
    auto comma = pair.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == pair.size())
        throw model_error("--pair expects two comma-separated variable names");
    return {pair.substr(0, comma), pair.substr(comma + 1)};
}

OutputFormat parse_format(const std::string& f) {
    if (f == "json") return OutputFormat::json;
    if (f == "csv") return OutputFormat::csv;
    return OutputFormat::text;
}

Branch parse_branch(const std::string& b) { return b == "minus" ? Branch::minus : Branch::plus; }

int cmd_validate(const CommonArgs& args) {
    auto model = ModelFile::load(args.path);
    ValidationReport report = args.use_float ? validate_model<double>(model)
                                             : validate_model<Rational>(model);
    if (report.ok()) {
        std::cout << "OK\n";
        return 0;
    }
    for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
    return 1;
}

template <class S>
int run_analyze(const ModelFile& model, const CommonArgs& args) {
    auto [a_name, b_name] = split_pair(args.pair);
    std::vector<std::string> names;
    if (!args.context_name.empty()) {
        names.push_back(args.context_name);
    } else {
        for (const auto& [name, ids] : model.contexts) names.push_back(name);
    }
    AnalysisOptions options;
    options.branch = parse_branch(args.branch);
    if (!args.basis_context.empty()) options.basis_context = args.basis_context;
    options.exact = !args.use_float;
    auto report = analyze<S>(model, a_name, b_name, names, options);
    std::cout << render(report, parse_format(args.format));
    if (!report.incompatible) return 2;
    return report.all_pass ? 0 : 2;
}

template <class S>
int run_scan(const ModelFile& model, const CommonArgs& args) {
    auto [a_name, b_name] = split_pair(args.pair);
    auto space = model.space<S>();
    auto a = model.variable(space, a_name);
    auto b = model.variable(space, b_name);
    if (!is_incompatible(space, a, b))
        throw incompatible_pair_error("variables '" + a_name + "' and '" + b_name +
                                      "' are not incompatible");
    std::size_t max_size = args.max_size == 0 ? space.size() : args.max_size;
    auto census = scan_contexts(space, a, b, max_size);
    std::cout << render(census, parse_format(args.format));
    return census.conserved ? 0 : 2;
}

template <class S>
int run_represent(const ModelFile& model, const CommonArgs& args) {
    auto [a_name, b_name] = split_pair(args.pair);
    auto space = model.space<S>();
    auto a = model.variable(space, a_name);
    auto b = model.variable(space, b_name);
    if (args.context_name.empty()) throw model_error("represent requires --context NAME");
    Event c = model.context(space, args.context_name);
    Branch branch = parse_branch(args.branch);

    json out;
    out["context"] = args.context_name;
    out["members"] = space.event_label(c);
    out["mode"] = scalar_traits<S>::mode_name;

    if (!a.dichotomous() || !b.dichotomous()) {
        auto multi = represent_multivalued(space, a, b, c,
                                           branch == Branch::plus ? GammaBranch::plus
                                                                  : GammaBranch::minus);
        out["kind"] = "multivalued";
        out["splitting_order"] = a.spectrum();
        json outcomes = json::array();
        for (std::size_t x = 0; x < multi.amp.size(); ++x) {
            json o;
            o["b_value"] = multi.traces[x].outcome_value;
            o["amplitude"] = {{"re", multi.amp[x].real()}, {"im", multi.amp[x].imag()}};
            o["beta"] = multi.beta[x];
            json steps = json::array();
            for (const auto& step : multi.traces[x].steps) {
                steps.push_back({{"j", step.index},
                                 {"tail", scalar_traits<S>::str(step.tail)},
                                 {"coefficient", step.coeff},
                                 {"gamma", step.gamma},
                                 {"alpha", step.alpha},
                                 {"zero_tail", step.zero_tail}});
            }
            o["steps"] = steps;
            outcomes.push_back(o);
        }
        out["outcomes"] = outcomes;
        out["born_residual"] = born_residual(multi);
        out["expansion_residual"] = interference_expansion_residual(multi);
    } else {
        auto profile = interference_lambda(space, a, b, c);
        auto numbers = profile.numbers();
        out["class"] = to_string(profile.cls.tag);
        out["branch"] = to_string(branch);
        if (profile.cls.tag == ContextClass::trigonometric) {
            auto convention = numbers.double_stochastic ? PhaseConvention::paired
                                                        : PhaseConvention::independent;
            auto rep = represent(numbers, branch, convention);
            out["kind"] = "complex";
            json amps = json::array();
            for (std::size_t x = 0; x < 2; ++x)
                amps.push_back({{"re", rep.state.amp[x].real()}, {"im", rep.state.amp[x].imag()}});
            out["amplitudes"] = amps;
            out["theta"] = rep.phases.theta;
            out["born_b_residual"] = born_b_residual(rep.state, rep.pb);
        } else if (profile.cls.tag == ContextClass::hyperbolic) {
            auto hyp = represent_hyperbolic(numbers);
            out["kind"] = "split-complex";
            json amps = json::array();
            for (std::size_t x = 0; x < 2; ++x)
                amps.push_back({{"re", hyp.amp[x].re}, {"hy", hyp.amp[x].hy}});
            out["amplitudes"] = amps;
            out["theta"] = hyp.theta;
            out["sign"] = hyp.sign;
            double worst = 0;
            for (std::size_t x = 0; x < 2; ++x)
                worst = std::max(worst, std::abs(split_modulus(hyp.amp[x]) - numbers.pb[x]));
            out["born_residual"] = worst;
        } else {
            throw classification_error("context '" + args.context_name + "' is " +
                                       to_string(profile.cls.tag) + "; nothing to represent");
        }
        if (scalar_traits<S>::exact) {
            json exact;
            exact["pa"] = detail::str_all(profile.pa);
            exact["pb"] = detail::str_all(profile.pb);
            json deltas = json::array(), lsq = json::array();
            for (const auto& o : profile.outcomes) {
                deltas.push_back(scalar_traits<S>::str(o.delta));
                lsq.push_back(scalar_traits<S>::str(o.lambda_sq));
            }
            exact["delta"] = deltas;
            exact["lambda_sq"] = lsq;
            out["exact"] = exact;
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

template <class S>
int run_oracle(const ModelFile& model, const CommonArgs& args) {
    auto [a_name, b_name] = split_pair(args.pair);
    auto space = model.space<S>();
    auto a = model.variable(space, a_name);
    auto b = model.variable(space, b_name);
    if (args.context_name.empty()) throw model_error("oracle requires --context NAME");
    Event c = model.context(space, args.context_name);

    auto record = oracle_context(space, a, b, c);
    json out;
    out["context"] = args.context_name;
    out["mode"] = scalar_traits<S>::mode_name;
    out["oracle"] = {{"pa", detail::str_all(record.pa)},
                     {"pb", detail::str_all(record.pb)},
                     {"delta", detail::str_all(record.delta)},
                     {"lambda", record.lambda},
                     {"ftp_residual", scalar_traits<S>::str(record.ftp_residual)},
                     {"degenerate", record.context_degenerate}};

    if (a.dichotomous() && b.dichotomous() && is_incompatible(space, a, b)) {
        auto profile = interference_lambda(space, a, b, c);
        json mod;
        mod["pa"] = detail::str_all(profile.pa);
        mod["pb"] = detail::str_all(profile.pb);
        json lam = json::array(), deltas = json::array();
        for (const auto& o : profile.outcomes) {
            lam.push_back(o.lambda);
            deltas.push_back(scalar_traits<S>::str(o.delta));
        }
        mod["lambda"] = lam;
        mod["delta"] = deltas;
        out["module"] = mod;
        bool agree = !record.context_degenerate;
        if (agree) {
            for (std::size_t x = 0; x < 2; ++x) {
                if (!scalar_traits<S>::equal(record.delta[x], profile.outcomes[x].delta)) agree = false;
                if (std::isfinite(record.lambda[x]) &&
                    std::abs(record.lambda[x] - profile.outcomes[x].lambda) > 1e-12)
                    agree = false;
            }
        }
        out["agreement"] = agree;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextual probability analyzer: interference coefficients, context "
                 "classification, and amplitude representations over finite sample spaces"};
    app.require_subcommand(1);

    CommonArgs args;
    RandomModelParams random_params;
    std::string random_out;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("model", args.path, "model file (JSON)")->required();
        cmd->add_option("--pair", args.pair, "reference pair, e.g. a,b");
        cmd->add_option("--context", args.context_name, "named context");
        cmd->add_option("--branch", args.branch, "phase branch: plus|minus")
            ->check(CLI::IsMember({"plus", "minus"}));
        cmd->add_option("--basis-context", args.basis_context, "context fixing the a-basis");
        cmd->add_option("--format", args.format, "text|json|csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--max-size", args.max_size, "largest context cardinality to enumerate");
        auto* fl = cmd->add_flag("--float", args.use_float, "double-precision mode");
        cmd->add_flag("--exact", "exact rational mode (default)")->excludes(fl);
    };

    add_common(app.add_subcommand("validate", "check model invariants"));
    add_common(app.add_subcommand("analyze", "profile named contexts for a pair"));
    add_common(app.add_subcommand("scan", "classify every subset context"));
    add_common(app.add_subcommand("represent", "amplitude representation of one context"));
    add_common(app.add_subcommand("oracle", "brute-force recomputation for one context"));

    auto* random_cmd = app.add_subcommand("random", "generate a seeded random model");
    random_cmd->add_option("--points", random_params.points, "number of sample points");
    random_cmd->add_option("--values-a", random_params.values_a, "spectrum size of a");
    random_cmd->add_option("--values-b", random_params.values_b, "spectrum size of b");
    random_cmd->add_option("--seed", random_params.seed, "RNG seed");
    random_cmd->add_option("--out", random_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (random_cmd->parsed()) {
            auto model = random_model(random_params);
            if (random_out.empty())
                std::cout << model.dump();
            else
                model.save(random_out);
            return 0;
        }
        auto model = ModelFile::load(args.path);
        if (app.get_subcommand("validate")->parsed()) return cmd_validate(args);
        if (app.get_subcommand("analyze")->parsed())
            return args.use_float ? run_analyze<double>(model, args)
                                  : run_analyze<Rational>(model, args);
        if (app.get_subcommand("scan")->parsed())
            return args.use_float ? run_scan<double>(model, args) : run_scan<Rational>(model, args);
        if (app.get_subcommand("represent")->parsed())
            return args.use_float ? run_represent<double>(model, args)
                                  : run_represent<Rational>(model, args);
        if (app.get_subcommand("oracle")->parsed())
            return args.use_float ? run_oracle<double>(model, args)
                                  : run_oracle<Rational>(model, args);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

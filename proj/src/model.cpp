#include "kontext/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace kontext {

namespace {

using nlohmann::json;

std::string weight_literal(const json& w) {
    if (w.is_string()) return w.get<std::string>();
    if (w.is_number()) return w.dump();  // shortest round-trip decimal, read digit-exactly
    throw model_error("weight must be a fraction/decimal string or a number");
}

}  // namespace

ModelFile ModelFile::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw model_error(std::string("JSON parse error: ") + e.what());
    }
    ModelFile m;
    try {
        if (j.contains("title")) m.title = j.at("title").get<std::string>();
        if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& p : j.at("space").at("points")) {
            m.points.emplace_back(p.at("id").get<std::string>(), weight_literal(p.at("weight")));
        }
        for (const auto& [name, assignment] : j.at("variables").items()) {
            std::map<std::string, double> values;
            for (const auto& [id, v] : assignment.items()) values[id] = v.get<double>();
            m.variables[name] = std::move(values);
        }
        if (j.contains("contexts")) {
            for (const auto& [name, ids] : j.at("contexts").items())
                m.contexts[name] = ids.get<std::vector<std::string>>();
        }
    } catch (const json::exception& e) {
        throw model_error(std::string("malformed model file: ") + e.what());
    }
    return m;
}

ModelFile ModelFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw model_error("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ModelFile::dump() const {
    json j;
    if (!title.empty()) j["title"] = title;
    if (seed) j["seed"] = *seed;
    json pts = json::array();
    for (const auto& [id, literal] : points) pts.push_back({{"id", id}, {"weight", literal}});
    j["space"]["points"] = pts;
    for (const auto& [name, values] : variables) {
        json v;
        for (const auto& [id, val] : values) v[id] = val;
        j["variables"][name] = v;
    }
    for (const auto& [name, ids] : contexts) j["contexts"][name] = ids;
    return j.dump(2) + "\n";
}

void ModelFile::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw model_error("cannot write model file '" + path + "'");
    out << dump();
}

ModelFile random_model(const RandomModelParams& params) {
    const std::size_t cells = params.values_a * params.values_b;
    if (params.values_a < 2 || params.values_b < 2)
        throw model_error("random model needs at least two values per variable");
    if (params.points < cells)
        throw model_error("infeasible shape: " + std::to_string(params.points) + " points cannot cover " +
                          std::to_string(cells) + " joint cells");
    if (params.points > FiniteSpace<Rational>::max_points)
        throw model_error("too many points requested");

    std::mt19937_64 rng(params.seed);

    // dyadic weights: a random composition of 2^20 into `points` positive parts
    constexpr std::uint64_t denom = std::uint64_t{1} << 20;
    std::vector<std::uint64_t> cuts;
    std::uniform_int_distribution<std::uint64_t> cut_dist(1, denom - 1);
    while (cuts.size() + 1 < params.points) {
        std::uint64_t c = cut_dist(rng);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::uint64_t> numerators;
    std::uint64_t prev = 0;
    for (std::uint64_t c : cuts) {
        numerators.push_back(c - prev);
        prev = c;
    }
    numerators.push_back(denom - prev);

    ModelFile m;
    m.title = "random model (seed " + std::to_string(params.seed) + ")";
    m.seed = params.seed;
    for (std::size_t i = 0; i < params.points; ++i)
        m.points.emplace_back("w" + std::to_string(i + 1),
                              std::to_string(numerators[i]) + "/" + std::to_string(denom));

    // first values_a*values_b points enumerate every joint cell once, the
    // rest land on random cells; every joint cell keeps positive mass
    std::uniform_int_distribution<std::size_t> cell_dist(0, cells - 1);
    std::map<std::string, double> va, vb;
    for (std::size_t i = 0; i < params.points; ++i) {
        std::size_t cell = i < cells ? i : cell_dist(rng);
        va[m.points[i].first] = static_cast<double>(cell / params.values_b + 1);
        vb[m.points[i].first] = static_cast<double>(cell % params.values_b + 1);
    }
    m.variables["a"] = std::move(va);
    m.variables["b"] = std::move(vb);

    std::vector<std::string> all_ids;
    for (const auto& [id, w] : m.points) all_ids.push_back(id);
    m.contexts["Omega"] = all_ids;
    return m;
}

}  // namespace kontext

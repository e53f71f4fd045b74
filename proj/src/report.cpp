#include "kontext/report.hpp"

#include <json.hpp>

#include <sstream>

namespace kontext {

namespace {

using nlohmann::json;
using detail::fmt12;

json matrix_json(const std::vector<std::vector<std::string>>& m) {
    json rows = json::array();
    for (const auto& r : m) rows.push_back(r);
    return rows;
}

json row_json(const ContextRow& row) {
    json j;
    j["context"] = row.name;
    j["members"] = row.members;
    j["class"] = row.census_key();
    if (!row.non_representable && row.cls.tag == ContextClass::degenerate)
        j["reason"] = to_string(row.cls.reason);
    if (row.cls.boundary) j["boundary"] = true;
    if (!row.pa.empty()) j["pa"] = row.pa;
    if (!row.pb.empty()) j["pb"] = row.pb;
    if (!row.delta.empty()) j["delta"] = row.delta;
    if (!row.lambda.empty()) j["lambda"] = row.lambda;
    if (!row.representation.empty()) {
        j["representation"] = row.representation;
        json amps = json::array();
        for (const auto& amp : row.amplitudes) {
            if (row.representation == "split-complex")
                amps.push_back({{"re", amp[0]}, {"hy", amp[1]}});
            else
                amps.push_back({{"re", amp[0]}, {"im", amp[1]}});
        }
        j["amplitudes"] = amps;
        j["theta"] = row.theta;
    }
    if (row.born_b) j["born_b_residual"] = *row.born_b;
    if (row.born_a) j["born_a_residual"] = *row.born_a;
    if (row.expectation_b_classical) {
        j["expectation_b"] = {{"classical", *row.expectation_b_classical},
                              {"operator", *row.expectation_b_operator}};
    }
    if (!row.note.empty()) j["note"] = row.note;
    j["pass"] = row.pass;
    return j;
}

std::string lambda_cell(const std::vector<double>& lambda) {
    std::string out;
    for (std::size_t i = 0; i < lambda.size(); ++i) out += (i ? " " : "") + fmt12(lambda[i]);
    return out;
}

}  // namespace

std::string render(const AnalysisReport& report, OutputFormat format) {
    if (format == OutputFormat::json) {
        json j;
        j["title"] = report.title;
        j["pair"] = report.pair;
        j["mode"] = report.mode;
        j["branch"] = report.branch;
        j["incompatible"] = report.incompatible;
        if (!report.stop_reason.empty()) {
            j["stopped"] = report.stop_reason;
            return j.dump(2) + "\n";
        }
        if (!report.basis_context.empty()) j["basis_context"] = report.basis_context;
        j["transition_b_given_a"] = matrix_json(report.matrices.t_ba);
        j["transition_a_given_b"] = matrix_json(report.matrices.t_ab);
        j["diagnostics"] = {{"ba_double_stochastic", report.matrices.ba_double_stochastic},
                            {"ab_double_stochastic", report.matrices.ab_double_stochastic}};
        if (report.matrices.pair_dichotomous) {
            j["diagnostics"]["symmetric"] = report.matrices.symmetric;
            j["diagnostics"]["uniform_marginals"] = report.matrices.uniform_marginals;
            j["diagnostics"]["lemma_equivalent"] = report.matrices.lemma_equivalent;
        }
        if (report.operators.available) {
            json ops;
            ops["b_diagonal"] = report.operators.b_diagonal;
            json am = json::array(), cm = json::array();
            for (std::size_t i = 0; i < 4; ++i) {
                am.push_back({{"re", report.operators.a_matrix[i][0]},
                              {"im", report.operators.a_matrix[i][1]}});
                cm.push_back({{"re", report.operators.commutator_ab[i][0]},
                              {"im", report.operators.commutator_ab[i][1]}});
            }
            ops["a_matrix"] = am;
            ops["commutator"] = cm;
            ops["closed_form_residual"] = report.operators.closed_form_residual;
            j["operators"] = ops;
        }
        json rows = json::array();
        for (const auto& row : report.rows) rows.push_back(row_json(row));
        j["contexts"] = rows;
        j["census"] = report.census;
        j["all_pass"] = report.all_pass;
        return j.dump(2) + "\n";
    }

    if (format == OutputFormat::csv) {
        std::ostringstream os;
        os << "context,members,class,boundary,lambda_1,lambda_2,born_b_residual,born_a_residual,pass\n";
        for (const auto& row : report.rows) {
            os << row.name << ",\"" << row.members << "\"," << row.census_key() << ","
               << (row.cls.boundary ? 1 : 0) << ",";
            os << (row.lambda.size() > 0 ? fmt12(row.lambda[0]) : "") << ","
               << (row.lambda.size() > 1 ? fmt12(row.lambda[1]) : "") << ",";
            os << (row.born_b ? fmt12(*row.born_b) : "") << ","
               << (row.born_a ? fmt12(*row.born_a) : "") << "," << (row.pass ? 1 : 0) << "\n";
        }
        return os.str();
    }

    std::ostringstream os;
    os << "model: " << (report.title.empty() ? "(untitled)" : report.title) << "   pair: "
       << report.pair << "   mode: " << report.mode << "   branch: " << report.branch << "\n";
    if (!report.stop_reason.empty()) {
        os << "analysis stopped: " << report.stop_reason << "\n";
        return os.str();
    }
    os << "P(b|a):";
    for (const auto& r : report.matrices.t_ba) {
        os << "  [";
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
        os << "]";
    }
    os << "\nP(a|b):";
    for (const auto& r : report.matrices.t_ab) {
        os << "  [";
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
        os << "]";
    }
    os << "\ndouble stochastic: b|a=" << (report.matrices.ba_double_stochastic ? "yes" : "no")
       << " a|b=" << (report.matrices.ab_double_stochastic ? "yes" : "no");
    if (report.matrices.pair_dichotomous)
        os << "  symmetric: " << (report.matrices.symmetric ? "yes" : "no")
           << "  uniform marginals: " << (report.matrices.uniform_marginals ? "yes" : "no")
           << "  (equivalent: " << (report.matrices.lemma_equivalent ? "yes" : "no") << ")";
    os << "\n";
    if (!report.basis_context.empty()) os << "basis context: " << report.basis_context << "\n";
    if (report.operators.available) {
        auto& op = report.operators;
        os << "a-operator: [[" << fmt12(op.a_matrix[0][0]) << ", " << fmt12(op.a_matrix[1][0])
           << "], [" << fmt12(op.a_matrix[2][0]) << ", " << fmt12(op.a_matrix[3][0]) << "]]\n";
        os << "[a,b] m12: " << fmt12(op.commutator_ab[1][0])
           << " (closed-form residual " << fmt12(op.closed_form_residual) << ")\n";
    }
    for (const auto& row : report.rows) {
        os << "- " << row.name << " " << row.members << ": " << row.census_key();
        if (row.cls.boundary) os << " (boundary)";
        if (!row.non_representable && row.cls.tag == ContextClass::degenerate)
            os << " [" << to_string(row.cls.reason) << "]";
        if (!row.lambda.empty()) os << "  lambda = " << lambda_cell(row.lambda);
        if (!row.representation.empty()) {
            os << "\n    " << row.representation << " amplitudes:";
            for (const auto& amp : row.amplitudes)
                os << " (" << fmt12(amp[0]) << (row.representation == "split-complex" ? " + j*" : " + i*")
                   << fmt12(amp[1]) << ")";
            if (row.born_b) os << "  born_b resid " << fmt12(*row.born_b);
            if (row.born_a) os << "  born_a resid " << fmt12(*row.born_a);
        }
        if (!row.note.empty()) os << "  " << row.note;
        os << (row.pass ? "" : "  FAIL") << "\n";
    }
    os << "census:";
    for (const auto& [key, count] : report.census) os << " " << key << "=" << count;
    os << "\nresult: " << (report.all_pass ? "OK" : "FAIL") << "\n";
    return os.str();
}

std::string render(const ClassCensus& census, OutputFormat format) {
    if (format == OutputFormat::json) {
        json j;
        j["counts"] = census.counts;
        j["witnesses"] = census.witness;
        j["enumerated"] = census.enumerated;
        j["conserved"] = census.conserved;
        return j.dump(2) + "\n";
    }
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        os << "class,count,witness\n";
        for (const auto& [key, count] : census.counts)
            os << key << "," << count << ",\"" << census.witness.at(key) << "\"\n";
        return os.str();
    }
    std::ostringstream os;
    os << "contexts enumerated: " << census.enumerated << "\n";
    for (const auto& [key, count] : census.counts)
        os << "  " << key << ": " << count << "  (witness " << census.witness.at(key) << ")\n";
    os << "conservation: " << (census.conserved ? "OK" : "FAIL") << "\n";
    return os.str();
}

}  // namespace kontext

#pragma once

#include <optional>
#include <set>
#include <string>

#include "json.hpp"

#include "dbvp/errors.hpp"
#include "dbvp/expression.hpp"
#include "dbvp/mesh.hpp"

namespace dbvp {

/// On-disk description of a nonlinear problem. Field names are fixed:
/// {"T": int, "f": string, "lower": string, "upper": string,
///  "lambda"?: number, "M"?: number, "tol"?: number, "max_iter"?: int}.
/// Unknown fields are rejected.
struct ProblemDocument {
    int T = 0;   // 0 means "not set yet" (builtins leave T to the caller)
    std::string f;
    std::string lower;
    std::string upper;
    std::optional<double> lambda;
    std::optional<double> M;
    std::optional<double> tol;
    std::optional<int> max_iter;
};

inline ProblemDocument parse_problem_document(const nlohmann::json& j) {
    if (!j.is_object()) throw BadInputError("problem document must be a JSON object");
    static const std::set<std::string> kKnown{"T", "f", "lower", "upper", "lambda", "M", "tol", "max_iter"};
    for (const auto& item : j.items()) {
        if (!kKnown.count(item.key())) {
            throw BadInputError("problem document: unknown field \"" + item.key() + "\"");
        }
    }
    ProblemDocument doc;
    const auto require_string = [&j](const char* key) {
        if (!j.contains(key) || !j.at(key).is_string()) {
            throw BadInputError(std::string("problem document: field \"") + key + "\" must be a string");
        }
        return j.at(key).get<std::string>();
    };
    if (!j.contains("T") || !j.at("T").is_number_integer()) {
        throw BadInputError("problem document: field \"T\" must be an integer");
    }
    doc.T = j.at("T").get<int>();
    if (doc.T < 1) throw BadInputError("problem document: T must be positive");
    doc.f = require_string("f");
    doc.lower = require_string("lower");
    doc.upper = require_string("upper");
    if (j.contains("lambda")) {
        if (!j.at("lambda").is_number()) throw BadInputError("problem document: \"lambda\" must be a number");
        doc.lambda = j.at("lambda").get<double>();
    }
    if (j.contains("M")) {
        if (!j.at("M").is_number()) throw BadInputError("problem document: \"M\" must be a number");
        doc.M = j.at("M").get<double>();
    }
    if (j.contains("tol")) {
        if (!j.at("tol").is_number()) throw BadInputError("problem document: \"tol\" must be a number");
        doc.tol = j.at("tol").get<double>();
        if (!(*doc.tol > 0.0)) throw BadInputError("problem document: tol must be positive");
    }
    if (j.contains("max_iter")) {
        if (!j.at("max_iter").is_number_integer()) {
            throw BadInputError("problem document: \"max_iter\" must be an integer");
        }
        doc.max_iter = j.at("max_iter").get<int>();
        if (*doc.max_iter < 1) throw BadInputError("problem document: max_iter must be positive");
    }
    return doc;
}

inline ProblemDocument parse_problem_document(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw BadInputError(std::string("problem document: invalid JSON: ") + e.what());
    }
    return parse_problem_document(j);
}

inline nlohmann::json to_json(const ProblemDocument& doc) {
    nlohmann::json j{{"T", doc.T}, {"f", doc.f}, {"lower", doc.lower}, {"upper", doc.upper}};
    if (doc.lambda) j["lambda"] = *doc.lambda;
    if (doc.M) j["M"] = *doc.M;
    if (doc.tol) j["tol"] = *doc.tol;
    if (doc.max_iter) j["max_iter"] = *doc.max_iter;
    return j;
}

/// The two builtin problems. T is left unset (0); callers supply it.
inline ProblemDocument builtin_problem(const std::string& name) {
    ProblemDocument doc;
    if (name == "example1") {
        doc.f = "exp(y)/exp((T+1)^2)";
        doc.lower = "0";
        doc.upper = "(T+1)*t - t^2/2";
    } else if (name == "example2") {
        doc.f = "exp(t) - exp(y)";
        doc.lower = "0";
        doc.upper = "t";
    } else {
        throw BadInputError("unknown builtin problem \"" + name + "\" (available: example1, example2)");
    }
    return doc;
}

/// Parsed, validated problem ready for the solver modules.
struct NonlinearProblem {
    int T = 0;
    Expression f;            // f(t, y)
    Expression lower_expr;   // alpha_0(t)
    Expression upper_expr;   // beta_0(t)
    std::optional<double> m_declared;
    double tol = 1e-10;
    int max_iter = 10000;
};

inline NonlinearProblem make_problem(const ProblemDocument& doc) {
    if (doc.T < 1) throw BadInputError("problem: grid parameter T must be set and positive");
    NonlinearProblem p;
    p.T = doc.T;
    p.f = Expression::parse(doc.f);
    p.lower_expr = Expression::parse(doc.lower);
    p.upper_expr = Expression::parse(doc.upper);
    if (p.lower_expr.uses_state()) throw BadInputError("problem: \"lower\" must not reference y");
    if (p.upper_expr.uses_state()) throw BadInputError("problem: \"upper\" must not reference y");
    p.m_declared = doc.M;
    if (doc.tol) p.tol = *doc.tol;
    if (doc.max_iter) p.max_iter = *doc.max_iter;
    return p;
}

/// Evaluates an expression in t (and T) on the grid {0..T+1}.
inline MeshFunction evaluate_on_grid(const Expression& e, int T) {
    return MeshFunction::from_function(
        T, [&](int t) { return e.evaluate(static_cast<double>(t), 0.0, static_cast<double>(T)); });
}

} // namespace dbvp

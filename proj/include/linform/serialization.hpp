#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linform/construction.hpp"
#include "linform/int_set.hpp"
#include "linform/linear_form.hpp"
#include "linform/modular.hpp"

namespace linform {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Integers: JSON numbers when they fit in int64, decimal strings otherwise.
// ---------------------------------------------------------------------------

inline json int_to_json(const Int& x) {
    if (auto v = to_int64(x)) return *v;
    return x.str();
}

inline Int int_from_json(const json& j) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());  // before is_number_integer, which is also true here
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return parse_int(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json ints_to_json(const std::vector<Int>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(int_to_json(x));
    return a;
}

inline std::vector<Int> ints_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of integers");
    std::vector<Int> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(int_from_json(e));
    return out;
}

// ---------------------------------------------------------------------------
// Integer sets
// ---------------------------------------------------------------------------

/// One integer per line; '#' starts a comment; blank lines are skipped.
inline FiniteIntSet read_set_text(std::istream& in) {
    std::vector<Int> values;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        values.push_back(parse_int(line));
    }
    return FiniteIntSet(std::move(values));
}

inline void write_set_text(std::ostream& out, const FiniteIntSet& A, const std::string& comment = {}) {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (const auto& a : A) out << a << '\n';
}

inline json set_to_json(const FiniteIntSet& A) { return ints_to_json(A.elements()); }
inline FiniteIntSet set_from_json(const json& j) { return FiniteIntSet(ints_from_json(j)); }

/// Reads a set file in either format; JSON is recognized by a leading '['.
inline FiniteIntSet load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open set file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') return set_from_json(json::parse(text));
    std::istringstream lines(text);
    return read_set_text(lines);
}

/// Parses an inline list "0,2,3".
inline FiniteIntSet parse_set_list(const std::string& text) {
    std::vector<Int> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        values.push_back(parse_int(std::string_view(text).substr(start, comma - start)));
        start = comma + 1;
    }
    return FiniteIntSet(std::move(values));
}

// ---------------------------------------------------------------------------
// Residue sets
// ---------------------------------------------------------------------------

/// "m: c1,c2,..."
inline std::string format_residue_set(const ResidueSet& R) {
    std::string out = R.modulus().str() + ":";
    for (std::size_t i = 0; i < R.size(); ++i) out += (i ? "," : " ") + R.classes()[i].str();
    return out;
}

inline ResidueSet parse_residue_set(const std::string& line) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("residue set line lacks ':': '" + line + "'");
    const Int m = parse_int(std::string_view(line).substr(0, colon));
    std::vector<Int> classes;
    std::size_t start = colon + 1;
    while (start <= line.size()) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) comma = line.size();
        classes.push_back(parse_int(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return ResidueSet(m, std::move(classes));
}

inline json residue_set_to_json(const ResidueSet& R) {
    return {{"modulus", int_to_json(R.modulus())}, {"classes", ints_to_json(R.classes())}};
}

inline ResidueSet residue_set_from_json(const json& j) {
    return ResidueSet(int_from_json(j.at("modulus")), ints_from_json(j.at("classes")));
}

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    return Rational(parse_int(std::string_view(s).substr(0, slash)), parse_int(std::string_view(s).substr(slash + 1)));
}

inline json local_solution_to_json(const LocalSolution& l) {
    json j = residue_set_to_json(l.residues);
    j["f_card"] = int_to_json(l.f_card);
    j["g_card"] = int_to_json(l.g_card);
    j["ratio"] = rational_to_json(l.ratio);
    return j;
}

/// Cardinalities present in the JSON are taken as given; missing ones are recomputed from f, g.
inline LocalSolution local_solution_from_json(const json& j, const LinearForm& f, const LinearForm& g) {
    ResidueSet R = residue_set_from_json(j);
    if (j.contains("f_card") && j.contains("g_card"))
        return make_certified_local_solution(std::move(R), int_from_json(j.at("f_card")), int_from_json(j.at("g_card")));
    return make_local_solution(f, g, std::move(R));
}

inline json local_solutions_to_json(const std::vector<LocalSolution>& locals) {
    json a = json::array();
    for (const auto& l : locals) a.push_back(local_solution_to_json(l));
    return a;
}

/// Accepts a bare array or an object with a "locals" array.
inline std::vector<LocalSolution> local_solutions_from_json(const json& j, const LinearForm& f, const LinearForm& g) {
    const json& arr = j.is_object() ? j.at("locals") : j;
    if (!arr.is_array()) throw std::invalid_argument("expected an array of residue sets");
    std::vector<LocalSolution> out;
    for (const auto& e : arr) out.push_back(local_solution_from_json(e, f, g));
    return out;
}

inline std::vector<ResidueSet> residue_sets_from_json(const json& j) {
    const json& arr = j.is_object() ? j.at("locals") : j;
    if (!arr.is_array()) throw std::invalid_argument("expected an array of residue sets");
    std::vector<ResidueSet> out;
    for (const auto& e : arr) out.push_back(residue_set_from_json(e));
    return out;
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return json::parse(in);
}

// ---------------------------------------------------------------------------
// Construction reports
// ---------------------------------------------------------------------------

inline json form_to_json(const LinearForm& f) { return ints_to_json(f.coefficients()); }
inline LinearForm form_from_json(const json& j) { return LinearForm(ints_from_json(j)); }

/// Sets larger than `inline_limit` are written to `set_path` (when given) and referenced.
inline json report_to_json(const ConstructionReport& r, std::size_t inline_limit = 100'000,
                           const std::string& set_path = {}) {
    json j;
    j["form_f"] = form_to_json(r.form_f);
    j["form_g"] = form_to_json(r.form_g);
    j["locals"] = local_solutions_to_json(r.locals);
    json moduli = json::array();
    for (const auto& l : r.locals) moduli.push_back(int_to_json(l.residues.modulus()));
    j["moduli"] = moduli;
    j["combined_modulus"] = int_to_json(r.combined_modulus);
    j["window"] = {int_to_json(r.window_start), int_to_json(r.window_end())};
    j["set_size"] = int_to_json(r.set_size);
    j["ratio_product"] = rational_to_json(r.ratio_product);
    j["target_threshold"] = rational_to_json(r.target_threshold);
    j["threshold_met"] = r.threshold_met;
    j["f_card"] = r.f_card ? json(*r.f_card) : json(nullptr);
    j["g_card"] = r.g_card ? json(*r.g_card) : json(nullptr);
    j["success"] = r.success;
    j["certificate"] = std::string(to_string(r.certificate));
    j["message"] = r.message;
    if (r.last_attempt)
        j["last_materialized"] = {{"locals", r.last_attempt->locals},
                                  {"modulus", int_to_json(r.last_attempt->modulus)},
                                  {"f_card", r.last_attempt->f_card},
                                  {"g_card", r.last_attempt->g_card}};
    if (!r.A) {
        j["A"] = nullptr;
    } else if (r.A->size() <= inline_limit || set_path.empty()) {
        j["A"] = set_to_json(*r.A);
    } else {
        std::ofstream out(set_path);
        if (!out) throw std::runtime_error("cannot write '" + set_path + "'");
        write_set_text(out, *r.A);
        j["A"] = {{"file", set_path}, {"size", r.A->size()}};
    }
    return j;
}

}  // namespace linform

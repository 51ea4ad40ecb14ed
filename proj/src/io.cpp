#include "tatesplit/io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "tatesplit/exec.hpp"

namespace tatesplit {

namespace {

using nlohmann::json;

MultiDegree degree_from_json(const json& j, std::size_t t, const std::string& what) {
    auto v = j.get<std::vector<int>>();
    if (v.size() != t) throw InputError(what + " has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(t));
    return MultiDegree(std::move(v));
}

mpq_class coefficient_from_json(const json& c) {
    if (c.is_number_integer()) return mpq_class(c.get<long>());
    if (c.is_string()) return parse_coefficient(c.get<std::string>());
    throw InputError("coefficient must be an integer or a \"num/den\" string, got " + c.dump());
}

json coefficient_to_json(const mpq_class& c) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
    return format_coefficient(c);
}

}  // namespace

MultiHomogPoly poly_from_json(const ProductSpace& space, const json& j) {
    try {
        const auto degree = degree_from_json(j.at("degree"), space.t(), "polynomial degree");
        std::vector<Term> terms;
        for (const auto& tj : j.at("terms")) {
            const auto& ej = tj.at("e");
            if (!ej.is_array() || ej.size() != space.t())
                throw InputError("term exponents must list one array per factor: " + ej.dump());
            ExponentVector e;
            for (std::size_t f = 0; f < space.t(); ++f) {
                const auto block = ej[f].get<std::vector<int>>();
                if (block.size() != static_cast<std::size_t>(space.n(f)) + 1)
                    throw InputError("factor " + std::to_string(f + 1) + " exponents need " +
                                     std::to_string(space.n(f) + 1) + " entries: " + ej[f].dump());
                for (int x : block)
                    if (x < 0) throw InputError("negative exponent in " + ej.dump());
                e.insert(e.end(), block.begin(), block.end());
            }
            terms.push_back({coefficient_from_json(tj.at("c")), std::move(e)});
        }
        return MultiHomogPoly(space, degree, std::move(terms));
    } catch (const json::exception& e) {
        throw InputError(std::string("polynomial: ") + e.what());
    }
}

json poly_to_json(const ProductSpace& space, const MultiHomogPoly& f) {
    auto terms = json::array();
    for (const auto& t : f.terms()) {
        auto e = json::array();
        for (std::size_t j = 0; j < space.t(); ++j) {
            const auto off = static_cast<std::size_t>(space.var_offset(j));
            e.push_back(std::vector<int>(t.exps.begin() + static_cast<long>(off),
                                         t.exps.begin() + static_cast<long>(off) + space.n(j) + 1));
        }
        terms.push_back({{"c", coefficient_to_json(t.coeff)}, {"e", e}});
    }
    return {{"degree", f.degree().coords()}, {"terms", terms}};
}

ComplexInput complex_from_json(const json& j) {
    try {
        if (!j.is_object()) throw InputError("top level must be an object");
        ProductSpace space(j.at("space").at("factor_dims").get<std::vector<int>>());
        std::optional<FieldSpec> field;
        if (j.contains("field")) field = FieldSpec::parse(j.at("field").get<std::string>());

        const auto& cj = j.at("complex");
        std::map<int, FreeSum> terms;
        for (const auto& tj : cj.at("terms")) {
            const int p = tj.at("p").get<int>();
            FreeSum s;
            for (const auto& b : tj.at("twists")) s.twists.push_back(degree_from_json(b, space.t(), "twist"));
            if (!terms.emplace(p, std::move(s)).second) throw InputError("term p=" + std::to_string(p) + " given twice");
        }
        if (terms.empty()) throw InputError("complex has no terms");
        const int p_min = terms.begin()->first, p_max = terms.rbegin()->first;
        std::vector<FreeSum> dense;
        for (int p = p_min; p <= p_max; ++p) dense.push_back(terms.count(p) ? terms.at(p) : FreeSum{});

        std::vector<PolyMatrix> diffs;
        for (std::size_t k = 0; k + 1 < dense.size(); ++k) diffs.push_back(PolyMatrix::zero(dense[k], dense[k + 1]));
        std::map<int, bool> seen;
        for (const auto& dj : cj.value("diffs", json::array())) {
            const int p = dj.at("p").get<int>();
            if (p < p_min || p >= p_max)
                throw InputError("differential leaving p=" + std::to_string(p) + " has no target term");
            if (seen[p]) throw InputError("differential p=" + std::to_string(p) + " given twice");
            seen[p] = true;
            auto& m = diffs[static_cast<std::size_t>(p - p_min)];
            const auto& rows = dj.at("entries");
            if (!rows.is_array() || rows.size() != m.rows)
                throw InputError("differential p=" + std::to_string(p) + " needs " + std::to_string(m.rows) + " rows");
            for (std::size_t r = 0; r < m.rows; ++r) {
                if (!rows[r].is_array() || rows[r].size() != m.cols)
                    throw InputError("differential p=" + std::to_string(p) + " row " + std::to_string(r) + " needs " +
                                     std::to_string(m.cols) + " entries");
                for (std::size_t s = 0; s < m.cols; ++s) {
                    const auto& e = rows[r][s];
                    if (e.is_number_integer() && e.get<long>() == 0) continue;
                    m.at(r, s) = poly_from_json(space, e);
                }
            }
        }
        LineBundleComplex c(space, p_min, std::move(dense), std::move(diffs));
        const auto violations = validate_complex(c);
        if (!violations.empty()) {
            const auto& v = violations.front();
            throw InputError("invalid complex at p=" + std::to_string(v.p) + " entry (" + std::to_string(v.row) + "," +
                             std::to_string(v.col) + "): " + v.message);
        }
        return {std::move(c), field};
    } catch (const json::exception& e) {
        throw InputError(std::string("complex JSON: ") + e.what());
    }
}

json complex_to_json(const LineBundleComplex& c, const std::optional<FieldSpec>& field) {
    const auto& space = c.space();
    json j;
    j["space"] = {{"factor_dims", space.factor_dims()}};
    if (field) j["field"] = field->str();
    auto terms = json::array(), diffs = json::array();
    for (int p = c.p_min(); p <= c.p_max(); ++p) {
        auto tw = json::array();
        for (const auto& b : c.term(p).twists) tw.push_back(b.coords());
        terms.push_back({{"p", p}, {"twists", tw}});
        const auto& d = c.diff(p);
        if (p == c.p_max() || d.is_zero()) continue;
        auto rows = json::array();
        for (std::size_t r = 0; r < d.rows; ++r) {
            auto row = json::array();
            for (std::size_t s = 0; s < d.cols; ++s)
                row.push_back(d.at(r, s).is_zero() ? json(0) : poly_to_json(space, d.at(r, s)));
            rows.push_back(row);
        }
        diffs.push_back({{"p", p}, {"entries", rows}});
    }
    j["complex"] = {{"terms", terms}, {"diffs", diffs}};
    return j;
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string read_text(const std::string& path) {
    std::ostringstream os;
    if (path == "-") {
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    os << in.rdbuf();
    return os.str();
}

}  // namespace tatesplit

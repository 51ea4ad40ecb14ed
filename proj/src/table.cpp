#include "tatesplit/table.hpp"

#include <algorithm>
#include <sstream>

#include "tatesplit/exec.hpp"

namespace tatesplit {

std::string to_string(CellStatus s) {
    switch (s) {
        case CellStatus::computed: return "computed";
        case CellStatus::inferred_zero: return "inferred_zero";
        case CellStatus::unknown: return "unknown";
    }
    return "unknown";
}

CellStatus cell_status_from_string(const std::string& s) {
    if (s == "computed") return CellStatus::computed;
    if (s == "inferred_zero") return CellStatus::inferred_zero;
    if (s == "unknown") return CellStatus::unknown;
    throw InputError("unknown cell status '" + s + "'");
}

CohomologyTable::CohomologyTable(ProductSpace space, Window window)
    : space_(std::move(space)), window_(std::move(window)) {
    if (window_.t() != space_.t()) throw InputError("table window dimension does not match the space");
}

Cell CohomologyTable::cell(const MultiDegree& a, int i) const {
    if (i < 0 || i > m()) return {0, CellStatus::computed};
    const auto it = rows_.find(a);
    if (it == rows_.end()) return {};
    return it->second[static_cast<std::size_t>(i)];
}

std::optional<std::int64_t> CohomologyTable::known(const MultiDegree& a, int i) const {
    const Cell c = cell(a, i);
    if (!c.known()) return std::nullopt;
    return c.dim;
}

bool CohomologyTable::is_known_zero(const MultiDegree& a, int i) const {
    const auto v = known(a, i);
    return v && *v == 0;
}

bool CohomologyTable::is_known_nonzero(const MultiDegree& a, int i) const {
    const auto v = known(a, i);
    return v && *v != 0;
}

void CohomologyTable::set_computed(const MultiDegree& a, const CohomologyVector& h) {
    if (h.size() != static_cast<std::size_t>(m()) + 1) throw std::invalid_argument("cohomology vector length");
    auto& row = rows_[a];
    row.resize(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) row[i] = {h[i], CellStatus::computed};
}

void CohomologyTable::set_cell(const MultiDegree& a, int i, Cell c) {
    if (i < 0 || i > m()) throw std::invalid_argument("cohomology index out of range");
    if (c.status == CellStatus::inferred_zero) c.dim = 0;
    auto& row = rows_[a];
    row.resize(static_cast<std::size_t>(m()) + 1);
    row[static_cast<std::size_t>(i)] = c;
}

std::vector<MultiDegree> CohomologyTable::twists() const {
    std::vector<MultiDegree> out;
    for (const auto& [a, row] : rows_) out.push_back(a);
    return out;
}

std::size_t CohomologyTable::count(CellStatus s) const {
    std::size_t n = 0;
    for (const auto& [a, row] : rows_)
        for (const auto& c : row) n += c.status == s;
    return n;
}

bool CohomologyTable::operator==(const CohomologyTable& o) const {
    if (!(space_ == o.space_) || !(window_ == o.window_)) return false;
    // Rows consisting only of unknown cells are equivalent to absent rows.
    auto trimmed = [](const std::map<MultiDegree, std::vector<Cell>>& rows) {
        std::map<MultiDegree, std::vector<Cell>> out;
        for (const auto& [a, row] : rows)
            for (const auto& c : row)
                if (c.known()) {
                    out.emplace(a, row);
                    break;
                }
        return out;
    };
    return trimmed(rows_) == trimmed(o.rows_);
}

CohomologyTable bott_table(const ProductSpace& space, const std::vector<MultiDegree>& twists, const Window& window) {
    CohomologyTable t(space, window);
    for (const auto& a : window.points()) t.set_computed(a, sum_line_bundles_h(space, twists, a));
    return t;
}

namespace {

std::vector<MultiDegree> export_order(const CohomologyTable& t) {
    std::vector<MultiDegree> order = t.window().points();
    for (const auto& a : t.twists())
        if (!t.window().contains(a)) order.push_back(a);
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

nlohmann::json table_to_json(const CohomologyTable& t) {
    nlohmann::json j;
    j["space"] = {{"factor_dims", t.space().factor_dims()}};
    j["window"] = {{"lo", t.window().lo().coords()}, {"hi", t.window().hi().coords()}};
    auto cells = nlohmann::json::array();
    for (const auto& a : export_order(t))
        for (int i = 0; i <= t.m(); ++i) {
            const Cell c = t.cell(a, i);
            if (!t.window().contains(a) && !c.known()) continue;
            cells.push_back({{"a", a.coords()}, {"i", i}, {"dim", c.dim}, {"status", to_string(c.status)}});
        }
    j["cells"] = cells;
    return j;
}

CohomologyTable table_from_json(const nlohmann::json& j) {
    try {
        ProductSpace space(j.at("space").at("factor_dims").get<std::vector<int>>());
        Window window(MultiDegree(j.at("window").at("lo").get<std::vector<int>>()),
                      MultiDegree(j.at("window").at("hi").get<std::vector<int>>()));
        CohomologyTable t(space, window);
        for (const auto& c : j.at("cells")) {
            MultiDegree a(c.at("a").get<std::vector<int>>());
            if (a.size() != space.t()) throw InputError("cell twist " + a.str() + " has wrong length");
            const int i = c.at("i").get<int>();
            if (i < 0 || i > space.m()) throw InputError("cell index " + std::to_string(i) + " out of range");
            const auto status = cell_status_from_string(c.at("status").get<std::string>());
            const auto dim = c.at("dim").get<std::int64_t>();
            if (dim < 0) throw InputError("negative cell dimension at " + a.str());
            if (status == CellStatus::unknown) continue;
            t.set_cell(a, i, {dim, status});
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("table JSON: ") + e.what());
    }
}

std::string table_to_csv(const CohomologyTable& t) {
    std::ostringstream os;
    for (std::size_t j = 0; j < t.space().t(); ++j) os << 'a' << j + 1 << ',';
    os << "i,dim,status\n";
    for (const auto& a : export_order(t))
        for (int i = 0; i <= t.m(); ++i) {
            const Cell c = t.cell(a, i);
            if (!t.window().contains(a) && !c.known()) continue;
            for (std::size_t j = 0; j < a.size(); ++j) os << a[j] << ',';
            os << i << ',' << c.dim << ',' << to_string(c.status) << '\n';
        }
    return os.str();
}

std::string table_to_text(const CohomologyTable& t) {
    std::ostringstream os;
    for (const auto& a : export_order(t)) {
        os << "h^*(F" << a.str() << ") = (";
        for (int i = 0; i <= t.m(); ++i) {
            const Cell c = t.cell(a, i);
            os << (i ? ", " : "");
            if (c.status == CellStatus::unknown)
                os << '?';
            else
                os << c.dim << (c.status == CellStatus::inferred_zero ? "*" : "");
        }
        os << ")\n";
    }
    return os.str();
}

}  // namespace tatesplit

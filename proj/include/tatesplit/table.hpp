#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tatesplit/bott.hpp"
#include "tatesplit/lattice.hpp"

namespace tatesplit {

enum class CellStatus { computed, inferred_zero, unknown };

std::string to_string(CellStatus s);
CellStatus cell_status_from_string(const std::string& s);

struct Cell {
    std::int64_t dim = 0;
    CellStatus status = CellStatus::unknown;

    bool known() const { return status != CellStatus::unknown; }
    bool operator==(const Cell&) const = default;
};

/// h^i(F(a)) for a in a window (plus any inferred cells outside it), 0 <= i <= m.
/// Missing cells are unknown; indices outside [0, m] read as known zero.
class CohomologyTable {
public:
    CohomologyTable(ProductSpace space, Window window);

    const ProductSpace& space() const { return space_; }
    const Window& window() const { return window_; }
    int m() const { return space_.m(); }

    Cell cell(const MultiDegree& a, int i) const;
    /// Dimension when computed or inferred.
    std::optional<std::int64_t> known(const MultiDegree& a, int i) const;
    bool is_known_zero(const MultiDegree& a, int i) const;
    bool is_known_nonzero(const MultiDegree& a, int i) const;

    void set_computed(const MultiDegree& a, const CohomologyVector& h);
    void set_cell(const MultiDegree& a, int i, Cell c);

    /// Twists carrying at least one cell, lexicographic.
    std::vector<MultiDegree> twists() const;
    const std::map<MultiDegree, std::vector<Cell>>& rows() const { return rows_; }
    std::size_t count(CellStatus s) const;

    bool operator==(const CohomologyTable& o) const;

private:
    ProductSpace space_;
    Window window_;
    std::map<MultiDegree, std::vector<Cell>> rows_;
};

/// Table of a direct sum of line bundles from the closed formula.
CohomologyTable bott_table(const ProductSpace& space, const std::vector<MultiDegree>& twists, const Window& window);

nlohmann::json table_to_json(const CohomologyTable& t);
CohomologyTable table_from_json(const nlohmann::json& j);
/// Header a1,...,at,i,dim,status; every window cell plus cells known outside it.
std::string table_to_csv(const CohomologyTable& t);
/// Human-readable listing, one twist per line.
std::string table_to_text(const CohomologyTable& t);

}  // namespace tatesplit

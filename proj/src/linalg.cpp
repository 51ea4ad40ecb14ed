#include "tatesplit/linalg.hpp"

namespace tatesplit {

namespace {

void make_primitive(SparseRow<mpz_class>& row) {
    mpz_class g = 0;
    for (const auto& e : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
        if (g == 1) break;
    }
    if (row.empty()) return;
    if (row.front().second < 0) g = -g;
    if (g != 1)
        for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

SparseRow<mpz_class> to_integer_row(const SparseRow<mpq_class>& row) {
    mpz_class l = 1;
    for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
    SparseRow<mpz_class> out;
    out.reserve(row.size());
    for (const auto& e : row) {
        if (sgn(e.second) == 0) continue;
        mpz_class v = e.second.get_num() * (l / e.second.get_den());
        out.emplace_back(e.first, std::move(v));
    }
    make_primitive(out);
    return out;
}

bool FractionFreeEchelon::insert(SparseRow<mpz_class> row) {
    while (!row.empty()) {
        const long pi = pivot_of_col_[row.front().first];
        if (pi < 0) break;
        const auto& piv = pivots_[static_cast<std::size_t>(pi)];
        const mpz_class a = piv.front().second;  // pivot lead
        const mpz_class b = row.front().second;  // row lead
        SparseRow<mpz_class> out;
        out.reserve(row.size() + piv.size());
        std::size_t i = 0, k = 0;
        while (i < row.size() || k < piv.size()) {
            if (k == piv.size() || (i < row.size() && row[i].first < piv[k].first)) {
                out.emplace_back(row[i].first, a * row[i].second);
                ++i;
            } else if (i == row.size() || piv[k].first < row[i].first) {
                out.emplace_back(piv[k].first, -b * piv[k].second);
                ++k;
            } else {
                mpz_class v = a * row[i].second - b * piv[k].second;
                if (v != 0) out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++k;
            }
        }
        make_primitive(out);
        row = std::move(out);
    }
    if (row.empty()) return false;
    pivot_of_col_[row.front().first] = static_cast<long>(pivots_.size());
    pivots_.push_back(std::move(row));
    return true;
}

}  // namespace tatesplit

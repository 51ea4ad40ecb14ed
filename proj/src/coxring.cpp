#include "tatesplit/coxring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tatesplit/linalg.hpp"

namespace tatesplit {

namespace {

void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(parts - 1, total - v, cur, out);
        cur.pop_back();
    }
}

std::vector<Term> normalize_terms(std::vector<Term> terms) {
    std::map<ExponentVector, mpq_class> acc;
    for (auto& t : terms) acc[t.exps] += t.coeff;
    std::vector<Term> out;
    for (auto& [e, c] : acc)
        if (sgn(c) != 0) out.push_back({c, e});
    return out;
}

}  // namespace

MultiDegree multidegree_of(const ProductSpace& space, const ExponentVector& e) {
    if (e.size() != static_cast<std::size_t>(space.num_vars()))
        throw InputError("exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                         std::to_string(space.num_vars()));
    MultiDegree d = MultiDegree::zero(space.t());
    for (std::size_t j = 0; j < space.t(); ++j)
        for (int i = 0; i <= space.n(j); ++i) d[j] += e[static_cast<std::size_t>(space.var_offset(j) + i)];
    return d;
}

MultiHomogPoly::MultiHomogPoly(const ProductSpace& space, MultiDegree degree, std::vector<Term> terms)
    : degree_(std::move(degree)) {
    if (degree_.size() != space.t()) throw InputError("polynomial degree has wrong length");
    for (const auto& t : terms) {
        for (int v : t.exps)
            if (v < 0) throw InputError("negative exponent in polynomial term");
        if (multidegree_of(space, t.exps) != degree_)
            throw InputError("term of multidegree " + multidegree_of(space, t.exps).str() +
                             " in polynomial declared of degree " + degree_.str());
    }
    terms_ = normalize_terms(std::move(terms));
    if (!terms_.empty())
        for (std::size_t j = 0; j < degree_.size(); ++j)
            if (degree_[j] < 0) throw InputError("nonzero polynomial of negative degree " + degree_.str());
}

MultiHomogPoly MultiHomogPoly::variable(const ProductSpace& space, std::size_t factor, int index) {
    ExponentVector e(static_cast<std::size_t>(space.num_vars()), 0);
    e[static_cast<std::size_t>(space.var_offset(factor) + index)] = 1;
    return MultiHomogPoly(space, MultiDegree::unit(space.t(), factor), {{1, e}});
}

MultiHomogPoly MultiHomogPoly::constant(const ProductSpace& space, const mpq_class& c) {
    return MultiHomogPoly(space, MultiDegree::zero(space.t()),
                          {{c, ExponentVector(static_cast<std::size_t>(space.num_vars()), 0)}});
}

MultiHomogPoly MultiHomogPoly::operator-() const { return scaled(-1); }

MultiHomogPoly MultiHomogPoly::scaled(const mpq_class& c) const {
    MultiHomogPoly r(degree_);
    if (sgn(c) == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

bool MultiHomogPoly::operator==(const MultiHomogPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    if (!terms_.empty() && degree_ != o.degree_) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

std::string MultiHomogPoly::str(const ProductSpace& space) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        const bool neg = sgn(t.coeff) < 0;
        const mpq_class mag = neg ? mpq_class(-t.coeff) : t.coeff;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        bool any_var = false;
        std::ostringstream vars;
        for (std::size_t j = 0; j < space.t(); ++j)
            for (int i = 0; i <= space.n(j); ++i) {
                const int e = t.exps[static_cast<std::size_t>(space.var_offset(j) + i)];
                if (e == 0) continue;
                vars << (any_var ? "*" : "") << "x" << j + 1 << "_" << i;
                if (e > 1) vars << "^" << e;
                any_var = true;
            }
        if (mag != 1 || !any_var) os << mag.get_str() << (any_var ? "*" : "");
        os << vars.str();
    }
    return os.str();
}

MultiHomogPoly MultiHomogPoly::from_normalized(MultiDegree degree, std::vector<Term> terms) {
    MultiHomogPoly r(std::move(degree));
    r.terms_ = std::move(terms);
    return r;
}

MultiHomogPoly poly_mult(const MultiHomogPoly& f, const MultiHomogPoly& g) {
    MultiDegree deg = f.degree() + g.degree();
    if (f.is_zero() || g.is_zero()) return MultiHomogPoly(deg);
    std::map<ExponentVector, mpq_class> acc;
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) {
            ExponentVector e = a.exps;
            for (std::size_t v = 0; v < e.size(); ++v) e[v] += b.exps[v];
            acc[e] += a.coeff * b.coeff;
        }
    std::vector<Term> terms;
    for (auto& [e, c] : acc)
        if (sgn(c) != 0) terms.push_back({c, e});
    return MultiHomogPoly::from_normalized(std::move(deg), std::move(terms));
}

MultiHomogPoly poly_add(const MultiHomogPoly& f, const MultiHomogPoly& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.degree() != g.degree())
        throw std::invalid_argument("poly_add: degrees " + f.degree().str() + " and " + g.degree().str());
    std::map<ExponentVector, mpq_class> acc;
    for (const auto& t : f.terms()) acc[t.exps] += t.coeff;
    for (const auto& t : g.terms()) acc[t.exps] += t.coeff;
    std::vector<Term> terms;
    for (auto& [e, c] : acc)
        if (sgn(c) != 0) terms.push_back({c, e});
    return MultiHomogPoly::from_normalized(f.degree(), std::move(terms));
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.is_zero(); });
}

PolyMatrix PolyMatrix::zero(const FreeSum& source, const FreeSum& target) {
    PolyMatrix m;
    m.rows = target.rank();
    m.cols = source.rank();
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t s = 0; s < m.cols; ++s) m.entries.emplace_back(target.twists[r] - source.twists[s]);
    return m;
}

LineBundleComplex::LineBundleComplex(ProductSpace space, int p_min, std::vector<FreeSum> terms,
                                     std::vector<PolyMatrix> diffs)
    : space_(std::move(space)), p_min_(p_min), terms_(std::move(terms)), diffs_(std::move(diffs)) {
    if (terms_.empty()) terms_.push_back(FreeSum{});
    for (const auto& s : terms_)
        for (const auto& b : s.twists)
            if (b.size() != space_.t()) throw InputError("summand twist " + b.str() + " has wrong length");
    if (diffs_.size() > terms_.size() - 1)
        throw InputError("more differentials than consecutive term pairs");
    while (diffs_.size() < terms_.size() - 1) {
        const std::size_t k = diffs_.size();
        diffs_.push_back(PolyMatrix::zero(terms_[k], terms_[k + 1]));
    }
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        const auto& d = diffs_[k];
        if (d.rows != terms_[k + 1].rank() || d.cols != terms_[k].rank() || d.entries.size() != d.rows * d.cols)
            throw InputError("differential leaving degree " + std::to_string(p_min_ + static_cast<int>(k)) +
                             " has shape " + std::to_string(d.rows) + "x" + std::to_string(d.cols) +
                             ", expected " + std::to_string(terms_[k + 1].rank()) + "x" +
                             std::to_string(terms_[k].rank()));
    }
}

LineBundleComplex LineBundleComplex::direct_sum(const ProductSpace& space, std::vector<MultiDegree> twists) {
    return LineBundleComplex(space, 0, {FreeSum{std::move(twists)}}, {});
}

const FreeSum& LineBundleComplex::term(int p) const {
    static const FreeSum empty{};
    if (p < p_min() || p > p_max()) return empty;
    return terms_[static_cast<std::size_t>(p - p_min_)];
}

const PolyMatrix& LineBundleComplex::diff(int p) const {
    static const PolyMatrix none{};
    if (p < p_min() || p >= p_max()) return none;
    return diffs_[static_cast<std::size_t>(p - p_min_)];
}

std::vector<MultiDegree> LineBundleComplex::all_twists() const {
    std::vector<MultiDegree> out;
    for (const auto& s : terms_) out.insert(out.end(), s.twists.begin(), s.twists.end());
    return out;
}

bool LineBundleComplex::operator==(const LineBundleComplex& o) const {
    if (!(space_ == o.space_) || p_min_ != o.p_min_ || terms_ != o.terms_ || diffs_.size() != o.diffs_.size())
        return false;
    for (std::size_t k = 0; k < diffs_.size(); ++k)
        if (diffs_[k].entries != o.diffs_[k].entries) return false;
    return true;
}

std::vector<Violation> validate_complex(const LineBundleComplex& c) {
    std::vector<Violation> out;
    const auto& space = c.space();
    for (int p = c.p_min(); p < c.p_max(); ++p) {
        const auto& d = c.diff(p);
        const auto& src = c.term(p);
        const auto& tgt = c.term(p + 1);
        for (std::size_t r = 0; r < d.rows; ++r)
            for (std::size_t s = 0; s < d.cols; ++s) {
                const auto& e = d.at(r, s);
                if (e.is_zero()) continue;
                const MultiDegree want = tgt.twists[r] - src.twists[s];
                if (e.degree() != want) {
                    out.push_back({Violation::Kind::degree_mismatch, p, r, s,
                                   "entry degree " + e.degree().str() + " but target - source = " + want.str()});
                    continue;
                }
                if (!leq(MultiDegree::zero(space.t()), want))
                    out.push_back({Violation::Kind::negative_degree, p, r, s,
                                   "nonzero entry of negative degree " + want.str()});
                for (const auto& t : e.terms())
                    if (multidegree_of(space, t.exps) != e.degree()) {
                        out.push_back({Violation::Kind::term_degree, p, r, s, "inhomogeneous term"});
                        break;
                    }
            }
    }
    // Composition only makes sense once every entry has its declared degree.
    if (!out.empty()) return out;
    // d_{p+1} o d_p = 0, entry (r, s) = sum_k d_{p+1}(r, k) * d_p(k, s).
    for (int p = c.p_min(); p + 1 < c.p_max(); ++p) {
        const auto& d0 = c.diff(p);
        const auto& d1 = c.diff(p + 1);
        const auto& src = c.term(p);
        const auto& tgt = c.term(p + 2);
        for (std::size_t r = 0; r < d1.rows; ++r)
            for (std::size_t s = 0; s < d0.cols; ++s) {
                MultiHomogPoly sum(tgt.twists[r] - src.twists[s]);
                for (std::size_t k = 0; k < d0.rows; ++k) {
                    const auto& f = d1.at(r, k);
                    const auto& g = d0.at(k, s);
                    if (f.is_zero() || g.is_zero()) continue;
                    sum = poly_add(sum, poly_mult(f, g));
                }
                if (!sum.is_zero())
                    out.push_back({Violation::Kind::not_a_complex, p, r, s,
                                   "d^" + std::to_string(p + 1) + " o d^" + std::to_string(p) + " entry = " +
                                       sum.str(space)});
            }
    }
    return out;
}

std::vector<ExponentVector> monomials_of_degree(const ProductSpace& space, const MultiDegree& a) {
    std::vector<ExponentVector> out;
    for (std::size_t j = 0; j < space.t(); ++j)
        if (a[j] < 0) return out;
    out.push_back({});
    for (std::size_t j = 0; j < space.t(); ++j) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(space.n(j) + 1, a[j], cur, comps);
        std::vector<ExponentVector> next;
        next.reserve(out.size() * comps.size());
        for (const auto& prefix : out)
            for (const auto& c : comps) {
                ExponentVector e = prefix;
                e.insert(e.end(), c.begin(), c.end());
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<BasisToken> graded_basis(const ProductSpace& space, const FreeSum& s, const MultiDegree& a) {
    std::vector<BasisToken> out;
    for (std::size_t k = 0; k < s.twists.size(); ++k)
        for (auto& e : monomials_of_degree(space, a + s.twists[k])) out.push_back({k, std::move(e)});
    return out;
}

template <class F>
std::vector<std::vector<typename F::value_type>> mult_matrix(const ProductSpace& space, const MultiHomogPoly& entry,
                                                             const MultiDegree& source_twist,
                                                             const MultiDegree& target_twist, const MultiDegree& a,
                                                             const F& f) {
    if (!entry.is_zero() && entry.degree() != target_twist - source_twist)
        throw InputError("mult_matrix: entry of degree " + entry.degree().str() + " cannot map O" +
                         source_twist.str() + " to O" + target_twist.str());
    const auto src = monomials_of_degree(space, a + source_twist);
    const auto tgt = monomials_of_degree(space, a + target_twist);
    std::vector<std::vector<typename F::value_type>> m(tgt.size(),
                                                       std::vector<typename F::value_type>(src.size(), f.zero()));
    if (entry.is_zero() || src.empty() || tgt.empty()) return m;
    std::map<ExponentVector, std::size_t> row_of;
    for (std::size_t r = 0; r < tgt.size(); ++r) row_of.emplace(tgt[r], r);
    for (std::size_t c = 0; c < src.size(); ++c)
        for (const auto& t : entry.terms()) {
            ExponentVector e = src[c];
            for (std::size_t v = 0; v < e.size(); ++v) e[v] += t.exps[v];
            const std::size_t r = row_of.at(e);
            m[r][c] = f.add(m[r][c], f.from_rational(t.coeff));
        }
    return m;
}

template std::vector<std::vector<ModP::value_type>> mult_matrix<ModP>(const ProductSpace&, const MultiHomogPoly&,
                                                                      const MultiDegree&, const MultiDegree&,
                                                                      const MultiDegree&, const ModP&);
template std::vector<std::vector<Rat::value_type>> mult_matrix<Rat>(const ProductSpace&, const MultiHomogPoly&,
                                                                    const MultiDegree&, const MultiDegree&,
                                                                    const MultiDegree&, const Rat&);

namespace {

template <class F>
std::vector<SyzygyDegree> syzygies_impl(const ProductSpace& space, const PolyMatrix& m, const FreeSum& source,
                                        const FreeSum& target, const Window& window, const F& f) {
    using V = typename F::value_type;
    using Vec = std::vector<V>;
    std::map<MultiDegree, std::vector<Vec>> kernels;  // full kernel per processed degree
    std::vector<SyzygyDegree> out;

    for (const auto& a : window.points()) {
        const auto src_basis = graded_basis(space, source, a);
        const auto tgt_basis = graded_basis(space, target, a);
        const std::size_t ncols = src_basis.size();
        if (ncols == 0) continue;

        // Assemble the block matrix target_a x source_a.
        std::vector<Vec> block(tgt_basis.size(), Vec(ncols, f.zero()));
        std::vector<std::size_t> src_off(source.rank() + 1, 0), tgt_off(target.rank() + 1, 0);
        for (const auto& tok : src_basis) ++src_off[tok.summand + 1];
        for (const auto& tok : tgt_basis) ++tgt_off[tok.summand + 1];
        for (std::size_t k = 0; k < source.rank(); ++k) src_off[k + 1] += src_off[k];
        for (std::size_t k = 0; k < target.rank(); ++k) tgt_off[k + 1] += tgt_off[k];
        for (std::size_t r = 0; r < target.rank(); ++r)
            for (std::size_t s = 0; s < source.rank(); ++s) {
                const auto sub = mult_matrix(space, m.at(r, s), source.twists[s], target.twists[r], a, f);
                for (std::size_t i = 0; i < sub.size(); ++i)
                    for (std::size_t k = 0; k < sub[i].size(); ++k) block[tgt_off[r] + i][src_off[s] + k] = sub[i][k];
            }
        auto kernel = kernel_basis(block, ncols, f);
        if (kernel.empty()) {
            kernels[a] = {};
            continue;
        }

        std::map<BasisToken, std::size_t, bool (*)(const BasisToken&, const BasisToken&)> index_of(
            [](const BasisToken& x, const BasisToken& y) {
                return x.summand != y.summand ? x.summand < y.summand : x.exps < y.exps;
            });
        for (std::size_t c = 0; c < ncols; ++c) index_of.emplace(src_basis[c], c);

        IncrementalEchelon<F> span(ncols, f);
        for (std::size_t j = 0; j < space.t(); ++j) {
            const MultiDegree prev = a - MultiDegree::unit(space.t(), j);
            const auto it = kernels.find(prev);
            if (it == kernels.end() || it->second.empty()) continue;
            const auto prev_basis = graded_basis(space, source, prev);
            for (int i = 0; i <= space.n(j); ++i) {
                const auto var = static_cast<std::size_t>(space.var_offset(j) + i);
                for (const auto& kv : it->second) {
                    SparseRow<V> row;
                    for (std::size_t c = 0; c < kv.size(); ++c) {
                        if (f.is_zero(kv[c])) continue;
                        BasisToken tok = prev_basis[c];
                        ++tok.exps[var];
                        row.emplace_back(static_cast<std::uint32_t>(index_of.at(tok)), kv[c]);
                    }
                    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                    span.insert(std::move(row));
                }
            }
        }

        SyzygyDegree deg{a, {}};
        for (const auto& kv : kernel) {
            SparseRow<V> row;
            for (std::size_t c = 0; c < ncols; ++c)
                if (!f.is_zero(kv[c])) row.emplace_back(static_cast<std::uint32_t>(c), kv[c]);
            if (!span.insert(std::move(row))) continue;
            std::vector<std::vector<Term>> per_summand(source.rank());
            for (std::size_t c = 0; c < ncols; ++c)
                if (!f.is_zero(kv[c])) per_summand[src_basis[c].summand].push_back({f.lift(kv[c]), src_basis[c].exps});
            std::vector<MultiHomogPoly> column;
            for (std::size_t s = 0; s < source.rank(); ++s)
                column.emplace_back(space, a + source.twists[s], std::move(per_summand[s]));
            deg.generators.push_back(std::move(column));
        }
        if (!deg.generators.empty()) out.push_back(std::move(deg));
        kernels[a] = std::move(kernel);
    }
    return out;
}

}  // namespace

std::vector<SyzygyDegree> syzygies_in_window(const ProductSpace& space, const PolyMatrix& m, const FreeSum& source,
                                             const FreeSum& target, const Window& window, const FieldSpec& field) {
    if (m.rows != target.rank() || m.cols != source.rank() || m.entries.size() != m.rows * m.cols)
        throw InputError("syzygies_in_window: matrix shape does not match the free sums");
    if (field.is_prime()) return syzygies_impl(space, m, source, target, window, ModP{field.p});
    return syzygies_impl(space, m, source, target, window, Rat{});
}

}  // namespace tatesplit

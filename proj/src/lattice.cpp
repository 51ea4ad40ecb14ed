#include "tatesplit/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "tatesplit/bott.hpp"

namespace tatesplit {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

void require_same_length(const MultiDegree& a, const MultiDegree& b, const char* what) {
    if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

MultiDegree MultiDegree::unit(std::size_t t, std::size_t j) {
    MultiDegree e = zero(t);
    e[j] = 1;
    return e;
}

long MultiDegree::total() const { return std::accumulate(coords_.begin(), coords_.end(), 0L); }

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
    require_same_length(*this, o, "MultiDegree +");
    MultiDegree r = *this;
    for (std::size_t j = 0; j < size(); ++j) r[j] += o[j];
    return r;
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const {
    require_same_length(*this, o, "MultiDegree -");
    MultiDegree r = *this;
    for (std::size_t j = 0; j < size(); ++j) r[j] -= o[j];
    return r;
}

MultiDegree MultiDegree::operator-() const { return scaled(-1); }

MultiDegree MultiDegree::scaled(int k) const {
    MultiDegree r = *this;
    for (auto& c : r.coords_) c *= k;
    return r;
}

std::string MultiDegree::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t j = 0; j < size(); ++j) os << (j ? "," : "") << coords_[j];
    os << ')';
    return os.str();
}

ProductSpace::ProductSpace(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw InputError("product space needs at least one factor");
    int off = 0;
    for (int n : dims_) {
        if (n < 1) throw InputError("factor dimensions must be >= 1");
        offsets_.push_back(off);
        off += n + 1;
        m_ += n;
    }
}

std::string ProductSpace::str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < dims_.size(); ++j) os << (j ? "x" : "") << "P" << dims_[j];
    return os.str();
}

Polarization::Polarization(MultiDegree d) : d_(std::move(d)) {
    for (std::size_t j = 0; j < d_.size(); ++j)
        if (d_[j] < 1) throw InputError("polarization entries must be >= 1, got " + d_.str());
}

Window::Window(MultiDegree lo, MultiDegree hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw InputError("window bounds have different lengths");
    if (!leq(lo_, hi_)) throw InputError("window is empty: " + lo_.str() + " > " + hi_.str());
}

Window Window::cube(std::size_t t, int lo, int hi) {
    return Window(MultiDegree(std::vector<int>(t, lo)), MultiDegree(std::vector<int>(t, hi)));
}

bool Window::contains(const MultiDegree& a) const {
    return a.size() == lo_.size() && leq(lo_, a) && leq(a, hi_);
}

std::size_t Window::count() const {
    std::size_t c = 1;
    for (std::size_t j = 0; j < t(); ++j) c *= static_cast<std::size_t>(hi_[j] - lo_[j] + 1);
    return c;
}

std::size_t Window::index_of(const MultiDegree& a) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < t(); ++j)
        idx = idx * static_cast<std::size_t>(hi_[j] - lo_[j] + 1) + static_cast<std::size_t>(a[j] - lo_[j]);
    return idx;
}

MultiDegree Window::at(std::size_t index) const {
    MultiDegree a = lo_;
    for (std::size_t j = t(); j-- > 0;) {
        const auto w = static_cast<std::size_t>(hi_[j] - lo_[j] + 1);
        a[j] = lo_[j] + static_cast<int>(index % w);
        index /= w;
    }
    return a;
}

std::vector<MultiDegree> Window::points() const {
    std::vector<MultiDegree> out;
    const std::size_t n = count();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

Window Window::extended_below(int margin) const {
    MultiDegree lo = lo_;
    for (std::size_t j = 0; j < t(); ++j) lo[j] -= margin;
    return Window(lo, hi_);
}

Window Window::intersect(const Window& o) const {
    MultiDegree lo = lo_, hi = hi_;
    for (std::size_t j = 0; j < t(); ++j) {
        lo[j] = std::max(lo_[j], o.lo_[j]);
        hi[j] = std::min(hi_[j], o.hi_[j]);
    }
    return Window(lo, hi);
}

std::string Window::str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < t(); ++j) os << (j ? "," : "") << lo_[j] << ':' << hi_[j];
    return os.str();
}

bool leq(const MultiDegree& a, const MultiDegree& b) {
    require_same_length(a, b, "leq");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

bool lt(const MultiDegree& a, const MultiDegree& b) { return leq(a, b) && a != b; }

MultiDegree canonical_twist(const ProductSpace& space) {
    MultiDegree w = MultiDegree::zero(space.t());
    for (std::size_t j = 0; j < space.t(); ++j) w[j] = -space.n(j) - 1;
    return w;
}

std::int64_t embedding_dimension(const ProductSpace& space, const Polarization& d) {
    std::int64_t h0 = 1;
    for (std::size_t j = 0; j < space.t(); ++j) h0 *= binomial(space.n(j) + d[j], space.n(j));
    return h0 - 1;
}

std::optional<std::pair<int, int>> k_bounding_interval(const ProductSpace& space, const Polarization& d,
                                                       const MultiDegree& a) {
    require_same_length(a, d.d(), "k_bounding_interval");
    int lo = ceil_div(-a[0], d[0]);
    int hi = floor_div(-a[0] - space.n(0) - 1, d[0]);
    for (std::size_t j = 1; j < space.t(); ++j) {
        lo = std::min(lo, ceil_div(-a[j], d[j]));
        hi = std::max(hi, floor_div(-a[j] - space.n(j) - 1, d[j]));
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

std::vector<int> intermediate_k_range(const ProductSpace& space, const Polarization& d,
                                      const MultiDegree& a) {
    std::vector<int> ks;
    const auto box = k_bounding_interval(space, d, a);
    if (!box) return ks;
    for (int k = box->first; k <= box->second; ++k)
        if (signature(space, d.multiple(k) + a).intermediate(space.m())) ks.push_back(k);
    return ks;
}

bool is_safe(const ProductSpace& space, const Polarization& d, const MultiDegree& a) {
    return intermediate_k_range(space, d, a).empty();
}

std::vector<MultiDegree> safe_region(const ProductSpace& space, const Polarization& d, const Window& window,
                                     Exec exec) {
    const auto n = static_cast<long>(window.count());
    std::vector<char> flag(static_cast<std::size_t>(n), 0);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) flag[static_cast<std::size_t>(i)] = is_safe(space, d, window.at(i)) ? 1 : 0;
    } else {
        for (long i = 0; i < n; ++i) flag[static_cast<std::size_t>(i)] = is_safe(space, d, window.at(i)) ? 1 : 0;
    }
    std::vector<MultiDegree> out;
    for (long i = 0; i < n; ++i)
        if (flag[static_cast<std::size_t>(i)]) out.push_back(window.at(static_cast<std::size_t>(i)));
    return out;
}

std::string render_region(const std::vector<MultiDegree>& cells, const Window& window, RenderFormat format,
                          const std::optional<std::vector<int>>& slice) {
    const std::size_t t = window.t();
    if (t > 2 && (!slice || slice->size() != t - 2))
        throw InputError("render_region: t > 2 needs a slice fixing the last " + std::to_string(t - 2) +
                         " coordinates");
    if (t < 1) throw InputError("render_region: empty window");

    auto on_slice = [&](const MultiDegree& a) {
        for (std::size_t j = 2; j < t; ++j)
            if (a[j] != (*slice)[j - 2]) return false;
        return true;
    };
    std::set<std::pair<int, int>> marked;
    for (const auto& a : cells) {
        if (!window.contains(a) || !on_slice(a)) continue;
        marked.emplace(a[0], t > 1 ? a[1] : 0);
    }
    const int x0 = window.lo()[0], x1 = window.hi()[0];
    const int y0 = t > 1 ? window.lo()[1] : 0, y1 = t > 1 ? window.hi()[1] : 0;

    std::vector<std::string> rows;
    for (int y = y1; y >= y0; --y) {
        std::string row;
        for (int x = x0; x <= x1; ++x) row += marked.count({x, y}) ? '#' : '.';
        rows.push_back(row);
    }

    std::ostringstream os;
    switch (format) {
        case RenderFormat::ascii:
            for (const auto& r : rows) os << r << '\n';
            break;
        case RenderFormat::csv:
            os << "a1" << (t > 1 ? ",a2" : "") << ",member\n";
            for (int x = x0; x <= x1; ++x)
                for (int y = y0; y <= y1; ++y) {
                    os << x;
                    if (t > 1) os << ',' << y;
                    os << ',' << (marked.count({x, y}) ? 1 : 0) << '\n';
                }
            break;
        case RenderFormat::json: {
            nlohmann::json j;
            j["window"] = {{"lo", window.lo().coords()}, {"hi", window.hi().coords()}};
            if (slice) j["slice"] = *slice;
            j["rows"] = rows;
            auto members = nlohmann::json::array();
            for (const auto& [x, y] : marked) members.push_back(t > 1 ? nlohmann::json{x, y} : nlohmann::json{x});
            j["cells"] = members;
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

}  // namespace tatesplit

#include "gammalab/index.hpp"

#include <algorithm>
#include <map>

namespace gammalab {

namespace {

// Returns a message for the first violated invariant, or empty when valid.
std::string violation(const std::vector<OrdPair>& pairs, const Instance& inst) {
    if (pairs.empty()) return "index must be nonempty";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        if (!(0 <= a && a < b && b < inst.n))
            return "pair (" + std::to_string(a) + "," + std::to_string(b) +
                   ") violates 0 <= a < b < n";
        if (i > 0 && !inst.s_contains(a))
            return "a = " + std::to_string(a) + " at position " + std::to_string(i) +
                   " is not in s";
        if (i > 0 && pairs[i - 1].a >= a)
            return "a-components not strictly increasing at position " + std::to_string(i);
    }
    return {};
}

}  // namespace

Index Index::make(std::vector<OrdPair> pairs, const Instance& inst) {
    if (auto msg = violation(pairs, inst); !msg.empty())
        throw InvalidIndexError("invalid index: " + msg);
    return Index(std::move(pairs));
}

Index Index::parse(const std::string& text, const Instance& inst) {
    std::vector<OrdPair> pairs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos
                                                                      : semi - pos);
        std::size_t comma = part.find(',');
        if (comma == std::string::npos)
            throw ParseError("bad index pair '" + part + "' in '" + text + "'");
        try {
            std::size_t ua = 0, ub = 0;
            int a = std::stoi(part.substr(0, comma), &ua);
            int b = std::stoi(part.substr(comma + 1), &ub);
            if (ua != comma || ub != part.size() - comma - 1)
                throw std::invalid_argument(part);
            pairs.push_back({a, b});
        } catch (const std::exception&) {
            throw ParseError("bad index pair '" + part + "' in '" + text + "'");
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return make(std::move(pairs), inst);
}

int Index::bmax() const {
    int m = 0;
    for (const auto& p : pairs_) m = std::max(m, p.b);
    return m;
}

std::string Index::str() const {
    std::string out;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(pairs_[i].a) + "," + std::to_string(pairs_[i].b);
    }
    return out;
}

std::strong_ordering Index::operator<=>(const Index& o) const {
    if (auto c = pairs_.size() <=> o.pairs_.size(); c != 0) return c;
    return pairs_ <=> o.pairs_;
}

std::vector<Index> enumerate_y(const Instance& inst) {
    std::vector<std::vector<OrdPair>> out;
    std::vector<OrdPair> cur;
    auto extend = [&](auto&& self) -> void {
        out.push_back(cur);
        int last_a = cur.back().a;
        for (int a : inst.s) {
            if (a <= last_a) continue;
            for (int b = a + 1; b < inst.n; ++b) {
                cur.push_back({a, b});
                self(self);
                cur.pop_back();
            }
        }
    };
    for (int a = 0; a < inst.n; ++a)
        for (int b = a + 1; b < inst.n; ++b) {
            cur = {{a, b}};
            extend(extend);
        }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    std::vector<Index> res;
    res.reserve(out.size());
    for (auto& pairs : out) res.push_back(Index::make(std::move(pairs), inst));
    return res;
}

std::vector<Index> y_slice(const Instance& inst, std::optional<int> lo,
                           std::optional<int> hi) {
    if ((lo && (*lo < 0 || *lo >= inst.n)) || (hi && (*hi < 0 || *hi >= inst.n)))
        throw PreconditionError("y_slice: bounds must lie in [0, n)");
    std::vector<Index> out;
    for (auto& y : enumerate_y(inst)) {
        int a = y.amax();
        if (lo && a < *lo) continue;
        if (hi && a > *hi) continue;
        out.push_back(y);
    }
    return out;
}

std::optional<std::vector<OrdPair>> initial_segment(const Index& nu, const Index& eta) {
    const auto& np = nu.pairs();
    const auto& ep = eta.pairs();
    if (np.size() > ep.size()) return std::nullopt;
    if (!std::equal(np.begin(), np.end(), ep.begin())) return std::nullopt;
    return std::vector<OrdPair>(ep.begin() + static_cast<std::ptrdiff_t>(np.size()),
                                ep.end());
}

Index concat(const Index& eta, std::span<const OrdPair> tail, const Instance& inst) {
    std::vector<OrdPair> pairs = eta.pairs();
    pairs.insert(pairs.end(), tail.begin(), tail.end());
    try {
        return Index::make(std::move(pairs), inst);
    } catch (const InvalidIndexError& e) {
        throw InvalidIndexError(std::string("invalid-append: ") + e.what());
    }
}

YSet::YSet(Instance inst) : inst_(std::move(inst)) {
    inst_.validate();
    elems_ = enumerate_y(inst_);
}

int YSet::find(const Index& idx) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), idx);
    if (it != elems_.end() && *it == idx)
        return static_cast<int>(it - elems_.begin());
    return -1;
}

std::vector<int> YSet::slice(std::optional<int> lo, std::optional<int> hi) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        int a = elems_[static_cast<std::size_t>(i)].amax();
        if (lo && a < *lo) continue;
        if (hi && a > *hi) continue;
        out.push_back(i);
    }
    return out;
}

int YSet::dim_l(int alpha) const {
    return static_cast<int>(slice(alpha, std::nullopt).size());
}

}  // namespace gammalab

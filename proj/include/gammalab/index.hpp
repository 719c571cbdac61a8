#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammalab/instance.hpp"

namespace gammalab {

struct OrdPair {
    int a = 0;
    int b = 0;
    auto operator<=>(const OrdPair&) const = default;
};

// An element of the index set Y: a nonempty sequence of pairs (a_i, b_i) with
//   a_i < b_i < n,  a_i strictly increasing,  a_i in s for every i > 0.
class Index {
public:
    // Validates the invariants against inst; throws InvalidIndexError.
    static Index make(std::vector<OrdPair> pairs, const Instance& inst);

    // Textual form "a0,b0;a1,b1;...".
    static Index parse(const std::string& text, const Instance& inst);

    const std::vector<OrdPair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    const OrdPair& back() const { return pairs_.back(); }

    int amax() const { return pairs_.back().a; }
    int bmax() const;

    std::string str() const;

    bool operator==(const Index&) const = default;

    // Canonical order: by pair count, then lexicographically on the flat list.
    std::strong_ordering operator<=>(const Index& o) const;

private:
    explicit Index(std::vector<OrdPair> pairs) : pairs_(std::move(pairs)) {}
    std::vector<OrdPair> pairs_;
};

// Every valid Index, exactly once, in canonical order. This order fixes the
// coordinate system of L for the whole run.
std::vector<Index> enumerate_y(const Instance& inst);

// Subsequence of enumerate_y with lo <= amax (<= hi when given).
std::vector<Index> y_slice(const Instance& inst, std::optional<int> lo,
                           std::optional<int> hi);

// Tail tau with eta = nu ^ tau when nu is an initial segment of eta, else nullopt.
std::optional<std::vector<OrdPair>> initial_segment(const Index& nu, const Index& eta);

// eta ^ tau, validated; throws InvalidIndexError naming the violated invariant.
Index concat(const Index& eta, std::span<const OrdPair> tail, const Instance& inst);

// The enumerated index set with positional lookup; the shared coordinate
// system for all matrix-level computations on an instance.
class YSet {
public:
    explicit YSet(Instance inst);

    const Instance& instance() const { return inst_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const Index& at(int i) const { return elems_[static_cast<std::size_t>(i)]; }
    const std::vector<Index>& elems() const { return elems_; }

    // Position in canonical order, or -1 when absent.
    int find(const Index& idx) const;

    // Positions with lo <= amax (<= hi when given).
    std::vector<int> slice(std::optional<int> lo, std::optional<int> hi) const;

    // dim L_alpha = |Y_{>= alpha}|.
    int dim_l(int alpha) const;

private:
    Instance inst_;
    std::vector<Index> elems_;
};

}  // namespace gammalab

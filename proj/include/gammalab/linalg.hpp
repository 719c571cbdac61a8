#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gammalab/common.hpp"
#include "gammalab/scalar.hpp"

namespace gammalab {

template <class F>
using Vec = std::vector<typename F::Elem>;

// Dense row-major matrix over an exact field. Module vectors are rows and
// operators act on the right (v -> v*M), matching the right-module convention.
template <class F>
struct Mat {
    using Elem = typename F::Elem;

    F field;
    int rows = 0;
    int cols = 0;
    std::vector<Elem> a;

    Mat(F f, int r, int c) : field(f), rows(r), cols(c), a(std::size_t(r) * c, f.zero()) {}

    Elem& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const Elem& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    Vec<F> row(int i) const {
        return Vec<F>(a.begin() + std::ptrdiff_t(i) * cols,
                      a.begin() + std::ptrdiff_t(i + 1) * cols);
    }
    void set_row(int i, const Vec<F>& v) {
        for (int j = 0; j < cols; ++j) at(i, j) = v[std::size_t(j)];
    }

    static Mat identity(F f, int n) {
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    static Mat from_rows(F f, const std::vector<Vec<F>>& rows, int ncols) {
        Mat m(f, static_cast<int>(rows.size()), ncols);
        for (int i = 0; i < m.rows; ++i) m.set_row(i, rows[std::size_t(i)]);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!field.is_zero(x)) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    // The matrix as one long row vector; used for spans of operators.
    Vec<F> flatten() const { return a; }
};

template <class F>
Mat<F> mul(const Mat<F>& A, const Mat<F>& B) {
    if (A.cols != B.rows) throw PreconditionError("mul: dimension mismatch");
    Mat<F> C(A.field, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const auto& x = A.at(i, k);
            if (A.field.is_zero(x)) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = A.field.add(C.at(i, j), A.field.mul(x, B.at(k, j)));
        }
    return C;
}

template <class F>
Mat<F> add(const Mat<F>& A, const Mat<F>& B) {
    if (A.rows != B.rows || A.cols != B.cols)
        throw PreconditionError("add: dimension mismatch");
    Mat<F> C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.field.add(C.a[i], B.a[i]);
    return C;
}

template <class F>
Mat<F> scale(const Mat<F>& A, const typename F::Elem& c) {
    Mat<F> C = A;
    for (auto& x : C.a) x = A.field.mul(x, c);
    return C;
}

namespace detail {

// In-place reduced row echelon form; companion rows in `track` (when present)
// receive the same row operations. Returns pivot columns per surviving row.
template <class F>
std::vector<int> rref_in_place(F field, std::vector<Vec<F>>& rows,
                               std::vector<Vec<F>>* track = nullptr) {
    std::vector<int> pivots;
    std::size_t r = 0;
    int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && field.is_zero(rows[sel][std::size_t(c)])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        if (track) std::swap((*track)[r], (*track)[sel]);
        auto inv = field.inv(rows[r][std::size_t(c)]);
        for (auto& x : rows[r]) x = field.mul(x, inv);
        if (track)
            for (auto& x : (*track)[r]) x = field.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            auto f = rows[i][std::size_t(c)];
            if (field.is_zero(f)) continue;
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[r][j]));
            if (track)
                for (std::size_t j = 0; j < (*track)[i].size(); ++j)
                    (*track)[i][j] = field.sub((*track)[i][j], field.mul(f, (*track)[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

// Incrementally grown echelon basis (pivot-normalized, not back-reduced).
// Used by the fixpoint computations; canonicalize with to_subspace().
template <class F>
class EchelonBasis {
public:
    EchelonBasis(F field, int ambient) : field_(field), ambient_(ambient) {}

    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return ambient_; }

    // Remainder of v after reduction by the stored rows.
    Vec<F> reduce(Vec<F> v) const {
        for (const auto& [piv, row] : rows_) {
            const auto c = v[std::size_t(piv)];
            if (field_.is_zero(c)) continue;
            for (int j = piv; j < ambient_; ++j)
                v[std::size_t(j)] = field_.sub(v[std::size_t(j)],
                                               field_.mul(c, row[std::size_t(j)]));
        }
        return v;
    }

    bool contains(const Vec<F>& v) const {
        Vec<F> r = reduce(v);
        for (const auto& x : r)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    // Returns true when v was independent and the basis grew.
    bool insert(const Vec<F>& v) {
        Vec<F> r = reduce(v);
        int piv = -1;
        for (int j = 0; j < ambient_; ++j)
            if (!field_.is_zero(r[std::size_t(j)])) { piv = j; break; }
        if (piv < 0) return false;
        auto inv = field_.inv(r[std::size_t(piv)]);
        for (auto& x : r) x = field_.mul(x, inv);
        rows_.emplace(piv, std::move(r));
        return true;
    }

    std::vector<Vec<F>> row_list() const {
        std::vector<Vec<F>> out;
        for (const auto& [piv, row] : rows_) out.push_back(row);
        return out;
    }

private:
    F field_;
    int ambient_;
    std::map<int, Vec<F>> rows_;
};

// A subspace held as its reduced-row-echelon basis: rows nonzero, pivot
// columns strictly increasing, pivots 1. Equal subspaces compare equal.
template <class F>
class Subspace {
public:
    Subspace(F field, int ambient) : basis_(field, 0, ambient) {}

    static Subspace from_rref_rows(F field, std::vector<Vec<F>> rows, int ambient) {
        Subspace s(field, ambient);
        s.basis_ = Mat<F>::from_rows(field, rows, ambient);
        return s;
    }

    int dim() const { return basis_.rows; }
    int ambient() const { return basis_.cols; }
    const Mat<F>& basis() const { return basis_; }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    Mat<F> basis_;
};

template <class F>
Subspace<F> rref(const Mat<F>& m) {
    std::vector<Vec<F>> rows;
    rows.reserve(std::size_t(m.rows));
    for (int i = 0; i < m.rows; ++i) rows.push_back(m.row(i));
    auto pivots = detail::rref_in_place(m.field, rows);
    rows.resize(pivots.size());
    return Subspace<F>::from_rref_rows(m.field, std::move(rows), m.cols);
}

template <class F>
Subspace<F> rref(F field, const std::vector<Vec<F>>& rows, int ambient) {
    return rref(Mat<F>::from_rows(field, rows, ambient));
}

// Reduce v against the basis; the remainder is zero exactly for members.
template <class F>
bool member(const Vec<F>& v, const Subspace<F>& s) {
    if (static_cast<int>(v.size()) != s.ambient())
        throw PreconditionError("member: dimension mismatch");
    F field = s.basis().field;
    Vec<F> w = v;
    for (int i = 0; i < s.dim(); ++i) {
        int piv = -1;
        for (int j = 0; j < s.ambient(); ++j)
            if (!field.is_zero(s.basis().at(i, j))) { piv = j; break; }
        const auto& c = w[std::size_t(piv)];
        if (field.is_zero(c)) continue;
        auto f = c;
        for (int j = piv; j < s.ambient(); ++j)
            w[std::size_t(j)] = field.sub(w[std::size_t(j)], field.mul(f, s.basis().at(i, j)));
    }
    for (const auto& x : w)
        if (!field.is_zero(x)) return false;
    return true;
}

template <class F>
Subspace<F> sum(const Subspace<F>& s1, const Subspace<F>& s2) {
    if (s1.ambient() != s2.ambient())
        throw PreconditionError("sum: ambient dimension mismatch");
    std::vector<Vec<F>> rows;
    for (int i = 0; i < s1.dim(); ++i) rows.push_back(s1.basis().row(i));
    for (int i = 0; i < s2.dim(); ++i) rows.push_back(s2.basis().row(i));
    return rref(s1.basis().field, rows, s1.ambient());
}

// Left kernel {x : x*M = 0}, rows of the result spanning it.
template <class F>
Subspace<F> kernel(const Mat<F>& m) {
    F field = m.field;
    std::vector<Vec<F>> rows, track;
    for (int i = 0; i < m.rows; ++i) {
        rows.push_back(m.row(i));
        Vec<F> e(std::size_t(m.rows), field.zero());
        e[std::size_t(i)] = field.one();
        track.push_back(std::move(e));
    }
    auto pivots = detail::rref_in_place(field, rows, &track);
    std::vector<Vec<F>> ker;
    for (std::size_t i = pivots.size(); i < rows.size(); ++i)
        ker.push_back(track[i]);
    return rref(field, ker, m.rows);
}

// Right kernel of the row space: {x : r . x = 0 for every basis row r},
// built from the free columns of the reduced basis.
template <class F>
Subspace<F> null_space(const Subspace<F>& rowspace) {
    F field = rowspace.basis().field;
    int n = rowspace.ambient();
    std::vector<int> pivots;
    for (int i = 0; i < rowspace.dim(); ++i)
        for (int j = 0; j < n; ++j)
            if (!field.is_zero(rowspace.basis().at(i, j))) { pivots.push_back(j); break; }
    std::vector<bool> is_pivot(std::size_t(n), false);
    for (int p : pivots) is_pivot[std::size_t(p)] = true;
    std::vector<Vec<F>> rows;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[std::size_t(f)]) continue;
        Vec<F> v(std::size_t(n), field.zero());
        v[std::size_t(f)] = field.one();
        for (int i = 0; i < rowspace.dim(); ++i)
            v[std::size_t(pivots[std::size_t(i)])] = field.neg(rowspace.basis().at(i, f));
        rows.push_back(std::move(v));
    }
    return rref(field, rows, n);
}

// Intersection via the kernel of the stacked system [B1; -B2].
template <class F>
Subspace<F> intersect(const Subspace<F>& s1, const Subspace<F>& s2) {
    if (s1.ambient() != s2.ambient())
        throw PreconditionError("intersect: ambient dimension mismatch");
    F field = s1.basis().field;
    if (s1.dim() == 0 || s2.dim() == 0) return Subspace<F>(field, s1.ambient());
    Mat<F> stacked(field, s1.dim() + s2.dim(), s1.ambient());
    for (int i = 0; i < s1.dim(); ++i) stacked.set_row(i, s1.basis().row(i));
    for (int i = 0; i < s2.dim(); ++i) {
        auto r = s2.basis().row(i);
        for (auto& x : r) x = field.neg(x);
        stacked.set_row(s1.dim() + i, r);
    }
    Subspace<F> ker = kernel(stacked);
    std::vector<Vec<F>> vecs;
    for (int k = 0; k < ker.dim(); ++k) {
        Vec<F> v(std::size_t(s1.ambient()), field.zero());
        for (int i = 0; i < s1.dim(); ++i) {
            const auto& c = ker.basis().at(k, i);
            if (field.is_zero(c)) continue;
            for (int j = 0; j < s1.ambient(); ++j)
                v[std::size_t(j)] = field.add(v[std::size_t(j)],
                                              field.mul(c, s1.basis().at(i, j)));
        }
        vecs.push_back(std::move(v));
    }
    return rref(field, vecs, s1.ambient());
}

// One solution of x*A = b, or nullopt when inconsistent.
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& A, const Vec<F>& b) {
    if (static_cast<int>(b.size()) != A.cols)
        throw PreconditionError("solve: dimension mismatch");
    F field = A.field;
    std::vector<Vec<F>> rows, track;
    for (int i = 0; i < A.rows; ++i) {
        rows.push_back(A.row(i));
        Vec<F> e(std::size_t(A.rows), field.zero());
        e[std::size_t(i)] = field.one();
        track.push_back(std::move(e));
    }
    detail::rref_in_place(field, rows, &track);
    Vec<F> w = b;
    Vec<F> x(std::size_t(A.rows), field.zero());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int piv = -1;
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (!field.is_zero(rows[i][j])) { piv = static_cast<int>(j); break; }
        if (piv < 0) continue;
        const auto c = w[std::size_t(piv)];
        if (field.is_zero(c)) continue;
        for (std::size_t j = 0; j < w.size(); ++j)
            w[j] = field.sub(w[j], field.mul(c, rows[i][j]));
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = field.add(x[j], field.mul(c, track[i][j]));
    }
    for (const auto& v : w)
        if (!field.is_zero(v)) return std::nullopt;
    return x;
}

}  // namespace gammalab

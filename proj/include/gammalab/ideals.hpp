#pragma once

#include "gammalab/lattice.hpp"

namespace gammalab {

// A subspace of the realized algebra; when `closed` is set it has been
// verified stable under left and right multiplication by every generator.
template <class F>
struct IdealSubspace {
    Subspace<F> span;  // vectorized matrices
    bool closed = false;
};

template <class F>
struct IdealComputation {
    IdealSubspace<F> by_image;       // {r in algebra : Im r <= L_alpha}
    IdealSubspace<F> by_generators;  // two-sided ideal of the high generators
    bool agree = false;              // the two routes produced the same span
};

namespace detail {

// Span-closure under two-sided multiplication by all generators.
template <class F>
Subspace<F> two_sided_span(F field, const std::vector<Mat<F>>& seeds, const YSet& y,
                           const std::vector<IndexMap>& maps) {
    int n = y.size();
    EchelonBasis<F> span(field, n * n);
    std::vector<Mat<F>> work;
    auto offer = [&](Mat<F> m) {
        if (span.insert(m.flatten())) work.push_back(std::move(m));
    };
    for (const Mat<F>& s : seeds) offer(s);
    while (!work.empty()) {
        Mat<F> b = std::move(work.back());
        work.pop_back();
        for (const IndexMap& m : maps) {
            offer(left_mul(m, b));
            offer(right_mul(b, m));
        }
    }
    return rref(field, span.row_list(), n * n);
}

}  // namespace detail

// The ideal I_alpha, both as {r : Im r <= L_alpha} inside the realized
// algebra and as the two-sided ideal generated by the T with amax(rho) >=
// alpha; the two routes are compared, not assumed equal.
template <class F>
IdealComputation<F> ideal_I(const YSet& y, const std::vector<IndexMap>& maps,
                            const AlgebraBasis<F>& algebra, int alpha, F field) {
    const Instance& inst = y.instance();
    if (!(0 < alpha && alpha < inst.n))
        throw PreconditionError("ideal_I: need 0 < alpha < n");
    int n = y.size();

    // Route 1: cut the algebra span by the column conditions of L_alpha.
    std::vector<int> bad;  // columns indexed outside Y_{>= alpha}
    for (int j = 0; j < n; ++j)
        if (y.at(j).amax() < alpha) bad.push_back(j);
    std::vector<Vec<F>> constraint_rows;
    for (const Mat<F>& b : algebra.mats) {
        Vec<F> row;
        row.reserve(std::size_t(n) * bad.size());
        for (int i = 0; i < n; ++i)
            for (int j : bad) row.push_back(b.at(i, j));
        constraint_rows.push_back(std::move(row));
    }
    Subspace<F> combos = kernel(Mat<F>::from_rows(
        field, constraint_rows, n * static_cast<int>(bad.size())));
    std::vector<Vec<F>> members;
    for (int k = 0; k < combos.dim(); ++k) {
        Vec<F> v(std::size_t(n) * n, field.zero());
        for (std::size_t b = 0; b < algebra.mats.size(); ++b) {
            const auto& c = combos.basis().at(k, static_cast<int>(b));
            if (field.is_zero(c)) continue;
            const auto flat = algebra.mats[b].flatten();
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = field.add(v[j], field.mul(c, flat[j]));
        }
        members.push_back(std::move(v));
    }
    IdealSubspace<F> by_image{rref(field, members, n * n), false};

    // Route 2: the two-sided ideal generated by the high generators.
    std::vector<Mat<F>> seeds;
    for (const GeneratorSymbol& t : enumerate_generators(inst))
        if (t.rho.amax() >= alpha) seeds.push_back(generator_matrix(t, y, field));
    IdealSubspace<F> by_gens{detail::two_sided_span(field, seeds, y, maps), true};

    bool agree = by_image.span == by_gens.span;
    by_image.closed = agree;  // equality transfers the closure property
    return IdealComputation<F>{std::move(by_image), std::move(by_gens), agree};
}

// Membership of a single matrix in I_alpha needs no span: the image lies in
// L_alpha exactly when every column outside Y_{>= alpha} vanishes.
template <class F>
bool image_in_L(const Mat<F>& m, const YSet& y, int alpha) {
    for (int j = 0; j < y.size(); ++j) {
        if (y.at(j).amax() >= alpha) continue;
        for (int i = 0; i < m.rows; ++i)
            if (!m.field.is_zero(m.at(i, j))) return false;
    }
    return true;
}

template <class F>
struct TwoSidedClosure {
    IdealSubspace<F> ideal;
    bool contains_generator = false;
    std::optional<GeneratorSymbol> witness;
    // r * T = 0 for every generator T: the argument that pushes a generator
    // into RrR multiplies r on the right by a symbol whose amax exceeds the
    // bmax of some rho of r, and at the truncation boundary no such symbol
    // is left. Elements in this degenerate class can have generator-free RrR.
    bool right_annihilated = false;
};

// RrR for r given in canonical form; reports whether the closure swallowed a
// generator (the finite counterpart of the cofinality step in the ideal
// lattice).
template <class F>
TwoSidedClosure<F> two_sided_closure(const YSet& y, const std::vector<IndexMap>& maps,
                                     const CanonicalForm<F>& r, F field) {
    Mat<F> m = realize(r, y, field);
    if (m.is_zero()) throw PreconditionError("two_sided_closure: r realizes to zero");
    TwoSidedClosure<F> out{{detail::two_sided_span(field, {m}, y, maps), true}, false, {},
                           true};
    for (const IndexMap& im : maps)
        if (!detail::right_mul(m, im).is_zero()) {
            out.right_annihilated = false;
            break;
        }
    for (const GeneratorSymbol& t : enumerate_generators(y.instance())) {
        if (member(generator_matrix(t, y, field).flatten(), out.ideal.span)) {
            out.contains_generator = true;
            out.witness = t;
            break;
        }
    }
    return out;
}

struct NoncomplementStep {
    bool truncation_exhausted = false;
    int gamma = -1;
    std::string s_symbol;
    bool s_in_lower = false;   // s in I_alpha
    bool s_out_upper = false;  // s not in I_beta
    bool product_zero = false; // s * r = 0
    bool ok() const { return s_in_lower && s_out_upper && product_zero; }
};

// The executable core of the ideal-lattice non-complement argument: choose
// gamma in (alpha, n) so that no pair (alpha, gamma) occurs in any leading nu
// of r, then s = T_{<(0,1)> -> <(alpha,gamma)>} satisfies s in I_alpha minus
// I_beta and s r = 0. When every gamma below n is mentioned, the truncation
// is exhausted and the step is reported as such rather than failed.
template <class F>
NoncomplementStep ideal_noncomplement_step(const YSet& y, int alpha, int beta,
                                           const CanonicalForm<F>& r, F field) {
    const Instance& inst = y.instance();
    if (!(0 < alpha && alpha < beta && beta < inst.n))
        throw PreconditionError("ideal_noncomplement_step: need 0 < alpha < beta < n");
    if (r.is_zero(field) || ideal_level(r, y, field) < alpha)
        throw PreconditionError("ideal_noncomplement_step: r must be nonzero in I_alpha");

    std::vector<bool> mentioned(std::size_t(inst.n), false);
    for (const auto& [prod, coeff] : r.terms)
        for (const OrdPair& p : prod.factors.front().nu.pairs())
            if (p.a == alpha) mentioned[std::size_t(p.b)] = true;
    NoncomplementStep step;
    for (int g = alpha + 1; g < inst.n; ++g)
        if (!mentioned[std::size_t(g)]) { step.gamma = g; break; }
    if (step.gamma < 0) {
        step.truncation_exhausted = true;
        return step;
    }
    GeneratorSymbol s = GeneratorSymbol::make(Index::make({{0, 1}}, inst),
                                              Index::make({{alpha, step.gamma}}, inst));
    step.s_symbol = s.str();
    Mat<F> ms = generator_matrix(s, y, field);
    step.s_in_lower = image_in_L(ms, y, alpha);
    step.s_out_upper = !image_in_L(ms, y, beta);
    step.product_zero = mul(ms, realize(r, y, field)).is_zero();
    return step;
}

}  // namespace gammalab

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gammalab/rewrite.hpp"

namespace gammalab {

// An R-invariant subspace of L: closed under every generator map.
template <class F>
struct Submodule {
    Subspace<F> space;
};

// Least generator-closed subspace containing the given vectors, by image
// saturation to a fixpoint.
template <class F>
Submodule<F> closure(F field, const std::vector<Vec<F>>& vectors, const YSet& y,
                     const std::vector<IndexMap>& maps) {
    EchelonBasis<F> basis(field, y.size());
    std::vector<Vec<F>> work;
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != y.size())
            throw PreconditionError("closure: vector dimension mismatch");
        if (basis.insert(v)) work.push_back(v);
    }
    while (!work.empty()) {
        Vec<F> v = std::move(work.back());
        work.pop_back();
        for (const IndexMap& m : maps) {
            Vec<F> w = apply_map(field, v, m);
            if (basis.insert(w)) work.push_back(std::move(w));
        }
    }
    return Submodule<F>{rref(field, basis.row_list(), y.size())};
}

template <class F>
bool generator_closed(F field, const Subspace<F>& s, const YSet&,
                      const std::vector<IndexMap>& maps) {
    for (const IndexMap& m : maps)
        for (int i = 0; i < s.dim(); ++i)
            if (!member(apply_map(field, s.basis().row(i), m), s)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Complementedness certificates.

template <class F>
struct ComplementReport {
    int gamma = 0, alpha = 0, beta = 0;
    bool complemented = false;
    // Positive certificate payload: the witness X with L_alpha cap X = L_beta
    // and L_alpha + X = L_gamma, generator-closed.
    std::optional<Subspace<F>> witness;
    // Negative certificate payload: the facts driving the contradiction for
    // T = T_{<(gamma,gamma+1)> -> <(alpha,alpha+1)>}: (i) T pushes L_alpha
    // into L_{alpha+1}; (ii) T sends x_{<(gamma,gamma+1)>} onto the gap
    // element x_{<(alpha,alpha+1)>}.
    bool maps_into_next = false;
    bool hits_gap = false;
    bool oracle_confirmed = false;
};

// alpha in s: the witness X = L_{alpha beta} cap L_gamma verifies directly.
template <class F>
ComplementReport<F> check_complement_positive(const YSet& y,
                                              const std::vector<IndexMap>& maps,
                                              int gamma, int alpha, int beta, F field) {
    const Instance& inst = y.instance();
    if (!(gamma < alpha && alpha < beta && beta < inst.n))
        throw PreconditionError("complement: need gamma < alpha < beta < n");
    if (!inst.s_contains(alpha))
        throw PreconditionError("positive certificate needs alpha in s");
    if (y.dim_l(beta) < 1)
        throw PreconditionError("positive certificate needs dim L_beta >= 1");
    if (y.dim_l(alpha) == y.dim_l(gamma))
        throw PreconditionError("positive certificate needs L_alpha != L_gamma");

    Subspace<F> la = subspace_L(y, alpha, field);
    Subspace<F> lb = subspace_L(y, beta, field);
    Subspace<F> lg = subspace_L(y, gamma, field);
    Subspace<F> x = intersect(subspace_Lab(y, alpha, beta, field), lg);
    bool meet_ok = intersect(la, x) == lb;
    bool join_ok = sum(la, x) == lg;
    bool closed = generator_closed(field, x, y, maps);
    if (!(meet_ok && join_ok && closed))
        throw CertificateError("positive complement certificate failed at (" +
                               std::to_string(gamma) + "," + std::to_string(alpha) + "," +
                               std::to_string(beta) + ")");
    ComplementReport<F> rep;
    rep.gamma = gamma;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.complemented = true;
    rep.witness = std::move(x);
    return rep;
}

// alpha not in s: machine-checks the two facts behind the contradiction. Any
// X with L_alpha + X = L_gamma and L_alpha cap X = L_beta <= L_{alpha+1}
// would force x*T into L_alpha minus L_{alpha+1} with x*T in L_beta.
template <class F>
ComplementReport<F> check_complement_negative(const YSet& y, int gamma, int alpha,
                                              int beta, F) {
    const Instance& inst = y.instance();
    if (!(gamma < alpha && alpha < beta && beta < inst.n))
        throw PreconditionError("complement: need gamma < alpha < beta < n");
    if (inst.s_contains(alpha))
        throw PreconditionError("negative certificate needs alpha not in s");
    if (y.dim_l(beta) < 1)
        throw PreconditionError("negative certificate needs L_beta != 0");

    Index nu = Index::make({{gamma, gamma + 1}}, inst);
    Index rho = Index::make({{alpha, alpha + 1}}, inst);
    GeneratorSymbol t = GeneratorSymbol::make(nu, rho);

    bool maps_into_next = true;
    for (int i : y.slice(alpha, std::nullopt)) {
        auto img = apply_generator(t, y.at(i), inst);
        if (img && img->amax() < alpha + 1) maps_into_next = false;
    }
    auto img = apply_generator(t, nu, inst);
    bool hits_gap = img && *img == rho && img->amax() == alpha;
    if (!(maps_into_next && hits_gap))
        throw CertificateError("negative complement certificate failed at (" +
                               std::to_string(gamma) + "," + std::to_string(alpha) + "," +
                               std::to_string(beta) + ")");
    ComplementReport<F> rep;
    rep.gamma = gamma;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.complemented = false;
    rep.maps_into_next = maps_into_next;
    rep.hits_gap = hits_gap;
    return rep;
}

// Re-checks a report's payload from scratch; reports are only trusted when
// this verifier accepts them.
template <class F>
bool verify_complement_report(const ComplementReport<F>& rep, const YSet& y,
                              const std::vector<IndexMap>& maps, F field) {
    if (rep.complemented) {
        if (!rep.witness) return false;
        const Subspace<F>& x = *rep.witness;
        return intersect(subspace_L(y, rep.alpha, field), x) ==
                   subspace_L(y, rep.beta, field) &&
               sum(subspace_L(y, rep.alpha, field), x) ==
                   subspace_L(y, rep.gamma, field) &&
               generator_closed(field, x, y, maps);
    }
    try {
        ComplementReport<F> again =
            check_complement_negative(y, rep.gamma, rep.alpha, rep.beta, field);
        return again.maps_into_next && again.hits_gap;
    } catch (const Error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Finite Gamma-profile.

struct GammaProfile {
    int gamma0 = 0;
    std::vector<int> e_set;       // alpha with a certified non-complement
    std::vector<int> valid_range; // alpha in (gamma0, n) admitting a valid beta
};

template <class F>
struct GammaProfileResult {
    GammaProfile profile;
    std::vector<ComplementReport<F>> certificates;
};

// For each alpha in (gamma, n) with some beta (alpha < beta, L_beta != 0):
// alpha lands in the E-set exactly when alpha is outside s, each side
// established by its certificate over every valid beta. The chain top
// alpha = gamma is excluded: the top is complemented over anything.
template <class F>
GammaProfileResult<F> gamma_profile(const YSet& y, const std::vector<IndexMap>& maps,
                                    int gamma, F field) {
    const Instance& inst = y.instance();
    if (y.dim_l(gamma) == 0)
        throw PreconditionError("gamma_profile: L_gamma must be nonzero");
    GammaProfileResult<F> out;
    out.profile.gamma0 = gamma;
    for (int alpha = gamma + 1; alpha < inst.n; ++alpha) {
        std::vector<int> betas;
        for (int beta = alpha + 1; beta < inst.n; ++beta)
            if (y.dim_l(beta) >= 1) betas.push_back(beta);
        if (betas.empty()) continue;
        out.profile.valid_range.push_back(alpha);
        for (int beta : betas) {
            ComplementReport<F> rep =
                inst.s_contains(alpha)
                    ? check_complement_positive(y, maps, gamma, alpha, beta, field)
                    : check_complement_negative(y, gamma, alpha, beta, field);
            out.certificates.push_back(std::move(rep));
        }
        if (!inst.s_contains(alpha)) out.profile.e_set.push_back(alpha);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rigidity: dimension of the commutant of the generator restrictions on
// L_alpha, computed by two structurally different methods that must agree.

namespace detail {

// Generator maps restricted to the coordinate subspace L_alpha.
inline std::vector<IndexMap> restricted_maps(const YSet& y,
                                             const std::vector<IndexMap>& maps,
                                             int alpha) {
    std::vector<int> keep = y.slice(alpha, std::nullopt);
    std::vector<int> col_of(std::size_t(y.size()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        col_of[std::size_t(keep[i])] = static_cast<int>(i);
    std::vector<IndexMap> out;
    for (const IndexMap& m : maps) {
        IndexMap r;
        r.img.reserve(keep.size());
        for (int g : keep) {
            int j = m.img[std::size_t(g)];
            r.img.push_back(j >= 0 ? col_of[std::size_t(j)] : -1);
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Rows of the commutation constraints (E M - M E = 0) for one restricted map,
// as linear functionals on vec(E).
template <class F>
void commutation_rows(F field, const IndexMap& m, int d,
                      const std::function<void(const Vec<F>&)>& emit) {
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec<F> row(std::size_t(d) * d, field.zero());
            bool nonzero = false;
            for (int k = 0; k < d; ++k)
                if (m.img[std::size_t(k)] == j) {
                    row[std::size_t(i) * d + k] = field.add(row[std::size_t(i) * d + k],
                                                            field.one());
                    nonzero = true;
                }
            int gi = m.img[std::size_t(i)];
            if (gi >= 0) {
                row[std::size_t(gi) * d + j] =
                    field.sub(row[std::size_t(gi) * d + j], field.one());
                nonzero = true;
            }
            if (nonzero) emit(row);
        }
}

}  // namespace detail

template <class F>
int centralizer_dim(const YSet& y, const std::vector<IndexMap>& maps, int alpha,
                    F field) {
    int d = y.dim_l(alpha);
    if (d == 0) throw PreconditionError("centralizer_dim: L_alpha must be nonzero");
    std::vector<IndexMap> rmaps = detail::restricted_maps(y, maps, alpha);

    // Method A: intersect the solution space generator by generator.
    std::vector<Vec<F>> sol;
    for (int i = 0; i < d * d; ++i) {
        Vec<F> e(std::size_t(d) * d, field.zero());
        e[std::size_t(i)] = field.one();
        sol.push_back(std::move(e));
    }
    for (const IndexMap& m : rmaps) {
        std::vector<Vec<F>> residuals;
        for (const auto& b : sol) {
            // residual of the basis element under this generator's constraints
            Vec<F> r(std::size_t(d) * d, field.zero());
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) {
                    const auto& x = b[std::size_t(i) * d + k];
                    if (field.is_zero(x)) continue;
                    int gk = m.img[std::size_t(k)];
                    if (gk >= 0)  // (E M)[i][gk] += E[i][k]
                        r[std::size_t(i) * d + gk] =
                            field.add(r[std::size_t(i) * d + gk], x);
                }
            for (int i = 0; i < d; ++i) {
                int gi = m.img[std::size_t(i)];
                if (gi < 0) continue;
                for (int j = 0; j < d; ++j) {  // (M E)[i][j] = E[gi][j]
                    const auto& x = b[std::size_t(gi) * d + j];
                    if (!field.is_zero(x))
                        r[std::size_t(i) * d + j] = field.sub(r[std::size_t(i) * d + j], x);
                }
            }
            residuals.push_back(std::move(r));
        }
        Subspace<F> combos = kernel(Mat<F>::from_rows(field, residuals, d * d));
        std::vector<Vec<F>> next;
        for (int k = 0; k < combos.dim(); ++k) {
            Vec<F> v(std::size_t(d) * d, field.zero());
            for (std::size_t b = 0; b < sol.size(); ++b) {
                const auto& c = combos.basis().at(k, static_cast<int>(b));
                if (field.is_zero(c)) continue;
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] = field.add(v[j], field.mul(c, sol[b][j]));
            }
            next.push_back(std::move(v));
        }
        sol = std::move(next);
        if (sol.empty()) break;
    }
    int dim_a = static_cast<int>(rref(field, sol, d * d).dim());

    // Method B: one stacked system; accumulate the constraint row space, then
    // take its null space.
    EchelonBasis<F> rowspace(field, d * d);
    for (const IndexMap& m : rmaps)
        detail::commutation_rows<F>(field, m, d,
                                    [&](const Vec<F>& row) { rowspace.insert(row); });
    Subspace<F> rs = rref(field, rowspace.row_list(), d * d);
    int dim_b = null_space(rs).dim();

    if (dim_a != dim_b)
        throw InternalError("centralizer_dim: methods disagree (" + std::to_string(dim_a) +
                            " vs " + std::to_string(dim_b) + ")");
    return dim_a;
}

// ---------------------------------------------------------------------------
// Cofinality step: from any nonzero x, a support index nu that is maximal
// (not a proper initial segment of other support indices) reaches every
// basis vector of L_{bmax(nu)} inside the cyclic submodule of x.

struct CofinalityReport {
    std::string nu;
    int alpha = 0;
    int checked = 0;
};

template <class F>
CofinalityReport cofinality_check(F field, const Vec<F>& x, const YSet& y,
                                  const std::vector<IndexMap>& maps) {
    std::vector<int> support;
    for (int i = 0; i < y.size(); ++i)
        if (!field.is_zero(x[std::size_t(i)])) support.push_back(i);
    if (support.empty()) throw PreconditionError("cofinality_check: zero vector");
    int chosen = -1;
    for (int i : support) {
        bool maximal = true;
        for (int j : support)
            if (i != j && initial_segment(y.at(i), y.at(j))) maximal = false;
        if (maximal) { chosen = i; break; }
    }
    if (chosen < 0) throw InternalError("cofinality_check: no maximal support index");
    const Index& nu = y.at(chosen);
    int alpha = nu.bmax();
    Submodule<F> cyc = closure(field, {x}, y, maps);
    int checked = 0;
    for (int i : y.slice(alpha, std::nullopt)) {
        Vec<F> e(std::size_t(y.size()), field.zero());
        e[std::size_t(i)] = field.one();
        if (!member(e, cyc.space))
            throw CertificateError("cofinality_check: x_" + y.at(i).str() +
                                   " not reached from support index " + nu.str());
        ++checked;
    }
    return CofinalityReport{nu.str(), alpha, checked};
}

// ---------------------------------------------------------------------------
// The realized algebra: basis of the span of all words in the generators
// (with 1), by multiplicative span-closure to a fixpoint.

template <class F>
struct AlgebraBasis {
    std::vector<Mat<F>> mats;  // independent spanning elements; mats[0] = identity
    Subspace<F> span;          // the same span, canonicalized over matrix space
};

namespace detail {

template <class F>
Mat<F> right_mul(const Mat<F>& a, const IndexMap& m) {
    Mat<F> out(a.field, a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const auto& x = a.at(i, k);
            if (a.field.is_zero(x)) continue;
            int j = m.img[std::size_t(k)];
            if (j >= 0) out.at(i, j) = a.field.add(out.at(i, j), x);
        }
    return out;
}

template <class F>
Mat<F> left_mul(const IndexMap& m, const Mat<F>& a) {
    Mat<F> out(a.field, a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i) {
        int j = m.img[std::size_t(i)];
        if (j < 0) continue;
        for (int k = 0; k < a.cols; ++k) out.at(i, k) = a.at(j, k);
    }
    return out;
}

}  // namespace detail

template <class F>
AlgebraBasis<F> algebra_basis(const YSet& y, const std::vector<IndexMap>& maps,
                              F field) {
    int n = y.size();
    AlgebraBasis<F> out{{}, Subspace<F>(field, n * n)};
    EchelonBasis<F> span(field, n * n);
    std::vector<Mat<F>> work;
    auto offer = [&](Mat<F> m) {
        if (span.insert(m.flatten())) {
            work.push_back(m);
            out.mats.push_back(std::move(m));
        }
    };
    offer(Mat<F>::identity(field, n));
    for (const IndexMap& m : maps) {
        Mat<F> g(field, n, n);
        for (int i = 0; i < n; ++i)
            if (m.img[std::size_t(i)] >= 0) g.at(i, m.img[std::size_t(i)]) = field.one();
        offer(std::move(g));
    }
    while (!work.empty()) {
        Mat<F> b = std::move(work.back());
        work.pop_back();
        for (const IndexMap& m : maps) {
            offer(detail::left_mul(m, b));
            offer(detail::right_mul(b, m));
        }
    }
    out.span = rref(field, span.row_list(), n * n);
    return out;
}

// True when A X A = A has a solution X in the algebra span.
template <class F>
bool pseudo_inverse_exists(const AlgebraBasis<F>& algebra, const Mat<F>& a, F field) {
    if (a.is_zero()) return true;  // any X works
    std::vector<Vec<F>> rows;
    for (const Mat<F>& b : algebra.mats) rows.push_back(mul(mul(a, b), a).flatten());
    Mat<F> system = Mat<F>::from_rows(field, rows, a.rows * a.cols);
    return solve(system, a.flatten()).has_value();
}

// ---------------------------------------------------------------------------
// Distributivity refutation: the three cyclic-plus-tail submodules over
// L_{alpha+2} form an M3-style configuration, so the identity
// A cap (B + C) = (A cap B) + (A cap C) fails.

struct DistributivityReport {
    int alpha = 0, beta1 = 0, beta2 = 0;
    bool refuted = false;
    int lhs_dim = 0, rhs_dim = 0;
};

template <class F>
DistributivityReport distributivity_refutation(const YSet& y,
                                               const std::vector<IndexMap>& maps,
                                               int alpha, int beta1, int beta2, F field) {
    const Instance& inst = y.instance();
    if (alpha + 2 >= inst.n)
        throw PreconditionError("distributivity_refutation: need alpha + 2 < n");
    if (!(alpha + 1 < beta1 && beta1 < inst.n && alpha + 1 < beta2 && beta2 < inst.n &&
          beta1 != beta2))
        throw PreconditionError(
            "distributivity_refutation: need two distinct beta in (alpha+1, n)");
    auto phi = [&](int beta) {
        return y.find(Index::make({{alpha + 1, beta}}, inst));
    };
    int i1 = phi(beta1), i2 = phi(beta2);
    if (i1 < 0 || i2 < 0) throw InternalError("distributivity_refutation: phi missing");
    Vec<F> v1(std::size_t(y.size()), field.zero());
    v1[std::size_t(i1)] = field.one();
    Vec<F> v2(std::size_t(y.size()), field.zero());
    v2[std::size_t(i2)] = field.one();
    Vec<F> v12 = v1;
    v12[std::size_t(i2)] = field.one();

    Subspace<F> l2 = subspace_L(y, alpha + 2, field);
    auto build = [&](const Vec<F>& v) {
        return sum(closure(field, {v}, y, maps).space, l2);
    };
    Subspace<F> a = build(v1), b = build(v2), c = build(v12);
    Subspace<F> lhs = intersect(a, sum(b, c));
    Subspace<F> rhs = sum(intersect(a, b), intersect(a, c));
    DistributivityReport rep;
    rep.alpha = alpha;
    rep.beta1 = beta1;
    rep.beta2 = beta2;
    rep.lhs_dim = lhs.dim();
    rep.rhs_dim = rhs.dim();
    rep.refuted = !(lhs == rhs);
    return rep;
}

}  // namespace gammalab

#pragma once

#include <map>
#include <string>
#include <vector>

#include "gammalab/operators.hpp"

namespace gammalab {

// A product of generators in which no adjacent pair merges: for consecutive
// factors, nu_{i+1} extends rho_i by a nonempty tail, so the amax values
// strictly increase along the product.
struct IrredundantProduct {
    std::vector<GeneratorSymbol> factors;

    const GeneratorSymbol& last() const { return factors.back(); }
    std::string str() const;

    bool operator==(const IrredundantProduct&) const = default;
    auto operator<=>(const IrredundantProduct&) const = default;
};

// r = unit * 1 + sum of coeff * irredundant product, no zero coefficients,
// term keys pairwise distinct.
template <class F>
struct CanonicalForm {
    typename F::Elem unit;
    std::map<IrredundantProduct, typename F::Elem> terms;

    explicit CanonicalForm(F field) : unit(field.zero()) {}

    bool is_zero(F field) const { return field.is_zero(unit) && terms.empty(); }

    std::string str(F field) const {
        std::string out;
        if (!field.is_zero(unit)) out = field.str(unit);
        for (const auto& [prod, c] : terms) {
            if (!out.empty()) out += " + ";
            if (!(c == field.one())) out += field.str(c) + "*";
            out += prod.str();
        }
        return out.empty() ? "0" : out;
    }
};

// Parsed operator expression: a formal sum of integer-weighted products.
// Grammar: expr := term ('+' term)* ; term := coeff | coeff '*' prod | prod ;
// prod := gen ('*' gen)* ; gen := 'T[' index '->' index ']' ;
// index := pair (';' pair)* ; pair := nat ',' nat ; coeff := integer.
struct Expression {
    struct Term {
        long long coeff = 1;
        std::vector<GeneratorSymbol> factors;  // empty = the unit
    };
    std::vector<Term> terms;

    static Expression parse(const std::string& text, const Instance& inst);
};

enum class RuleKind { kZero, kMerge, kIrredundant };  // rules (I), (II), (III)

// Which product rule governs the adjacent pair (t1, t2).
RuleKind rule_kind(const GeneratorSymbol& t1, const GeneratorSymbol& t2);

// Rule (II) merge of an adjacent pair with rho_1 = nu_2 ^ tau: the single
// symbol T_{nu_1, rho_2 ^ tau'}, where tau' is empty when amax(rho_1) <=
// amax(rho_2) and otherwise the final segment of tau above amax(rho_2).
GeneratorSymbol merge_pair(const GeneratorSymbol& t1, const GeneratorSymbol& t2,
                           const Instance& inst);

// The product rules (I)-(III) applied to one pair. Rule (III) is returned in
// expanded form: one single-factor term per admissible infix sigma. Every
// emitted symbol must be admissible; a violation throws InternalError (at
// wide-gap parameter sets rule (III) can genuinely emit an inadmissible
// symbol, which this implementation treats as out of contract).
template <class F>
CanonicalForm<F> compose_pair(const GeneratorSymbol& t1, const GeneratorSymbol& t2,
                              const YSet& y, F field);

// Canonical form of an expression: adjacent factors merged by rule (II) until
// none applies (leftmost first), products killed by rule (I) dropped,
// rule-(III) adjacencies kept unexpanded, like terms collected.
template <class F>
CanonicalForm<F> normalize(const Expression& e, const YSet& y, F field);

// Evaluation into the endomorphism algebra: unit * I + sum of coefficient
// times the product of the generator matrices. This is the ground-truth side
// of every rewrite check; it never consults the symbolic rules.
template <class F>
Mat<F> realize(const CanonicalForm<F>& c, const YSet& y, F field);
template <class F>
Mat<F> realize(const Expression& e, const YSet& y, F field);

// 0 when the unit coefficient is nonzero; n for the zero form; otherwise the
// least amax(rho) over the last factors of the terms. The form lies in the
// ideal I_alpha exactly when its level is >= alpha.
template <class F>
int ideal_level(const CanonicalForm<F>& c, const YSet& y, F field) {
    if (!field.is_zero(c.unit)) return 0;
    int level = y.instance().n;
    for (const auto& [prod, coeff] : c.terms)
        level = std::min(level, prod.last().rho.amax());
    return level;
}

// --- implementation ---

template <class F>
CanonicalForm<F> compose_pair(const GeneratorSymbol& t1, const GeneratorSymbol& t2,
                              const YSet& y, F field) {
    CanonicalForm<F> out(field);
    const Instance& inst = y.instance();
    switch (rule_kind(t1, t2)) {
        case RuleKind::kZero:
            return out;
        case RuleKind::kMerge: {
            IrredundantProduct prod{{merge_pair(t1, t2, inst)}};
            out.terms.emplace(std::move(prod), field.one());
            return out;
        }
        case RuleKind::kIrredundant: {
            auto tail = initial_segment(t1.rho, t2.nu);
            std::vector<std::vector<OrdPair>> sigmas{{}};
            for (const Index& sig : y.elems())
                if (sig.amax() <= t1.rho.amax() && sig.pairs().front().a > t1.nu.amax())
                    sigmas.push_back(sig.pairs());
            for (const auto& sig : sigmas) {
                std::vector<OrdPair> mid = sig;
                mid.insert(mid.end(), tail->begin(), tail->end());
                Index cand{t1.nu};
                try {
                    cand = concat(t1.nu, mid, inst);
                } catch (const InvalidIndexError&) {
                    continue;  // sigma not insertable here
                }
                if (cand.bmax() > t2.rho.amax())
                    throw InternalError("rule (III) emitted inadmissible symbol " +
                                        GeneratorSymbol::format(cand, t2.rho) +
                                        " for " + t1.str() + " * " + t2.str());
                IrredundantProduct prod{{GeneratorSymbol{cand, t2.rho}}};
                out.terms.emplace(std::move(prod), field.one());
            }
            return out;
        }
    }
    throw InternalError("unreachable");
}

template <class F>
CanonicalForm<F> normalize(const Expression& e, const YSet& y, F field) {
    const Instance& inst = y.instance();
    CanonicalForm<F> out(field);
    for (const Expression::Term& term : e.terms) {
        auto coeff = field.from_int(term.coeff);
        if (term.factors.empty()) {
            out.unit = field.add(out.unit, coeff);
            continue;
        }
        std::vector<GeneratorSymbol> f = term.factors;
        bool killed = false;
        std::size_t i = 0;
        while (i + 1 < f.size()) {
            switch (rule_kind(f[i], f[i + 1])) {
                case RuleKind::kZero:
                    killed = true;
                    i = f.size();
                    break;
                case RuleKind::kMerge:
                    f[i] = merge_pair(f[i], f[i + 1], inst);
                    f.erase(f.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                    if (i > 0) --i;
                    break;
                case RuleKind::kIrredundant:
                    ++i;
                    break;
            }
        }
        if (killed) continue;
        IrredundantProduct prod{std::move(f)};
        auto [it, fresh] = out.terms.emplace(std::move(prod), coeff);
        if (!fresh) it->second = field.add(it->second, coeff);
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = field.is_zero(it->second) ? out.terms.erase(it) : std::next(it);
    return out;
}

template <class F>
Mat<F> realize(const CanonicalForm<F>& c, const YSet& y, F field) {
    Mat<F> out = scale(Mat<F>::identity(field, y.size()), c.unit);
    for (const auto& [prod, coeff] : c.terms) {
        Mat<F> m = generator_matrix(prod.factors.front(), y, field);
        for (std::size_t i = 1; i < prod.factors.size(); ++i)
            m = mul(m, generator_matrix(prod.factors[i], y, field));
        out = add(out, scale(m, coeff));
    }
    return out;
}

template <class F>
Mat<F> realize(const Expression& e, const YSet& y, F field) {
    Mat<F> out(field, y.size(), y.size());
    for (const Expression::Term& term : e.terms) {
        Mat<F> m = Mat<F>::identity(field, y.size());
        for (const GeneratorSymbol& t : term.factors)
            m = mul(m, generator_matrix(t, y, field));
        out = add(out, scale(m, field.from_int(term.coeff)));
    }
    return out;
}

}  // namespace gammalab

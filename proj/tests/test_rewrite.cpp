#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gammalab/random_forms.hpp"
#include "gammalab/rewrite.hpp"

using namespace gammalab;

namespace {

Instance n4() { return Instance::make(4, {0, 2}, 5); }
Instance n5() { return Instance::make(5, {0, 2}, 5); }

GeneratorSymbol g(const std::string& s, const Instance& inst) {
    return GeneratorSymbol::parse(s, inst);
}

}  // namespace

TEST_CASE("expression grammar") {
    Instance inst = n5();
    Expression e = Expression::parse(" 1 ", inst);
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].coeff == 1);
    CHECK(e.terms[0].factors.empty());

    e = Expression::parse("T[0,1->2,3]", inst);
    CHECK(e.terms[0].factors.size() == 1);

    e = Expression::parse("4*T[0,1->2,3] + 2 + T[0,1->1,2]*T[1,2->2,3]", inst);
    REQUIRE(e.terms.size() == 3);
    CHECK(e.terms[0].coeff == 4);
    CHECK(e.terms[2].factors.size() == 2);

    e = Expression::parse("-3 * T[ 0,1 -> 2,3 ]", inst);
    CHECK(e.terms[0].coeff == -3);

    CHECK_THROWS_AS(Expression::parse("", inst), ParseError);
    CHECK_THROWS_AS(Expression::parse("T[0,1->2,3]*", inst), ParseError);
    CHECK_THROWS_AS(Expression::parse("2**T[0,1->2,3]", inst), ParseError);
    CHECK_THROWS_AS(Expression::parse("T[0,1=>2,3]", inst), ParseError);
    CHECK_THROWS_AS(Expression::parse("banana", inst), ParseError);
}

TEST_CASE("compose_pair worked examples at n=5") {
    Instance inst = n5();
    YSet y(inst);
    Fp f(5);

    // rule (I): neither side extends the other
    auto zero = compose_pair(g("T[0,1->1,2]", inst), g("T[0,2->2,3]", inst), y, f);
    CHECK(zero.is_zero(f));

    // rule (II) with empty tail
    auto m1 = compose_pair(g("T[0,1->0,2;2,4]", inst), g("T[0,2->2,3]", inst), y, f);
    CHECK(m1.str(f) == "T[0,1->2,3]");

    // rule (II) keeping the high part of the tail
    auto m2 = compose_pair(g("T[0,1->0,1;2,4]", inst), g("T[0,1->1,3]", inst), y, f);
    CHECK(m2.str(f) == "T[0,1->1,3;2,4]");

    // rule (III); the infix set is just {empty} here
    auto m3 = compose_pair(g("T[0,1->1,2]", inst), g("T[1,2;2,3->3,4]", inst), y, f);
    CHECK(m3.str(f) == "T[0,1;2,3->3,4]");
}

TEST_CASE("compose_pair equals matrix composition on every pair (n=4, n=5)") {
    for (const Instance& inst : {n4(), n5()}) {
        YSet y(inst);
        Fp f(inst.prime);
        auto gens = enumerate_generators(inst);
        int rule3 = 0;
        for (const GeneratorSymbol& t1 : gens)
            for (const GeneratorSymbol& t2 : gens) {
                if (rule_kind(t1, t2) == RuleKind::kIrredundant) ++rule3;
                Mat<Fp> lhs = realize(compose_pair(t1, t2, y, f), y, f);
                Mat<Fp> rhs = mul(generator_matrix(t1, y, f), generator_matrix(t2, y, f));
                REQUIRE(lhs == rhs);
            }
        // rule (III) only appears from n=5 on at this parameter set
        CHECK(rule3 == (inst.n == 4 ? 0 : 2));
    }
}

TEST_CASE("normalize worked examples") {
    Instance inst = n5();
    YSet y(inst);
    Fp f(5);
    auto norm = [&](const std::string& s) {
        return normalize(Expression::parse(s, inst), y, f).str(f);
    };
    CHECK(norm("1") == "1");
    CHECK(norm("T[0,1->2,3]") == "T[0,1->2,3]");
    CHECK(norm("T[0,1->0,2;2,4]*T[0,2->2,3]") == "T[0,1->2,3]");
    CHECK(norm("T[0,1->2,3] + 4*T[0,1->2,3]") == "0");
    CHECK(norm("2 + 1 + T[0,1->1,2]*T[0,2->2,3]") == "3");  // product dies by rule (I)
    CHECK(norm("7") == "2");
    CHECK(norm("-1") == "4");
}

TEST_CASE("normalize output is canonical and sound") {
    Instance inst = n5();
    YSet y(inst);
    Fp f(5);
    auto gens = enumerate_generators(inst);
    Rng rng(2024);
    for (int t = 0; t < 300; ++t) {
        Expression e;
        int terms = 1 + static_cast<int>(rng.below(3));
        for (int k = 0; k < terms; ++k)
            e.terms.push_back({rng.between(-4, 4), random_product(rng, gens, 4)});
        CanonicalForm<Fp> c = normalize(e, y, f);
        // invariants: no zero coefficients, factors pairwise in rule-(III) shape
        for (const auto& [prod, coeff] : c.terms) {
            CHECK(coeff != 0);
            for (std::size_t i = 0; i + 1 < prod.factors.size(); ++i) {
                CHECK(rule_kind(prod.factors[i], prod.factors[i + 1]) ==
                      RuleKind::kIrredundant);
                CHECK(prod.factors[i].rho.amax() < prod.factors[i + 1].nu.amax());
            }
        }
        // soundness against the matrix route
        CHECK(realize(c, y, f) == realize(e, y, f));
        // stability: normalizing a canonical form changes nothing
        Expression back;
        for (const auto& [prod, coeff] : c.terms)
            back.terms.push_back({(long long)coeff, prod.factors});
        if (c.unit) back.terms.push_back({(long long)c.unit, {}});
        CanonicalForm<Fp> again = normalize(back, y, f);
        CHECK(again.terms == c.terms);
        CHECK(again.unit == c.unit);
    }
}

TEST_CASE("canonical equality implies matrix equality (separation)") {
    Instance inst = n5();
    YSet y(inst);
    Fp f(5);
    auto gens = enumerate_generators(inst);
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        auto p1 = random_product(rng, gens, 3);
        auto p2 = random_product(rng, gens, 3);
        Expression e1, e2;
        e1.terms.push_back({1, p1});
        e2.terms.push_back({1, p2});
        CanonicalForm<Fp> c1 = normalize(e1, y, f);
        CanonicalForm<Fp> c2 = normalize(e2, y, f);
        if (c1.terms == c2.terms && c1.unit == c2.unit)
            CHECK(realize(c1, y, f) == realize(c2, y, f));
    }
}

TEST_CASE("ideal_level") {
    Instance inst = n4();
    YSet y(inst);
    Fp f(5);
    auto lvl = [&](const std::string& s) {
        return ideal_level(normalize(Expression::parse(s, inst), y, f), y, f);
    };
    CHECK(lvl("1") == 0);
    CHECK(lvl("3 + T[0,1->2,3]") == 0);
    CHECK(lvl("T[0,1->2,3] + 4*T[0,1->2,3]") == 4);  // the zero form
    CHECK(lvl("T[0,1->2,3]") == 2);
    CHECK(lvl("T[0,1->1,2] + T[0,1->2,3]") == 1);
}

TEST_CASE("rule (III) can emit an inadmissible symbol at wide-gap parameters") {
    // At n=6 with s = {0,2,3} the product below genuinely contains the
    // component T[0,1;2,5;3,4 -> 4,5], whose nu has bmax 5 > amax(rho) = 4.
    // The engine refuses to emit it; the matrix route remains the authority.
    Instance inst = Instance::make(6, {0, 2, 3}, 5);
    YSet y(inst);
    Fp f(5);
    GeneratorSymbol t1 = g("T[0,1->2,3]", inst);
    GeneratorSymbol t2 = g("T[2,3;3,4->4,5]", inst);
    CHECK(rule_kind(t1, t2) == RuleKind::kIrredundant);
    CHECK_THROWS_AS(compose_pair(t1, t2, y, f), InternalError);
}

TEST_CASE("random canonical forms satisfy the type invariants") {
    Instance inst = n5();
    YSet y(inst);
    Fp f(5);
    auto gens = enumerate_generators(inst);
    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        CanonicalForm<Fp> c = random_canonical_form(rng, y, gens, f, true);
        for (const auto& [prod, coeff] : c.terms) {
            CHECK(coeff != 0);
            for (std::size_t i = 0; i + 1 < prod.factors.size(); ++i)
                CHECK(rule_kind(prod.factors[i], prod.factors[i + 1]) ==
                      RuleKind::kIrredundant);
        }
    }
}

TEST_CASE("rewrite over the rationals") {
    Instance inst = Instance::make(5, {0, 2}, 0);
    YSet y(inst);
    Rat q;
    auto c = normalize(Expression::parse("T[0,1->0,2;2,4]*T[0,2->2,3] + 2", inst), y, q);
    CHECK(c.str(q) == "2 + T[0,1->2,3]");
    CHECK(realize(c, y, q) ==
          realize(Expression::parse("2 + T[0,1->0,2;2,4]*T[0,2->2,3]", inst), y, q));
}

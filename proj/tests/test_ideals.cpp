#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gammalab/ideals.hpp"
#include "gammalab/random_forms.hpp"

using namespace gammalab;

namespace {

Instance n5() { return Instance::make(5, {0, 2}, 5); }
Instance n6() { return Instance::make(6, {0, 2, 4}, 5); }

}  // namespace

TEST_CASE("ideal dimensions at n=5, both routes (frozen)") {
    YSet y(n5());
    Fp f(5);
    auto maps = generator_maps(y);
    AlgebraBasis<Fp> algebra = algebra_basis(y, maps, f);
    const int expected[] = {62, 59, 11, 0};
    for (int alpha = 1; alpha <= 4; ++alpha) {
        IdealComputation<Fp> comp = ideal_I(y, maps, algebra, alpha, f);
        CHECK(comp.agree);
        CHECK(comp.by_image.span.dim() == expected[alpha - 1]);
        CHECK(comp.by_generators.span.dim() == expected[alpha - 1]);
    }
    CHECK_THROWS_AS(ideal_I(y, maps, algebra, 0, f), PreconditionError);
    CHECK_THROWS_AS(ideal_I(y, maps, algebra, 5, f), PreconditionError);
}

TEST_CASE("I_3 at n=4 is the annihilator and it is zero") {
    // L_3 = 0 there, so I_3 = {r : realize(r) = 0}; no generator has
    // amax(rho) >= 3, so the generated route is zero too.
    Instance inst = Instance::make(4, {0, 2}, 5);
    YSet y(inst);
    Fp f(5);
    auto maps = generator_maps(y);
    AlgebraBasis<Fp> algebra = algebra_basis(y, maps, f);
    IdealComputation<Fp> comp = ideal_I(y, maps, algebra, 3, f);
    CHECK(comp.agree);
    CHECK(comp.by_image.span.dim() == 0);
    CHECK(comp.by_generators.span.dim() == 0);
}

TEST_CASE("non-complement step worked example: r = T[0,1->1,3] at n=6") {
    YSet y(n6());
    Fp f(5);
    CanonicalForm<Fp> r(f);
    r.terms.emplace(
        IrredundantProduct{{GeneratorSymbol::parse("T[0,1->1,3]", y.instance())}},
        f.one());
    NoncomplementStep step = ideal_noncomplement_step(y, 1, 2, r, f);
    CHECK_FALSE(step.truncation_exhausted);
    CHECK(step.gamma == 2);  // nu = <(0,1)> mentions no (1,gamma) pair
    CHECK(step.s_symbol == "T[0,1->1,2]");
    CHECK(step.ok());
}

TEST_CASE("identity never lies in a proper ideal") {
    YSet y(n5());
    Fp f(5);
    Mat<Fp> id = Mat<Fp>::identity(f, y.size());
    for (int alpha = 1; alpha <= 2; ++alpha) CHECK_FALSE(image_in_L(id, y, alpha));
}

TEST_CASE("chain witnesses at n=6: T[0,1->a,a+1] in I_a minus I_{a+1}") {
    YSet y(n6());
    Fp f(5);
    for (int alpha = 1; alpha <= 4; ++alpha) {
        GeneratorSymbol t = GeneratorSymbol::make(
            Index::make({{0, 1}}, y.instance()),
            Index::make({{alpha, alpha + 1}}, y.instance()));
        Mat<Fp> m = generator_matrix(t, y, f);
        CHECK(image_in_L(m, y, alpha));
        CHECK_FALSE(image_in_L(m, y, alpha + 1));
    }
}

TEST_CASE("ideal membership: level criterion vs image containment") {
    YSet y(n5());
    Fp f(5);
    auto gens = enumerate_generators(y.instance());
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
        CanonicalForm<Fp> c = random_canonical_form(rng, y, gens, f, true);
        int level = ideal_level(c, y, f);
        Mat<Fp> m = realize(c, y, f);
        for (int alpha = 0; alpha <= y.instance().n; ++alpha)
            CHECK((level >= alpha) == image_in_L(m, y, alpha));
    }
}

TEST_CASE("two-sided closure contains a generator (random and edge cases)") {
    YSet y(n5());
    Fp f(5);
    auto maps = generator_maps(y);
    auto gens = enumerate_generators(y.instance());

    // r = 1: the closure is the whole algebra, any generator qualifies
    CanonicalForm<Fp> one(f);
    one.unit = f.one();
    TwoSidedClosure<Fp> cl1 = two_sided_closure(y, maps, one, f);
    CHECK(cl1.contains_generator);
    CHECK(cl1.ideal.span.dim() == 63);  // the whole realized algebra

    // r = a single generator: contains itself
    CanonicalForm<Fp> g(f);
    g.terms.emplace(IrredundantProduct{{gens.front()}}, f.one());
    TwoSidedClosure<Fp> cl2 = two_sided_closure(y, maps, g, f);
    CHECK(cl2.contains_generator);

    CanonicalForm<Fp> zero(f);
    CHECK_THROWS_AS(two_sided_closure(y, maps, zero, f), PreconditionError);

    Rng rng(6);
    for (int t = 0; t < 40; ++t) {
        CanonicalForm<Fp> r(f);
        for (;;) {
            r = random_canonical_form(rng, y, gens, f, true);
            if (!realize(r, y, f).is_zero()) break;
        }
        TwoSidedClosure<Fp> cl = two_sided_closure(y, maps, r, f);
        // a miss is only legitimate on the truncation boundary
        if (!cl.contains_generator) CHECK(cl.right_annihilated);
    }
}

TEST_CASE("generator-free RrR happens exactly on the boundary class") {
    // r = T[0,1->3,4] + T[0,1->1,4;2,3]: both rhos have bmax = n-1, so every
    // right product dies and RrR = span of the T*r images, none a generator.
    Instance inst = n5();
    YSet y(inst);
    Fp f(5);
    auto maps = generator_maps(y);
    CanonicalForm<Fp> r(f);
    r.terms.emplace(
        IrredundantProduct{{GeneratorSymbol::parse("T[0,1->3,4]", inst)}}, f.one());
    r.terms.emplace(
        IrredundantProduct{{GeneratorSymbol::parse("T[0,1->1,4;2,3]", inst)}}, f.one());
    TwoSidedClosure<Fp> cl = two_sided_closure(y, maps, r, f);
    CHECK(cl.right_annihilated);
    CHECK_FALSE(cl.contains_generator);
    CHECK(cl.ideal.span.dim() == 3);  // r and its two other cone translates
}

TEST_CASE("two-sided closures are two-sided submodules of the algebra") {
    YSet y(n5());
    Fp f(5);
    auto maps = generator_maps(y);
    auto gens = enumerate_generators(y.instance());
    Rng rng(13);
    CanonicalForm<Fp> r = random_canonical_form(rng, y, gens, f, false);
    TwoSidedClosure<Fp> cl = two_sided_closure(y, maps, r, f);
    // stability under a random generator on either side
    for (int t = 0; t < 10; ++t) {
        const GeneratorSymbol& g = gens[rng.below(gens.size())];
        Mat<Fp> gm = generator_matrix(g, y, f);
        for (int i = 0; i < cl.ideal.span.dim() && i < 5; ++i) {
            Vec<Fp> row = cl.ideal.span.basis().row(i);
            Mat<Fp> b(f, y.size(), y.size());
            b.a = row;
            CHECK(member(mul(b, gm).flatten(), cl.ideal.span));
            CHECK(member(mul(gm, b).flatten(), cl.ideal.span));
        }
    }
}

TEST_CASE("non-complement step at n=6, (alpha, beta) = (1, 2)") {
    YSet y(n6());
    Fp f(5);
    auto gens = enumerate_generators(y.instance());
    Rng rng(123);
    int verified = 0, skipped = 0;
    for (int t = 0; t < 25; ++t) {
        CanonicalForm<Fp> r(f);
        do {
            r = random_canonical_form(rng, y, gens, f, false);
        } while (r.terms.empty());
        NoncomplementStep step = ideal_noncomplement_step(y, 1, 2, r, f);
        if (step.truncation_exhausted) {
            ++skipped;
            continue;
        }
        CHECK(step.s_in_lower);
        CHECK(step.s_out_upper);
        CHECK(step.product_zero);
        ++verified;
    }
    CHECK(verified + skipped == 25);
    CHECK(verified > 0);
}

TEST_CASE("non-complement step rejects bad inputs") {
    YSet y(n6());
    Fp f(5);
    CanonicalForm<Fp> zero(f);
    CHECK_THROWS_AS(ideal_noncomplement_step(y, 1, 2, zero, f), PreconditionError);
    CanonicalForm<Fp> unit(f);
    unit.unit = f.one();  // level 0 < alpha
    CHECK_THROWS_AS(ideal_noncomplement_step(y, 1, 2, unit, f), PreconditionError);
    CHECK_THROWS_AS(ideal_noncomplement_step(y, 2, 1, unit, f), PreconditionError);
}

TEST_CASE("gamma = n-1 is always admissible, so exhaustion cannot trigger") {
    // A pair (alpha, n-1) inside any nu would force bmax(nu) = n-1 and hence
    // an admissible rho with amax >= n-1, which cannot exist. So r can
    // mention every gamma except n-1, and the step still goes through.
    Instance inst = n6();
    YSet y(inst);
    Fp f(5);
    CanonicalForm<Fp> r(f);
    for (int b = 2; b <= 4; ++b) {
        Index nu = Index::make({{1, b}}, inst);
        Index rho = Index::make({{b, b + 1}}, inst);
        r.terms.emplace(IrredundantProduct{{GeneratorSymbol::make(nu, rho)}}, f.one());
    }
    NoncomplementStep step = ideal_noncomplement_step(y, 1, 2, r, f);
    CHECK_FALSE(step.truncation_exhausted);
    CHECK(step.gamma == 5);
    CHECK(step.ok());
}

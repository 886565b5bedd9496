#include <gtest/gtest.h>

#include "support.hpp"

using namespace toupie;
using namespace toupie::testing;

namespace {

std::vector<std::string> labels(const CohomologyBasis& b) {
    std::vector<std::string> out;
    for (const auto& c : b.classes()) out.push_back(c.label);
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(Cohomology, ExampleDimensionsAndBases) {
    auto alg = ToupieAlgebra::build(example_spec());
    Cohomology co(alg);
    std::vector<std::size_t> dims;
    for (int i = 0; i <= 7; ++i) dims.push_back(co.dimension(i));
    EXPECT_EQ(dims, (std::vector<std::size_t>{1, 10, 3, 0, 4, 0, 0, 0}));
    EXPECT_EQ(labels(co.basis(0)), std::vector<std::string>{"1"});
    EXPECT_EQ(labels(co.basis(1)), kExampleH1);
    EXPECT_EQ(labels(co.basis(2)), kExampleH2);
    EXPECT_TRUE(labels(co.basis(3)).empty());
    EXPECT_EQ(labels(co.basis(4)), kExampleH4);
}

TEST(Cohomology, DifferentialsCompose) {
    for (const auto& [name, spec] : oracle_instances()) {
        auto alg = ToupieAlgebra::build(spec);
        Cohomology co(alg);
        const auto& cx = co.complex();
        for (int h = 0; h < 4; ++h)
            EXPECT_TRUE(cx.differential(h + 1).compose(cx.differential(h)).is_zero()) << name << " h=" << h;
        // Higher differentials vanish on toupie algebras.
        for (int h = 2; h < 5; ++h) EXPECT_TRUE(cx.differential(h).is_zero()) << name << " h=" << h;
    }
}

TEST(Cohomology, VertexColumnOfFirstDifferential) {
    auto alg = ToupieAlgebra::build(example_spec());
    Cohomology co(alg);
    const auto& cx = co.complex();
    int v = alg.vertex(3, 2);  // inner vertex on the long branch
    const auto& s0 = cx.space(0);
    const auto& s1 = cx.space(1);
    std::size_t col = s0.at(v, alg.trivial_id(v));
    SparseVector expected;
    expected[s1.at(alg.arrow_id(3, 1), *alg.basis_id(Path::run(3, 1, 1)))] = 1;
    expected[s1.at(alg.arrow_id(3, 2), *alg.basis_id(Path::run(3, 2, 1)))] = -1;
    EXPECT_EQ(cx.differential(0).column(col), expected);
}

TEST(Cohomology, SecondDifferentialOnPivotArrow) {
    auto alg = ToupieAlgebra::build(example_spec());
    Cohomology co(alg);
    const auto& cx = co.complex();
    const auto& s1 = cx.space(1);
    const auto& s2 = cx.space(2);
    // alpha^5_0‖alpha^5_0 substitutes into rho1 with its pivot coefficient 1;
    // the value alpha^(5) is written alpha^(6) in A.
    std::size_t col = s1.at(alg.arrow_id(4, 0), *alg.basis_id(Path::run(4, 0, 1)));
    auto image = cx.differential(1).column(col);
    std::size_t rho_six = s2.at(0, *alg.basis_id(Path::run(5, 0, 2)));
    EXPECT_EQ(image, (SparseVector{{rho_six, Rational(1)}}));
    // Arrows of the monomial branch only meet monomial relations.
    for (int o = 0; o < 8; ++o) {
        for (const auto& [value, idx] : s1.values_of(alg.arrow_id(3, o)))
            EXPECT_TRUE(cx.differential(1).column(idx).empty()) << "offset " << o << " value " << value;
    }
}

TEST(Cohomology, KroneckerFirstCohomology) {
    for (int a = 2; a <= 4; ++a) {
        auto alg = ToupieAlgebra::build(kronecker(a));
        Cohomology co(alg);
        EXPECT_EQ(co.dimension(1), static_cast<std::size_t>(a * a - 1));
    }
    auto alg = ToupieAlgebra::build(kronecker(2));
    Cohomology co(alg);
    EXPECT_EQ(sorted(labels(co.basis(1))), (std::vector<std::string>{"w12", "w21", "x2"}));
}

TEST(Cohomology, SmallDegenerateCases) {
    QuiverSpec one;
    one.branch_lengths = {2};
    auto a1 = ToupieAlgebra::build(one);
    Cohomology c1(a1);
    EXPECT_EQ(c1.dimension(0), 1u);
    EXPECT_EQ(c1.dimension(1), 0u);
    EXPECT_EQ(c1.dimension(2), 0u);

    auto a2 = ToupieAlgebra::build(commutative_square());
    Cohomology c2(a2);
    EXPECT_EQ(a2.invariants().D, 1);
    EXPECT_EQ(c2.complex().differential_rank(1), 1u);
    EXPECT_EQ(c2.dimension(2), 0u);

    auto a3 = ToupieAlgebra::build(kronecker(3));
    Cohomology c3(a3);
    EXPECT_EQ(c3.dimension(2), 0u);
}

TEST(Cohomology, ZeroDegreeIsOneDimensional) {
    for (const auto& spec : random_specs(25, 3)) {
        auto alg = ToupieAlgebra::build(spec);
        Cohomology co(alg);
        EXPECT_EQ(co.dimension(0), 1u);
    }
}

TEST(Cohomology, FirstDegreeClassesAreIndependentCocycles) {
    for (const auto& [name, spec] : oracle_instances()) {
        auto alg = ToupieAlgebra::build(spec);
        Cohomology co(alg);
        const auto& cx = co.complex();
        const auto& b1 = co.basis(1);
        Echelon stack;
        std::size_t tag = 0;
        const auto& d0 = cx.differential(0);
        for (std::size_t j = 0; j < d0.cols(); ++j) stack.insert(d0.column(j), tag++);
        std::size_t image_rank = stack.rank();
        for (const auto& c : b1.classes()) {
            EXPECT_TRUE(cx.differential(1).apply(c.cochain).empty()) << name << " " << c.label;
            stack.insert(c.cochain, tag++);
        }
        EXPECT_EQ(stack.rank(), image_rank + b1.size()) << name;
    }
}

TEST(Cohomology, SecondDegreeEliminatedSetLiesInImage) {
    for (const auto& [name, spec] : oracle_instances()) {
        auto alg = ToupieAlgebra::build(spec);
        Cohomology co(alg);
        const auto& h2 = co.h2_construction();
        Echelon image = co.complex().differential(1).image();
        for (const auto& v : h2.b1) EXPECT_TRUE(image.contains(v)) << name;
        for (const auto& v : h2.b2_second) EXPECT_TRUE(image.contains(v)) << name;
        EXPECT_EQ(h2.b1.size() + h2.b2_second.size(), co.complex().differential_rank(1)) << name;
    }
}

TEST(Cohomology, HigherDegreesCountZeroOmegaChains) {
    for (const auto& [name, spec] : oracle_instances()) {
        auto alg = ToupieAlgebra::build(spec);
        Cohomology co(alg);
        for (int i = 3; i <= 6; ++i)
            EXPECT_EQ(co.dimension(i), reference_chain_count(spec, i - 1, true) * alg.invariants().D)
                << name << " i=" << i;
    }
}

TEST(Cohomology, ProjectRejectsNonCocycles) {
    auto alg = ToupieAlgebra::build(example_spec());
    Cohomology co(alg);
    const auto& cx = co.complex();
    // An arrow cochain on the pivot branch is not a cocycle.
    std::size_t idx = cx.space(1).at(alg.arrow_id(4, 0), *alg.basis_id(Path::run(4, 0, 1)));
    EXPECT_THROW(co.basis(1).project(SparseVector{{idx, Rational(1)}}), ConsistencyError);
}

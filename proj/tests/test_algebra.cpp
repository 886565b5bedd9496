#include <gtest/gtest.h>

#include "support.hpp"

using namespace toupie;
using namespace toupie::testing;

namespace {

std::vector<std::string> codes(const QuiverSpec& s) {
    std::vector<std::string> out;
    for (const auto& e : validation_errors(s)) out.push_back(e.code());
    return out;
}

std::string build_error(const QuiverSpec& s) {
    try {
        ToupieAlgebra::build(s);
    } catch (const ValidationError& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST(Algebra, ExampleInvariants) {
    auto alg = ToupieAlgebra::build(example_spec());
    const auto& v = alg.invariants();
    EXPECT_EQ(v.a, 2);
    EXPECT_EQ(v.l, 1);
    EXPECT_EQ(v.m, 1);
    EXPECT_EQ(v.n, 2);
    EXPECT_EQ(v.D, 4);
    EXPECT_EQ(v.r, 2);
    EXPECT_EQ(v.rank, 1);
    // 2 + (1 + 7 + 1 + 1) inner vertices, 1+1+2+8+2+2 arrows.
    EXPECT_EQ(v.num_vertices, 12);
    EXPECT_EQ(v.num_arrows, 16);
}

TEST(Algebra, CanonicalBranchOrder) {
    QuiverSpec s;
    s.branch_lengths = {2, 3, 1, 2, 4};  // linear, monomial, arrow, linear, free
    s.monomial_relations = {{1, 0, 2}};
    s.linear_relations = {linear({{0, 1}, {3, 2}})};
    auto alg = ToupieAlgebra::build(s);
    std::vector<BranchClass> classes;
    for (int b = 0; b < alg.num_branches(); ++b) classes.push_back(alg.branch_class(b));
    EXPECT_EQ(classes, (std::vector<BranchClass>{BranchClass::Arrow, BranchClass::Free, BranchClass::Monomial,
                                                 BranchClass::Linear, BranchClass::Linear}));
    EXPECT_EQ(alg.original_index(0), 2);
    EXPECT_EQ(alg.original_index(1), 4);
    EXPECT_EQ(alg.original_index(2), 1);
    for (int b = 0; b < alg.num_branches(); ++b) EXPECT_EQ(alg.canonical_index(alg.original_index(b)), b);
}

TEST(Algebra, ZeroOmegaBasisHasDimensionD) {
    for (const auto& [name, spec] : oracle_instances()) {
        auto alg = ToupieAlgebra::build(spec);
        EXPECT_EQ(static_cast<int>(alg.parallel_paths(kSource, kSink).size()), alg.invariants().D) << name;
        EXPECT_EQ(alg.zero_omega_basis().size(), alg.parallel_paths(kSource, kSink).size()) << name;
    }
}

TEST(Algebra, PivotBranchRewritesToTail) {
    auto alg = ToupieAlgebra::build(example_spec());
    // Branch 5 is the pivot of 5:1 6:-1, so its full path equals branch 6 in A.
    Element e = alg.reduce(Path::run(4, 0, 2));
    auto six = alg.basis_id(Path::run(5, 0, 2));
    ASSERT_TRUE(six.has_value());
    EXPECT_EQ(e, (Element{{*six, Rational(1)}}));
    EXPECT_FALSE(alg.basis_id(Path::run(4, 0, 2)).has_value());
}

TEST(Algebra, MonomialWindowsVanish) {
    auto alg = ToupieAlgebra::build(example_spec());
    EXPECT_TRUE(alg.reduce(Path::run(3, 2, 4)).empty());
    EXPECT_TRUE(alg.reduce(Path::run(3, 0, 8)).empty());
    EXPECT_FALSE(alg.reduce(Path::run(3, 0, 3)).empty());
    auto x = *alg.basis_id(Path::run(3, 0, 2));
    auto y = *alg.basis_id(Path::run(3, 2, 2));
    EXPECT_TRUE(alg.multiply(x, y).empty());
    auto z = *alg.basis_id(Path::run(3, 2, 1));
    EXPECT_EQ(alg.multiply(x, z), (Element{{*alg.basis_id(Path::run(3, 0, 3)), Rational(1)}}));
}

TEST(Algebra, MultiplyIsAssociativeOnBasis) {
    auto alg = ToupieAlgebra::build(example_spec());
    std::size_t n = alg.basis_size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; z += 3) {
                Element X{{x, Rational(1)}}, Y{{y, Rational(1)}}, Z{{z, Rational(1)}};
                EXPECT_EQ(alg.multiply(alg.multiply(X, Y), Z), alg.multiply(X, alg.multiply(Y, Z)));
            }
}

TEST(Validation, EachViolationHasItsCode) {
    QuiverSpec s;
    EXPECT_EQ(codes(s), std::vector<std::string>{"EmptyQuiver"});

    s.branch_lengths = {1, 0};
    EXPECT_EQ(codes(s), std::vector<std::string>{"NonPositiveLength"});

    s = {};
    s.branch_lengths = {1, 2};
    s.monomial_relations = {{0, 0, 1}};
    EXPECT_EQ(codes(s), std::vector<std::string>{"RelationOnArrow"});

    s.monomial_relations = {{5, 0, 2}};
    EXPECT_EQ(codes(s), std::vector<std::string>{"UnknownBranch"});

    s.monomial_relations = {{1, 0, 1}};
    EXPECT_EQ(codes(s), std::vector<std::string>{"ShortMonomialRelation"});

    s.monomial_relations = {{1, 1, 2}};
    EXPECT_EQ(codes(s), std::vector<std::string>{"WindowOutOfRange"});

    s.branch_lengths = {1, 5};
    s.monomial_relations = {{1, 0, 4}, {1, 1, 2}};
    EXPECT_EQ(codes(s), std::vector<std::string>{"NestedMonomialRelation"});

    s = {};
    s.branch_lengths = {2, 2};
    s.linear_relations = {LinearRelation{}};
    EXPECT_EQ(codes(s), std::vector<std::string>{"ZeroRow"});

    s.linear_relations = {linear({{0, 1}, {1, 0}})};
    EXPECT_EQ(codes(s), std::vector<std::string>{"ZeroCoefficient"});

    s.branch_lengths = {3, 2};
    s.monomial_relations = {{0, 0, 2}};
    s.linear_relations = {linear({{0, 1}, {1, 1}})};
    EXPECT_EQ(codes(s), std::vector<std::string>{"MixedBranchClass"});
}

TEST(Validation, CollectsEveryViolationWithField) {
    QuiverSpec s;
    s.branch_lengths = {1, 2, 4};
    s.monomial_relations = {{0, 0, 2}, {2, 0, 2}, {2, 3, 2}};
    s.linear_relations = {linear({{1, 1}, {7, 1}})};
    auto errs = validation_errors(s);
    ASSERT_EQ(errs.size(), 3u);
    EXPECT_EQ(errs[0].code(), "RelationOnArrow");
    EXPECT_EQ(errs[0].field(), "monomial_relations:1");
    EXPECT_EQ(errs[1].code(), "WindowOutOfRange");
    EXPECT_EQ(errs[1].field(), "monomial_relations:3");
    EXPECT_EQ(errs[2].code(), "UnknownBranch");
    EXPECT_EQ(errs[2].field(), "linear_relations:1");
}

TEST(Validation, RowLevelFailuresSurfaceAtBuild) {
    QuiverSpec s;
    s.branch_lengths = {2, 2, 2};
    s.linear_relations = {linear({{0, 1}, {1, 1}}), linear({{0, 2}, {1, 2}})};
    EXPECT_EQ(build_error(s), "ZeroRow");

    // Rows whose reduction leaves a relation on a single branch would kill that branch.
    s.linear_relations = {linear({{0, 1}, {1, 1}}), linear({{0, 1}, {1, 1}, {2, 1}})};
    EXPECT_EQ(build_error(s), "SingleBranchLinearRelation");

    EXPECT_EQ(build_error(example_spec()), "");
}

TEST(Validation, WholeBranchWindowIsAllowed) {
    QuiverSpec s;
    s.branch_lengths = {4};
    s.monomial_relations = {{0, 0, 4}};
    EXPECT_TRUE(validation_errors(s).empty());
    auto alg = ToupieAlgebra::build(s);
    EXPECT_EQ(alg.invariants().D, 0);
}

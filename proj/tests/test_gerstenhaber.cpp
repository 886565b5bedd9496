#include <gtest/gtest.h>

#include "support.hpp"

using namespace toupie;
using namespace toupie::testing;

namespace {

struct Fixture {
    ToupieAlgebra alg;
    Cohomology co;
    Gerstenhaber g;
    explicit Fixture(const QuiverSpec& s) : alg(ToupieAlgebra::build(s)), co(alg), g(co) {}
};

CohomologyClass by_label(const Cohomology& co, const std::string& label) { return resolve_label(co, label, 6); }

// "-label" or "label" as a class.
CohomologyClass signed_class(const Cohomology& co, const std::string& text) {
    bool neg = text[0] == '-';
    CohomologyClass c = by_label(co, neg ? text.substr(1) : text);
    if (neg)
        for (auto& [k, v] : c.coordinates) v = -v;
    return c;
}

}  // namespace

TEST(Gerstenhaber, SubstituteReplacesTheArrow) {
    Fixture f(example_spec());
    const auto& alg = f.alg;
    // Replace the first arrow of branch 1 by branch 2 inside branch 1 itself.
    Element h{{*alg.basis_id(Path::run(1, 0, 1)), Rational(1)}};
    Element out = substitute(alg, Path::run(0, 0, 1), alg.arrow_id(0, 0), h);
    EXPECT_EQ(out, h);
    // Arrow absent from the path.
    EXPECT_TRUE(substitute(alg, Path::run(2, 0, 2), alg.arrow_id(0, 0), h).empty());
    // Substitution into a monomial window reduces to zero.
    Element self{{*alg.basis_id(Path::run(3, 1, 1)), Rational(1)}};
    EXPECT_TRUE(substitute(alg, Path::run(3, 0, 4), alg.arrow_id(3, 1), self).empty());
    EXPECT_FALSE(substitute(alg, Path::run(3, 0, 3), alg.arrow_id(3, 1), self).empty());
    // Values must share the endpoints of the arrow.
    Element wrong{{*alg.basis_id(Path::run(2, 0, 1)), Rational(1)}};
    EXPECT_THROW(substitute(alg, Path::run(0, 0, 1), alg.arrow_id(0, 0), wrong), ValidationError);
}

TEST(Gerstenhaber, ClosedFormsMatchSubstitution) {
    for (const auto& [name, spec] : oracle_instances()) {
        Fixture f(spec);
        EXPECT_NO_THROW(f.g.bracket_table()) << name;
    }
}

TEST(Gerstenhaber, ExampleDegreeOneBrackets) {
    Fixture f(example_spec());
    auto br = [&](const std::string& x, const std::string& y) {
        return f.co.basis(1).pretty(f.g.bracket_deg1(by_label(f.co, x), by_label(f.co, y)));
    };
    EXPECT_EQ(br("w12", "w21"), "x2");
    EXPECT_EQ(br("w12", "x2"), "-2*w12");
    EXPECT_EQ(br("x2", "z13"), "z13");
    EXPECT_EQ(br("z13", "t1"), "-z13");
    EXPECT_EQ(br("w21", "z16"), "-z26");
    EXPECT_EQ(br("y4", "t1"), "0");
    EXPECT_EQ(br("t1", "t2"), "0");
    EXPECT_EQ(br("z13", "z26"), "0");
}

TEST(Gerstenhaber, ExampleActionTablesExactly) {
    Fixture f(example_spec());
    std::map<std::pair<std::string, std::string>, std::string> golden;
    for (const auto& b : kExampleBrackets) golden[{b.left, b.right}] = b.result;
    std::size_t nonzero = 0;
    for (const auto& x : kExampleH1) {
        for (int n : {2, 4}) {
            for (const auto& v : n == 2 ? kExampleH2 : kExampleH4) {
                CohomologyClass got = f.g.action(by_label(f.co, x), by_label(f.co, v));
                auto it = golden.find({x, v});
                if (it == golden.end()) {
                    EXPECT_TRUE(got.coordinates.empty()) << x << " " << v;
                } else {
                    EXPECT_EQ(got, signed_class(f.co, it->second)) << x << " " << v;
                    ++nonzero;
                }
            }
        }
    }
    EXPECT_EQ(nonzero, 24u);
}

TEST(Gerstenhaber, BracketDispatchIsGradedAntisymmetric) {
    Fixture f(example_spec());
    for (const auto& x : kExampleH1)
        for (const auto& v : kExampleH4) {
            CohomologyClass xv = bracket_classes(f.g, by_label(f.co, x), by_label(f.co, v));
            CohomologyClass vx = bracket_classes(f.g, by_label(f.co, v), by_label(f.co, x));
            for (auto& [k, c] : vx.coordinates) c = -c;
            EXPECT_EQ(xv, vx);
        }
    // Degree-0 classes are central.
    EXPECT_TRUE(bracket_classes(f.g, by_label(f.co, "1"), by_label(f.co, "w12")).coordinates.empty());
}

TEST(Gerstenhaber, ProductsVanishAboveDegreeZero) {
    Fixture f(example_spec());
    auto one = by_label(f.co, "1");
    auto w = by_label(f.co, "w12");
    auto r = by_label(f.co, "rho1‖a1");
    EXPECT_EQ(f.g.cup(one, w), w);
    CohomologyClass two = one;
    two.coordinates[0] = 2;
    EXPECT_EQ(f.g.cup(r, two).coordinates.at(0), Rational(2));
    EXPECT_TRUE(f.g.cup(w, r).coordinates.empty());
    EXPECT_EQ(f.g.cup(w, r).degree, 3);
    EXPECT_TRUE(f.g.bracket_high(r, by_label(f.co, "amb(4,0,8)‖a1")).coordinates.empty());
    EXPECT_EQ(f.g.bracket_high(r, by_label(f.co, "amb(4,0,8)‖a1")).degree, 5);
    EXPECT_THROW(f.g.bracket_high(w, r), ValidationError);
    EXPECT_THROW(f.g.bracket_deg1(w, r), ValidationError);
    EXPECT_THROW(f.g.action(w, w), ValidationError);
}

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "linform/affine.hpp"
#include "linform/amplify.hpp"
#include "linform/image.hpp"
#include "linform/normalize.hpp"

using namespace linform;

namespace {

// Brute-force oracle: every tuple of elements, collected in a std::set.
std::set<Int> image_oracle(const std::vector<Int>& coeffs, const std::vector<Int>& A) {
    std::set<Int> cur{0};
    for (const auto& u : coeffs) {
        std::set<Int> next;
        for (const auto& c : cur)
            for (const auto& a : A) next.insert(c + u * a);
        cur = std::move(next);
    }
    return cur;
}

FiniteIntSet random_set(std::mt19937_64& rng, int max_size, int lo, int hi) {
    std::uniform_int_distribution<int> n(1, max_size), e(lo, hi);
    std::vector<Int> xs;
    for (int k = n(rng); k > 0; --k) xs.push_back(e(rng));
    return FiniteIntSet(std::move(xs));
}

LinearForm random_form(std::mt19937_64& rng, int arity, int bound) {
    std::uniform_int_distribution<int> c(-bound, bound - 1);
    std::vector<Int> cs;
    for (int i = 0; i < arity; ++i) {
        int x = c(rng);
        cs.push_back(x >= 0 ? x + 1 : x);
    }
    return LinearForm(std::move(cs));
}

// The set {x in [1, 59280] : x mod m in R_m for m = 13, 15, 16, 19}, by filtering.
FiniteIntSet reference_set_by_filter() {
    const std::vector<std::pair<int, std::set<int>>> R{
        {13, {0, 1, 6, 7, 9, 11}},
        {15, {0, 1, 5, 6, 10, 11, 13}},
        {16, {0, 1, 3, 5, 7, 9, 11, 13, 15}},
        {19, {0, 1, 11, 12, 14, 16, 18}},
    };
    std::vector<Int> xs;
    for (int x = 1; x <= 59280; ++x) {
        bool keep = true;
        for (const auto& [m, cls] : R) keep = keep && cls.count(x % m);
        if (keep) xs.push_back(x);
    }
    return FiniteIntSet(std::move(xs));
}

const FiniteIntSet mstd{0, 2, 3, 4, 7, 11, 12, 14};

}  // namespace

TEST(FiniteIntSet, SortsAndDeduplicates) {
    const FiniteIntSet A{5, 1, 3, 1, 5};
    EXPECT_EQ(A.elements(), (std::vector<Int>{1, 3, 5}));
    EXPECT_EQ(A.min(), 1);
    EXPECT_EQ(A.max(), 5);
    EXPECT_TRUE(A.contains(3));
    EXPECT_FALSE(A.contains(2));
    EXPECT_THROW(FiniteIntSet::from_sorted({1, 1}), std::invalid_argument);
    EXPECT_THROW(FiniteIntSet{}.min(), std::invalid_argument);
}

TEST(Image, Examples) {
    EXPECT_EQ(image_cardinality(LinearForm::sum(), mstd), 26u);
    EXPECT_EQ(image_cardinality(LinearForm::difference(), mstd), 25u);
    EXPECT_EQ(image(LinearForm::binary(2, 1), FiniteIntSet{0, 1, 2}), (FiniteIntSet{0, 1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(image_cardinality(LinearForm::binary(7, -3), FiniteIntSet{42}), 1u);
    EXPECT_EQ(image_cardinality(LinearForm::binary(2, 1), FiniteIntSet{0, 1}), 4u);
    EXPECT_THROW(image(LinearForm::sum(), FiniteIntSet{}), std::invalid_argument);
}

TEST(Image, ReferenceConstruction) {
    const auto A = reference_set_by_filter();
    ASSERT_EQ(A.size(), 2646u);
    EXPECT_EQ(A.max(), 59280);
    EXPECT_EQ(image_cardinality(LinearForm::binary(2, 1), A), 108014u);
    EXPECT_EQ(image_cardinality(LinearForm::sum(), A), 114575u);
    for (auto s : {ImageStrategy::pairs, ImageStrategy::merge, ImageStrategy::bitset})
        EXPECT_EQ(image_cardinality(LinearForm::binary(2, 1), A, s), 108014u) << to_string(s);
}

TEST(Image, StrategiesAgreeWithOracle) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const auto A = random_set(rng, 64, -300, 300);
        const auto f = random_form(rng, 2 + static_cast<int>(rng() % 2), 10);
        const auto want = image_oracle(f.coefficients(), A.elements());
        for (auto s : {ImageStrategy::automatic, ImageStrategy::pairs, ImageStrategy::merge, ImageStrategy::bitset}) {
            const auto got = image(f, A, s);
            ASSERT_EQ(got.size(), want.size()) << f << " " << to_string(s);
            ASSERT_TRUE(std::equal(got.begin(), got.end(), want.begin())) << f << " " << to_string(s);
            ASSERT_EQ(image_cardinality(f, A, s), want.size());
        }
    }
}

TEST(Image, BigIntegerFallback) {
    const Int big = Int(1) << 80;
    const FiniteIntSet A{std::vector<Int>{0, 1, big, big + 5}};
    const auto f = LinearForm::binary(3, -2);
    const auto want = image_oracle(f.coefficients(), A.elements());
    const auto got = image(f, A);
    EXPECT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end()));
    EXPECT_EQ(image_cardinality(f, A), want.size());
}

TEST(Image, CardinalityBound) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto A = random_set(rng, 20, -50, 50);
        const auto f = random_form(rng, 2, 6);
        EXPECT_LE(image_cardinality(f, A), A.size() * A.size());
    }
    // [0, t-1] with t <= u attains the bound.
    for (int u = 2; u <= 9; ++u)
        for (int v = 1; v < u; ++v)
            for (int t = 1; t <= u && std::gcd(u, v) == 1; ++t) {
                ASSERT_EQ(image_cardinality(LinearForm::binary(u, v), FiniteIntSet::interval(0, t - 1)),
                          static_cast<std::uint64_t>(t * t));
            }
}

TEST(DilateAndSumset, Examples) {
    EXPECT_EQ(dilate(2, FiniteIntSet{0, 1, 3}), (FiniteIntSet{0, 2, 6}));
    EXPECT_EQ(sumset(FiniteIntSet{0, 1}, FiniteIntSet{0, 10}), (FiniteIntSet{0, 1, 10, 11}));
    EXPECT_THROW(dilate(0, FiniteIntSet{1}), std::invalid_argument);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const auto A = random_set(rng, 30, -100, 100);
        const auto f = random_form(rng, 2, 8);
        EXPECT_EQ(image(f, A), sumset(dilate(f.u(), A), dilate(f.v(), A)));
    }
}

TEST(LinearForm, ParseAndValidate) {
    EXPECT_EQ(LinearForm::parse("2,1"), LinearForm::binary(2, 1));
    EXPECT_EQ(LinearForm::parse(" 1, -1 "), LinearForm::difference());
    EXPECT_EQ(LinearForm::binary(3, -4).height(), 7);
    EXPECT_THROW(LinearForm::parse("2,x"), std::invalid_argument);
    EXPECT_THROW(LinearForm::parse("2,0"), std::invalid_argument);
    EXPECT_THROW(LinearForm(std::vector<Int>{}), std::invalid_argument);
}

TEST(Normalize, Examples) {
    const auto a = normalize_form(LinearForm::binary(2, 1));
    EXPECT_EQ(a.normalized, LinearForm::binary(2, 1));
    EXPECT_TRUE(a.steps.empty());

    const auto b = normalize_form(LinearForm::binary(-4, 6));
    EXPECT_EQ(b.normalized, LinearForm::binary(3, -2));
    EXPECT_EQ(b.steps, (std::vector<NormalizationStep>{NormalizationStep::divide_by_gcd, NormalizationStep::swap}));

    EXPECT_EQ(normalize_form(LinearForm::difference()).normalized, LinearForm::difference());
    EXPECT_EQ(normalize_form(LinearForm::binary(-3, 1)).normalized, LinearForm::binary(3, -1));
    EXPECT_THROW(normalize_form(LinearForm{1, 1, 1}), std::invalid_argument);
}

TEST(Normalize, PreservesCardinality) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const auto f = random_form(rng, 2, 12);
        const auto n = normalize_form(f);
        ASSERT_TRUE(is_normalized(n.normalized)) << f;
        for (int j = 0; j < 20; ++j) {
            const auto A = random_set(rng, 15, -60, 60);
            ASSERT_EQ(image_cardinality(f, A), image_cardinality(n.normalized, A)) << f;
        }
    }
}

TEST(Affine, Canonical) {
    EXPECT_EQ(affine_canonical(FiniteIntSet{4, 6, 10}), (FiniteIntSet{0, 1, 3}));
    EXPECT_EQ(affine_canonical(FiniteIntSet{0, 1}), (FiniteIntSet{0, 1}));
    EXPECT_EQ(affine_canonical(FiniteIntSet{-7, 93}), (FiniteIntSet{0, 1}));
    EXPECT_THROW(affine_canonical(FiniteIntSet{3}), std::invalid_argument);
    for (int u = 2; u <= 12; ++u)
        for (int w = 1; w < u; ++w)
            EXPECT_TRUE(affinely_equivalent(FiniteIntSet{0, u - w, u}, FiniteIntSet{0, w, u})) << u << " " << w;
    EXPECT_FALSE(affinely_equivalent(FiniteIntSet{0, 1, 3}, FiniteIntSet{0, 1, 4}));
}

TEST(Affine, ImageCardinalityIsInvariant) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> scale(-9, 9), shift(-1000, 1000);
    for (int i = 0; i < 200; ++i) {
        const auto A = random_set(rng, 20, -40, 40);
        int a = 0;
        while (a == 0) a = scale(rng);
        const auto B = translate(dilate(a, A), shift(rng));
        const auto f = random_form(rng, 2 + static_cast<int>(rng() % 2), 7);
        ASSERT_EQ(image_cardinality(f, A), image_cardinality(f, B));
        if (A.size() >= 2) {
            ASSERT_EQ(affine_key(A), affine_key(B));
        }
    }
}

TEST(Amplify, SquaresCardinalities) {
    const auto amp = amplify(LinearForm::sum(), LinearForm::difference(), mstd);
    EXPECT_EQ(image_cardinality(LinearForm::sum(), amp.A_M), 676u);
    EXPECT_EQ(image_cardinality(LinearForm::difference(), amp.A_M), 625u);
    EXPECT_EQ(amp.M, 2 * 28 + 1);  // m = max |s| over A, A+A, A-A = 28

    EXPECT_EQ(amplify(LinearForm::sum(), LinearForm::sum(), FiniteIntSet{0, 1}).A_M.size(), 4u);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        const auto A = random_set(rng, 12, -30, 30);
        const auto f = random_form(rng, 2, 5), g = random_form(rng, 2, 5);
        const auto r = amplify(f, g, A);
        const auto fa = image_cardinality(f, A), ga = image_cardinality(g, A);
        ASSERT_EQ(r.A_M.size(), A.size() * A.size());
        ASSERT_EQ(image_cardinality(f, r.A_M), fa * fa);
        ASSERT_EQ(image_cardinality(g, r.A_M), ga * ga);
    }
}

TEST(Amplify, RatioSquaresEachRound) {
    const auto f = LinearForm::binary(2, 1), g = LinearForm::sum();
    FiniteIntSet A{0, 1, 3};
    Rational ratio(Int(image_cardinality(f, A)), Int(image_cardinality(g, A)));
    for (int round = 0; round < 2; ++round) {
        A = amplify(f, g, A).A_M;
        const Rational next(Int(image_cardinality(f, A)), Int(image_cardinality(g, A)));
        EXPECT_EQ(next, ratio * ratio);
        ratio = next;
    }
}

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "linform/small_sets.hpp"

using namespace linform;

namespace {

std::size_t brute_card(std::int64_t u, std::int64_t v, const std::vector<std::int64_t>& A) {
    std::set<std::int64_t> out;
    for (auto x : A)
        for (auto y : A) out.insert(u * x + v * y);
    return out.size();
}

// Exceptional classes of {0, a, b} by brute force; a triple and its reflection
// {0, b - a, b} are the same class, keyed by the lexicographically smaller one.
std::map<std::pair<int, int>, std::size_t> brute_exceptional(int u, int v, int bound) {
    std::map<std::pair<int, int>, std::size_t> out;
    for (int b = 2; b <= bound; ++b)
        for (int a = 1; a < b; ++a) {
            if (std::gcd(a, b) != 1) continue;
            const auto c = brute_card(u, v, {0, a, b});
            if (c < 9) out[std::min(std::pair{a, b}, std::pair{b - a, b})] = c;
        }
    return out;
}

std::vector<ExceptionalTriple> triples(std::initializer_list<std::pair<FiniteIntSet, std::uint64_t>> xs) {
    std::vector<ExceptionalTriple> out;
    for (const auto& [s, c] : xs) out.push_back({s, c});
    return out;
}

using Cards = std::array<std::uint64_t, 4>;

Cards cards(const WitnessPair& w) { return {w.f_A, w.g_A, w.f_B, w.g_B}; }

}  // namespace

TEST(ClassifyTriples, Examples) {
    EXPECT_EQ(classify_triples(LinearForm::binary(3, 1), Int(10)).exceptional,
              triples({{FiniteIntSet{0, 1, 3}, 8}, {FiniteIntSet{0, 1, 4}, 8}}));
    EXPECT_EQ(classify_triples(LinearForm::binary(2, 1), Int(10)).exceptional,
              triples({{FiniteIntSet{0, 1, 2}, 7}, {FiniteIntSet{0, 1, 3}, 8}}));
    EXPECT_EQ(classify_triples(LinearForm::binary(3, 1)).exceptional,
              classify_triples(LinearForm::binary(3, -1)).exceptional);
}

TEST(ClassifyTriples, Preconditions) {
    EXPECT_THROW(classify_triples(LinearForm::binary(1, 3)), std::invalid_argument);
    EXPECT_THROW(classify_triples(LinearForm::binary(4, 2)), std::invalid_argument);
    EXPECT_THROW(classify_triples(LinearForm::binary(3, 1), Int(3)), std::invalid_argument);
}

TEST(ClassifyTriples, MatchesBruteForceAndPrediction) {
    for (int u = 2; u <= 10; ++u)
        for (int v = -u + 1; v < u; ++v) {
            if (v == 0 || std::gcd(u, v) != 1) continue;
            const auto f = LinearForm::binary(u, v);
            const auto got = classify_triples(f).exceptional;
            ASSERT_EQ(got, predicted_exceptional_triples(f)) << f;
            const auto brute = brute_exceptional(u, v, u + std::abs(v));
            ASSERT_EQ(got.size(), brute.size()) << f;
            for (const auto& t : got) {
                const auto& e = t.canonical.elements();
                const std::pair<int, int> key{e[1].convert_to<int>(), e[2].convert_to<int>()};
                ASSERT_TRUE(brute.count(key)) << f;
                ASSERT_EQ(brute.at(key), t.cardinality) << f;
                if (u >= 3) {
                    ASSERT_EQ(t.cardinality, 8u) << f;
                }
            }
        }
}

TEST(ClassifyTriples, BoundStable) {
    for (int u = 2; u <= 10; ++u)
        for (int v = -u + 1; v < u; ++v) {
            if (v == 0 || std::gcd(u, v) != 1) continue;
            const auto f = LinearForm::binary(u, v);
            const Int b = u + std::abs(v);
            ASSERT_EQ(classify_triples(f).exceptional, classify_triples(f, 2 * b).exceptional) << f;
        }
}

TEST(ThreeSetWitness, Cases) {
    const auto a = three_set_witness(LinearForm::binary(3, 1), LinearForm::binary(5, 1));
    EXPECT_EQ(a.A, (FiniteIntSet{0, 1, 3}));
    EXPECT_EQ(a.B, (FiniteIntSet{0, 1, 5}));
    EXPECT_EQ(cards(a), (Cards{8, 9, 9, 8}));

    const auto b = three_set_witness(LinearForm::binary(3, 1), LinearForm::binary(4, 1));
    EXPECT_EQ(b.B, (FiniteIntSet{0, 1, 5}));
    EXPECT_TRUE(b.f_A < b.g_A && b.f_B > b.g_B);

    const auto c = three_set_witness(LinearForm::binary(3, 1), LinearForm::binary(3, 2));
    EXPECT_EQ(c.A, (FiniteIntSet{0, 1, 4}));
    EXPECT_EQ(c.B, (FiniteIntSet{0, 2, 5}));

    // Roles swap when the first form is larger; the orientation is preserved.
    const auto d = three_set_witness(LinearForm::binary(5, 1), LinearForm::binary(3, 1));
    EXPECT_EQ(d.A, (FiniteIntSet{0, 1, 5}));
    EXPECT_EQ(d.B, (FiniteIntSet{0, 1, 3}));
    EXPECT_TRUE(d.f_A < d.g_A && d.f_B > d.g_B);

    EXPECT_THROW(three_set_witness(LinearForm::binary(3, 1), LinearForm::binary(3, -1)), std::invalid_argument);
    EXPECT_THROW(three_set_witness(LinearForm::sum(), LinearForm::binary(3, 1)), std::invalid_argument);
}

TEST(ThreeSetWitness, AllPairsSeparate) {
    std::vector<LinearForm> forms;
    for (int u = 2; u <= 9; ++u)
        for (int v = -u + 1; v < u; ++v)
            if (v != 0 && std::gcd(u, v) == 1) forms.push_back(LinearForm::binary(u, v));
    for (const auto& f : forms)
        for (const auto& g : forms) {
            if (f.u() == g.u() && abs(f.v()) == abs(g.v())) continue;
            const auto w = three_set_witness(f, g);
            ASSERT_EQ(w.A.size(), 3u);
            ASSERT_EQ(w.B.size(), 3u);
            ASSERT_TRUE(w.separates());
            ASSERT_EQ(w.f_A, image_cardinality(f, w.A));
            ASSERT_EQ(w.g_B, image_cardinality(g, w.B));
        }
}

TEST(FourSetWitness, Examples) {
    const auto a = conjugate_four_set_witness(2, 1);
    EXPECT_EQ(cards(a), (Cards{13, 12, 13, 14}));
    const auto b = conjugate_four_set_witness(3, 1);
    EXPECT_EQ(b.A, (FiniteIntSet{0, 8, 9, 12}));
    EXPECT_EQ(b.B, (FiniteIntSet{0, 6, 8, 9}));
    EXPECT_EQ(cards(b), (Cards{14, 13, 13, 14}));
    const auto c = conjugate_four_set_witness(5, 2);
    EXPECT_EQ(brute_card(5, 2, {0, 21, 25, 35}), 14u);
    EXPECT_EQ(brute_card(5, -2, {0, 21, 25, 35}), 13u);
    EXPECT_EQ(cards(c), (Cards{14, 13, 13, 14}));
    EXPECT_THROW(conjugate_four_set_witness(4, 2), std::invalid_argument);
    EXPECT_THROW(conjugate_four_set_witness(2, 3), std::invalid_argument);
}

TEST(FourSetWitness, PatternHoldsUpTo20) {
    for (int u = 2; u <= 20; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            const auto w = conjugate_four_set_witness(u, v);
            std::vector<std::int64_t> A, B;
            for (const auto& x : w.A) A.push_back(x.convert_to<std::int64_t>());
            for (const auto& x : w.B) B.push_back(x.convert_to<std::int64_t>());
            const std::array<std::size_t, 4> got{brute_card(u, v, A), brute_card(u, -v, A), brute_card(u, v, B),
                                                 brute_card(u, -v, B)};
            const std::array<std::size_t, 4> want =
                u == 2 ? std::array<std::size_t, 4>{13, 12, 13, 14} : std::array<std::size_t, 4>{14, 13, 13, 14};
            ASSERT_EQ(got, want) << u << " " << v;
        }
}

TEST(FiveSetWitness, Examples) {
    const auto a = five_set_witness(2, 1);
    EXPECT_EQ(a.A, (FiniteIntSet{0, 1, 3, 7, 15}));
    EXPECT_EQ(a.d_card, 21u);
    EXPECT_LE(a.f_card, 19u);
    EXPECT_EQ(five_set_witness(3, 2).d_card, 21u);
    EXPECT_EQ(five_set_witness(5, 1).d_card, 21u);
    EXPECT_THROW(five_set_witness(2, 2), std::invalid_argument);
    EXPECT_THROW(five_set_witness(1, 2), std::invalid_argument);
}

TEST(FiveSetWitness, CoincidencesHold) {
    for (int u = 2; u <= 30; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            const auto e = five_set_elements(u, v);
            std::set<Int> values;
            for (const auto& c : five_set_coincidences) {
                const Int lhs = u * e[c.lhs[0]] + v * e[c.lhs[1]];
                const Int rhs = u * e[c.rhs[0]] + v * e[c.rhs[1]];
                ASSERT_EQ(lhs, rhs) << u << " " << v;
                values.insert(lhs);
            }
            ASSERT_EQ(values.size(), 6u) << u << " " << v;  // six distinct collisions
        }
}

TEST(FiveSetWitness, BoundsUpTo50) {
    for (int u = 2; u <= 50; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            const auto w = five_set_witness(u, v);
            std::vector<std::int64_t> A;
            for (const auto& x : w.A) A.push_back(x.convert_to<std::int64_t>());
            ASSERT_EQ(brute_card(1, -1, A), 21u);
            ASSERT_LE(brute_card(u, v, A), 19u);
            ASSERT_LT(w.f_card, w.d_card);
        }
}

TEST(ApEquality, Examples) {
    EXPECT_EQ(ap_equality_set(3, 2, 3), (FiniteIntSet{0, 1, 2}));
    EXPECT_EQ(ap_equality_set(7, 3, 1), (FiniteIntSet{0}));
    EXPECT_EQ(ap_equality_set(5, 2, 4), (FiniteIntSet{0, 1, 2, 3}));
    EXPECT_EQ(brute_card(5, 2, {0, 1, 2, 3}), 16u);
    EXPECT_EQ(brute_card(5, -2, {0, 1, 2, 3}), 16u);
    EXPECT_THROW(ap_equality_set(3, 2, 4), std::invalid_argument);
    EXPECT_THROW(ap_equality_set(3, 2, 0), std::invalid_argument);
}

TEST(ApEquality, HoldsUpTo12) {
    for (int u = 2; u <= 12; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            for (int t = 1; t <= u; ++t) {
                std::vector<std::int64_t> A(static_cast<std::size_t>(t));
                std::iota(A.begin(), A.end(), 0);
                ASSERT_EQ(ap_equality_set(u, v, t).size(), static_cast<std::size_t>(t));
                ASSERT_EQ(brute_card(u, v, A), static_cast<std::size_t>(t * t));
                ASSERT_EQ(brute_card(u, -v, A), static_cast<std::size_t>(t * t));
            }
        }
}

#include <random>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "posdiv/zlinalg.hpp"

using namespace posdiv;

namespace {

Mat2 random_matrix(std::mt19937_64 & rng, int bits)
{
    size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    Mat2 m(r, c, bits);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            m.set(i, j, uint64_t(rng() % 8));
    return m;
}

std::vector<ModVec> rows_of(Mat2 const & m)
{
    std::vector<ModVec> r;
    for (size_t i = 0; i < m.rows(); ++i)
        r.push_back(m.row(i));
    return r;
}

} // namespace

TEST(zlinalg, snf_examples)
{
    EXPECT_EQ(cokernel_type(Mat2::from_rows({{2, 0}, {0, 4}}, 2, 20)).to_string(), "[ 2,4 ]");
    EXPECT_EQ(cokernel_type(Mat2::from_rows({{2, 0}, {0, 2}, {1, 1}}, 2, 20)).to_string(), "[ 2 ]");
    EXPECT_EQ(cokernel_type(Mat2::from_rows({{4}}, 1, 20)).to_string(), "[ 4 ]");
    EXPECT_EQ(cokernel_type(Mat2::from_rows({{2, 0}, {0, 2}}, 2, 20)).to_string(), "[ 2,2 ]");
    Mat2 zero(2, 2, 16);
    EXPECT_THROW(cokernel(zero), LinalgError);
    auto k = cokernel(zero, true);
    EXPECT_EQ(k.unbounded, 2);
    EXPECT_TRUE(k.type.trivial());
}

TEST(zlinalg, snf_transforms)
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        Mat2 m = random_matrix(rng, 12);
        SmithForm s = snf(m);
        EXPECT_TRUE(is_unimodular(s.U));
        EXPECT_TRUE(is_unimodular(s.V));
        EXPECT_EQ(s.V * s.V_inv, Mat2::identity(m.cols(), 12));
        Mat2 d = s.U * m * s.V;
        for (size_t i = 0; i < d.rows(); ++i)
            for (size_t j = 0; j < d.cols(); ++j) {
                uint64_t want = 0;
                if (i == j && s.diag[i] < 12)
                    want = uint64_t{1} << s.diag[i];
                ASSERT_EQ(d(i, j), want);
            }
        for (size_t i = 1; i < s.diag.size(); ++i)
            EXPECT_LE(s.diag[i - 1], s.diag[i]);
    }
}

TEST(zlinalg, cokernel_matches_enumeration)
{
    std::mt19937_64 rng(5);
    int const bits = 5;
    for (int t = 0; t < 200; ++t) {
        Mat2 m = random_matrix(rng, bits);
        auto k = cokernel(m, true);
        auto want = brute::quotient_exponents(rows_of(m), m.cols(), bits);
        ASSERT_EQ(k.exponents, want);
    }
}

TEST(zlinalg, cokernel_coordinates_round_trip)
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        Mat2 m = random_matrix(rng, 10);
        auto k = cokernel(m, true);
        // old generator j = sum_k coords_k * new generator k, modulo relations
        for (size_t j = 0; j < m.cols(); ++j) {
            auto y = k.coordinates(j);
            ModVec back(m.cols(), 0);
            for (size_t g = 0; g < y.size(); ++g) {
                ModVec gen = k.generator(g);
                for (size_t i = 0; i < back.size(); ++i)
                    back[i] = (back[i] + y[g] * gen[i]) & m.mask();
            }
            back[j] = (back[j] - 1) & m.mask();
            // back must lie in the row span
            Mat2 mt(m.cols(), m.rows(), 10);
            for (size_t a = 0; a < m.rows(); ++a)
                for (size_t b = 0; b < m.cols(); ++b)
                    mt.set(b, a, m(a, b));
            ASSERT_TRUE(solve_mod(mt, back).has_value());
        }
    }
}

TEST(zlinalg, nullspace_examples)
{
    auto n0 = nullspace_mod(Mat2::from_rows({{0}}, 1, 8));
    ASSERT_EQ(n0.size(), 1u);
    EXPECT_EQ(n0[0], ModVec{1});
    EXPECT_TRUE(nullspace_mod(Mat2::from_rows({{1}}, 1, 8)).empty());
    auto n = nullspace_mod(Mat2::from_rows({{2, 4}}, 2, 4));
    // span must be <(2,-1), (8,0)>
    auto got = brute::span(n, 2, 4);
    auto want = brute::span({{2, 15}, {8, 0}}, 2, 4);
    EXPECT_EQ(got, want);
}

TEST(zlinalg, nullspace_matches_enumeration)
{
    std::mt19937_64 rng(17);
    int const bits = 4;
    for (int t = 0; t < 200; ++t) {
        Mat2 m = random_matrix(rng, bits);
        auto basis = nullspace_mod(m);
        for (auto const & v : basis) {
            auto img = m.apply(v);
            for (auto x : img)
                ASSERT_EQ(x, 0u);
        }
        ASSERT_EQ(brute::span(basis, m.cols(), bits), brute::kernel(m));
    }
}

TEST(zlinalg, solve_mod_examples)
{
    auto x = solve_mod(Mat2::identity(3, 8), {1, 2, 3});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (ModVec{1, 2, 3}));
    EXPECT_FALSE(solve_mod(Mat2::from_rows({{2}}, 1, 4), {1}));
    auto y = solve_mod(Mat2::from_rows({{3}}, 1, 4), {1});
    ASSERT_TRUE(y);
    EXPECT_EQ(*y, ModVec{11});
}

TEST(zlinalg, solve_mod_matches_enumeration)
{
    std::mt19937_64 rng(23);
    int const bits = 3;
    for (int t = 0; t < 200; ++t) {
        Mat2 m = random_matrix(rng, bits);
        ModVec b(m.rows());
        for (auto & v : b)
            v = rng() % 8;
        bool exists = false;
        for (size_t code = 0; code < (size_t{1} << (bits * m.cols())) && !exists; ++code)
            exists = m.apply(brute::decode(code, m.cols(), bits)) == b;
        auto x = solve_mod(m, b);
        ASSERT_EQ(x.has_value(), exists);
        if (x)
            ASSERT_EQ(m.apply(*x), b);
    }
}

TEST(zlinalg, permutation_invariance)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        Mat2 m = random_matrix(rng, 10);
        Mat2 p(m.rows(), m.cols(), 10);
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                p.set(m.rows() - 1 - i, m.cols() - 1 - j, m(i, j));
        EXPECT_EQ(cokernel(m, true).exponents, cokernel(p, true).exponents);
    }
}

TEST(zlinalg, group_types)
{
    EXPECT_EQ(AbelianGroupType::parse("2,12").to_string(), "[ 2,12 ]");
    EXPECT_EQ(AbelianGroupType::parse("[ 12,2 ]").two_part().to_string(), "[ 2,4 ]");
    EXPECT_EQ(AbelianGroupType::parse("2,18").odd_part().to_string(), "[ 9 ]");
    EXPECT_EQ(AbelianGroupType::from_orders({2, 3}).to_string(), "[ 6 ]");
    EXPECT_EQ(AbelianGroupType::parse("").to_string(), "[ ]");
    EXPECT_EQ(AbelianGroupType::parse("2,2").rank2(), 2u);
    EXPECT_TRUE(AbelianGroupType::parse("2").is_subgroup_type_of(AbelianGroupType::parse("4")));
    EXPECT_FALSE(AbelianGroupType::parse("2,2").is_subgroup_type_of(AbelianGroupType::parse("4")));
    EXPECT_TRUE(AbelianGroupType::parse("2,4").is_subgroup_type_of(AbelianGroupType::parse("2,2,8")));
}

TEST(zlinalg, f2_helpers)
{
    EXPECT_EQ(f2_rank({{1, 0}, {1, 0}, {0, 1}}), 2u);
    auto k = f2_left_kernel({{1, 0}, {1, 0}, {0, 1}});
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (std::vector<int>{1, 1, 0}));
}

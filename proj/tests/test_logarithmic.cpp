#include <gtest/gtest.h>

#include "posdiv/logarithmic.hpp"

using namespace posdiv;

namespace {

struct LogCase
{
    long D;
    char const * cl_prime;
    char const * cl_log;
};

class LogTable : public ::testing::TestWithParam<LogCase>
{
};

} // namespace

TEST_P(LogTable, ClPrimeAndLogClassGroup)
{
    auto c = GetParam();
    FieldData F = quadratic_field(c.D);
    EXPECT_EQ(compute_cl_prime(F).to_string(), AbelianGroupType::parse(c.cl_prime).to_string()) << c.D;
    LogContext ctx = build_log_context(F);
    LogClassGroup G = compute_log_class_group(ctx);
    EXPECT_EQ(G.type.to_string(), AbelianGroupType::parse(c.cl_log).to_string()) << c.D;
}

INSTANTIATE_TEST_SUITE_P(
        Table, LogTable,
        ::testing::Values(LogCase{-184, "2", ""}, LogCase{-248, "4", "2"}, LogCase{-399, "2", "4"},
                          LogCase{-632, "4", "2"}, LogCase{-759, "2", "2"}, LogCase{-799, "2", "2,4"},
                          LogCase{-959, "4", "4,8"}, LogCase{776, "2", ""}, LogCase{904, "4", "2"},
                          LogCase{29665, "2", "2"}, LogCase{34689, "", ""}, LogCase{69064, "2,8", "8"},
                          LogCase{90321, "2,2", "2,4"}, LogCase{104584, "2,8", "2,4"},
                          LogCase{248584, "2,8", "2,4"}, LogCase{300040, "2,8", "8"}, LogCase{374105, "", ""},
                          LogCase{171865, "4", "4"}, LogCase{285160, "32", "32"}, LogCase{318097, "", ""},
                          LogCase{469221, "64", "64"}, LogCase{651784, "2,16", "2,8"}));

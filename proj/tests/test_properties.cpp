#include <gtest/gtest.h>

#include <iostream>

#include "posdiv/invariants.hpp"
#include "posdiv/positive.hpp"

using namespace posdiv;

namespace {

constexpr size_t kSamples = 120;

// table fields (only exceptional dyadic places) and fields whose dyadic
// place lies in PS \ PLS or outside PS
std::vector<long> const property_fields{-184, -248, -399, -632, -759, -799, -959, 776,  904, 29665,
                                        90321, 171865, -4,  -8,   -68,  -292, 28,   60,  120, 248};

FieldData field_for(std::string const & key)
{
    if (key == "cubic")
        return load_field(std::string(POSDIV_TEST_DATA) + "/x3_10x_1.json");
    return quadratic_field(mpz_class(key));
}

class Properties : public ::testing::TestWithParam<std::string>
{
};

} // namespace

TEST_P(Properties, IdentitiesOnRandomSUnits)
{
    FieldData const F = field_for(GetParam());
    for (int eta : {32, 48}) {
        LogOptions lo;
        lo.eta = eta;
        LogContext const ctx = build_log_context(F, lo);
        PlaceClassification const C = classify_places(ctx);
        auto const samples = random_s_units(F, kSamples, 0x5eed + uint64_t(eta));
        ASSERT_EQ(samples.size(), kSamples);
        for (auto const & c : check_invariants(ctx, C, samples)) {
            EXPECT_TRUE(c.ok()) << F.id << " eta " << eta << ": " << c.name << ": " << c.first_failure;
            // the place-wise identities only see places of the matching kind
            if (c.name.find("PS") == std::string::npos)
                EXPECT_GE(c.samples, kSamples) << c.name;
        }
    }
}

std::vector<std::string> property_keys()
{
    std::vector<std::string> k;
    for (long D : property_fields)
        k.push_back(std::to_string(D));
    k.push_back("cubic");
    return k;
}

INSTANTIATE_TEST_SUITE_P(Fields, Properties, ::testing::ValuesIn(property_keys()), [](auto const & info) {
    std::string s = info.param;
    return s[0] == '-' ? "m" + s.substr(1) : (s == "cubic" ? s : "p" + s);
});

TEST(PropertiesCoverage, PlacewiseIdentitiesOnTenFields)
{
    // at least 10 fields carry >= 100 samples of the sign/valuation identities
    size_t covered = 0;
    for (auto const & key : property_keys()) {
        FieldData const F = field_for(key);
        LogContext const ctx = build_log_context(F);
        PlaceClassification const C = classify_places(ctx);
        size_t n = 0;
        for (auto const & c : check_invariants(ctx, C, random_s_units(F, kSamples, 11)))
            if (c.name.find("PS") != std::string::npos) {
                EXPECT_TRUE(c.ok()) << key << ": " << c.name;
                n += c.samples;
            }
        std::cout << "  " << key << ": " << n << " place-wise sign checks\n";
        covered += n >= kSamples;
    }
    EXPECT_GE(covered, 10u);
}

TEST(PropertiesCoverage, ValuationParityIdentityExercised)
{
    // Q(sqrt(-399)) has 3 | 399 ramified with norm 3 = 3 mod 4 in its factor base
    FieldData const F = quadratic_field(-399);
    LogContext const ctx = build_log_context(F);
    PlaceClassification const C = classify_places(ctx);
    size_t n = 0;
    for (bool b : C.ps_not_pls)
        n += b;
    if (n == 0)
        GTEST_SKIP() << "no place of PS\\PLS in the factor base";
    auto const checks = check_invariants(ctx, C, random_s_units(F, kSamples, 7));
    for (auto const & c : checks)
        EXPECT_TRUE(c.ok()) << c.name << ": " << c.first_failure;
}

TEST(PropertiesCoverage, SamplesAreGenuineElements)
{
    FieldData const F = quadratic_field(-184);
    auto const s = random_s_units(F, 20, 3);
    size_t nontrivial = 0;
    for (auto const & x : s) {
        // every sample is an S-unit: its norm is +-2^k times norms of places in S
        EXPECT_FALSE(F.K->is_zero(x.value));
        for (int e : x.exponents)
            nontrivial += e != 0;
    }
    EXPECT_GT(nontrivial, 0u);
}

/* ---- invariance under the choices the construction makes ---- */

namespace {

struct Invariants
{
    AbelianGroupType cl_pos, cl_log;
};

Invariants at(FieldData const & F, int eta, size_t primitive, long unit)
{
    AnalysisOptions o;
    o.primitive_choice = primitive;
    o.deg_unit = unit;
    AnalysisResult const R = analyze_at(F, eta, o);
    return {*R.cl_pos, R.cl_log};
}

class Invariance : public ::testing::TestWithParam<long>
{
};

} // namespace

TEST_P(Invariance, PrecisionPrimitiveDivisorAndDegreeUnit)
{
    long const D = GetParam();
    QuadraticOptions qo;
    qo.extra_primitive_primes = 1;
    FieldData const F = quadratic_field(D, qo);
    Invariants const base = at(F, 32, 0, 1);

    Invariants const more = at(F, 48, 0, 1);
    EXPECT_EQ(base.cl_pos, more.cl_pos) << "eta";
    EXPECT_EQ(base.cl_log, more.cl_log) << "eta";

    LogContext const ctx = build_log_context(F);
    ASSERT_GE(ctx.primitive_candidates.size(), 2u) << "need an alternative primitive divisor";
    Invariants const alt = at(F, 32, 1, 1);
    EXPECT_EQ(base.cl_pos, alt.cl_pos) << "primitive divisor";
    EXPECT_EQ(base.cl_log, alt.cl_log) << "primitive divisor";

    Invariants const scaled = at(F, 32, 0, 3);
    EXPECT_EQ(base.cl_pos, scaled.cl_pos) << "deg unit";
    EXPECT_EQ(base.cl_log, scaled.cl_log) << "deg unit";

    // the enlarged factor base does not change anything either
    FieldData const plain = quadratic_field(D);
    Invariants const p = at(plain, 48, 0, 1);
    EXPECT_EQ(base.cl_pos, p.cl_pos) << "factor base";
    EXPECT_EQ(base.cl_log, p.cl_log) << "factor base";
}

INSTANTIATE_TEST_SUITE_P(Fields, Invariance, ::testing::Values(-184, -399, -959, 904, 69064), [](auto const & info) {
    long const D = info.param;
    return (D < 0 ? "m" : "p") + std::to_string(D < 0 ? -D : D);
});

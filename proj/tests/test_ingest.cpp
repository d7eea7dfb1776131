#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "posdiv/positive.hpp"

using namespace posdiv;
using json = nlohmann::json;
using Kind = IngestError::Kind;

namespace {

std::string const fixture = std::string(POSDIV_TEST_DATA) + "/x3_10x_1.json";

json base_doc()
{
    std::ifstream in(fixture);
    return json::parse(in);
}

Kind ingest_kind(json const & doc)
{
    try {
        parse_field(doc.dump());
    } catch (IngestError const & e) {
        return e.kind();
    }
    ADD_FAILURE() << "document was accepted";
    return Kind::schema;
}

} // namespace

TEST(Ingest, CubicFixtureLoads)
{
    FieldData const F = load_field(fixture);
    EXPECT_EQ(F.degree(), 3u);
    EXPECT_EQ(F.r, 3);
    EXPECT_EQ(F.c, 0);
    EXPECT_EQ(F.disc, 3973);
    EXPECT_EQ(F.num_dyadic, 2u);
    EXPECT_EQ(F.places.size(), 2u);
    // torsion plus r + c - 1 + |S| generators
    EXPECT_EQ(F.tracked.size(), 5u);
    EXPECT_EQ(F.tracked.front().role, ElementRole::torsion);
    EXPECT_TRUE(F.class_group.trivial());
}

TEST(Ingest, CubicFixtureAnalysis)
{
    AnalysisResult const R = analyze_field(load_field(fixture));
    EXPECT_EQ(R.num_dyadic, 2u);
    EXPECT_EQ(R.num_pe, 2u);
    EXPECT_EQ(R.tcase, TheoremCase::exceptional);
    ASSERT_TRUE(R.cl_pos);
    EXPECT_TRUE(R.cl_pos_routes_agree);
    ASSERT_TRUE(R.rk2);
    EXPECT_EQ(size_t(*R.rk2), R.cl_pos->rank2());
}

TEST(Ingest, RoundTripThroughText)
{
    FieldData const a = load_field(fixture);
    FieldData const b = parse_field(base_doc().dump(2));
    EXPECT_EQ(a.valuations, b.valuations);
    EXPECT_EQ(a.id, b.id);
}

TEST(Ingest, UnknownKeysRejected)
{
    json d = base_doc();
    d["comment"] = "hand made";
    EXPECT_EQ(ingest_kind(d), Kind::schema);

    d = base_doc();
    d["dyadic_places"][0]["note"] = 1;
    EXPECT_EQ(ingest_kind(d), Kind::schema);
}

TEST(Ingest, MissingKeysRejected)
{
    for (char const * k : {"poly", "two_units", "dyadic_places", "real_roots", "schema"}) {
        json d = base_doc();
        d.erase(k);
        EXPECT_EQ(ingest_kind(d), Kind::schema) << k;
    }
}

TEST(Ingest, SchemaTagAndMalformedInput)
{
    json d = base_doc();
    d["schema"] = "posdiv-field/2";
    EXPECT_EQ(ingest_kind(d), Kind::schema);
    EXPECT_THROW(parse_field("{ not json"), IngestError);
    d = base_doc();
    d["poly"] = json::array({1, -10, 0, 2});
    EXPECT_EQ(ingest_kind(d), Kind::schema);
}

TEST(Ingest, WrongDiscriminantOrSignature)
{
    json d = base_doc();
    d["disc"] = 3972;
    EXPECT_EQ(ingest_kind(d), Kind::schema);
    d = base_doc();
    d["signature"] = json::array({1, 1});
    EXPECT_EQ(ingest_kind(d), Kind::schema);
    d = base_doc();
    d["real_roots"][0] = json::array({"-3", "-2"});
    EXPECT_EQ(ingest_kind(d), Kind::schema);
}

TEST(Ingest, TamperedLocalFactor)
{
    json d = base_doc();
    mpz_class c(d["dyadic_places"][0]["local_factor"][0].get<std::string>());
    c += 1;
    d["dyadic_places"][0]["local_factor"][0] = c.get_str();
    EXPECT_EQ(ingest_kind(d), Kind::local_factor_mismatch);

    d = base_doc();
    d["dyadic_places"][1]["f"] = 1;
    EXPECT_EQ(ingest_kind(d), Kind::schema); // degree no longer e*f

    d = base_doc();
    d["dyadic_places"].erase(1);
    EXPECT_EQ(ingest_kind(d), Kind::local_factor_mismatch);
}

TEST(Ingest, TamperedGenerators)
{
    json d = base_doc();
    d["dyadic_places"][0]["gens"] = d["dyadic_places"][1]["gens"];
    EXPECT_EQ(ingest_kind(d), Kind::local_factor_mismatch);
}

TEST(Ingest, TamperedUnits)
{
    json d = base_doc();
    d["two_units"].erase(3);
    EXPECT_EQ(ingest_kind(d), Kind::unit_rank_mismatch);

    d = base_doc();
    d["two_units"][3] = d["two_units"][2];
    EXPECT_EQ(ingest_kind(d), Kind::unit_rank_mismatch); // dependent

    d = base_doc();
    d["two_units"][1] = json::array({3, 0, 0});
    EXPECT_EQ(ingest_kind(d), Kind::unit_rank_mismatch); // 3 is not an S-unit here

    // replacing a generator by its square leaves a subgroup of even index
    d = base_doc();
    FieldData const F = load_field(fixture);
    QPoly const u = F.tracked[1].value;
    auto const sq = to_integral_basis(F, F.K->mul(u, u));
    json coords = json::array();
    for (auto const & q : sq)
        coords.push_back(q.get_str());
    d["two_units"][0] = coords;
    EXPECT_EQ(ingest_kind(d), Kind::unit_rank_mismatch);
}

TEST(Ingest, TamperedWitness)
{
    json d = base_doc();
    d["class_relations"] = json::array({json::array({3, 0, 0})});
    EXPECT_EQ(ingest_kind(d), Kind::principality_witness_invalid);
}

TEST(Ingest, ClassNumberMismatch)
{
    json d = base_doc();
    d["class_number"] = 2;
    EXPECT_EQ(ingest_kind(d), Kind::relation_index_mismatch);
}

TEST(Ingest, ErrorIdentityInMessage)
{
    json d = base_doc();
    d["class_number"] = 2;
    try {
        parse_field(d.dump());
        FAIL();
    } catch (IngestError const & e) {
        EXPECT_NE(std::string(e.what()).find(IngestError::name(Kind::relation_index_mismatch)), std::string::npos);
    }
}

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "posdiv/fields.hpp"

namespace posdiv {

namespace {

using json = nlohmann::json;
using K = IngestError::Kind;

[[noreturn]] void schema(std::string const & what)
{
    throw IngestError(K::schema, what);
}

void check_keys(json const & j, std::set<std::string> const & allowed, std::set<std::string> const & required,
                std::string const & where)
{
    if (!j.is_object())
        schema(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            schema("unknown key '" + it.key() + "' in " + where);
    for (auto const & k : required)
        if (!j.contains(k))
            schema("missing key '" + k + "' in " + where);
}

mpz_class to_integer(json const & j, std::string const & where)
{
    if (j.is_number_integer())
        return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0)
            schema(where + ": '" + j.get<std::string>() + "' is not an integer");
        return z;
    }
    schema(where + ": expected an integer");
}

mpq_class to_rational(json const & j, std::string const & where)
{
    if (j.is_number_integer())
        return mpq_class(to_integer(j, where));
    if (!j.is_string())
        schema(where + ": expected an integer or \"a/b\"");
    std::string const s = j.get<std::string>();
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        schema(where + ": '" + s + "' is not a rational");
    q.canonicalize();
    return q;
}

std::vector<mpq_class> rational_list(json const & j, std::string const & where)
{
    if (!j.is_array())
        schema(where + " must be a list");
    std::vector<mpq_class> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(to_rational(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

ZPoly integer_list(json const & j, std::string const & where)
{
    if (!j.is_array() || j.empty())
        schema(where + " must be a nonempty list");
    ZPoly out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(to_integer(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

int small_int(json const & j, std::string const & where, int lo, int hi)
{
    if (!j.is_number_integer())
        schema(where + ": expected an integer");
    long long v = j.get<long long>();
    if (v < lo || v > hi)
        schema(where + ": value " + std::to_string(v) + " out of range");
    return int(v);
}

QPoly element(FieldData const & F, json const & j, std::string const & where)
{
    std::vector<mpq_class> c = rational_list(j, where);
    if (c.size() != F.integral_basis.size())
        schema(where + ": element has " + std::to_string(c.size()) + " coordinates, expected " +
               std::to_string(F.integral_basis.size()));
    QPoly x = from_integral_basis(F, c);
    if (F.K->is_zero(x))
        schema(where + ": zero element");
    return x;
}

/// "gens": [p, element] (or just the element), the second half of a two-element representation.
QPoly place_generator(FieldData const & F, json const & j, mpz_class const & p, std::string const & where)
{
    if (!j.is_array())
        schema(where + " must be a list");
    if (j.size() == 2 && j[1].is_array()) {
        if (to_integer(j[0], where + "[0]") != p)
            schema(where + ": first generator must be the rational prime");
        return element(F, j[1], where + "[1]");
    }
    return element(F, j, where);
}

LocalFactor local_factor(json const & j, mpz_class const & p, json const & e, json const & f, json const & prec,
                         std::string const & where)
{
    LocalFactor L;
    L.p = p;
    L.e = small_int(e, where + ".e", 1, 64);
    L.f = small_int(f, where + ".f", 1, 64);
    L.factor = integer_list(j, where + ".local_factor");
    L.precision = small_int(prec, where + ".precision", 1, 100000);
    if (L.factor.back() != 1)
        schema(where + ".local_factor must be monic");
    if (L.factor.size() != size_t(L.e * L.f) + 1)
        schema(where + ".local_factor has degree " + std::to_string(L.factor.size() - 1) + ", expected e*f = " +
               std::to_string(L.e * L.f));
    return L;
}

} // namespace

FieldData parse_field(std::string const & text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const & e) {
        schema(std::string("malformed document: ") + e.what());
    }
    check_keys(doc,
               {"schema", "id", "poly", "integral_basis", "signature", "disc", "class_number", "class_group",
                "class_relations", "two_units", "torsion_order", "torsion_generator", "dyadic_places", "real_roots"},
               {"schema", "poly", "integral_basis", "signature", "disc", "class_group", "two_units", "torsion_order",
                "dyadic_places", "real_roots"},
               "document");
    if (doc["schema"] != "posdiv-field/1")
        schema("unsupported schema tag " + doc["schema"].dump());

    FieldData F;
    ZPoly f = integer_list(doc["poly"], "poly");
    if (f.back() != 1 || f.size() < 2)
        schema("poly must be monic of degree >= 1");
    F.K = std::make_shared<NumberField const>(f);
    F.id = doc.contains("id") ? doc["id"].get<std::string>() : poly_to_string(f);

    json const & ib = doc["integral_basis"];
    if (!ib.is_array() || ib.size() != F.degree())
        schema("integral_basis must list exactly deg f elements");
    for (size_t i = 0; i < ib.size(); ++i)
        F.integral_basis.push_back(F.K->reduce(rational_list(ib[i], "integral_basis[" + std::to_string(i) + "]")));

    json const & sig = doc["signature"];
    if (!sig.is_array() || sig.size() != 2)
        schema("signature must be [r, c]");
    F.r = small_int(sig[0], "signature[0]", 0, 1000);
    F.c = small_int(sig[1], "signature[1]", 0, 1000);
    F.disc = to_integer(doc["disc"], "disc");
    F.torsion_order = small_int(doc["torsion_order"], "torsion_order", 2, 1 << 20);
    if (F.torsion_order % 2 != 0)
        schema("torsion_order must be even");

    json const & rr = doc["real_roots"];
    if (!rr.is_array())
        schema("real_roots must be a list");
    for (size_t i = 0; i < rr.size(); ++i) {
        auto iv = rational_list(rr[i], "real_roots[" + std::to_string(i) + "]");
        if (iv.size() != 2 || !(iv[0] < iv[1]))
            schema("real_roots[" + std::to_string(i) + "] must be an interval [lo, hi] with lo < hi");
        F.real_roots.push_back(RealRoot{iv[0], iv[1]});
    }

    // places: dyadic first
    json const & dp = doc["dyadic_places"];
    if (!dp.is_array() || dp.empty())
        schema("dyadic_places must be a nonempty list");
    for (size_t i = 0; i < dp.size(); ++i) {
        std::string const w = "dyadic_places[" + std::to_string(i) + "]";
        check_keys(dp[i], {"e", "f", "gens", "local_factor", "precision"}, {"e", "f", "gens", "local_factor", "precision"},
                   w);
        FinitePlace P;
        P.local = local_factor(dp[i]["local_factor"], 2, dp[i]["e"], dp[i]["f"], dp[i]["precision"], w);
        P.generator = place_generator(F, dp[i]["gens"], 2, w + ".gens");
        P.label = "q" + std::to_string(i + 1);
        F.places.push_back(P);
    }
    F.num_dyadic = F.places.size();

    // tracked: torsion, then 2-units, then class witnesses and extra relations
    TrackedElement tor;
    tor.role = ElementRole::torsion;
    tor.label = "zeta";
    if (doc.contains("torsion_generator"))
        tor.value = element(F, doc["torsion_generator"], "torsion_generator");
    else if (F.torsion_order == 2)
        tor.value = F.K->from_rational(-1);
    else
        schema("torsion_generator is required when torsion_order > 2");
    F.tracked.push_back(tor);

    json const & tu = doc["two_units"];
    if (!tu.is_array())
        schema("two_units must be a list");
    for (size_t i = 0; i < tu.size(); ++i)
        F.tracked.push_back({element(F, tu[i], "two_units[" + std::to_string(i) + "]"), ElementRole::two_unit,
                             "u" + std::to_string(i + 1)});

    json const & cg = doc["class_group"];
    if (!cg.is_array())
        schema("class_group must be a list");
    for (size_t i = 0; i < cg.size(); ++i) {
        std::string const w = "class_group[" + std::to_string(i) + "]";
        check_keys(cg[i], {"p", "gens", "order", "witness", "e", "f", "local_factor", "local_precision"},
                   {"p", "gens", "order", "witness", "e", "f", "local_factor", "local_precision"}, w);
        mpz_class const p = to_integer(cg[i]["p"], w + ".p");
        if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
            schema(w + ".p must be an odd prime");
        FinitePlace P;
        P.local = local_factor(cg[i]["local_factor"], p, cg[i]["e"], cg[i]["f"], cg[i]["local_precision"], w);
        P.generator = place_generator(F, cg[i]["gens"], p, w + ".gens");
        P.label = "p" + p.get_str() + "_" + std::to_string(i + 1);
        F.places.push_back(P);
        small_int(cg[i]["order"], w + ".order", 1, 1 << 30);
        F.tracked.push_back({element(F, cg[i]["witness"], w + ".witness"), ElementRole::relation,
                             "w" + std::to_string(i + 1)});
    }
    if (doc.contains("class_relations")) {
        json const & cr = doc["class_relations"];
        if (!cr.is_array())
            schema("class_relations must be a list");
        for (size_t i = 0; i < cr.size(); ++i)
            F.tracked.push_back({element(F, cr[i], "class_relations[" + std::to_string(i) + "]"), ElementRole::relation,
                                 "x" + std::to_string(i + 1)});
    }

    std::optional<mpz_class> h;
    if (doc.contains("class_number"))
        h = to_integer(doc["class_number"], "class_number");
    verify_field(F, h);

    // a 2-unit without dyadic valuation is an ordinary unit
    for (size_t t = 0; t < F.tracked.size(); ++t)
        if (F.tracked[t].role == ElementRole::two_unit) {
            bool any = false;
            for (size_t q = 0; q < F.num_dyadic; ++q)
                any = any || F.valuations[t][q] != 0;
            if (!any)
                F.tracked[t].role = ElementRole::unit;
        }
    return F;
}

FieldData load_field(std::string const & path)
{
    std::ifstream in(path);
    if (!in)
        throw IngestError(K::schema, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_field(ss.str());
}

} // namespace posdiv

// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "brute_force.hpp"
#include "posdiv/invariants.hpp"
#include "posdiv/positive.hpp"
#include "table_data.hpp"

using namespace posdiv;

namespace {

AbelianGroupType G(char const * s)
{
    return AbelianGroupType::parse(s);
}

std::string S(AbelianGroupType const & g)
{
    return g.to_string();
}

std::string S(std::optional<AbelianGroupType> const & g)
{
    return g ? g->to_string() : "n/a";
}

struct Criterion
{
    int number;
    std::string title;
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, std::string const & what)
    {
        if (!ok)
            pass = false;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(std::string const & what) { details.push_back("     " + what); }
};

std::map<long, AnalysisResult> cache;

AnalysisResult const & analysis(long D)
{
    auto it = cache.find(D);
    if (it == cache.end())
        it = cache.emplace(D, analyze_field(quadratic_field(D))).first;
    return it->second;
}

void golden_rows(Criterion & c, std::vector<table::Row> const & rows)
{
    for (auto const & t : rows) {
        AnalysisResult const & R = analysis(t.D);
        std::ostringstream os;
        bool ok = true;
        auto field = [&](char const * name, std::string const & got, std::string const & want) {
            if (got != want) {
                ok = false;
                os << " " << name << " " << got << " (table " << want << ")";
            }
        };
        field("|P|", std::to_string(R.num_dyadic), std::to_string(t.p));
        field("|PE|", std::to_string(R.num_pe), std::to_string(t.pe));
        field("Cl'", S(R.cl_prime), S(G(t.cl_prime)));
        field("Cl~", S(R.cl_log), S(G(t.cl_log)));
        field("Cl^pos", S(R.cl_pos), S(G(t.cl_pos)));
        field("rk2", R.rk2 ? std::to_string(*R.rk2) : "n/a", std::to_string(t.rk2));
        std::ostringstream head;
        head << "d = " << t.D << ": Cl^pos " << S(R.cl_pos) << ", rk2 " << (R.rk2 ? std::to_string(*R.rk2) : "n/a");
        c.check(ok, head.str() + (ok ? "" : ";" + os.str()));
    }
}

Mat2 random_matrix(std::mt19937_64 & rng)
{
    size_t const r = 1 + rng() % 3, cols = 1 + rng() % 3;
    Mat2 m(r, cols, 3);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < cols; ++j)
            m.set(i, j, uint64_t(rng() % 8));
    return m;
}

} // namespace

int main()
{
    auto const t0 = std::chrono::steady_clock::now();
    std::vector<Criterion> out;

    {
        Criterion c{1, "imaginary quadratic rows (|P|, |PE|, Cl', Cl~, Cl^pos, rk2)"};
        golden_rows(c, table::imaginary());
        out.push_back(c);
    }
    {
        Criterion c{2, "real quadratic rows (|P|, |PE|, Cl', Cl~, Cl^pos, rk2)"};
        golden_rows(c, table::real());
        out.push_back(c);
    }
    {
        Criterion c{3, "degree-zero positive classes"};
        for (auto const * rows : {&table::imaginary(), &table::real()})
            for (auto const & t : *rows) {
                AnalysisResult const & R = analysis(t.D);
                bool const sub = R.cl_pos_deg0 && R.cl_pos && R.cl_pos_deg0->is_subgroup_type_of(*R.cl_pos);
                std::ostringstream os;
                os << "d = " << t.D << ": kernel " << S(R.cl_pos_deg0) << " in Cl^pos " << S(R.cl_pos)
                   << "; A'' " << S(R.cl_pos_deg0_a2) << (R.deg0_agree ? " (agrees)" : " (differs)") << "; table "
                   << S(G(t.cl_pos_deg0));
                if (!G(t.cl_pos_deg0).is_subgroup_type_of(G(t.cl_pos)))
                    os << " [table value is not a subgroup type of the table's Cl^pos]";
                c.check(sub, os.str());
            }
        for (long D : {-184L, 776L, -399L}) {
            AnalysisResult const & R = analysis(D);
            char const * want = nullptr;
            for (auto const * rows : {&table::imaginary(), &table::real()})
                for (auto const & t : *rows)
                    if (t.D == D)
                        want = t.cl_pos_deg0;
            bool const ok = R.cl_pos_deg0 == G(want) && R.cl_pos_deg0_a2 == G(want);
            c.check(ok, "d = " + std::to_string(D) + ": kernel " + S(R.cl_pos_deg0) + ", A'' " + S(R.cl_pos_deg0_a2) +
                                ", table " + S(G(want)) + " (exact match required)");
        }
        out.push_back(c);
    }
    {
        Criterion c{4, "WK2 deduction"};
        struct Case
        {
            long D;
            char const * k2o;
            uint64_t index;
            char const * wk2;
        };
        for (Case const k : {Case{-759, "2,18", 6, "6"}, Case{-799, "2,4", 2, "2,2"}, Case{-184, "2", 1, "2"}}) {
            AnalysisOptions o;
            o.k2o = G(k.k2o);
            o.index = k.index;
            std::string got;
            try {
                AnalysisResult const R = analyze_field(quadratic_field(k.D), o);
                got = R.wk2 ? S(*R.wk2) : "ambiguous";
                got += " (rk2 " + (R.rk2 ? std::to_string(*R.rk2) : std::string("n/a")) + ")";
                c.check(R.wk2 == G(k.wk2), "d = " + std::to_string(k.D) + ", K2O [" + k.k2o + "], index " +
                                                   std::to_string(k.index) + ": " + got + ", expected " + S(G(k.wk2)));
            } catch (std::exception const & e) {
                c.check(false, "d = " + std::to_string(k.D) + ": " + e.what());
            }
        }
        out.push_back(c);
    }
    {
        Criterion c{5, "rk2 equals the 2-rank of Cl^pos"};
        for (auto const * rows : {&table::imaginary(), &table::real()})
            for (auto const & t : *rows) {
                AnalysisResult const & R = analysis(t.D);
                bool const ok = R.rk2 && R.cl_pos && size_t(*R.rk2) == R.cl_pos->rank2();
                c.check(ok, "d = " + std::to_string(t.D) + ": rk2 " + (R.rk2 ? std::to_string(*R.rk2) : "n/a") +
                                    ", rank " + std::to_string(R.cl_pos ? R.cl_pos->rank2() : 0));
            }
        out.push_back(c);
    }
    {
        Criterion c{6, "property suites on random S-units"};
        std::vector<long> const fields{-184, -248, -399, -632, -759, -799, -959, 776, 904, 29665,
                                       90321, 171865, -4,  -8,   -68,  -292, 28,   60,  120, 248};
        size_t const samples = 120;
        std::map<std::string, size_t> fields_covered;
        c.note("columns: passed/checked for sum of v~ deg, deg div~, sign product, parity on PS\\PLS, trivial off PS, "
               "positivity");
        for (long D : fields) {
            FieldData const F = quadratic_field(D);
            LogContext const ctx = build_log_context(F);
            PlaceClassification const C = classify_places(ctx);
            auto const checks = check_invariants(ctx, C, random_s_units(F, samples, 1000 + uint64_t(D)));
            std::ostringstream os;
            bool ok = true;
            for (auto const & k : checks) {
                ok = ok && k.ok();
                if (k.samples >= 100)
                    ++fields_covered[k.name];
                os << " " << k.samples - k.failures << "/" << k.samples;
                if (!k.ok())
                    os << " (" << k.name << ": " << k.first_failure << ")";
            }
            c.check(ok, "d = " + std::to_string(D) + ":" + os.str());
        }
        for (auto const & [name, n] : fields_covered)
            c.check(n >= 10, name + ": >= 100 samples on " + std::to_string(n) + " fields");
        out.push_back(c);
    }
    {
        Criterion c{7, "invariance under precision, primitive divisor and degree unit"};
        for (long D : {-184L, -399L, -959L, 904L, 69064L}) {
            QuadraticOptions qo;
            qo.extra_primitive_primes = 1;
            FieldData const F = quadratic_field(D, qo);
            auto run = [&](int eta, size_t prim, long unit) {
                AnalysisOptions o;
                o.primitive_choice = prim;
                o.deg_unit = unit;
                AnalysisResult const R = analyze_at(F, eta, o);
                return S(R.cl_pos) + " " + S(R.cl_log);
            };
            std::string const base = run(32, 0, 1);
            std::string const a = run(48, 0, 1), b = run(32, 1, 1), d = run(32, 0, 3);
            c.check(base == a && base == b && base == d,
                    "d = " + std::to_string(D) + ": (Cl^pos, Cl~) " + base + " | eta+16 " + a + " | alt. primitive " +
                            b + " | deg x 3 " + d);
        }
        out.push_back(c);
    }
    {
        Criterion c{8, "normal forms vs brute force (200 random matrices mod 8)"};
        std::mt19937_64 rng(2024);
        size_t ck_ok = 0, ns_ok = 0;
        for (int t = 0; t < 200; ++t) {
            Mat2 const m = random_matrix(rng);
            std::vector<ModVec> rows;
            for (size_t i = 0; i < m.rows(); ++i)
                rows.push_back(m.row(i));
            ck_ok += cokernel(m, true).exponents == brute::quotient_exponents(rows, m.cols(), 3);
            ns_ok += brute::span(nullspace_mod(m), m.cols(), 3) == brute::kernel(m);
        }
        c.check(ck_ok == 200, "SNF cokernel: " + std::to_string(ck_ok) + "/200");
        c.check(ns_ok == 200, "nullspace: " + std::to_string(ns_ok) + "/200");
        out.push_back(c);
    }
    {
        Criterion c{9, "cubic field x^3 - 10x + 1"};
        try {
            FieldData const F = load_field(std::string(POSDIV_TEST_DATA) + "/x3_10x_1.json");
            c.note("ingestion file passed verification");
            AnalysisResult const R = analyze_field(F);
            c.check(R.num_dyadic == 2, "|P| = " + std::to_string(R.num_dyadic) + " (expected 2)");
            c.check(R.num_pe == 2, "|PE| = " + std::to_string(R.num_pe) + " (expected 2)");
            c.check(R.cl_pos == G("2"), "Cl^pos = " + S(R.cl_pos) + " (expected [ 2 ])");
            c.check(R.rk2 == 1, "rk2 = " + (R.rk2 ? std::to_string(*R.rk2) : std::string("n/a")) + " (expected 1)");
            c.note("Cl' " + S(R.cl_prime) + ", Cl~ " + S(R.cl_log) + ", A' and direct routes " +
                   (R.cl_pos_routes_agree ? "agree" : "differ"));
        } catch (std::exception const & e) {
            c.check(false, std::string("ingestion or analysis failed: ") + e.what());
        }
        out.push_back(c);
    }

    int failed = 0;
    for (auto const & c : out) {
        std::cout << "criterion " << c.number << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << '\n';
        for (auto const & d : c.details)
            std::cout << "    " << d << '\n';
        failed += !c.pass;
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "summary: " << out.size() - size_t(failed) << " PASS, " << failed << " FAIL (" << secs << " s)\n";
    return failed;
}

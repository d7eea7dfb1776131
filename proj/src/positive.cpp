#include "posdiv/positive.hpp"

#include <algorithm>
#include <functional>

namespace posdiv {

namespace {

/// Bits i >= 1 of a sign vector as 0/1 coefficients of g_2..g_m.
std::vector<uint64_t> sign_bits(SignVector const & s)
{
    std::vector<uint64_t> b;
    for (size_t i = 1; i < s.size(); ++i)
        b.push_back(s[i] == -1 ? 1 : 0);
    return b;
}

void multiply_into(SignVector & acc, SignVector const & s, uint64_t exponent)
{
    if (exponent & 1)
        for (size_t i = 0; i < acc.size(); ++i)
            acc[i] *= s[i];
}

/// (-1)^{chi(p)} in the first slot, the remaining slots trivial.
SignVector place_sign(PlaceClassification const & C, Divisor const & a)
{
    SignVector e(C.m(), 1);
    if (!e.empty())
        e[0] = positive_sign_check(a, SignVector(C.m(), 1), C);
    return e;
}

std::vector<size_t> places_outside_pe(LogContext const & ctx, PlaceClassification const & C)
{
    std::vector<size_t> out;
    for (size_t i = 0; i < ctx.num_places(); ++i)
        if (std::find(C.pe.begin(), C.pe.end(), i) == C.pe.end())
            out.push_back(i);
    return out;
}

void require_exceptional(PlaceClassification const & C, char const * what)
{
    if (C.e() == 0)
        throw LogError(std::string(what) + ": no exceptional dyadic place");
}

} // namespace

ExcUnitBasis exceptional_units(LogContext const & ctx, PlaceClassification const & C,
                               std::vector<SignVector> const & tracked_signs)
{
    FieldData const & F = ctx.field();
    size_t const nt = F.tracked.size();
    std::vector<size_t> const cols = places_outside_pe(ctx, C);
    ExcUnitBasis E;

    E.torsion.assign(nt, 0);
    E.torsion[0] = 1;

    // left kernel of the valuations outside PE over the non-torsion elements
    size_t const n = nt - 1;
    std::vector<ModVec> kernel;
    if (cols.empty()) {
        for (size_t i = 0; i < n; ++i) {
            ModVec x(n, 0);
            x[i] = 1;
            kernel.push_back(x);
        }
    } else {
        Mat2 M(n, cols.size(), ctx.bits);
        for (size_t t = 1; t < nt; ++t)
            for (size_t k = 0; k < cols.size(); ++k)
                M.set(t - 1, k, ctx.vt[t][cols[k]]);
        SmithForm S = snf(M);
        for (size_t i = 0; i < n; ++i)
            if (i >= S.diag.size() || S.diag[i] >= ctx.bits)
                kernel.push_back(S.U.row(i));
    }
    size_t const expected = size_t(F.unit_rank()) + C.e();
    if (kernel.size() != expected)
        throw GrossAlarm("exceptional units have rank " + std::to_string(kernel.size()) + ", expected " +
                         std::to_string(expected) + " at precision " + std::to_string(ctx.eta));
    for (auto const & x : kernel) {
        ModVec full(nt, 0);
        std::copy(x.begin(), x.end(), full.begin() + 1);
        E.generators.push_back(full);
        E.signs.push_back(sign_of_exponents(tracked_signs, full, C.m()));
    }
    E.signs.push_back(tracked_signs[0]);
    return E;
}

PositiveUnits positive_units(ExcUnitBasis const & E, size_t m)
{
    std::vector<std::vector<int>> rows;
    for (auto const & s : E.signs) {
        std::vector<int> r(m, 0);
        for (size_t i = 0; i < m; ++i)
            r[i] = s[i] == -1 ? 1 : 0;
        rows.push_back(r);
    }
    PositiveUnits P;
    P.index_log2 = int(f2_rank(rows));
    P.kernel = f2_left_kernel(rows);
    return P;
}

PositiveClassGroup compute_cl_pos(LogContext const & ctx, PlaceClassification const & C,
                                  std::vector<SignVector> const & tracked_signs)
{
    require_exceptional(C, "compute_cl_pos");
    FieldData const & F = ctx.field();
    PositiveClassGroup P;
    P.divisor_places = places_outside_pe(ctx, C);
    P.sign_columns = C.m() - 1;
    size_t const k = P.divisor_places.size();
    size_t const w = k + P.sign_columns;

    Mat2 R(0, w, ctx.bits);
    for (size_t t = 0; t < F.tracked.size(); ++t) {
        ModVec row(w, 0);
        for (size_t j = 0; j < k; ++j)
            row[j] = ctx.vt[t][P.divisor_places[j]].residue(ctx.bits);
        auto b = sign_bits(tracked_signs[t]);
        std::copy(b.begin(), b.end(), row.begin() + k);
        R.append_row(row);
    }
    for (size_t i = 0; i < P.sign_columns; ++i) {
        ModVec row(w, 0);
        row[k + i] = 2;
        R.append_row(row);
    }
    P.ck = cokernel(R, true);
    if (P.ck.unbounded > 0)
        throw GrossAlarm("positive class group is infinite at precision " + std::to_string(ctx.eta));
    P.type = P.ck.type;
    P.exponents = P.ck.exponents;

    for (size_t g = 0; g < P.exponents.size(); ++g) {
        ModVec x = P.ck.generator(g);
        Divisor d(ctx.num_places(), 0);
        for (size_t j = 0; j < k; ++j)
            d[P.divisor_places[j]] = x[j];
        SignVector s(C.m(), 1);
        for (size_t j = 0; j < k; ++j) {
            Divisor unit(ctx.num_places(), 0);
            unit[P.divisor_places[j]] = 1;
            multiply_into(s, place_sign(C, unit), x[j]);
        }
        for (size_t i = 0; i < P.sign_columns; ++i)
            if (x[k + i] & 1) {
                s[0] = -s[0];
                s[i + 1] = -s[i + 1];
            }
        P.rep_divisors.push_back(d);
        P.rep_signs.push_back(s);
    }
    return P;
}

AbelianGroupType compute_cl_pos_via_a_prime(LogContext const & ctx, LogClassGroup const & G,
                                            PlaceClassification const & C,
                                            std::vector<SignVector> const & tracked_signs, ExcUnitBasis const & E)
{
    require_exceptional(C, "compute_cl_pos_via_a_prime");
    size_t const nu = G.generators.size();
    size_t const m = C.m();
    size_t const w = nu + 1 + (m - 1);
    uint64_t const mask = low_mask(ctx.bits);

    std::vector<SignVector> e_a;
    for (auto const & a : G.generators)
        e_a.push_back(place_sign(C, a));
    Divisor bdiv(ctx.num_places(), 0);
    bdiv[ctx.primitive] = 1;
    SignVector const e_b = place_sign(C, bdiv);

    Mat2 A(0, w, ctx.bits);
    auto push = [&](std::vector<uint64_t> const & a_part, uint64_t lambda, SignVector s) {
        ModVec row(w, 0);
        for (size_t j = 0; j < nu; ++j) {
            row[j] = a_part[j] & mask;
            multiply_into(s, e_a[j], a_part[j]);
        }
        row[nu] = lambda & mask;
        multiply_into(s, e_b, lambda);
        auto b = sign_bits(s);
        std::copy(b.begin(), b.end(), row.begin() + nu + 1);
        A.append_row(row);
    };

    for (size_t j = 0; j < nu; ++j) {
        std::vector<uint64_t> a_part(nu, 0);
        a_part[j] = uint64_t(1) << G.exponents[j];
        push(a_part, 0, sign_of_exponents(tracked_signs, G.order_elements[j], m));
    }
    for (size_t q : C.pe) {
        uint64_t const lambda = degree_ratio(ctx, q);
        Divisor d(ctx.num_places(), 0);
        d[q] = (d[q] + 1) & mask;
        d[ctx.primitive] = (d[ctx.primitive] - lambda) & mask;
        Decomposition dec = decompose_class(ctx, G, d);
        push(dec.coeffs, lambda, sign_of_exponents(tracked_signs, dec.alpha, m));
    }
    for (auto const & s : E.signs)
        push(std::vector<uint64_t>(nu, 0), 0, s);
    for (size_t i = 1; i < m; ++i) {
        ModVec row(w, 0);
        row[nu + i] = 2;
        A.append_row(row);
    }
    Cokernel ck = cokernel(A, true);
    if (ck.unbounded > 0)
        throw GrossAlarm("A' presentation of the positive class group is infinite at precision " +
                         std::to_string(ctx.eta));
    return ck.type;
}

AbelianGroupType character_kernel(std::vector<int> const & exponents, std::vector<uint64_t> const & images, int L)
{
    size_t const w = exponents.size();
    if (L <= 0)
        return AbelianGroupType::from_exponents(exponents);
    uint64_t const mask = low_mask(L);
    size_t k0 = w;
    int v = L;
    for (size_t k = 0; k < w; ++k) {
        int vk = valuation_mod(images[k] & mask, L);
        if (vk < v) {
            v = vk;
            k0 = k;
        }
    }
    if (k0 == w)
        return AbelianGroupType::from_exponents(exponents);

    // kernel basis: e_k - t_k e_k0 (k != k0) and 2^{L-v} e_k0
    int const s = L - v;
    uint64_t const smask = low_mask(s);
    uint64_t const inv = odd_inverse((images[k0] & mask) >> v);
    std::vector<uint64_t> t(w, 0);
    for (size_t k = 0; k < w; ++k)
        if (k != k0)
            t[k] = (((images[k] & mask) >> v) * inv) & smask;

    // the relations 2^{e_j} e_j in kernel-basis coordinates
    std::vector<std::vector<mpz_class>> rows;
    for (size_t j = 0; j < w; ++j) {
        std::vector<mpz_class> z(w, 0);
        mpz_class pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), 2, unsigned(exponents[j]));
        mpz_class num = (j == k0) ? pj : mpz_class(std::to_string(t[j])) * pj;
        if (j != k0)
            z[j] = pj;
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, unsigned(s));
        if (num % den != 0)
            throw LogError("character_kernel: character is not defined on the group");
        z[k0] = num / den;
        rows.push_back(z);
    }
    return integer_cokernel_type(rows, w);
}

Deg0Result compute_cl_pos_deg0(LogContext const & ctx, PlaceClassification const & C, PositiveClassGroup const & P)
{
    require_exceptional(C, "compute_cl_pos_deg0");
    int const v0 = ctx.primitive_valuation;
    int const vpe = int(ctx.deg[C.pe.front()].valuation());
    int const L = std::max(vpe - v0, 0);
    size_t const w = P.exponents.size();
    Deg0Result out;

    std::vector<TwoAdic> degs;
    for (auto const & d : P.rep_divisors)
        degs.push_back(divisor_degree(ctx, d));

    std::vector<uint64_t> images;
    TwoAdic const scale = TwoAdic::from_integer(int64_t(1) << v0);
    for (auto const & d : degs)
        images.push_back(TwoAdic::exact_quotient(d, scale).residue(std::max(L, 1)));
    out.oracle = character_kernel(P.exponents, images, L);

    if (w == 0) {
        out.a_second = AbelianGroupType{};
        out.agree = out.a_second == out.oracle;
        return out;
    }
    std::vector<size_t> order(w);
    for (size_t i = 0; i < w; ++i)
        order[i] = i;
    auto val = [&](size_t i) { return degs[i].is_zero() ? int64_t(ctx.bits) : degs[i].valuation(); };
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return val(a) < val(b); });
    size_t const b1 = order[0];
    int const t = int(std::max<int64_t>(vpe - val(b1), 0));

    Mat2 A(w, 2 * w, ctx.bits);
    A.set(0, 0, uint64_t(1) << std::min(t, ctx.bits - 1));
    A.set(0, w, uint64_t(1) << P.exponents[b1]);
    for (size_t i = 1; i < w; ++i) {
        size_t const bi = order[i];
        uint64_t r = 0;
        if (!degs[b1].is_zero())
            r = TwoAdic::exact_quotient(degs[bi], degs[b1]).residue(ctx.bits);
        A.set(0, i, uint64_t(0) - r);
        A.set(i, i, uint64_t(1));
        A.set(i, w + i, uint64_t(1) << P.exponents[bi]);
    }
    Mat2 K(0, w, ctx.bits);
    for (auto const & x : nullspace_mod(A))
        K.append_row(ModVec(x.begin(), x.begin() + w));
    Cokernel ck = cokernel(K, true);
    out.a_second = ck.type;
    out.a_second_unbounded = ck.unbounded > 0;
    out.agree = !out.a_second_unbounded && out.a_second == out.oracle;
    return out;
}

std::string case_name(TheoremCase c)
{
    switch (c) {
    case TheoremCase::no_pls:
        return "i";
    case TheoremCase::pls_without_pe:
        return "ii";
    case TheoremCase::exceptional:
        return "iii";
    }
    return "?";
}

WildKernelRank wild_kernel_rank(PlaceClassification const & C, AbelianGroupType const & cl_log,
                                std::optional<AbelianGroupType> const & cl_pos)
{
    if (C.e() > 0) {
        if (!cl_pos)
            throw LogError("wild_kernel_rank: exceptional case needs the positive class group");
        return {TheoremCase::exceptional, int(cl_pos->rank2())};
    }
    if (C.real == 0)
        return {TheoremCase::no_pls, int(cl_log.rank2())};
    return {TheoremCase::pls_without_pe, std::nullopt};
}

Primitivity field_primitivity(LogContext const & ctx, PlaceClassification const & C)
{
    Primitivity P;
    for (size_t q : C.pe)
        if (ctx.deg[q].valuation() == ctx.primitive_valuation)
            P.primitive = true;
    // the local criterion only applies when sqrt 2 is not in F, i.e. v0 = 2
    if (ctx.primitive_valuation == 2) {
        bool local = false;
        for (size_t q : C.pe)
            if (!two_is_local_square(ctx, q))
                local = true;
        P.local_check = local;
        P.consistent = local == P.primitive;
    }
    return P;
}

namespace {

/// Descending exponent lists a with a_i <= big_i, sum a = total and, if
/// rank >= 0, exactly rank nonzero parts.
void dominated_types(std::vector<int> const & big, int total, int rank, std::vector<std::vector<int>> & out)
{
    std::vector<int> cur;
    std::function<void(size_t, int, int)> rec = [&](size_t i, int left, int cap) {
        if (left == 0) {
            if (rank < 0 || int(cur.size()) == rank)
                out.push_back(cur);
            return;
        }
        if (i >= big.size())
            return;
        for (int a = std::min({cap, big[i], left}); a >= 1; --a) {
            cur.push_back(a);
            rec(i + 1, left - a, a);
            cur.pop_back();
        }
    };
    rec(0, total, total);
}

} // namespace

Wk2Deduction deduce_wk2(AbelianGroupType const & k2o, uint64_t index, int rk2)
{
    uint64_t const n = k2o.order();
    if (index == 0 || n % index != 0)
        throw WildKernelError("index " + std::to_string(index) + " does not divide |K2(O_F)| = " + std::to_string(n));
    uint64_t const wk = n / index;
    auto parts = k2o.primary_components();
    auto target = AbelianGroupType::from_orders({wk}).primary_components();
    for (auto const & [p, e] : target)
        if (!parts.count(p))
            throw WildKernelError("|WK2| has a prime factor absent from K2(O_F)");
    if (!parts.count(2))
        parts[2] = {};

    // per prime, the admissible exponent lists
    std::vector<std::pair<uint64_t, std::vector<std::vector<int>>>> choices;
    for (auto const & [p, big] : parts) {
        int total = target.count(p) ? target[p][0] : 0;
        if (target.count(p)) {
            total = 0;
            for (int x : target[p])
                total += x;
        }
        std::vector<std::vector<int>> opts;
        dominated_types(big, total, p == 2 ? rk2 : -1, opts);
        if (opts.empty())
            throw WildKernelError("no subgroup of K2(O_F) of the required order and 2-rank");
        choices.emplace_back(p, opts);
    }

    Wk2Deduction out;
    std::vector<uint64_t> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == choices.size()) {
            out.candidates.push_back(AbelianGroupType::from_orders(cur));
            return;
        }
        uint64_t const p = choices[i].first;
        for (auto const & exps : choices[i].second) {
            size_t const mark = cur.size();
            for (int e : exps) {
                uint64_t q = 1;
                for (int k = 0; k < e; ++k)
                    q *= p;
                cur.push_back(q);
            }
            rec(i + 1);
            cur.resize(mark);
        }
    };
    rec(0);
    if (out.candidates.size() == 1)
        out.wk2 = out.candidates.front();
    return out;
}

bool AnalysisResult::same_invariants(AnalysisResult const & o) const
{
    return num_pe == o.num_pe && cl_log == o.cl_log && cl_pos == o.cl_pos && cl_pos_direct == o.cl_pos_direct &&
           cl_pos_deg0 == o.cl_pos_deg0 && cl_pos_deg0_a2 == o.cl_pos_deg0_a2 && rk2 == o.rk2 &&
           primitive == o.primitive;
}

AnalysisResult analyze_at(FieldData const & F, int eta, AnalysisOptions const & opts)
{
    LogOptions lo;
    lo.eta = eta;
    lo.primitive_choice = opts.primitive_choice;
    lo.deg_unit = opts.deg_unit;
    LogContext const ctx = build_log_context(F, lo);

    AnalysisResult R;
    R.id = F.id;
    R.eta = eta;
    R.num_dyadic = F.num_dyadic;
    R.cl = F.class_group;
    R.cl_prime = compute_cl_prime(F);
    LogClassGroup const G = compute_log_class_group(ctx);
    R.cl_log = G.type;

    PlaceClassification const C = classify_places(ctx);
    R.num_pe = C.e();
    if (C.e() > 0) {
        auto const signs = tracked_sign_vectors(ctx, C);
        ExcUnitBasis const E = exceptional_units(ctx, C, signs);
        R.positive_unit_index_log2 = positive_units(E, C.m()).index_log2;
        PositiveClassGroup const P = compute_cl_pos(ctx, C, signs);
        R.cl_pos_direct = P.type;
        R.cl_pos = compute_cl_pos_via_a_prime(ctx, G, C, signs, E);
        R.cl_pos_routes_agree = *R.cl_pos == *R.cl_pos_direct;
        Deg0Result const D = compute_cl_pos_deg0(ctx, C, P);
        R.cl_pos_deg0 = D.oracle;
        if (!D.a_second_unbounded)
            R.cl_pos_deg0_a2 = D.a_second;
        R.deg0_agree = D.agree;
        Primitivity const pr = field_primitivity(ctx, C);
        R.primitive = pr.primitive;
        R.primitivity_consistent = pr.consistent;
    }
    WildKernelRank const wk = wild_kernel_rank(C, R.cl_log, R.cl_pos);
    R.tcase = wk.tcase;
    R.rk2 = wk.rk2;
    if (R.rk2 && opts.k2o && opts.index) {
        Wk2Deduction const d = deduce_wk2(*opts.k2o, *opts.index, *R.rk2);
        R.wk2 = d.wk2;
        R.wk2_candidates = d.candidates;
    }
    return R;
}

AnalysisResult analyze_field(FieldData const & F, AnalysisOptions const & opts)
{
    opts.policy.validate();
    std::optional<AnalysisResult> prev;
    int agreeing = 1;
    for (int attempt = 0;; ++attempt) {
        int const eta = opts.policy.at(attempt);
        if (eta > kMaxTwoAdicPrecision) {
            if (prev && agreeing == 1 && attempt == 1)
                return *prev; // only one pass fits below the precision cap
            throw GrossAlarm("invariants did not stabilize up to " + std::to_string(kMaxTwoAdicPrecision) +
                             " bits of precision");
        }
        bool const last = opts.policy.at(attempt + 1) > kMaxTwoAdicPrecision;
        AnalysisResult cur;
        try {
            cur = analyze_at(F, eta, opts);
        } catch (GrossAlarm const &) {
            if (last)
                throw;
            prev.reset();
            continue;
        } catch (DyadicError const & e) {
            if (last || e.kind() != DyadicError::Kind::precision_exhausted)
                throw;
            prev.reset();
            continue;
        }
        if (prev && prev->same_invariants(cur)) {
            if (++agreeing >= opts.policy.stable_runs)
                return cur;
        } else {
            agreeing = 1;
        }
        prev = cur;
    }
}

} // namespace posdiv

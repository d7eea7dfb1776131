#ifndef POSDIV_POSITIVE_HPP
#define POSDIV_POSITIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "posdiv/logarithmic.hpp"
#include "posdiv/signatures.hpp"

namespace posdiv {

/* Exceptional units as exponent vectors over the tracked elements; the
 * torsion generator is listed separately. */
struct ExcUnitBasis
{
    std::vector<ModVec> generators;
    ModVec torsion;
    std::vector<SignVector> signs; // generators first, torsion last
};

ExcUnitBasis exceptional_units(LogContext const & ctx, PlaceClassification const & C,
                               std::vector<SignVector> const & tracked_signs);

struct PositiveUnits
{
    std::vector<std::vector<int>> kernel; // F_2 combinations of the exceptional generators (torsion last)
    int index_log2 = 0;                   // [E^exc : E^pos] = 2^index_log2
};

PositiveUnits positive_units(ExcUnitBasis const & E, size_t m);

/* Cl^pos presented on divisors of S \ PE together with the sign generators
 * g_2..g_m. */
struct PositiveClassGroup
{
    AbelianGroupType type;
    Cokernel ck;
    std::vector<size_t> divisor_places; // S \ PE, coordinate order
    size_t sign_columns = 0;            // m - 1
    std::vector<Divisor> rep_divisors;  // per SNF generator, over S
    std::vector<SignVector> rep_signs;  // per SNF generator
    std::vector<int> exponents;         // m_i
};

/// Direct presentation by principal pairs of all tracked S-units.
PositiveClassGroup compute_cl_pos(LogContext const & ctx, PlaceClassification const & C,
                                  std::vector<SignVector> const & tracked_signs);

/// The A' construction on Cl~ generators, the primitive divisor and exceptional units.
AbelianGroupType compute_cl_pos_via_a_prime(LogContext const & ctx, LogClassGroup const & G,
                                            PlaceClassification const & C,
                                            std::vector<SignVector> const & tracked_signs,
                                            ExcUnitBasis const & E);

struct Deg0Result
{
    AbelianGroupType oracle;       // kernel of deg: Cl^pos -> deg(Dl_F)/deg(Dl(PE))
    AbelianGroupType a_second;     // transcribed A'' route
    bool a_second_unbounded = false;
    bool agree = false;
};

Deg0Result compute_cl_pos_deg0(LogContext const & ctx, PlaceClassification const & C, PositiveClassGroup const & P);

/// Type of the kernel of x -> sum x_k c_k mod 2^L on (+) Z/2^{e_k}.
AbelianGroupType character_kernel(std::vector<int> const & exponents, std::vector<uint64_t> const & images, int L);

enum class TheoremCase { no_pls, pls_without_pe, exceptional };

std::string case_name(TheoremCase c);

struct WildKernelRank
{
    TheoremCase tcase;
    std::optional<int> rk2; // absent in the unsupported case
};

WildKernelRank wild_kernel_rank(PlaceClassification const & C, AbelianGroupType const & cl_log,
                                std::optional<AbelianGroupType> const & cl_pos);

struct Primitivity
{
    bool primitive = false;
    std::optional<bool> local_check; // 2 not a square at some q in PE with minimal degree valuation
    bool consistent = true;
};

Primitivity field_primitivity(LogContext const & ctx, PlaceClassification const & C);

class WildKernelError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Wk2Deduction
{
    std::optional<AbelianGroupType> wk2; // empty when ambiguous
    std::vector<AbelianGroupType> candidates;
};

/// Structure of WK2 from K2(O_F), the index (K2(O_F) : WK2) and the 2-rank.
Wk2Deduction deduce_wk2(AbelianGroupType const & k2o, uint64_t index, int rk2);

/* ---- the whole pipeline ---- */

struct AnalysisOptions
{
    PrecisionPolicy policy;
    size_t primitive_choice = 0;
    long deg_unit = 1;
    std::optional<AbelianGroupType> k2o;
    std::optional<uint64_t> index;
};

struct AnalysisResult
{
    std::string id;
    int eta = 0;
    size_t num_dyadic = 0;
    size_t num_pe = 0;
    AbelianGroupType cl, cl_prime, cl_log;
    std::optional<AbelianGroupType> cl_pos;          // A' route
    std::optional<AbelianGroupType> cl_pos_direct;   // direct presentation
    std::optional<AbelianGroupType> cl_pos_deg0;     // kernel oracle
    std::optional<AbelianGroupType> cl_pos_deg0_a2;  // transcribed A''
    bool cl_pos_routes_agree = true;
    bool deg0_agree = true;
    TheoremCase tcase = TheoremCase::exceptional;
    std::optional<int> rk2;
    std::optional<bool> primitive;
    bool primitivity_consistent = true;
    std::optional<AbelianGroupType> wk2;
    std::vector<AbelianGroupType> wk2_candidates;
    int positive_unit_index_log2 = 0;

    bool same_invariants(AnalysisResult const & o) const;
};

/// One pass at a fixed precision.
AnalysisResult analyze_at(FieldData const & F, int eta, AnalysisOptions const & opts);
/// Precision growth until two consecutive passes agree; throws GrossAlarm
/// when the precision range is exhausted without stabilizing.
AnalysisResult analyze_field(FieldData const & F, AnalysisOptions const & opts = {});

} // namespace posdiv

#endif

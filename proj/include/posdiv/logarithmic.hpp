#ifndef POSDIV_LOGARITHMIC_HPP
#define POSDIV_LOGARITHMIC_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "posdiv/dyadic.hpp"
#include "posdiv/fields.hpp"
#include "posdiv/numfield.hpp"
#include "posdiv/zlinalg.hpp"

namespace posdiv {

/// A presentation that should be finite came out infinite: either the
/// precision is too low or the generalized Gross conjecture fails.
class GrossAlarm : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class LogError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct LogOptions
{
    int eta = 48;                // bits of 2-adic precision for Log
    size_t primitive_choice = 0; // index into the primitive candidates
    long deg_unit = 1;           // odd unit multiplying every dyadic degree
};

/* Logarithmic data of a field at one precision: degrees of the places of S
 * and logarithmic valuations of every tracked S-unit. */
struct LogContext
{
    FieldData const * F = nullptr;
    int eta = 0;
    int bits = 0; // modulus 2^bits of all matrices
    long deg_unit = 1;
    std::vector<DyadicStructure> dyadic;            // per dyadic place
    std::vector<TwoAdic> deg;                       // per place of S
    std::vector<std::vector<TwoAdic>> vt;           // tracked x places
    std::vector<std::vector<TwoAdic>> dyadic_norms; // tracked x dyadic places
    std::vector<size_t> primitive_candidates;
    size_t primitive = 0;
    int primitive_valuation = 0; // v2(deg b), generator of deg(Dl_F)

    FieldData const & field() const { return *F; }
    size_t num_places() const { return deg.size(); }
};

LogContext build_log_context(FieldData const & F, LogOptions const & opts = {});

/// deg p = Log Np for odd p; for dyadic q the achieved value of -Log N_q of
/// minimal valuation over generators of F_q^x (times deg_unit).
TwoAdic place_degree(FieldData const & F, size_t place, DyadicStructure const * ds, int eta, long deg_unit = 1);
/// The logarithmic valuation at a place of S.
TwoAdic log_valuation(LogContext const & ctx, size_t place, QPoly const & x);
/// Local version at a dyadic place: -Log N_q(x) / deg q for a local element.
TwoAdic local_log_valuation(LogContext const & ctx, size_t place, QPoly const & x);
/// div~(x) over S; x must be an S-unit.
std::vector<TwoAdic> log_divisor(LogContext const & ctx, QPoly const & x);

/// Divisors over S with coefficients modulo 2^bits.
using Divisor = ModVec;
TwoAdic divisor_degree(LogContext const & ctx, Divisor const & d);
/// deg p / deg b as a residue modulo 2^bits.
uint64_t degree_ratio(LogContext const & ctx, size_t place);

/* The logarithmic class group Cl~ on the degree-zero basis
 * p - (deg p / deg b) b, p != b. */
struct LogClassGroup
{
    AbelianGroupType type;
    std::vector<size_t> basis_places;   // coordinates: S minus b
    Mat2 relations;                     // div~ of tracked elements, basis coordinates
    Cokernel ck;
    std::vector<Divisor> generators;    // a_j over S, degree zero
    std::vector<int> exponents;         // n_j
    std::vector<ModVec> order_elements; // 2^{n_j} a_j = div~(alpha_j), exponents over tracked
};

struct Decomposition
{
    std::vector<uint64_t> coeffs; // over the generators a_j
    ModVec alpha;                 // exponents over the tracked elements
};

LogClassGroup compute_log_class_group(LogContext const & ctx);
/// d = sum coeffs_j a_j + div~(alpha) for a degree-zero divisor d over S.
Decomposition decompose_class(LogContext const & ctx, LogClassGroup const & G, Divisor const & d);
/// Reassemble sum coeffs_j a_j + div~(alpha) over S.
Divisor recompose(LogContext const & ctx, LogClassGroup const & G, Decomposition const & dec);

/// 2-part of Cl_F modulo the classes of the dyadic primes.
AbelianGroupType compute_cl_prime(FieldData const & F);

} // namespace posdiv

#endif

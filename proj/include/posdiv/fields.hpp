#ifndef POSDIV_FIELDS_HPP
#define POSDIV_FIELDS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "posdiv/dyadic.hpp"
#include "posdiv/numfield.hpp"
#include "posdiv/zlinalg.hpp"

namespace posdiv {

enum class ElementRole { torsion, unit, two_unit, relation };

/// An S-unit the pipeline carries symbolically: every principal divisor it
/// uses is an exponent vector over these.
struct TrackedElement
{
    QPoly value;
    ElementRole role;
    std::string label;
};

struct FinitePlace
{
    LocalFactor local;
    std::string label;
    QPoly generator; // second element of a two-element representation (p, generator)

    bool dyadic() const { return local.p == 2; }
    mpz_class norm() const; // p^f
};

/* Immutable description of a number field together with a factor base S
 * (all dyadic places first, then odd places) and generators of the S-units
 * modulo odd index. */
struct FieldData
{
    std::string id;
    std::shared_ptr<NumberField const> K;
    int r = 0, c = 0;
    mpz_class disc;
    std::vector<QPoly> integral_basis;
    std::vector<FinitePlace> places;
    size_t num_dyadic = 0;
    std::vector<RealRoot> real_roots;
    int torsion_order = 2;
    std::vector<TrackedElement> tracked;
    std::vector<std::vector<int64_t>> valuations; // tracked x places
    AbelianGroupType class_group;
    std::optional<mpz_class> quadratic_disc;

    size_t degree() const { return K->degree(); }
    size_t unit_rank() const { return size_t(r + c - 1); }
};

struct QuadraticOptions
{
    /// Odd primes with v2(Log Np) = 2 added to S beyond what is needed
    /// (used for the alternative-primitive-divisor checks).
    int extra_primitive_primes = 0;
};

FieldData quadratic_field(mpz_class const & D, QuadraticOptions const & opts = {});

class IngestError : public FieldError
{
  public:
    enum class Kind {
        schema,
        principality_witness_invalid,
        unit_rank_mismatch,
        local_factor_mismatch,
        relation_index_mismatch,
    };

    IngestError(Kind kind, std::string const & what)
        : FieldError(name(kind) + ": " + what)
        , kind_(kind)
    {
    }
    Kind kind() const { return kind_; }
    static std::string name(Kind k);

  private:
    Kind kind_;
};

FieldData load_field(std::string const & path);
FieldData parse_field(std::string const & json_text);

/// Recomputes valuations and runs every structural check; throws IngestError.
/// `class_number`, when known, enables the relation-index check.
void verify_field(FieldData & F, std::optional<mpz_class> const & class_number);

/// Local norm N_{F_q/Q_2}(x) at a dyadic place, to `bits` bits of relative precision.
TwoAdic local_norm_2adic(FieldData const & F, size_t place, QPoly const & x, int bits = kMaxTwoAdicPrecision);
TwoAdic local_norm_2adic(LocalFactor const & L, QPoly const & x, int bits = kMaxTwoAdicPrecision);
int64_t place_valuation(FieldData const & F, size_t place, QPoly const & x);
/// Signs of x at the real places, in the order of F.real_roots.
std::vector<int> real_signs(FieldData const & F, QPoly const & x);

/// Coordinates of a power-basis element over the integral basis, and back.
std::vector<mpq_class> to_integral_basis(FieldData const & F, QPoly const & x);
QPoly from_integral_basis(FieldData const & F, std::vector<mpq_class> const & coords);

} // namespace posdiv

#endif

#ifndef POSDIV_ZLINALG_HPP
#define POSDIV_ZLINALG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "posdiv/dyadic.hpp"

namespace posdiv {

class LinalgError : public std::runtime_error
{
  public:
    enum class Kind { malformed, unbounded };

    LinalgError(Kind kind, std::string const & what)
        : std::runtime_error(what)
        , kind_(kind)
    {
    }
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

using ModVec = std::vector<uint64_t>;

/* Dense matrix over Z/2^bits (1 <= bits <= 63).  Entries are kept reduced. */
class Mat2
{
  public:
    Mat2() = default;
    Mat2(size_t rows, size_t cols, int bits);

    static Mat2 identity(size_t n, int bits);
    static Mat2 from_rows(std::vector<std::vector<int64_t>> const & rows, size_t cols, int bits);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    int bits() const { return bits_; }
    uint64_t mask() const { return low_mask(bits_); }

    uint64_t operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    void set(size_t i, size_t j, uint64_t x) { a_[i * cols_ + j] = x & mask(); }
    void set(size_t i, size_t j, int64_t x) { set(i, j, uint64_t(x)); }
    void set(size_t i, size_t j, int x) { set(i, j, uint64_t(int64_t(x))); }
    void set(size_t i, size_t j, mpz_class const & x);
    /// Requires an integral value known to at least `bits` bits.
    void set(size_t i, size_t j, TwoAdic const & x);

    ModVec row(size_t i) const;
    ModVec col(size_t j) const;
    void append_row(ModVec const & r);

    Mat2 operator*(Mat2 const & o) const;
    ModVec apply(ModVec const & x) const; // M x
    bool operator==(Mat2 const & o) const = default;

    /// Signed representative in (-2^(bits-1), 2^(bits-1)].
    int64_t signed_at(size_t i, size_t j) const;

  private:
    size_t rows_ = 0, cols_ = 0;
    int bits_ = 1;
    std::vector<uint64_t> a_;
};

/// 2-adic valuation of a residue modulo 2^bits; returns bits for 0.
int valuation_mod(uint64_t x, int bits);

/* Invariant-factor type of a finite abelian group, ascending, each entry
 * dividing the next.  Entries are arbitrary orders; for 2-groups they are
 * powers of two. */
struct AbelianGroupType
{
    std::vector<uint64_t> orders;

    static AbelianGroupType from_exponents(std::vector<int> exps); // 2-group
    static AbelianGroupType from_orders(std::vector<uint64_t> orders); // normalizes
    static AbelianGroupType parse(std::string const & s);            // "2,12" or "[ 2,12 ]"

    size_t rank2() const;
    uint64_t order() const;
    bool trivial() const { return orders.empty(); }
    AbelianGroupType two_part() const;
    AbelianGroupType odd_part() const;
    /// prime -> exponents of the cyclic primary factors, descending
    std::map<uint64_t, std::vector<int>> primary_components() const;
    std::string to_string() const; // "[ 2,4 ]", trivial "[ ]"
    bool operator==(AbelianGroupType const & o) const = default;

    /// Whether a group of type *this can embed in one of type `big`.
    bool is_subgroup_type_of(AbelianGroupType const & big) const;
};

struct SmithForm
{
    /// v_i with diag_i = 2^{v_i}; the value bits marks a zero entry.
    std::vector<int> diag;
    Mat2 U, V, V_inv; // U * M * V = diag
};

SmithForm snf(Mat2 const & M);

/* Quotient (Z/2^bits)^n / rowspan(relations).  Factors of order 2^bits are
 * unbounded at this precision. */
struct Cokernel
{
    AbelianGroupType type;       // bounded part
    std::vector<int> exponents;  // of every nontrivial new generator, ascending
    std::vector<size_t> columns; // SNF column index of each nontrivial generator
    int unbounded = 0;           // number of factors that reached 2^bits
    Mat2 V, V_inv;

    /// Old generator j in coordinates of the nontrivial new generators.
    std::vector<uint64_t> coordinates(size_t j) const;
    /// Arbitrary vector in old coordinates, mapped to new coordinates.
    std::vector<uint64_t> coordinates(ModVec const & x) const;
    /// Nontrivial new generator k in old coordinates.
    ModVec generator(size_t k) const;
};

/// Throws LinalgError::unbounded when some factor reaches 2^bits, unless
/// allow_unbounded is set.
Cokernel cokernel(Mat2 const & relations, bool allow_unbounded = false);
AbelianGroupType cokernel_type(Mat2 const & relations);

/// Type of Z^cols / rowspan(rows) over the integers; throws when infinite.
AbelianGroupType integer_cokernel_type(std::vector<std::vector<mpz_class>> rows, size_t cols);

/// Generating set of {x : M x = 0 mod 2^bits}, in Howell form.
std::vector<ModVec> nullspace_mod(Mat2 const & M);

std::optional<ModVec> solve_mod(Mat2 const & M, ModVec const & b);

/// Canonical (Howell) echelon form of the row span.
std::vector<ModVec> howell_form(std::vector<ModVec> rows, int bits);

/// Determinant is odd, i.e. invertible modulo 2^bits.
bool is_unimodular(Mat2 const & M);

/// Rank over F_2 of a 0/1 matrix given as rows.
size_t f2_rank(std::vector<std::vector<int>> rows);
/// Basis of the F_2 kernel {x : sum_i x_i rows_i = 0}.
std::vector<std::vector<int>> f2_left_kernel(std::vector<std::vector<int>> const & rows);

} // namespace posdiv

#endif

#include "posdiv/zlinalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace posdiv {

namespace {

void check_bits(int bits)
{
    if (bits < 1 || bits > 63)
        throw LinalgError(LinalgError::Kind::malformed, "modulus exponent must lie in [1, 63]");
}

/* prime -> exponents of the cyclic prime-power factors */
std::map<uint64_t, std::vector<int>> primary_parts(std::vector<uint64_t> const & orders)
{
    std::map<uint64_t, std::vector<int>> parts;
    for (uint64_t n : orders) {
        if (n == 0)
            throw LinalgError(LinalgError::Kind::malformed, "group order 0 is not finite");
        for (uint64_t p = 2; p * p <= n; ++p) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e)
                parts[p].push_back(e);
        }
        if (n > 1)
            parts[n].push_back(1);
    }
    for (auto & [p, v] : parts)
        std::sort(v.rbegin(), v.rend());
    return parts;
}

uint64_t ipow(uint64_t p, int e)
{
    uint64_t r = 1;
    while (e-- > 0)
        r *= p;
    return r;
}

} // namespace

int valuation_mod(uint64_t x, int bits)
{
    x &= low_mask(bits);
    return x == 0 ? bits : std::countr_zero(x);
}

Mat2::Mat2(size_t rows, size_t cols, int bits)
    : rows_(rows)
    , cols_(cols)
    , bits_(bits)
    , a_(rows * cols, 0)
{
    check_bits(bits);
}

Mat2 Mat2::identity(size_t n, int bits)
{
    Mat2 m(n, n, bits);
    for (size_t i = 0; i < n; ++i)
        m.set(i, i, uint64_t{1});
    return m;
}

Mat2 Mat2::from_rows(std::vector<std::vector<int64_t>> const & rows, size_t cols, int bits)
{
    Mat2 m(rows.size(), cols, bits);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw LinalgError(LinalgError::Kind::malformed, "ragged matrix rows");
        for (size_t j = 0; j < cols; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

void Mat2::set(size_t i, size_t j, mpz_class const & x)
{
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), bits_);
    set(i, j, uint64_t(r.get_ui()));
}

void Mat2::set(size_t i, size_t j, TwoAdic const & x)
{
    set(i, j, x.residue(bits_));
}

ModVec Mat2::row(size_t i) const
{
    return ModVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

ModVec Mat2::col(size_t j) const
{
    ModVec c(rows_);
    for (size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

void Mat2::append_row(ModVec const & r)
{
    if (r.size() != cols_)
        throw LinalgError(LinalgError::Kind::malformed, "appended row has wrong length");
    for (uint64_t x : r)
        a_.push_back(x & mask());
    ++rows_;
}

Mat2 Mat2::operator*(Mat2 const & o) const
{
    if (cols_ != o.rows_ || bits_ != o.bits_)
        throw LinalgError(LinalgError::Kind::malformed, "matrix product shape mismatch");
    Mat2 r(rows_, o.cols_, bits_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < o.cols_; ++j) {
            uint64_t s = 0;
            for (size_t k = 0; k < cols_; ++k)
                s += (*this)(i, k) * o(k, j);
            r.set(i, j, s);
        }
    return r;
}

ModVec Mat2::apply(ModVec const & x) const
{
    if (x.size() != cols_)
        throw LinalgError(LinalgError::Kind::malformed, "vector length mismatch");
    ModVec r(rows_);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t s = 0;
        for (size_t k = 0; k < cols_; ++k)
            s += (*this)(i, k) * x[k];
        r[i] = s & mask();
    }
    return r;
}

int64_t Mat2::signed_at(size_t i, size_t j) const
{
    uint64_t x = (*this)(i, j);
    uint64_t half = uint64_t{1} << (bits_ - 1);
    return x > half ? int64_t(x) - int64_t(uint64_t{1} << bits_) : int64_t(x);
}

/* ---- abelian group types ---- */

AbelianGroupType AbelianGroupType::from_exponents(std::vector<int> exps)
{
    std::vector<uint64_t> orders;
    for (int e : exps)
        if (e > 0)
            orders.push_back(uint64_t{1} << e);
    return from_orders(orders);
}

AbelianGroupType AbelianGroupType::from_orders(std::vector<uint64_t> orders)
{
    auto parts = primary_parts(orders);
    size_t len = 0;
    for (auto const & [p, v] : parts)
        len = std::max(len, v.size());
    // largest invariant factor collects the largest primary component of each prime
    std::vector<uint64_t> inv(len, 1);
    for (auto const & [p, v] : parts)
        for (size_t k = 0; k < v.size(); ++k)
            inv[len - 1 - k] *= ipow(p, v[k]);
    return AbelianGroupType{inv};
}

AbelianGroupType AbelianGroupType::parse(std::string const & s)
{
    std::vector<uint64_t> orders;
    std::string tok;
    auto flush = [&] {
        if (tok.empty())
            return;
        size_t pos = 0;
        unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size() || v == 0)
            throw std::invalid_argument("bad group order '" + tok + "'");
        orders.push_back(v);
        tok.clear();
    };
    for (char c : s) {
        if (c == '[' || c == ']' || c == ' ')
            continue;
        if (c == ',') {
            flush();
            continue;
        }
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad group type '" + s + "'");
        tok += c;
    }
    flush();
    return from_orders(orders);
}

std::map<uint64_t, std::vector<int>> AbelianGroupType::primary_components() const
{
    return posdiv::primary_parts(orders);
}

size_t AbelianGroupType::rank2() const
{
    return size_t(std::count_if(orders.begin(), orders.end(), [](uint64_t n) { return n % 2 == 0; }));
}

uint64_t AbelianGroupType::order() const
{
    uint64_t r = 1;
    for (uint64_t n : orders)
        r *= n;
    return r;
}

AbelianGroupType AbelianGroupType::two_part() const
{
    std::vector<uint64_t> o;
    for (uint64_t n : orders)
        o.push_back(n & (~n + 1));
    return from_orders(o);
}

AbelianGroupType AbelianGroupType::odd_part() const
{
    std::vector<uint64_t> o;
    for (uint64_t n : orders)
        o.push_back(n >> std::countr_zero(n));
    return from_orders(o);
}

std::string AbelianGroupType::to_string() const
{
    if (orders.empty())
        return "[ ]";
    std::ostringstream os;
    os << "[ ";
    for (size_t i = 0; i < orders.size(); ++i)
        os << (i ? "," : "") << orders[i];
    os << " ]";
    return os.str();
}

bool AbelianGroupType::is_subgroup_type_of(AbelianGroupType const & big) const
{
    auto a = primary_parts(orders);
    auto b = primary_parts(big.orders);
    for (auto const & [p, v] : a) {
        auto it = b.find(p);
        std::vector<int> w = it == b.end() ? std::vector<int>{} : it->second;
        if (v.size() > w.size())
            return false;
        for (size_t k = 0; k < v.size(); ++k)
            if (v[k] > w[k])
                return false;
    }
    return true;
}

/* ---- Smith normal form ---- */

SmithForm snf(Mat2 const & M)
{
    int const bits = M.bits();
    uint64_t const mask = M.mask();
    size_t const r = M.rows(), c = M.cols();
    Mat2 A = M;
    Mat2 U = Mat2::identity(r, bits);
    Mat2 V = Mat2::identity(c, bits);
    Mat2 Vi = Mat2::identity(c, bits);

    auto row_axpy = [&](Mat2 & X, size_t dst, size_t src, uint64_t q) {
        for (size_t j = 0; j < X.cols(); ++j)
            X.set(dst, j, X(dst, j) - q * X(src, j));
    };
    auto col_axpy = [&](Mat2 & X, size_t dst, size_t src, uint64_t q) {
        for (size_t i = 0; i < X.rows(); ++i)
            X.set(i, dst, X(i, dst) - q * X(i, src));
    };
    auto swap_rows = [](Mat2 & X, size_t a, size_t b) {
        for (size_t j = 0; j < X.cols(); ++j) {
            uint64_t t = X(a, j);
            X.set(a, j, X(b, j));
            X.set(b, j, t);
        }
    };
    auto swap_cols = [](Mat2 & X, size_t a, size_t b) {
        for (size_t i = 0; i < X.rows(); ++i) {
            uint64_t t = X(i, a);
            X.set(i, a, X(i, b));
            X.set(i, b, t);
        }
    };

    SmithForm out;
    size_t const kmax = std::min(r, c);
    for (size_t k = 0; k < kmax; ++k) {
        int best = bits;
        size_t pi = 0, pj = 0;
        for (size_t i = k; i < r; ++i)
            for (size_t j = k; j < c; ++j) {
                int v = valuation_mod(A(i, j), bits);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == bits) {
            out.diag.push_back(bits);
            continue;
        }
        if (pi != k) {
            swap_rows(A, pi, k);
            swap_rows(U, pi, k);
        }
        if (pj != k) {
            swap_cols(A, pj, k);
            swap_cols(V, pj, k);
            swap_rows(Vi, pj, k);
        }
        uint64_t unit_inv = odd_inverse(A(k, k) >> best) & mask;
        for (size_t j = 0; j < c; ++j)
            A.set(k, j, A(k, j) * unit_inv);
        for (size_t j = 0; j < r; ++j)
            U.set(k, j, U(k, j) * unit_inv);
        for (size_t i = k + 1; i < r; ++i) {
            uint64_t q = A(i, k) >> best;
            if (q) {
                row_axpy(A, i, k, q);
                row_axpy(U, i, k, q);
            }
        }
        for (size_t j = k + 1; j < c; ++j) {
            uint64_t q = A(k, j) >> best;
            if (q) {
                col_axpy(A, j, k, q);
                col_axpy(V, j, k, q);
                // V <- V (I - q e_k e_j^T), so V^-1 <- (I + q e_k e_j^T) V^-1
                row_axpy(Vi, k, j, (~q + 1) & mask);
            }
        }
        out.diag.push_back(best);
    }
    out.U = std::move(U);
    out.V = std::move(V);
    out.V_inv = std::move(Vi);
    return out;
}

/* ---- cokernels ---- */

std::vector<uint64_t> Cokernel::coordinates(size_t j) const
{
    std::vector<uint64_t> y(exponents.size());
    for (size_t k = 0; k < exponents.size(); ++k)
        y[k] = V(j, columns[k]) & low_mask(exponents[k]);
    return y;
}

std::vector<uint64_t> Cokernel::coordinates(ModVec const & x) const
{
    std::vector<uint64_t> y(exponents.size(), 0);
    for (size_t k = 0; k < exponents.size(); ++k) {
        uint64_t s = 0;
        for (size_t j = 0; j < x.size(); ++j)
            s += x[j] * V(j, columns[k]);
        y[k] = s & low_mask(exponents[k]);
    }
    return y;
}

ModVec Cokernel::generator(size_t k) const
{
    return V_inv.row(columns[k]);
}

Cokernel cokernel(Mat2 const & relations, bool allow_unbounded)
{
    SmithForm s = snf(relations);
    int const bits = relations.bits();
    size_t const n = relations.cols();
    Cokernel out;
    std::vector<int> bounded;
    for (size_t i = 0; i < n; ++i) {
        int v = i < s.diag.size() ? s.diag[i] : bits;
        if (v == 0)
            continue;
        if (v >= bits)
            ++out.unbounded;
        else
            bounded.push_back(v);
        out.exponents.push_back(v);
        out.columns.push_back(i);
    }
    if (out.unbounded && !allow_unbounded)
        throw LinalgError(LinalgError::Kind::unbounded,
                          "cokernel has " + std::to_string(out.unbounded) +
                                  " factor(s) of order 2^" + std::to_string(bits) +
                                  " (infinite at this precision)");
    // SNF pivots are produced in ascending valuation; unbounded ones last
    out.type = AbelianGroupType::from_exponents(bounded);
    out.V = std::move(s.V);
    out.V_inv = std::move(s.V_inv);
    return out;
}

AbelianGroupType cokernel_type(Mat2 const & relations)
{
    return cokernel(relations).type;
}

AbelianGroupType integer_cokernel_type(std::vector<std::vector<mpz_class>> rows, size_t cols)
{
    // diagonalize by gcd steps; from_orders restores the divisibility chain
    std::vector<uint64_t> orders;
    size_t k = 0;
    for (; k < cols; ++k) {
        // bring a nonzero entry of smallest magnitude to (k, k)
        for (;;) {
            size_t pi = rows.size(), pj = cols;
            for (size_t i = k; i < rows.size(); ++i)
                for (size_t j = k; j < cols; ++j)
                    if (rows[i][j] != 0 && (pi == rows.size() || abs(rows[i][j]) < abs(rows[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows.size())
                throw LinalgError(LinalgError::Kind::unbounded, "integer cokernel is infinite");
            std::swap(rows[pi], rows[k]);
            for (auto & r : rows)
                std::swap(r[pj], r[k]);
            mpz_class const piv = rows[k][k];
            bool clean = true;
            for (size_t i = k + 1; i < rows.size(); ++i) {
                mpz_class q = rows[i][k] / piv;
                for (size_t j = k; j < cols; ++j)
                    rows[i][j] -= q * rows[k][j];
                clean = clean && rows[i][k] == 0;
            }
            for (size_t j = k + 1; j < cols; ++j) {
                mpz_class q = rows[k][j] / piv;
                for (auto & r : rows)
                    r[j] -= q * r[k];
                clean = clean && rows[k][j] == 0;
            }
            if (clean)
                break;
        }
        mpz_class d = abs(rows[k][k]);
        if (!d.fits_ulong_p())
            throw LinalgError(LinalgError::Kind::malformed, "invariant factor too large");
        orders.push_back(d.get_ui());
    }
    return AbelianGroupType::from_orders(orders);
}

/* ---- Howell form, nullspace, solving ---- */

std::vector<ModVec> howell_form(std::vector<ModVec> rows, int bits)
{
    check_bits(bits);
    uint64_t const mask = low_mask(bits);
    if (rows.empty())
        return {};
    size_t const n = rows.front().size();
    for (auto & r : rows) {
        if (r.size() != n)
            throw LinalgError(LinalgError::Kind::malformed, "ragged rows");
        for (auto & x : r)
            x &= mask;
    }
    std::vector<ModVec> done;
    for (size_t c = 0; c < n; ++c) {
        int best = bits;
        size_t bi = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            int v = valuation_mod(rows[i][c], bits);
            if (v < best) {
                best = v;
                bi = i;
            }
        }
        if (best == bits)
            continue;
        ModVec piv = rows[bi];
        rows.erase(rows.begin() + long(bi));
        uint64_t inv = odd_inverse(piv[c] >> best);
        for (auto & x : piv)
            x = (x * inv) & mask;
        for (auto & r : rows) {
            uint64_t q = r[c] >> best;
            for (size_t j = 0; j < n; ++j)
                r[j] = (r[j] - q * piv[j]) & mask;
        }
        if (best > 0) {
            ModVec ann(n);
            for (size_t j = 0; j < n; ++j)
                ann[j] = (piv[j] << (bits - best)) & mask;
            rows.push_back(ann);
        }
        for (auto & d : done) {
            uint64_t q = d[c] >> best;
            for (size_t j = 0; j < n; ++j)
                d[j] = (d[j] - q * piv[j]) & mask;
        }
        done.push_back(piv);
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](ModVec const & r) {
                                      return std::all_of(r.begin(), r.end(), [](uint64_t x) { return x == 0; });
                                  }),
                   rows.end());
    }
    return done;
}

std::vector<ModVec> nullspace_mod(Mat2 const & M)
{
    int const bits = M.bits();
    size_t const n = M.cols();
    SmithForm s = snf(M);
    std::vector<ModVec> gens;
    for (size_t i = 0; i < n; ++i) {
        int v = i < s.diag.size() ? s.diag[i] : bits;
        if (v == 0)
            continue;
        uint64_t scale = v >= bits ? 1 : (uint64_t{1} << (bits - v));
        ModVec g = s.V.col(i);
        for (auto & x : g)
            x = (x * scale) & M.mask();
        gens.push_back(g);
    }
    return howell_form(gens, bits);
}

std::optional<ModVec> solve_mod(Mat2 const & M, ModVec const & b)
{
    if (b.size() != M.rows())
        throw LinalgError(LinalgError::Kind::malformed, "right-hand side length mismatch");
    int const bits = M.bits();
    uint64_t const mask = M.mask();
    SmithForm s = snf(M);
    ModVec c = s.U.apply(b);
    ModVec y(M.cols(), 0);
    for (size_t i = 0; i < M.rows(); ++i) {
        int v = i < s.diag.size() ? s.diag[i] : bits;
        if (valuation_mod(c[i], bits) < v)
            return std::nullopt;
        if (v < bits && i < M.cols())
            y[i] = (c[i] >> v) & mask;
    }
    return s.V.apply(y);
}

bool is_unimodular(Mat2 const & M)
{
    if (M.rows() != M.cols())
        return false;
    std::vector<std::vector<int>> rows(M.rows(), std::vector<int>(M.cols()));
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j)
            rows[i][j] = int(M(i, j) & 1);
    return f2_rank(rows) == M.rows();
}

size_t f2_rank(std::vector<std::vector<int>> rows)
{
    size_t rank = 0;
    if (rows.empty())
        return 0;
    size_t const n = rows.front().size();
    for (size_t c = 0; c < n && rank < rows.size(); ++c) {
        size_t p = rank;
        while (p < rows.size() && !(rows[p][c] & 1))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i][c] & 1))
                for (size_t j = 0; j < n; ++j)
                    rows[i][j] ^= rows[rank][j] & 1;
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> f2_left_kernel(std::vector<std::vector<int>> const & rows)
{
    // reduce [rows | I] and read the identity part of zero rows
    size_t const k = rows.size();
    if (k == 0)
        return {};
    size_t const n = rows.front().size();
    std::vector<std::vector<int>> aug(k, std::vector<int>(n + k, 0));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < n; ++j)
            aug[i][j] = rows[i][j] & 1;
        aug[i][n + i] = 1;
    }
    size_t rank = 0;
    for (size_t c = 0; c < n && rank < k; ++c) {
        size_t p = rank;
        while (p < k && !aug[p][c])
            ++p;
        if (p == k)
            continue;
        std::swap(aug[p], aug[rank]);
        for (size_t i = 0; i < k; ++i)
            if (i != rank && aug[i][c])
                for (size_t j = 0; j < n + k; ++j)
                    aug[i][j] ^= aug[rank][j];
        ++rank;
    }
    std::vector<std::vector<int>> ker;
    for (size_t i = rank; i < k; ++i)
        ker.emplace_back(aug[i].begin() + long(n), aug[i].end());
    return ker;
}

} // namespace posdiv

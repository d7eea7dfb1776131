#ifndef POSDIV_TESTS_BRUTE_FORCE_HPP
#define POSDIV_TESTS_BRUTE_FORCE_HPP

// Exhaustive enumeration over (Z/2^bits)^n for tiny n, used as an oracle for
// the normal-form routines.

#include <cstdint>
#include <vector>

#include "posdiv/zlinalg.hpp"

namespace posdiv::brute {

inline size_t encode(ModVec const & x, int bits)
{
    size_t code = 0;
    for (size_t i = x.size(); i-- > 0;)
        code = (code << bits) | size_t(x[i]);
    return code;
}

inline ModVec decode(size_t code, size_t n, int bits)
{
    ModVec x(n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = code & ((size_t{1} << bits) - 1);
        code >>= bits;
    }
    return x;
}

/// Membership table of the subgroup generated by `gens`.
inline std::vector<char> span(std::vector<ModVec> const & gens, size_t n, int bits)
{
    size_t const total = size_t{1} << (bits * n);
    uint64_t const mask = low_mask(bits);
    std::vector<char> in(total, 0);
    std::vector<size_t> todo{0};
    in[0] = 1;
    while (!todo.empty()) {
        ModVec x = decode(todo.back(), n, bits);
        todo.pop_back();
        for (auto const & g : gens) {
            ModVec y(n);
            for (size_t i = 0; i < n; ++i)
                y[i] = (x[i] + g[i]) & mask;
            size_t c = encode(y, bits);
            if (!in[c]) {
                in[c] = 1;
                todo.push_back(c);
            }
        }
    }
    return in;
}

/// Exponents (ascending, order-1 factors dropped) of (Z/2^bits)^n / span(rows).
inline std::vector<int> quotient_exponents(std::vector<ModVec> const & rows, size_t n, int bits)
{
    auto in = span(rows, n, bits);
    size_t const total = in.size();
    uint64_t const mask = low_mask(bits);
    size_t h = 0;
    for (char c : in)
        h += c;
    // log2 |G[2^k]| for k = 0..bits
    std::vector<int> lg(bits + 1, 0);
    for (int k = 1; k <= bits; ++k) {
        size_t cnt = 0;
        for (size_t code = 0; code < total; ++code) {
            ModVec x = decode(code, n, bits);
            for (auto & v : x)
                v = (v << k) & mask;
            cnt += in[encode(x, bits)];
        }
        size_t q = cnt / h;
        int l = 0;
        while ((size_t{1} << l) < q)
            ++l;
        lg[k] = l;
    }
    std::vector<int> exps;
    for (int k = bits; k >= 1; --k) {
        int at_least_k = lg[k] - lg[k - 1];
        int at_least_k1 = k < bits ? lg[k + 1] - lg[k] : 0;
        for (int t = 0; t < at_least_k - at_least_k1; ++t)
            exps.push_back(k);
    }
    std::sort(exps.begin(), exps.end());
    return exps;
}

/// Membership table of {x : M x = 0}.
inline std::vector<char> kernel(Mat2 const & M)
{
    size_t const n = M.cols();
    size_t const total = size_t{1} << (M.bits() * n);
    std::vector<char> in(total, 0);
    for (size_t code = 0; code < total; ++code) {
        ModVec y = M.apply(decode(code, n, M.bits()));
        in[code] = std::all_of(y.begin(), y.end(), [](uint64_t v) { return v == 0; });
    }
    return in;
}

} // namespace posdiv::brute

#endif

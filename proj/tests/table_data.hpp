#ifndef POSDIV_TESTS_TABLE_DATA_HPP
#define POSDIV_TESTS_TABLE_DATA_HPP

// Reference invariants of quadratic fields with exceptional dyadic places.

#include <vector>

namespace posdiv::table {

struct Row
{
    long D;
    char const * cl;
    char const * k2o; // empty for real fields
    unsigned index;   // (K2O : WK2) for imaginary fields, [E : E^pos]-type index otherwise
    unsigned p;
    unsigned pe;
    char const * cl_prime;
    char const * cl_log;
    char const * cl_pos;
    char const * cl_pos_deg0;
    int rk2;
    char const * wk2;
};

inline std::vector<Row> const & imaginary()
{
    static std::vector<Row> const rows{
            {-184, "4", "2", 1, 1, 1, "2", "", "2", "", 1, "2"},
            {-248, "8", "2", 1, 1, 1, "4", "2", "4", "2,2", 1, "2"},
            {-399, "2,8", "2,12", 2, 2, 2, "2", "4", "2", "2", 1, "4"},
            {-632, "8", "2", 1, 1, 1, "4", "2", "4", "2,2", 1, "2"},
            {-759, "2,12", "2,18", 6, 2, 2, "2", "2", "2", "2", 1, "6"},
            {-799, "16", "2,4", 2, 2, 2, "2", "2,4", "2", "2", 2, "2,2"},
            {-959, "36", "2,4", 2, 2, 2, "4", "4,8", "4", "4", 1, "4"},
    };
    return rows;
}

inline std::vector<Row> const & real()
{
    static std::vector<Row> const rows{
            {776, "2", "", 4, 1, 1, "2", "", "2,2", "2", 2, ""},
            {904, "8", "", 4, 1, 1, "4", "2", "4", "2,2", 1, ""},
            {29665, "2,16", "", 8, 2, 2, "2", "2", "2,2", "2,2", 2, ""},
            {34689, "32", "", 8, 2, 2, "", "", "2", "2", 1, ""},
            {69064, "4,8", "", 4, 1, 1, "2,8", "8", "2,8", "8", 2, ""},
            {90321, "2,2,8", "", 24, 2, 2, "2,2", "2,4", "2,2,2,2", "2,2,2,2", 4, ""},
            {104584, "4,8", "", 4, 1, 1, "2,8", "2,4", "2,8", "2,2,4", 2, ""},
            {248584, "4,8", "", 4, 1, 1, "2,8", "2,4", "2,2,8", "2,2,2,4", 3, ""},
            {300040, "2,2,8", "", 4, 1, 1, "2,8", "8", "2,8", "8", 2, ""},
            {374105, "32", "", 8, 2, 2, "", "", "2", "2", 1, ""},
            {171865, "2,32", "", 8, 2, 2, "4", "4", "2,2,4", "2,2,4", 3, ""},
            {285160, "2,32", "", 4, 1, 1, "32", "32", "32", "32", 1, ""},
            {318097, "64", "", 8, 2, 2, "", "", "2,2", "2,2", 2, ""},
            {469221, "64", "", 12, 1, 1, "64", "64", "2,64", "2,64", 2, ""},
            {651784, "2,32", "", 4, 1, 1, "2,16", "2,8", "2,2,16", "2,2,2,8", 3, ""},
    };
    return rows;
}

} // namespace posdiv::table

#endif

#ifndef SOFIC_INT_LINALG_HPP
#define SOFIC_INT_LINALG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sofic/errors.hpp"

namespace sofic {

using bigint = boost::multiprecision::cpp_int;

// Dense matrix of arbitrary-precision integers, row-major.
// Dimensions are always positive.
class int_matrix {
public:
    int_matrix(std::size_t rows, std::size_t cols);
    int_matrix(std::size_t rows, std::size_t cols, std::vector<bigint> entries);
    int_matrix(std::initializer_list<std::initializer_list<long long>> rows);

    static int_matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const bigint& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    bigint& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    const std::vector<bigint>& entries() const { return entries_; }

    bool operator==(const int_matrix& other) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<bigint> entries_;
};

int_matrix mat_mul(const int_matrix& a, const int_matrix& b);
int_matrix mat_pow(const int_matrix& m, unsigned k);
int_matrix mat_add(const int_matrix& a, const int_matrix& b);
int_matrix mat_sub(const int_matrix& a, const int_matrix& b);
int_matrix transpose(const int_matrix& m);

bool entrywise_positive(const int_matrix& m);
bool entrywise_nonnegative(const int_matrix& m);

// identity - m; m must be square.
int_matrix identity_minus(const int_matrix& m);

// Rank over the rationals, by fraction-free (Bareiss) elimination.
std::size_t rank_exact(const int_matrix& m);

// Exact determinant by Bareiss elimination; m must be square.
bigint determinant(const int_matrix& m);

// U * M * V = D with U, V unimodular and D diagonal; the diagonal is the
// divisibility chain d1 | d2 | ... with nonnegative entries and zeros
// trailing. invariant_factors lists all min(rows, cols) diagonal entries.
struct smith_decomposition {
    int_matrix u;
    int_matrix d;
    int_matrix v;
    std::vector<bigint> invariant_factors;
};

smith_decomposition smith_normal_form(const int_matrix& m);

// Finitely generated abelian group in canonical form: free rank plus a
// torsion divisibility chain (entries >= 2, each dividing the next).
struct fg_abelian_group {
    std::size_t free_rank = 0;
    std::vector<bigint> torsion;

    bool operator==(const fg_abelian_group& other) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const;
};

// coker(M) = Z^n / im(M) for square M.
fg_abelian_group cokernel(const int_matrix& m);

// dim ker(M) over Z (integer kernels are free); M square.
std::size_t kernel_rank(const int_matrix& m);

// Matrix text format: first line "rows cols", then row-major integers,
// whitespace-separated. A JSON mirror {"rows": r, "cols": c, "entries":
// [...]} is accepted when the text starts with '{'.
int_matrix parse_matrix(const std::string& text);
std::string serialize_matrix(const int_matrix& m);
std::string matrix_to_json(const int_matrix& m);

} // namespace sofic

#endif

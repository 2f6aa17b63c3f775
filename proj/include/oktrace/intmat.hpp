#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace oktrace {

/* Dense integer matrix, row major. Rows double as lattice basis vectors:
 * all lattice arithmetic in this project works on row spans. */
struct IntMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<mpz_class> a;

    IntMat() = default;
    IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMat identity(std::size_t n);
    static IntMat scalar(std::size_t n, const mpz_class& v);

    bool operator==(const IntMat& o) const = default;
};

IntMat mat_mul(const IntMat& A, const IntMat& B);
IntMat mat_stack(const IntMat& top, const IntMat& bottom);
IntMat mat_transpose(const IntMat& A);

/* Exact determinant by fraction-free (Bareiss) elimination. */
mpz_class det(const IntMat& A);

/* Row-style Hermite normal form. Unimodular row operations only; the row
 * span is preserved. Output convention, used everywhere in this project:
 *   - zero rows are dropped (output has rank many rows);
 *   - the pivot (first nonzero entry) of each row is positive and its
 *     column index strictly increases from row to row;
 *   - in each pivot column, the entries of the rows above lie in [0, pivot).
 * A full-rank square input therefore becomes upper triangular with positive
 * diagonal and the entries above each diagonal pivot reduced mod the pivot. */
IntMat hnf(const IntMat& M);

struct SmithForm {
    IntMat d;  // diagonal, d_1 | d_2 | ..., nonnegative
    IntMat u;  // unimodular, rows x rows
    IntMat v;  // unimodular, cols x cols, u * m * v = d
};

SmithForm snf(const IntMat& M);

/* gcd of all entries (0 for the zero matrix). */
mpz_class content(const IntMat& M);

/* Solve x * H = v over the integers for H in HNF form (full row rank,
 * pivots as produced by hnf()). Returns nullopt when v is outside the
 * row span. */
std::optional<std::vector<mpz_class>> solve_in_hnf(const IntMat& H,
                                                   const std::vector<mpz_class>& v);

/* Reduce v modulo the lattice spanned by the rows of H (HNF form): subtract
 * row multiples so every pivot-column coordinate lands in [0, pivot). */
std::vector<mpz_class> reduce_mod_lattice(const IntMat& H,
                                          std::vector<mpz_class> v);

/* Basis (as rows) of the kernel of x -> x * M over F_p, entries in [0, p). */
IntMat kernel_mod_p(const IntMat& M, const mpz_class& p);

struct RrefModP {
    IntMat r;                        // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column of each row of r
};

RrefModP rref_mod_p(const IntMat& M, const mpz_class& p);

/* One solution x of x * M == v over F_p, or nullopt when v is outside the
 * row span. Entries in [0, p). */
std::optional<std::vector<mpz_class>> solve_left_mod_p(const IntMat& M,
                                                       const std::vector<mpz_class>& v,
                                                       const mpz_class& p);

}  // namespace oktrace

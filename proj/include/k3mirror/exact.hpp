#pragma once

// Exact integer / rational linear algebra. All arithmetic is arbitrary
// precision (GMP); there is no floating point anywhere in the library.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "k3mirror/errors.hpp"

namespace k3mirror {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IntMat identity(int n);
    static IntMat from_rows(const std::vector<IntVec>& rows, int cols = -1);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    IntVec row(int i) const;
    void set_row(int i, const IntVec& v);
    void swap_rows(int i, int j);
    void negate_row(int i);
    // row i -= q * row j
    void submul_row(int i, int j, const Int& q);

    IntMat transposed() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;

    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
IntVec operator*(const IntVec& v, const IntMat& m);
RatVec operator*(const RatVec& v, const IntMat& m);

IntVec add(const IntVec& a, const IntVec& b);
IntVec scaled(const IntVec& v, const Int& c);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
Int gcd_of(const IntVec& v);

RatVec to_rat(const IntVec& v);
bool is_integral(const RatVec& v);
IntVec to_int(const RatVec& v);

RatVec rat_add(const RatVec& a, const RatVec& b);
RatVec rat_sub(const RatVec& a, const RatVec& b);
RatVec rat_scaled(const RatVec& v, const Rat& c);

struct HnfResult {
    IntMat hnf;       // row-style Hermite normal form of the input
    IntMat transform; // unimodular, transform * input == hnf
    int rank = 0;     // number of nonzero rows of hnf
};

// Row-style HNF: pivots positive, entries above each pivot reduced into
// [0, pivot), zero rows trailing.
HnfResult hermite_normal_form(const IntMat& m);

struct SnfResult {
    std::vector<Int> divisors; // nonnegative, each divides the next, zeros trailing
    IntMat left;               // unimodular
    IntMat right;              // unimodular, left * input * right == diag(divisors)
};

SnfResult smith_normal_form(const IntMat& m);

// Z-basis (rows, HNF-reduced) of { v : v * m == 0 }. The result is the full
// saturated kernel lattice.
IntMat integer_kernel(const IntMat& m);

// Diagonal of a rational congruent diagonalization Q^T g Q of a symmetric
// integer matrix. Zero diagonal entries are handled by the symmetric
// row/column-addition trick.
RatVec congruent_diagonalization(const IntMat& g);

// Exact determinant (Bareiss).
Int determinant(const IntMat& m);

// Inverse of a matrix with determinant +-1. Throws if not unimodular.
IntMat unimodular_inverse(const IntMat& u);

// Solve x * basis == target over Q (basis rows need not be full rank; the
// solution, when it exists, is unique only for independent rows, which is
// what every caller passes). Returns nullopt if target is not in the row
// span.
std::optional<RatVec> solve_in_row_span(const IntMat& basis, const RatVec& target);
std::optional<RatVec> solve_in_row_span(const IntMat& basis, const IntVec& target);

// Integer w with dot(a, w) == 1, built from an extended-gcd fold.
// Requires gcd of a to be 1.
IntVec solve_dot_one(const IntVec& a);

// Walks the integer vectors of sup-norm exactly h in dimension n, in the
// deterministic order used by every bounded search in the library:
// coordinate values follow 0, 1, -1, 2, -2, ..., h, -h and the first
// coordinate cycles fastest.
class SupNormShell {
public:
    SupNormShell(int n, int h) : n_(n), h_(h), ranks_(n, 0), done_(n == 0) {}

    bool next(std::vector<long>& out) {
        while (!done_) {
            advance();
            if (done_) return false;
            long m = 0;
            for (int i = 0; i < n_; ++i) {
                long v = value(ranks_[i]);
                out[i] = v;
                m = std::max(m, v < 0 ? -v : v);
            }
            if (m == h_) return true; // interior vectors belong to earlier shells
        }
        return false;
    }

private:
    static long value(int rank) {
        if (rank == 0) return 0;
        long mag = (rank + 1) / 2;
        return rank % 2 ? mag : -mag;
    }

    void advance() {
        for (int i = 0; i < n_; ++i) {
            if (ranks_[i] < 2 * h_) {
                ++ranks_[i];
                return;
            }
            ranks_[i] = 0;
        }
        done_ = true;
    }

    int n_, h_;
    std::vector<int> ranks_;
    bool done_;
};

} // namespace k3mirror

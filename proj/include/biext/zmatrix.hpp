// Dense integer matrices with exact arithmetic and Smith normal form.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace biext {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Row-major matrix over Z with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const std::vector<mpz_class>& d);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix& rhs) const;

    std::vector<mpz_class> apply(const std::vector<mpz_class>& x) const;  // this * x
    bool is_zero() const;

    /// Exact determinant (fraction-free Gaussian elimination); square only.
    mpz_class det() const;

    /// Columns i..j-1 as a new matrix.
    IntMatrix col_slice(std::size_t i, std::size_t j) const;
    /// Stack [this | rhs] horizontally.
    IntMatrix hcat(const IntMatrix& rhs) const;

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> e_;
};

/// U * m * V = S with S diagonal, d_i | d_{i+1}, d_i >= 0, U and V unimodular.
/// uinv and vinv are the exact inverses, maintained alongside.
struct SnfResult {
    IntMatrix u, s, v;
    IntMatrix uinv, vinv;
    std::size_t rank = 0;  // number of nonzero diagonal entries
    std::vector<mpz_class> diag() const;
};

/// Deterministic SNF: pivot is the smallest nonzero absolute value in the
/// working block, ties broken in row-major order.
SnfResult smith_normal_form(const IntMatrix& m);

/// Particular solution of m * x = b over Z, if one exists.
std::optional<std::vector<mpz_class>> solve(const IntMatrix& m, const std::vector<mpz_class>& b);

/// Basis of ker(m : Z^cols -> Z^rows), as matrix columns (may have 0 columns).
IntMatrix kernel_basis(const IntMatrix& m);

/// Basis (as columns) of the lattice { x : m*x lies in the column span of r }.
IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& r);

}  // namespace biext

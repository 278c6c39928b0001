#include "biext/zmatrix.hpp"

#include <algorithm>
#include <sstream>

namespace biext {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
        throw Error("IntMatrix: entry count " + std::to_string(e_.size()) + " != " +
                    std::to_string(rows_) + "x" + std::to_string(cols_));
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<mpz_class>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw Error("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error("matrix product: dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("matrix sum: dimension mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + rhs.e_[i];
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
    return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_;
}

std::vector<mpz_class> IntMatrix::apply(const std::vector<mpz_class>& x) const {
    if (x.size() != cols_) throw Error("apply: dimension mismatch");
    std::vector<mpz_class> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * x[j];
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const mpz_class& v) { return v == 0; });
}

mpz_class IntMatrix::det() const {
    if (rows_ != cols_) throw Error("det: matrix not square");
    std::size_t n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a.at(i, j) = q;
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

IntMatrix IntMatrix::col_slice(std::size_t i, std::size_t j) const {
    IntMatrix out(rows_, j - i);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = i; c < j; ++c) out.at(r, c - i) = at(r, c);
    return out;
}

IntMatrix IntMatrix::hcat(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_) throw Error("hcat: row mismatch");
    IntMatrix out(rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (std::size_t c = 0; c < rhs.cols_; ++c) out.at(r, cols_ + c) = rhs.at(r, c);
    }
    return out;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<mpz_class> SnfResult::diag() const {
    std::vector<mpz_class> d;
    std::size_t n = std::min(s.rows(), s.cols());
    for (std::size_t i = 0; i < n; ++i) d.push_back(s.at(i, i));
    return d;
}

namespace {

struct SnfWork {
    IntMatrix s, u, v, uinv, vinv;

    // Elementary operations, mirrored into the witnesses. Row ops act on the
    // left (through u), column ops on the right (through v).
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < s.cols(); ++c) std::swap(s.at(i, c), s.at(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < s.rows(); ++r) std::swap(s.at(r, i), s.at(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (std::size_t c = 0; c < vinv.cols(); ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
    }
    // row_j += q * row_i
    void row_add(std::size_t j, std::size_t i, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < s.cols(); ++c) s.at(j, c) += q * s.at(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(j, c) += q * u.at(i, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv.at(r, i) -= q * uinv.at(r, j);
    }
    // col_j += q * col_i
    void col_add(std::size_t j, std::size_t i, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < s.rows(); ++r) s.at(r, j) += q * s.at(r, i);
        for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, j) += q * v.at(r, i);
        for (std::size_t c = 0; c < vinv.cols(); ++c) vinv.at(i, c) -= q * vinv.at(j, c);
    }
    void row_negate(std::size_t i) {
        for (std::size_t c = 0; c < s.cols(); ++c) s.at(i, c) = -s.at(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    const std::size_t n = std::min(m.rows(), m.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
        // Pivot selection: smallest nonzero |entry| in the trailing block,
        // row-major tie break (fixed by the presentation-determinism decision).
        for (;;) {
            std::size_t pi = 0, pj = 0;
            bool found = false;
            mpz_class best;
            for (std::size_t i = t; i < m.rows(); ++i)
                for (std::size_t j = t; j < m.cols(); ++j) {
                    const mpz_class& x = w.s.at(i, j);
                    if (x == 0) continue;
                    mpz_class ax = abs(x);
                    if (!found || ax < best) {
                        found = true;
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto done;  // trailing block is zero
            w.row_swap(t, pi);
            w.col_swap(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m.rows(); ++i) {
                if (w.s.at(i, t) == 0) continue;
                mpz_class q = w.s.at(i, t) / w.s.at(t, t);  // truncated division
                w.row_add(i, t, -q);
                if (w.s.at(i, t) != 0) clean = false;  // remainder; re-pick pivot
            }
            for (std::size_t j = t + 1; j < m.cols(); ++j) {
                if (w.s.at(t, j) == 0) continue;
                mpz_class q = w.s.at(t, j) / w.s.at(t, t);
                w.col_add(j, t, -q);
                if (w.s.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility sweep: pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < m.cols() && divides; ++j)
                    if (w.s.at(i, j) % w.s.at(t, t) != 0) {
                        w.row_add(t, i, 1);  // pull the offending row up, retry
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.s.at(t, t) < 0) w.row_negate(t);
    }
done:
    SnfResult r;
    r.u = std::move(w.u);
    r.s = std::move(w.s);
    r.v = std::move(w.v);
    r.uinv = std::move(w.uinv);
    r.vinv = std::move(w.vinv);
    std::size_t rank = 0;
    while (rank < std::min(r.s.rows(), r.s.cols()) && r.s.at(rank, rank) != 0) ++rank;
    r.rank = rank;
    return r;
}

std::optional<std::vector<mpz_class>> solve(const IntMatrix& m, const std::vector<mpz_class>& b) {
    if (b.size() != m.rows()) throw Error("solve: dimension mismatch");
    SnfResult snf = smith_normal_form(m);
    std::vector<mpz_class> ub = snf.u.apply(b);
    std::vector<mpz_class> y(m.cols());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < snf.rank) {
            const mpz_class& d = snf.s.at(i, i);
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.v.apply(y);
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SnfResult snf = smith_normal_form(m);
    return snf.v.col_slice(snf.rank, m.cols());
}

IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& r) {
    if (r.cols() == 0 || r.is_zero()) return kernel_basis(m);
    if (m.rows() != r.rows()) throw Error("preimage_lattice: row mismatch");
    IntMatrix block = m.hcat(-r);
    IntMatrix k = kernel_basis(block);
    // Keep the x-part; its columns generate the preimage lattice.
    IntMatrix out(m.cols(), k.cols());
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) out.at(i, j) = k.at(i, j);
    return out;
}

}  // namespace biext

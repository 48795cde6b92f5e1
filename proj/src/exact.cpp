#include "k3mirror/exact.hpp"

#include <algorithm>
#include <sstream>

namespace k3mirror {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, int cols) {
    int nc = cols;
    if (nc < 0) nc = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    IntMat m(static_cast<int>(rows.size()), nc);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != nc)
            throw Error("ragged row list");
        for (int j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMat::row(int i) const {
    IntVec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void IntMat::set_row(int i, const IntVec& v) {
    for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
}

void IntMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::negate_row(int i) {
    for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMat::submul_row(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < cols_; ++c) at(i, c) -= q * at(j, c);
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool IntMat::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

std::string IntMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
    IntMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntVec operator*(const IntVec& v, const IntMat& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw Error("vector/matrix dimension mismatch");
    IntVec r(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
    }
    return r;
}

RatVec operator*(const RatVec& v, const IntMat& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw Error("vector/matrix dimension mismatch");
    RatVec r(m.cols(), Rat(0));
    for (int i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.cols(); ++j) r[j] += v[i] * Rat(m.at(i, j));
    }
    return r;
}

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec scaled(const IntVec& v, const Int& c) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("vector dimension mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("vector dimension mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

bool is_integral(const RatVec& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

IntVec to_int(const RatVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) throw Error("vector is not integral");
        r[i] = v[i].get_num();
    }
    return r;
}

RatVec rat_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec rat_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec rat_scaled(const RatVec& v, const Rat& c) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

namespace {

// floor division quotient
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

int abs_cmp(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

} // namespace

HnfResult hermite_normal_form(const IntMat& m) {
    HnfResult res;
    res.hnf = m;
    res.transform = IntMat::identity(m.rows());
    IntMat& h = res.hnf;
    IntMat& u = res.transform;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        // reduce column c below row r to a single nonzero pivot
        while (true) {
            int best = -1;
            for (int i = r; i < m.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                if (best < 0 || abs_cmp(h.at(i, c), h.at(best, c)) < 0) best = i;
            }
            if (best < 0) break; // column clear below r
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool dirty = false;
            for (int i = r + 1; i < m.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                Int q = fdiv(h.at(i, c), h.at(r, c));
                h.submul_row(i, r, q);
                u.submul_row(i, r, q);
                if (h.at(i, c) != 0) dirty = true;
            }
            if (!dirty) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (int i = 0; i < r; ++i) {
            Int q = fdiv(h.at(i, c), h.at(r, c));
            h.submul_row(i, r, q);
            u.submul_row(i, r, q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

namespace {

struct SnfWork {
    IntMat s, l, r;

    void row_submul(int i, int j, const Int& q) {
        s.submul_row(i, j, q);
        l.submul_row(i, j, q);
    }
    void col_submul(int i, int j, const Int& q) {
        // column i of s -= q * column j; mirrored on r
        if (q == 0) return;
        for (int k = 0; k < s.rows(); ++k) s.at(k, i) -= q * s.at(k, j);
        for (int k = 0; k < r.rows(); ++k) r.at(k, i) -= q * r.at(k, j);
    }
    void row_swap(int i, int j) {
        s.swap_rows(i, j);
        l.swap_rows(i, j);
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < s.rows(); ++k) std::swap(s.at(k, i), s.at(k, j));
        for (int k = 0; k < r.rows(); ++k) std::swap(r.at(k, i), r.at(k, j));
    }
    void row_negate(int i) {
        s.negate_row(i);
        l.negate_row(i);
    }
};

} // namespace

SnfResult smith_normal_form(const IntMat& m) {
    SnfWork w;
    w.s = m;
    w.l = IntMat::identity(m.rows());
    w.r = IntMat::identity(m.cols());
    const int n = std::min(m.rows(), m.cols());

    for (int k = 0; k < n; ++k) {
        // find a nonzero pivot in the trailing block
        int pi = -1, pj = -1;
        for (int i = k; i < m.rows() && pi < 0; ++i)
            for (int j = k; j < m.cols(); ++j)
                if (w.s.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break; // trailing block is zero: remaining divisors are 0
        w.row_swap(k, pi);
        w.col_swap(k, pj);

        while (true) {
            // clear column k below the pivot
            bool col_clear;
            do {
                col_clear = true;
                // move the least nonzero entry of the column into the pivot
                int best = k;
                for (int i = k + 1; i < m.rows(); ++i)
                    if (w.s.at(i, k) != 0 &&
                        (w.s.at(best, k) == 0 || abs_cmp(w.s.at(i, k), w.s.at(best, k)) < 0))
                        best = i;
                w.row_swap(k, best);
                for (int i = k + 1; i < m.rows(); ++i) {
                    if (w.s.at(i, k) == 0) continue;
                    Int q = fdiv(w.s.at(i, k), w.s.at(k, k));
                    w.row_submul(i, k, q);
                    if (w.s.at(i, k) != 0) col_clear = false;
                }
            } while (!col_clear);
            // clear row k right of the pivot
            bool row_clear;
            do {
                row_clear = true;
                int best = k;
                for (int j = k + 1; j < m.cols(); ++j)
                    if (w.s.at(k, j) != 0 &&
                        (w.s.at(k, best) == 0 || abs_cmp(w.s.at(k, j), w.s.at(k, best)) < 0))
                        best = j;
                w.col_swap(k, best);
                for (int j = k + 1; j < m.cols(); ++j) {
                    if (w.s.at(k, j) == 0) continue;
                    Int q = fdiv(w.s.at(k, j), w.s.at(k, k));
                    w.col_submul(j, k, q);
                    if (w.s.at(k, j) != 0) row_clear = false;
                }
            } while (!row_clear);
            // clearing the row may have dirtied the column
            bool col_dirty = false;
            for (int i = k + 1; i < m.rows(); ++i)
                if (w.s.at(i, k) != 0) col_dirty = true;
            if (!col_dirty) break;
        }

        // enforce divisibility of the trailing block by the pivot
        bool redo = false;
        for (int i = k + 1; i < m.rows() && !redo; ++i)
            for (int j = k + 1; j < m.cols(); ++j)
                if (w.s.at(i, j) % w.s.at(k, k) != 0) {
                    // fold row i into row k and restart the elimination at k
                    w.row_submul(k, i, Int(-1));
                    redo = true;
                    break;
                }
        if (redo) {
            --k;
            continue;
        }
        if (w.s.at(k, k) < 0) w.row_negate(k);
    }

    SnfResult res;
    res.divisors.resize(n);
    for (int k = 0; k < n; ++k) res.divisors[k] = w.s.at(k, k);
    res.left = w.l;
    res.right = w.r;
    return res;
}

IntMat integer_kernel(const IntMat& m) {
    HnfResult h = hermite_normal_form(m);
    std::vector<IntVec> rows;
    for (int i = h.rank; i < m.rows(); ++i) rows.push_back(h.transform.row(i));
    IntMat k = IntMat::from_rows(rows, m.rows());
    // canonicalize the kernel basis
    return hermite_normal_form(k).hnf;
}

RatVec congruent_diagonalization(const IntMat& g) {
    if (!g.is_symmetric()) throw Error("matrix is not symmetric");
    const int n = g.rows();
    RatMat d(n, RatVec(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = Rat(g.at(i, j));

    auto sym_swap = [&](int i, int j) {
        if (i == j) return;
        std::swap(d[i], d[j]);
        for (int k = 0; k < n; ++k) std::swap(d[k][i], d[k][j]);
    };
    auto sym_add = [&](int i, int j) {
        // basis change b_i += b_j
        for (int k = 0; k < n; ++k) d[i][k] += d[j][k];
        for (int k = 0; k < n; ++k) d[k][i] += d[k][j];
    };

    for (int i = 0; i < n; ++i) {
        if (d[i][i] == 0) {
            int j = -1;
            for (int k = i + 1; k < n; ++k)
                if (d[k][k] != 0) {
                    j = k;
                    break;
                }
            if (j >= 0) {
                sym_swap(i, j);
            } else {
                for (int k = i + 1; k < n; ++k)
                    if (d[i][k] != 0) {
                        j = k;
                        break;
                    }
                if (j < 0) continue; // row is entirely zero: diagonal entry stays 0
                sym_add(i, j);       // d[i][i] becomes 2*d[i][j] != 0
            }
        }
        for (int k = i + 1; k < n; ++k) {
            if (d[k][i] == 0) continue;
            Rat f = d[k][i] / d[i][i];
            for (int c = 0; c < n; ++c) d[k][c] -= f * d[i][c];
            for (int c = 0; c < n; ++c) d[c][k] -= f * d[c][i];
        }
    }
    RatVec diag(n);
    for (int i = 0; i < n; ++i) diag[i] = d[i][i];
    return diag;
}

Int determinant(const IntMat& m) {
    if (!m.is_square()) throw Error("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

namespace {

// Gauss-Jordan solve of A z = b over Q. A is n x k. Returns nullopt when
// inconsistent; when the system is underdetermined the free variables are
// set to 0.
std::optional<RatVec> rat_solve(RatMat a, RatVec b) {
    const int n = static_cast<int>(a.size());
    const int k = n ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < k && row < n; ++col) {
        int p = -1;
        for (int i = row; i < n; ++i)
            if (a[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[row], a[p]);
        std::swap(b[row], b[p]);
        Rat inv = a[row][col];
        for (int c = col; c < k; ++c) a[row][c] /= inv;
        b[row] /= inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (int c = col; c < k; ++c) a[i][c] -= f * a[row][c];
            b[i] -= f * b[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (b[i] != 0) return std::nullopt;
    RatVec z(k, Rat(0));
    for (int i = 0; i < row; ++i) z[pivot_col_of_row[i]] = b[i];
    return z;
}

} // namespace

IntMat unimodular_inverse(const IntMat& u) {
    if (!u.is_square()) throw Error("inverse of non-square matrix");
    const int n = u.rows();
    IntMat inv(n, n);
    RatMat a(n, RatVec(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rat(u.at(i, j));
    for (int col = 0; col < n; ++col) {
        RatVec b(n, Rat(0));
        b[col] = 1;
        auto z = rat_solve(a, b);
        if (!z) throw Error("matrix is singular");
        for (int i = 0; i < n; ++i) {
            if ((*z)[i].get_den() != 1) throw Error("matrix is not unimodular");
            inv.at(i, col) = (*z)[i].get_num();
        }
    }
    return inv;
}

std::optional<RatVec> solve_in_row_span(const IntMat& basis, const RatVec& target) {
    if (static_cast<int>(target.size()) != basis.cols())
        throw Error("vector/matrix dimension mismatch");
    // x * basis == target  <=>  basis^T x^T == target^T
    RatMat a(basis.cols(), RatVec(basis.rows(), Rat(0)));
    for (int i = 0; i < basis.rows(); ++i)
        for (int j = 0; j < basis.cols(); ++j) a[j][i] = Rat(basis.at(i, j));
    return rat_solve(a, target);
}

std::optional<RatVec> solve_in_row_span(const IntMat& basis, const IntVec& target) {
    return solve_in_row_span(basis, to_rat(target));
}

IntVec solve_dot_one(const IntVec& a) {
    IntVec w(a.size(), Int(0));
    Int g = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Int s, t, gn;
        mpz_gcdext(gn.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a[i].get_mpz_t());
        for (size_t j = 0; j < i; ++j) w[j] *= s;
        w[i] = t;
        g = gn;
        if (g == 1 && i + 1 < a.size()) {
            // remaining coefficients stay 0
            break;
        }
    }
    if (g != 1) throw Error("pairings have gcd != 1");
    return w;
}

} // namespace k3mirror

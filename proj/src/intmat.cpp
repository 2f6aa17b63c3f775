#include "oktrace/intmat.hpp"

#include <stdexcept>
#include <utility>

#include "oktrace/errors.hpp"

namespace oktrace {

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::scalar(std::size_t n, const mpz_class& v) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = v;
    return m;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMat C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const mpz_class& aik = A.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

IntMat mat_stack(const IntMat& top, const IntMat& bottom) {
    if (top.rows == 0) return bottom;
    if (bottom.rows == 0) return top;
    if (top.cols != bottom.cols)
        throw std::invalid_argument("mat_stack: column mismatch");
    IntMat C(top.rows + bottom.rows, top.cols);
    for (std::size_t i = 0; i < top.rows; ++i)
        for (std::size_t j = 0; j < top.cols; ++j) C.at(i, j) = top.at(i, j);
    for (std::size_t i = 0; i < bottom.rows; ++i)
        for (std::size_t j = 0; j < top.cols; ++j)
            C.at(top.rows + i, j) = bottom.at(i, j);
    return C;
}

IntMat mat_transpose(const IntMat& A) {
    IntMat T(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

mpz_class det(const IntMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("det: matrix not square");
    std::size_t n = A.rows;
    if (n == 0) return 1;
    IntMat B = A;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (B.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && B.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(B.at(k, j), B.at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = B.at(i, j) * B.at(k, k) - B.at(i, k) * B.at(k, j);
                mpz_divexact(B.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            B.at(i, k) = 0;
        }
        prev = B.at(k, k);
    }
    return sign * B.at(n - 1, n - 1);
}

static void row_axpy(IntMat& M, std::size_t dst, std::size_t src, const mpz_class& q) {
    // row_dst -= q * row_src
    if (q == 0) return;
    for (std::size_t j = 0; j < M.cols; ++j) M.at(dst, j) -= q * M.at(src, j);
}

IntMat hnf(const IntMat& M) {
    IntMat H = M;
    std::size_t r = 0;
    for (std::size_t c = 0; c < H.cols && r < H.rows; ++c) {
        std::size_t piv = r;
        while (piv < H.rows && H.at(piv, c) == 0) ++piv;
        if (piv == H.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < H.cols; ++j) std::swap(H.at(r, j), H.at(piv, j));
        for (std::size_t i = r + 1; i < H.rows; ++i) {
            if (H.at(i, c) == 0) continue;
            mpz_class g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                       H.at(r, c).get_mpz_t(), H.at(i, c).get_mpz_t());
            mpz_class ag = H.at(r, c) / g, bg = H.at(i, c) / g;
            for (std::size_t j = 0; j < H.cols; ++j) {
                mpz_class hr = H.at(r, j), hi = H.at(i, j);
                H.at(r, j) = u * hr + v * hi;
                H.at(i, j) = ag * hi - bg * hr;
            }
        }
        if (H.at(r, c) < 0)
            for (std::size_t j = 0; j < H.cols; ++j) H.at(r, j) = -H.at(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(r, c).get_mpz_t());
            row_axpy(H, i, r, q);
        }
        ++r;
    }
    IntMat out(r, H.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < H.cols; ++j) out.at(i, j) = H.at(i, j);
    return out;
}

SmithForm snf(const IntMat& M) {
    SmithForm s;
    s.d = M;
    s.u = IntMat::identity(M.rows);
    s.v = IntMat::identity(M.cols);
    IntMat& D = s.d;
    std::size_t k = std::min(M.rows, M.cols);

    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < D.rows; ++i) std::swap(D.at(i, a), D.at(i, b));
        for (std::size_t i = 0; i < s.v.rows; ++i) std::swap(s.v.at(i, a), s.v.at(i, b));
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < D.cols; ++j) std::swap(D.at(a, j), D.at(b, j));
        for (std::size_t j = 0; j < s.u.cols; ++j) std::swap(s.u.at(a, j), s.u.at(b, j));
    };

    for (std::size_t t = 0; t < k; ++t) {
        // move some nonzero entry of the trailing block to (t, t)
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < D.rows && !found; ++i)
            for (std::size_t j = t; j < D.cols && !found; ++j)
                if (D.at(i, j) != 0) { pi = i; pj = j; found = true; }
        if (!found) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < D.rows; ++i) {
                if (D.at(i, t) == 0) continue;
                /* When the pivot divides the entry, eliminate without the
                 * gcd transform: the transform's Bezout pair can degenerate
                 * to a row swap (u = 0) and cycle forever; plain elimination
                 * leaves row t untouched, and the gcd branch then strictly
                 * shrinks |D(t,t)|, so the sweep terminates. */
                if (mpz_divisible_p(D.at(i, t).get_mpz_t(),
                                    D.at(t, t).get_mpz_t())) {
                    mpz_class q = D.at(i, t) / D.at(t, t);
                    for (std::size_t j = 0; j < D.cols; ++j)
                        D.at(i, j) -= q * D.at(t, j);
                    for (std::size_t j = 0; j < s.u.cols; ++j)
                        s.u.at(i, j) -= q * s.u.at(t, j);
                    continue;
                }
                mpz_class g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                           D.at(t, t).get_mpz_t(), D.at(i, t).get_mpz_t());
                mpz_class ag = D.at(t, t) / g, bg = D.at(i, t) / g;
                for (std::size_t j = 0; j < D.cols; ++j) {
                    mpz_class dt = D.at(t, j), di = D.at(i, j);
                    D.at(t, j) = u * dt + v * di;
                    D.at(i, j) = ag * di - bg * dt;
                }
                for (std::size_t j = 0; j < s.u.cols; ++j) {
                    mpz_class ut = s.u.at(t, j), ui = s.u.at(i, j);
                    s.u.at(t, j) = u * ut + v * ui;
                    s.u.at(i, j) = ag * ui - bg * ut;
                }
            }
            for (std::size_t j = t + 1; j < D.cols; ++j) {
                if (D.at(t, j) == 0) continue;
                /* Mirror of the row pass: divisible entries are cleared by
                 * plain elimination, which cannot refill column t (its
                 * entries below the pivot are already zero), so only the
                 * gcd branch needs another sweep. */
                if (mpz_divisible_p(D.at(t, j).get_mpz_t(),
                                    D.at(t, t).get_mpz_t())) {
                    mpz_class q = D.at(t, j) / D.at(t, t);
                    for (std::size_t i = 0; i < D.rows; ++i)
                        D.at(i, j) -= q * D.at(i, t);
                    for (std::size_t i = 0; i < s.v.rows; ++i)
                        s.v.at(i, j) -= q * s.v.at(i, t);
                    continue;
                }
                mpz_class g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                           D.at(t, t).get_mpz_t(), D.at(t, j).get_mpz_t());
                mpz_class ag = D.at(t, t) / g, bg = D.at(t, j) / g;
                for (std::size_t i = 0; i < D.rows; ++i) {
                    mpz_class dt = D.at(i, t), dj = D.at(i, j);
                    D.at(i, t) = u * dt + v * dj;
                    D.at(i, j) = ag * dj - bg * dt;
                }
                for (std::size_t i = 0; i < s.v.rows; ++i) {
                    mpz_class vt = s.v.at(i, t), vj = s.v.at(i, j);
                    s.v.at(i, t) = u * vt + v * vj;
                    s.v.at(i, j) = ag * vj - bg * vt;
                }
                dirty = true;  // column ops may refill column t
            }
        }
    }

    for (std::size_t t = 0; t < k; ++t) {
        if (D.at(t, t) < 0) {
            for (std::size_t j = 0; j < D.cols; ++j) D.at(t, j) = -D.at(t, j);
            for (std::size_t j = 0; j < s.u.cols; ++j) s.u.at(t, j) = -s.u.at(t, j);
        }
    }
    // push zero diagonal entries to the end
    for (std::size_t t = 0; t < k; ++t) {
        if (D.at(t, t) != 0) continue;
        for (std::size_t u2 = t + 1; u2 < k; ++u2)
            if (D.at(u2, u2) != 0) {
                row_swap(t, u2);
                col_swap(t, u2);
                break;
            }
    }
    // enforce the divisibility chain d_t | d_{t+1}
    bool fixed = true;
    while (fixed) {
        fixed = false;
        for (std::size_t t = 0; t + 1 < k; ++t) {
            const mpz_class d1 = D.at(t, t), d2 = D.at(t + 1, t + 1);
            if (d2 == 0 || d1 == 0) continue;
            if (mpz_divisible_p(d2.get_mpz_t(), d1.get_mpz_t())) continue;
            // fold column t+1 into column t, re-diagonalize the 2x2 block
            for (std::size_t i = 0; i < s.v.rows; ++i)
                s.v.at(i, t) += s.v.at(i, t + 1);
            D.at(t + 1, t) = d2;
            mpz_class g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                       d1.get_mpz_t(), d2.get_mpz_t());
            mpz_class ag = d1 / g, bg = d2 / g;
            for (std::size_t j = 0; j < D.cols; ++j) {
                mpz_class dt = D.at(t, j), di = D.at(t + 1, j);
                D.at(t, j) = u * dt + v * di;
                D.at(t + 1, j) = ag * di - bg * dt;
            }
            for (std::size_t j = 0; j < s.u.cols; ++j) {
                mpz_class ut = s.u.at(t, j), ui = s.u.at(t + 1, j);
                s.u.at(t, j) = u * ut + v * ui;
                s.u.at(t + 1, j) = ag * ui - bg * ut;
            }
            // clear the fill-in at (t, t+1) with a column operation
            OKT_ASSERT(mpz_divisible_p(D.at(t, t + 1).get_mpz_t(),
                                       D.at(t, t).get_mpz_t()),
                       "snf: fill-in not divisible by new pivot");
            mpz_class q = D.at(t, t + 1) / D.at(t, t);
            for (std::size_t i = 0; i < D.rows; ++i)
                D.at(i, t + 1) -= q * D.at(i, t);
            for (std::size_t i = 0; i < s.v.rows; ++i)
                s.v.at(i, t + 1) -= q * s.v.at(i, t);
            if (D.at(t, t) < 0) {
                for (std::size_t j = 0; j < D.cols; ++j) D.at(t, j) = -D.at(t, j);
                for (std::size_t j = 0; j < s.u.cols; ++j)
                    s.u.at(t, j) = -s.u.at(t, j);
            }
            if (D.at(t + 1, t + 1) < 0) {
                for (std::size_t j = 0; j < D.cols; ++j)
                    D.at(t + 1, j) = -D.at(t + 1, j);
                for (std::size_t j = 0; j < s.u.cols; ++j)
                    s.u.at(t + 1, j) = -s.u.at(t + 1, j);
            }
            fixed = true;
        }
    }
    return s;
}

mpz_class content(const IntMat& M) {
    mpz_class g = 0;
    for (const auto& x : M.a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

static std::size_t pivot_col(const IntMat& H, std::size_t i) {
    for (std::size_t j = 0; j < H.cols; ++j)
        if (H.at(i, j) != 0) return j;
    throw internal_error("pivot_col: zero row in HNF");
}

std::optional<std::vector<mpz_class>> solve_in_hnf(const IntMat& H,
                                                   const std::vector<mpz_class>& v) {
    if (v.size() != H.cols) throw std::invalid_argument("solve_in_hnf: size mismatch");
    std::vector<mpz_class> r = v, x(H.rows, 0);
    for (std::size_t i = 0; i < H.rows; ++i) {
        std::size_t c = pivot_col(H, i);
        if (!mpz_divisible_p(r[c].get_mpz_t(), H.at(i, c).get_mpz_t()))
            return std::nullopt;
        mpz_class q = r[c] / H.at(i, c);
        x[i] = q;
        if (q != 0)
            for (std::size_t j = 0; j < H.cols; ++j) r[j] -= q * H.at(i, j);
    }
    for (const auto& e : r)
        if (e != 0) return std::nullopt;
    return x;
}

std::vector<mpz_class> reduce_mod_lattice(const IntMat& H, std::vector<mpz_class> v) {
    if (v.size() != H.cols)
        throw std::invalid_argument("reduce_mod_lattice: size mismatch");
    for (std::size_t i = 0; i < H.rows; ++i) {
        std::size_t c = pivot_col(H, i);
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), H.at(i, c).get_mpz_t());
        if (q != 0)
            for (std::size_t j = 0; j < H.cols; ++j) v[j] -= q * H.at(i, j);
    }
    return v;
}

IntMat kernel_mod_p(const IntMat& M, const mpz_class& p) {
    IntMat A = M;
    for (auto& x : A.a) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    }
    IntMat T = IntMat::identity(M.rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
        std::size_t piv = r;
        while (piv < A.rows && A.at(piv, c) == 0) ++piv;
        if (piv == A.rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(piv, j));
            for (std::size_t j = 0; j < T.cols; ++j) std::swap(T.at(r, j), T.at(piv, j));
        }
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), A.at(r, c).get_mpz_t(), p.get_mpz_t()) == 0)
            throw internal_error("kernel_mod_p: modulus not prime");
        auto scale_row = [&](IntMat& X, std::size_t i, const mpz_class& s) {
            for (std::size_t j = 0; j < X.cols; ++j)
                X.at(i, j) = (X.at(i, j) * s) % p;
        };
        scale_row(A, r, inv);
        scale_row(T, r, inv);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            mpz_class f = A.at(i, c);
            for (std::size_t j = 0; j < A.cols; ++j)
                A.at(i, j) = ((A.at(i, j) - f * A.at(r, j)) % p + p) % p;
            for (std::size_t j = 0; j < T.cols; ++j)
                T.at(i, j) = ((T.at(i, j) - f * T.at(r, j)) % p + p) % p;
        }
        ++r;
    }
    IntMat K(M.rows - r, M.rows);
    for (std::size_t i = r; i < M.rows; ++i)
        for (std::size_t j = 0; j < M.rows; ++j) K.at(i - r, j) = T.at(i, j);
    // canonicalize the kernel basis: row echelon over F_p
    std::size_t rr = 0;
    for (std::size_t c = 0; c < K.cols && rr < K.rows; ++c) {
        std::size_t piv = rr;
        while (piv < K.rows && K.at(piv, c) == 0) ++piv;
        if (piv == K.rows) continue;
        if (piv != rr)
            for (std::size_t j = 0; j < K.cols; ++j) std::swap(K.at(rr, j), K.at(piv, j));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), K.at(rr, c).get_mpz_t(), p.get_mpz_t());
        for (std::size_t j = 0; j < K.cols; ++j) K.at(rr, j) = (K.at(rr, j) * inv) % p;
        for (std::size_t i = 0; i < K.rows; ++i) {
            if (i == rr || K.at(i, c) == 0) continue;
            mpz_class f = K.at(i, c);
            for (std::size_t j = 0; j < K.cols; ++j)
                K.at(i, j) = ((K.at(i, j) - f * K.at(rr, j)) % p + p) % p;
        }
        ++rr;
    }
    return K;
}

namespace {

mpz_class canon_mod(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
}

// RREF of [M | I] over F_p; pivots only in the first M.cols columns.
void rref_augmented(IntMat& A, std::vector<std::size_t>& pivots, std::size_t lead_cols,
                    const mpz_class& p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < lead_cols && r < A.rows; ++c) {
        std::size_t piv = r;
        while (piv < A.rows && A.at(piv, c) == 0) ++piv;
        if (piv == A.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(piv, j));
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), A.at(r, c).get_mpz_t(), p.get_mpz_t()) == 0)
            throw internal_error("rref_mod_p: modulus not prime");
        for (std::size_t j = 0; j < A.cols; ++j) A.at(r, j) = canon_mod(A.at(r, j) * inv, p);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            mpz_class f = A.at(i, c);
            for (std::size_t j = 0; j < A.cols; ++j)
                A.at(i, j) = canon_mod(A.at(i, j) - f * A.at(r, j), p);
        }
        pivots.push_back(c);
        ++r;
    }
}

}  // namespace

RrefModP rref_mod_p(const IntMat& M, const mpz_class& p) {
    IntMat A = M;
    for (auto& x : A.a) x = canon_mod(x, p);
    std::vector<std::size_t> pivots;
    rref_augmented(A, pivots, A.cols, p);
    RrefModP out;
    out.pivots = pivots;
    out.r = IntMat(pivots.size(), M.cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < M.cols; ++j) out.r.at(i, j) = A.at(i, j);
    return out;
}

std::optional<std::vector<mpz_class>> solve_left_mod_p(const IntMat& M,
                                                       const std::vector<mpz_class>& v,
                                                       const mpz_class& p) {
    if (v.size() != M.cols) throw std::invalid_argument("solve_left_mod_p: size mismatch");
    // reduce [M | I]; then eliminate v against the pivot rows, collecting the
    // same combination from the identity half
    IntMat A(M.rows, M.cols + M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) A.at(i, j) = canon_mod(M.at(i, j), p);
        A.at(i, M.cols + i) = 1;
    }
    std::vector<std::size_t> pivots;
    rref_augmented(A, pivots, M.cols, p);
    std::vector<mpz_class> w(v);
    for (auto& x : w) x = canon_mod(x, p);
    std::vector<mpz_class> x(M.rows, mpz_class(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        mpz_class f = w[pivots[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < M.cols; ++j) w[j] = canon_mod(w[j] - f * A.at(i, j), p);
        for (std::size_t j = 0; j < M.rows; ++j)
            x[j] = canon_mod(x[j] + f * A.at(i, M.cols + j), p);
    }
    for (const auto& c : w)
        if (c != 0) return std::nullopt;
    return x;
}

}  // namespace oktrace

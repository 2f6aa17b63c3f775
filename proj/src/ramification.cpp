#include "oktrace/ramification.hpp"

#include <algorithm>

#include "oktrace/errors.hpp"
#include "oktrace/modpoly.hpp"

namespace oktrace {

namespace {

std::vector<mpz_class> mod_vec(std::vector<mpz_class> v, const mpz_class& p) {
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return v;
}

std::vector<mpz_class> mat_row(const IntMat& m, std::size_t i) {
    std::vector<mpz_class> v(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) v[j] = m.at(i, j);
    return v;
}

// row vector times matrix over F_p
std::vector<mpz_class> vec_mat_mod(const std::vector<mpz_class>& v, const IntMat& m,
                                   const mpz_class& p) {
    std::vector<mpz_class> w(m.cols, mpz_class(0));
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols; ++j) w[j] += v[i] * m.at(i, j);
    }
    return mod_vec(std::move(w), p);
}

/* Working view of the semisimple quotient A/N, A = O/pO. Vectors over the
 * quotient are coordinates over the unit vectors at the non-pivot columns of
 * the nilradical's RREF. */
struct QuotientAlgebra {
    const std::vector<IntMat>& tab;
    mpz_class p;
    RrefModP nil;                        // RREF of the nilradical
    std::vector<std::size_t> comp_cols;  // complement columns = quotient basis
    std::vector<mpz_class> one;          // coords of 1 in O

    std::size_t dim() const { return comp_cols.size(); }

    std::vector<mpz_class> lift(const std::vector<mpz_class>& u) const {
        std::vector<mpz_class> w(tab.size(), mpz_class(0));
        for (std::size_t k = 0; k < comp_cols.size(); ++k) w[comp_cols[k]] = u[k];
        return w;
    }

    std::vector<mpz_class> project(std::vector<mpz_class> w) const {
        w = mod_vec(std::move(w), p);
        for (std::size_t i = 0; i < nil.r.rows; ++i) {
            mpz_class c = w[nil.pivots[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < nil.r.cols; ++j) {
                w[j] -= c * nil.r.at(i, j);
                mpz_fdiv_r(w[j].get_mpz_t(), w[j].get_mpz_t(), p.get_mpz_t());
            }
        }
        std::vector<mpz_class> u(comp_cols.size());
        for (std::size_t k = 0; k < comp_cols.size(); ++k) u[k] = w[comp_cols[k]];
        return u;
    }

    std::vector<mpz_class> mul(const std::vector<mpz_class>& u,
                               const std::vector<mpz_class>& v) const {
        return project(coord_mul_mod(tab, lift(u), lift(v), p));
    }
};

// minimal polynomial of the F_p-linear operator "row vector * M"
ModPoly operator_min_poly(const IntMat& M, const mpz_class& p) {
    std::size_t n = M.rows;
    ModPoly mu(p, {mpz_class(1)});
    for (std::size_t j = 0; j < n; ++j) {
        // Krylov chain from e_j; stop at first linear dependence
        IntMat chain(0, n);
        std::vector<mpz_class> cur(n, mpz_class(0));
        cur[j] = 1;
        while (true) {
            if (solve_left_mod_p(chain, cur, p).has_value()) break;
            IntMat next(chain.rows + 1, n);
            for (std::size_t i = 0; i < chain.rows; ++i)
                for (std::size_t k = 0; k < n; ++k) next.at(i, k) = chain.at(i, k);
            for (std::size_t k = 0; k < n; ++k) next.at(chain.rows, k) = cur[k];
            chain = next;
            cur = vec_mat_mod(cur, M, p);
        }
        auto dep = solve_left_mod_p(chain, cur, p);
        std::vector<mpz_class> c(chain.rows + 1);
        for (std::size_t i = 0; i < chain.rows; ++i) c[i] = mpz_class(0) - (*dep)[i];
        c[chain.rows] = 1;
        ModPoly mj(p, std::move(c));
        // mu = lcm(mu, mj)
        ModPoly g = gcd(mu, mj);
        mu = divexact(mu * mj, g);
        if (mu.degree() == static_cast<int>(n)) break;
    }
    return make_monic(mu);
}

// split the subalgebra spanned by the rows of w (quotient coords) into its
// field components; appends their bases to out
void split_components(const QuotientAlgebra& A, const IntMat& w,
                      std::vector<IntMat>& out) {
    std::size_t dim = w.rows;
    OKT_ASSERT(dim > 0, "empty component");
    // Frobenius on the subalgebra: rows of w map to row^p
    IntMat img(dim, w.cols);
    for (std::size_t i = 0; i < dim; ++i) {
        auto x = A.lift(mat_row(w, i));
        auto y = coord_pow_mod(A.tab, x, A.p, A.p, A.one);
        auto u = A.project(y);
        for (std::size_t j = 0; j < w.cols; ++j) img.at(i, j) = u[j];
    }
    // fixed vectors: c with c*img == c*w
    IntMat diff(dim, w.cols);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < w.cols; ++j)
            diff.at(i, j) = img.at(i, j) - w.at(i, j);
    IntMat fixed = kernel_mod_p(diff, A.p);
    OKT_ASSERT(fixed.rows >= 1, "semisimple algebra without fixed Frobenius vectors");
    if (fixed.rows == 1) {
        out.push_back(w);
        return;
    }
    // some fixed vector is not scalar; its multiplication operator has at
    // least two eigenvalues, all in F_p, and splits the algebra
    for (std::size_t fi = 0; fi < fixed.rows; ++fi) {
        std::vector<mpz_class> v = vec_mat_mod(mat_row(fixed, fi), w, A.p);
        IntMat mv(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            auto prod = A.mul(mat_row(w, i), v);
            auto sol = solve_left_mod_p(w, prod, A.p);
            OKT_ASSERT(sol.has_value(), "component not closed under multiplication");
            for (std::size_t j = 0; j < dim; ++j) mv.at(i, j) = (*sol)[j];
        }
        ModPoly mu = operator_min_poly(mv, A.p);
        if (mu.degree() < 2) continue;
        SplitRng rng(0x73706c6974ull ^ mpz_get_ui(A.p.get_mpz_t()));
        auto roots = factor_mod_p(mu, rng);
        for (auto& [lin, e] : roots) {
            OKT_ASSERT(lin.degree() == 1 && e == 1,
                       "fixed-vector operator is not split semisimple");
            // eigenvalue lambda = -constant coefficient
            mpz_class lambda = lin.c[0] == 0 ? mpz_class(0) : A.p - lin.c[0];
            IntMat shifted = mv;
            for (std::size_t i = 0; i < dim; ++i) {
                shifted.at(i, i) -= lambda;
                mpz_fdiv_r(shifted.at(i, i).get_mpz_t(), shifted.at(i, i).get_mpz_t(),
                           A.p.get_mpz_t());
            }
            IntMat ker = kernel_mod_p(shifted, A.p);
            OKT_ASSERT(ker.rows > 0 && ker.rows < dim, "degenerate eigenspace");
            IntMat sub(ker.rows, w.cols);
            for (std::size_t i = 0; i < ker.rows; ++i) {
                auto row = vec_mat_mod(mat_row(ker, i), w, A.p);
                for (std::size_t j = 0; j < w.cols; ++j) sub.at(i, j) = row[j];
            }
            split_components(A, sub, out);
        }
        return;
    }
    throw internal_error("no splitting vector found in non-simple algebra");
}

// product of two full-rank ideal lattices (o-coords), as HNF
IntMat ideal_mul(const std::vector<IntMat>& tab, const IntMat& a, const IntMat& b) {
    std::size_t n = a.cols;
    IntMat rows(a.rows * b.rows, n);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.rows; ++j) {
            auto prod = coord_mul(tab, mat_row(a, i), mat_row(b, j));
            for (std::size_t k = 0; k < n; ++k) rows.at(i * b.rows + j, k) = prod[k];
        }
    return hnf(rows);
}

bool lattice_contains_scaled_identity(const IntMat& h, const mpz_class& p) {
    std::size_t n = h.cols;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> v(n, mpz_class(0));
        v[i] = p;
        if (!solve_in_hnf(h, v).has_value()) return false;
    }
    return true;
}

PrimeSplitting split_general(const MaximalOrder& m, const mpz_class& p) {
    const Order& o = m.o;
    std::size_t n = o.degree();
    auto tab = mult_table(o);
    auto one = order_one_coords(o);

    // nilradical of O/pO
    mpz_class q = p;
    while (q < static_cast<long>(n)) q *= p;
    IntMat frob(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> e(n, mpz_class(0));
        e[i] = 1;
        auto img = coord_pow_mod(tab, e, q, p, one);
        for (std::size_t j = 0; j < n; ++j) frob.at(i, j) = img[j];
    }
    QuotientAlgebra A{tab, p, rref_mod_p(kernel_mod_p(frob, p), p), {}, one};
    std::vector<bool> is_pivot(n, false);
    for (auto c : A.nil.pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) A.comp_cols.push_back(c);

    IntMat whole = IntMat::identity(A.dim());
    std::vector<IntMat> comps;
    split_components(A, whole, comps);

    PrimeSplitting out;
    out.p = p;
    unsigned total = 0;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        unsigned fi = static_cast<unsigned>(comps[ci].rows);
        // maximal ideal lattice: p*O + nilradical + the other components
        std::size_t extra = A.nil.r.rows;
        for (std::size_t cj = 0; cj < comps.size(); ++cj)
            if (cj != ci) extra += comps[cj].rows;
        IntMat gens(n + extra, n);
        for (std::size_t i = 0; i < n; ++i) gens.at(i, i) = p;
        std::size_t at = n;
        for (std::size_t i = 0; i < A.nil.r.rows; ++i, ++at)
            for (std::size_t j = 0; j < n; ++j) gens.at(at, j) = A.nil.r.at(i, j);
        for (std::size_t cj = 0; cj < comps.size(); ++cj) {
            if (cj == ci) continue;
            for (std::size_t i = 0; i < comps[cj].rows; ++i, ++at) {
                auto lifted = A.lift(mat_row(comps[cj], i));
                for (std::size_t j = 0; j < n; ++j) gens.at(at, j) = lifted[j];
            }
        }
        IntMat ideal = hnf(gens);
        OKT_ASSERT(ideal.rows == n, "maximal ideal lattice lost rank");
        {
            mpz_class nrm = 1;
            for (std::size_t i = 0; i < n; ++i) nrm *= ideal.at(i, i);
            mpz_class expect;
            mpz_pow_ui(expect.get_mpz_t(), p.get_mpz_t(), fi);
            OKT_ASSERT(nrm == expect, "maximal ideal norm mismatch");
        }
        // e_i = largest k with p*O inside ideal^k, capped at n
        unsigned ei = 1;
        IntMat pw = ideal;
        while (ei < n) {
            pw = ideal_mul(tab, pw, ideal);
            if (!lattice_contains_scaled_identity(pw, p)) break;
            ++ei;
        }
        out.shape.emplace_back(ei, fi);
        total += ei * fi;
    }
    OKT_ASSERT(total == n, "splitting shape does not sum to the degree");
    return out;
}

void finish(PrimeSplitting& s, std::size_t n) {
    std::sort(s.shape.begin(), s.shape.end(),
              [](const auto& a, const auto& b) { return a > b; });
    unsigned total = 0;
    s.wild = false;
    for (auto& [e, f] : s.shape) {
        total += e * f;
        mpz_class em(e);
        if (mpz_divisible_p(em.get_mpz_t(), s.p.get_mpz_t())) s.wild = true;
    }
    OKT_ASSERT(total == n, "splitting shape does not sum to the degree");
}

}  // namespace

PrimeSplitting split_prime(const MaximalOrder& m, const mpz_class& p,
                           bool force_general) {
    OKT_ASSERT(is_prime(p), "split_prime needs a prime");
    std::size_t n = m.o.degree();
    bool index_divides = mpz_divisible_p(m.index.get_mpz_t(), p.get_mpz_t()) != 0;
    PrimeSplitting s;
    if (!index_divides && !force_general) {
        s.p = p;
        SplitRng rng(0x64656465ull ^ mpz_get_ui(p.get_mpz_t()));
        auto fac = factor_mod_p(ModPoly::reduce(m.o.f, p), rng);
        for (auto& [g, e] : fac)
            s.shape.emplace_back(e, static_cast<unsigned>(g.degree()));
    } else {
        s = split_general(m, p);
    }
    s.index_divides = index_divides;
    finish(s, n);
    return s;
}

std::vector<PrimeSplitting> ramified_primes(const MaximalOrder& m) {
    std::vector<PrimeSplitting> out;
    for (auto& [p, e] : m.disc_fac.factors) {
        (void)e;
        out.push_back(split_prime(m, p));
    }
    std::sort(out.begin(), out.end(),
              [](const PrimeSplitting& a, const PrimeSplitting& b) { return a.p < b.p; });
    return out;
}

bool is_tame_field(const std::vector<PrimeSplitting>& splittings) {
    for (const auto& s : splittings)
        if (s.wild) return false;
    return true;
}

CodifferentCheck codifferent_index(const MaximalOrder& m) {
    CodifferentCheck c;
    c.dual_index = abs(det(trace_gram(m.o)));
    return c;
}

ValuationCase valuation_check(const MaximalOrder& m, const PrimeSplitting& s) {
    unsigned v = valuation(m.disc, s.p);
    OKT_ASSERT(v >= 1, "valuation_check needs a ramified prime");
    bool any_wild = false;
    unsigned long tame_sum = 0, wild_sum = 0;
    for (auto& [e, f] : s.shape) {
        mpz_class em(e);
        if (mpz_divisible_p(em.get_mpz_t(), s.p.get_mpz_t())) {
            any_wild = true;
            wild_sum += static_cast<unsigned long>(f) * e;
        } else {
            tame_sum += static_cast<unsigned long>(f) * (e - 1);
        }
    }
    if (!any_wild) {
        if (v != tame_sum)
            throw theorem_violation("tame discriminant valuation mismatch at p=" +
                                    s.p.get_str());
        return ValuationCase::tame_equality;
    }
    if (v < tame_sum + wild_sum)
        throw theorem_violation("wild discriminant valuation below different bound at p=" +
                                s.p.get_str());
    return ValuationCase::wild_inequality;
}

}  // namespace oktrace

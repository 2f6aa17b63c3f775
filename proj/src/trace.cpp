#include "oktrace/trace.hpp"

#include <algorithm>

#include "oktrace/errors.hpp"

namespace oktrace {

namespace {

mpz_class divexact(const mpz_class& a, const mpz_class& b) {
    OKT_ASSERT(b != 0 && mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()),
               "inexact integer division");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

TraceProfile trace_profile(const MaximalOrder& m) {
    const Order& o = m.o;
    std::size_t n = o.degree();
    TraceProfile pr;
    pr.gram = trace_gram(o);

    auto psums = power_sums(o.f, n - 1);
    pr.basis_traces.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntPoly bi = o.row_poly(i);
        mpz_class tr = 0;
        for (std::size_t k = 0; k < bi.c.size(); ++k) tr += bi.c[k] * psums[k];
        pr.basis_traces[i] = divexact(tr, o.den);
    }

    pr.t = gcd_all(pr.basis_traces);
    OKT_ASSERT(pr.t > 0, "trace form vanishes on the whole order");

    // trace-zero sublattice: kernel of the 1 x n map y -> y . basis_traces,
    // read off the SNF transform (rows of u past the first map to zero)
    IntMat t0(0, n);
    if (n > 1) {
        IntMat tau(n, 1);
        for (std::size_t i = 0; i < n; ++i) tau.at(i, 0) = pr.basis_traces[i];
        SmithForm s = snf(tau);
        OKT_ASSERT(s.d.at(0, 0) == pr.t, "SNF of the trace form disagrees with the gcd");
        IntMat rows(n - 1, n);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rows.at(i - 1, j) = s.u.at(i, j);
        t0 = hnf(rows);
        OKT_ASSERT(t0.rows == n - 1, "trace-zero lattice lost rank");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::vector<mpz_class> coords(n);
        mpz_class tr = 0;
        for (std::size_t j = 0; j < n; ++j) {
            coords[j] = t0.at(i, j);
            tr += coords[j] * pr.basis_traces[j];
        }
        OKT_ASSERT(tr == 0, "trace-zero basis vector has nonzero trace");
        pr.t0_basis.push_back(element_from_coords(o, std::move(coords)));
    }

    // gamma: xgcd combination of the basis traces, reduced mod the
    // trace-zero lattice for a canonical representative
    auto [g, coeffs] = xgcd(pr.basis_traces);
    OKT_ASSERT(g == pr.t, "xgcd disagrees with gcd");
    std::vector<mpz_class> gc = n > 1 ? reduce_mod_lattice(t0, coeffs) : coeffs;
    mpz_class check = 0;
    for (std::size_t j = 0; j < n; ++j) check += gc[j] * pr.basis_traces[j];
    OKT_ASSERT(check == pr.t, "gamma trace drifted during reduction");
    pr.gamma = element_from_coords(o, std::move(gc));
    return pr;
}

DecompositionCheck verify_thm4_mechanics(const TraceProfile& profile,
                                        const MaximalOrder& m) {
    std::size_t n = m.o.degree();
    mpz_class nn(static_cast<long>(n));
    OKT_ASSERT(mpz_divisible_p(nn.get_mpz_t(), profile.t.get_mpz_t()),
               "t does not divide the degree");
    DecompositionCheck out;
    out.disc_over_t2 = divexact(m.disc, profile.t * profile.t);

    // change of basis (t0_basis rows, gamma) must be unimodular over the
    // order basis, and the Gram determinant is basis-independent
    IntMat c(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c.at(i, j) = profile.t0_basis[i].coords[j];
    for (std::size_t j = 0; j < n; ++j) c.at(n - 1, j) = profile.gamma.coords[j];
    mpz_class dc = det(c);
    OKT_ASSERT(dc == 1 || dc == -1, "t0_basis plus gamma is not a basis of the order");
    IntMat gram2 = mat_mul(mat_mul(c, profile.gram), mat_transpose(c));
    out.disc_recomputed = det(gram2);
    OKT_ASSERT(out.disc_recomputed == m.disc,
               "discriminant changed under the trace decomposition");
    return out;
}

const char* to_string(ConjectureStatus s) {
    switch (s) {
        case ConjectureStatus::consistent_positive: return "consistent_positive";
        case ConjectureStatus::consistent_negative: return "consistent_negative";
        case ConjectureStatus::counterexample: return "counterexample";
        case ConjectureStatus::theorem_violation: return "theorem_violation";
    }
    return "unknown";
}

ConjectureStatus conjecture_classify(bool surjective, bool wild, bool thm4_hypothesis) {
    if (surjective) {
        if (wild && !thm4_hypothesis) return ConjectureStatus::counterexample;
        return ConjectureStatus::consistent_positive;
    }
    if (!wild || thm4_hypothesis) return ConjectureStatus::theorem_violation;
    return ConjectureStatus::consistent_negative;
}

CriteriaVerdict evaluate_criteria(const IntPoly& f, const MaximalOrder& m,
                                  const std::vector<PrimeSplitting>& splittings,
                                  const TraceProfile& profile) {
    CriteriaVerdict v;
    std::size_t n = m.o.degree();
    mpz_class a1 = n >= 1 ? f.coeff(n - 1) : mpz_class(0);
    v.prop1_applies = (a1 == 1 || a1 == -1);
    v.tame_applies = is_tame_field(splittings);
    v.cor3_applies = (squarefree_part(abs(m.disc)) == abs(m.disc));
    v.thm4_applies = true;
    for (auto& [p, e] : factor(mpz_class(static_cast<long>(n))).factors) {
        (void)e;
        if (valuation(m.disc, p) >= 2) v.thm4_applies = false;
    }
    v.ground_truth_surjective = (profile.t == 1);

    auto check = [&](bool applies, const char* name) {
        if (applies && !v.ground_truth_surjective)
            throw theorem_violation(std::string(name) +
                                    " applies but the trace is not surjective (t = " +
                                    profile.t.get_str() + ")");
    };
    check(v.prop1_applies, "the a1 = +-1 criterion");
    check(v.tame_applies, "the tame criterion");
    check(v.cor3_applies, "the squarefree-discriminant criterion");
    check(v.thm4_applies, "the degree-discriminant criterion");

    v.conjecture_status = conjecture_classify(v.ground_truth_surjective,
                                              !v.tame_applies, v.thm4_applies);
    if (v.conjecture_status == ConjectureStatus::theorem_violation)
        throw theorem_violation("non-surjective trace on a field where surjectivity is proven");
    return v;
}

}  // namespace oktrace

#include "oktrace/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "oktrace/arith.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/modpoly.hpp"

namespace oktrace {

IntPoly IntPoly::constant(const mpz_class& v) {
    IntPoly f;
    if (v != 0) f.c.push_back(v);
    return f;
}

IntPoly IntPoly::x_power(std::size_t k) {
    IntPoly f;
    f.c.assign(k + 1, mpz_class(0));
    f.c[k] = 1;
    return f;
}

const mpz_class& IntPoly::lc() const {
    if (c.empty()) throw std::invalid_argument("lc of zero polynomial");
    return c.back();
}

void IntPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    IntPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

IntPoly operator-(const IntPoly& a) {
    IntPoly r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

IntPoly operator*(const IntPoly& a, const mpz_class& s) {
    if (s == 0) return IntPoly{};
    IntPoly r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

mpz_class eval(const IntPoly& f, const mpz_class& x) {
    mpz_class r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

IntPoly derivative(const IntPoly& f) {
    IntPoly r;
    if (f.c.size() <= 1) return r;
    r.c.resize(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i) r.c[i - 1] = f.c[i] * static_cast<long>(i);
    r.normalize();
    return r;
}

mpz_class poly_content(const IntPoly& f) { return gcd_all(f.c); }

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    mpz_class ct = poly_content(f);
    if (f.lc() < 0) ct = -ct;
    IntPoly r = f;
    for (auto& v : r.c) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), ct.get_mpz_t());
        v = q;
    }
    return r;
}

void divrem_monic(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
    if (!b.is_monic()) throw std::invalid_argument("divrem_monic: divisor not monic");
    r = a;
    q = IntPoly{};
    if (a.degree() < b.degree()) return;
    q.c.assign(a.c.size() - b.c.size() + 1, mpz_class(0));
    while (r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        mpz_class f = r.lc();
        q.c[shift] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
        r.normalize();
        if (r.is_zero()) break;
    }
    q.normalize();
}

IntPoly mod_monic(const IntPoly& a, const IntPoly& f) {
    IntPoly q, r;
    divrem_monic(a, f, q, r);
    return r;
}

IntPoly mulmod_monic(const IntPoly& a, const IntPoly& b, const IntPoly& f) {
    return mod_monic(a * b, f);
}

void pseudo_divrem(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_divrem by zero");
    r = a;
    q = IntPoly{};
    if (a.degree() < b.degree()) {
        // multiplier is lc(b)^(deg a - deg b + 1) only when deg a >= deg b;
        // otherwise the identity holds with q = 0, r = a as-is
        return;
    }
    const mpz_class d = b.lc();
    int e = a.degree() - b.degree() + 1;
    q.c.assign(static_cast<std::size_t>(e), mpz_class(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        mpz_class f = r.lc();
        for (auto& v : q.c) v *= d;
        q.c[shift] += f;
        for (auto& v : r.c) v *= d;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
        r.normalize();
        --e;
    }
    // bring the multiplier up to exactly lc(b)^(deg a - deg b + 1)
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& v : q.c) v *= scale;
    for (auto& v : r.c) v *= scale;
    q.normalize();
    r.normalize();
}

bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly& q) {
    if (b.is_zero()) return false;
    q = IntPoly{};
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    IntPoly r = a;
    q.c.assign(a.c.size() - b.c.size() + 1, mpz_class(0));
    const mpz_class& d = b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        if (!mpz_divisible_p(r.lc().get_mpz_t(), d.get_mpz_t())) return false;
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), r.lc().get_mpz_t(), d.get_mpz_t());
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        q.c[shift] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
        r.normalize();
    }
    if (!r.is_zero()) return false;
    q.normalize();
    return true;
}

namespace {

IntPoly divexact_scalar(const IntPoly& f, const mpz_class& s) {
    OKT_ASSERT(s != 0, "divexact_scalar by zero");
    IntPoly r = f;
    for (auto& v : r.c) {
        OKT_ASSERT(mpz_divisible_p(v.get_mpz_t(), s.get_mpz_t()),
                   "divexact_scalar: inexact");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
        v = q;
    }
    return r;
}

}  // namespace

IntPoly poly_gcd(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero()) return g.is_zero() ? g : primitive_part(g) * poly_content(g);
    if (g.is_zero()) return primitive_part(f) * poly_content(f);
    mpz_class cf = poly_content(f), cg = poly_content(g);
    mpz_class cc = gcd(cf, cg);
    IntPoly a = primitive_part(f), b = primitive_part(g);
    if (a.degree() < b.degree()) std::swap(a, b);
    // primitive PRS; degrees here are small enough that coefficient growth
    // between primitive-part reductions is a non-issue
    while (!b.is_zero()) {
        IntPoly q, r;
        pseudo_divrem(a, b, q, r);
        a = b;
        b = r.is_zero() ? IntPoly{} : primitive_part(r);
    }
    if (a.degree() == 0) return IntPoly::constant(cc);
    return a * cc;
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    if (f.degree() == 0 && g.degree() == 0)
        throw std::invalid_argument("resultant of two constants");
    if (f.degree() == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f.c[0].get_mpz_t(),
                   static_cast<unsigned long>(g.degree()));
        return r;
    }
    if (g.degree() == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g.c[0].get_mpz_t(),
                   static_cast<unsigned long>(f.degree()));
        return r;
    }

    IntPoly a = f, b = g;
    mpz_class ca = poly_content(a), cb = poly_content(b);
    a = divexact_scalar(a, ca);
    b = divexact_scalar(b, cb);
    // Res(ca*a, cb*b) = ca^deg(b) * cb^deg(a) * Res(a, b)
    mpz_class t = 1, tmp;
    mpz_pow_ui(tmp.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(b.degree()));
    t *= tmp;
    mpz_pow_ui(tmp.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(a.degree()));
    t *= tmp;

    int s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    }

    // subresultant PRS
    mpz_class gg = 1, h = 1;
    while (true) {
        int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
        IntPoly q, r;
        pseudo_divrem(a, b, q, r);
        if (r.is_zero()) return 0;  // deg b >= 1 here, so a common factor exists
        a = b;
        // divide r by g*h^delta, exact by the subresultant theorem
        mpz_class hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
        b = divexact_scalar(r, gg * hd);
        gg = a.lc();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
            mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            OKT_ASSERT(mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()),
                       "subresultant h update inexact");
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.degree() == 0) break;
    }
    // final: Res = s * t * lc(b)^deg(a) / h^(deg(a)-1)
    mpz_class num, den, out;
    mpz_pow_ui(num.get_mpz_t(), b.c[0].get_mpz_t(), static_cast<unsigned long>(a.degree()));
    mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(a.degree() - 1));
    OKT_ASSERT(mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()),
               "subresultant final division inexact");
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out *= t;
    if (s < 0) out = -out;
    return out;
}

mpz_class discriminant(const IntPoly& f) {
    int n = f.degree();
    if (n < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    if (n == 1) return 1;
    mpz_class res = resultant(f, derivative(f));
    mpz_class d;
    OKT_ASSERT(mpz_divisible_p(res.get_mpz_t(), f.lc().get_mpz_t()),
               "discriminant: lc does not divide resultant");
    mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), f.lc().get_mpz_t());
    // sign (-1)^(n(n-1)/2)
    if (((static_cast<long>(n) * (n - 1)) / 2) % 2 != 0) d = -d;
    return d;
}

std::vector<mpz_class> power_sums(const IntPoly& f, std::size_t k_max) {
    if (!f.is_monic()) throw std::invalid_argument("power_sums needs a monic polynomial");
    const int n = f.degree();
    // f = x^n + a[1] x^(n-1) + ... + a[n]
    auto a = [&](std::size_t i) -> mpz_class { return f.coeff(static_cast<std::size_t>(n) - i); };
    std::vector<mpz_class> p(k_max + 1);
    p[0] = n;
    for (std::size_t k = 1; k <= k_max; ++k) {
        mpz_class s = 0;
        std::size_t top = std::min<std::size_t>(k - 1, static_cast<std::size_t>(n));
        for (std::size_t i = 1; i <= top; ++i) s += a(i) * p[k - i];
        if (k <= static_cast<std::size_t>(n)) s += a(k) * static_cast<long>(k);
        p[k] = -s;
    }
    return p;
}

IntPoly poly_mod_compose(const IntPoly& f, const IntPoly& g, const IntPoly& modulus) {
    if (!modulus.is_monic())
        throw std::invalid_argument("poly_mod_compose needs a monic modulus");
    IntPoly gm = mod_monic(g, modulus);
    IntPoly r;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        r = mod_monic(r * gm + IntPoly::constant(f.c[i]), modulus);
    }
    return r;
}

/* ---------- factorization over Z (Zassenhaus) ---------- */

namespace {

// Yun's squarefree decomposition, char 0; f monic.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decompose_z(const IntPoly& f) {
    std::vector<std::pair<IntPoly, unsigned>> out;
    IntPoly fp = derivative(f);
    IntPoly g = poly_gcd(f, fp);
    if (g.degree() == 0) {
        out.emplace_back(f, 1u);
        return out;
    }
    IntPoly w, y, q;
    OKT_ASSERT(try_divide(f, g, w), "yun: gcd does not divide f");
    OKT_ASSERT(try_divide(fp, g, y), "yun: gcd does not divide f'");
    IntPoly z = y - derivative(w);
    unsigned i = 1;
    while (w.degree() > 0) {
        IntPoly h = poly_gcd(w, z);
        if (h.lc() < 0) h = -h;
        if (h.degree() > 0) out.emplace_back(h, i);
        IntPoly w2, y2;
        OKT_ASSERT(try_divide(w, h, w2), "yun: inexact step");
        OKT_ASSERT(try_divide(z, h, y2), "yun: inexact step");
        w = w2;
        z = y2 - derivative(w);
        ++i;
    }
    return out;
}

IntPoly zmod_poly(const IntPoly& f, const mpz_class& m) {
    IntPoly r = f;
    for (auto& v : r.c) {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    r.normalize();
    return r;
}

IntPoly symmetric_lift(const IntPoly& f, const mpz_class& m) {
    IntPoly r = zmod_poly(f, m);
    mpz_class half = m / 2;
    for (auto& v : r.c) {
        if (v > half) v -= m;
    }
    r.normalize();
    return r;
}

// division a = q*b + r with b monic, coefficients mod m
void zdivrem_monic_mod(const IntPoly& a, const IntPoly& b, const mpz_class& m,
                       IntPoly& q, IntPoly& r) {
    divrem_monic(a, b, q, r);
    q = zmod_poly(q, m);
    r = zmod_poly(r, m);
}

struct HenselPair {
    IntPoly g, h, s, t;
};

// One quadratic step: inputs valid mod m, outputs valid mod m^2.
// f == g*h, s*g + t*h == 1; h and g monic; f monic.
HenselPair hensel_step(const IntPoly& f, const HenselPair& in, const mpz_class& m) {
    mpz_class m2 = m * m;
    IntPoly e = zmod_poly(f - in.g * in.h, m2);
    IntPoly q, r;
    zdivrem_monic_mod(zmod_poly(in.s * e, m2), in.h, m2, q, r);
    HenselPair out;
    out.g = zmod_poly(in.g + in.t * e + q * in.g, m2);
    out.h = zmod_poly(in.h + r, m2);
    IntPoly b = zmod_poly(in.s * out.g + in.t * out.h - IntPoly::constant(1), m2);
    IntPoly cpoly, d;
    zdivrem_monic_mod(zmod_poly(in.s * b, m2), out.h, m2, cpoly, d);
    out.s = zmod_poly(in.s - d, m2);
    out.t = zmod_poly(in.t - in.t * b - cpoly * out.g, m2);
    OKT_ASSERT(out.h.is_monic() && out.h.degree() == in.h.degree(),
               "hensel step lost monicity");
    OKT_ASSERT(out.g.is_monic() && out.g.degree() == in.g.degree(),
               "hensel step lost monicity");
    return out;
}

// extended euclid over F_p: returns (s, t) with s*a + t*b == 1; gcd must be 1
std::pair<ModPoly, ModPoly> bezout_mod_p(const ModPoly& a, const ModPoly& b) {
    ModPoly r0 = a, r1 = b;
    ModPoly s0{a.p, {mpz_class(1)}}, s1{a.p, {}};
    ModPoly t0{a.p, {}}, t1{a.p, {mpz_class(1)}};
    while (!r1.is_zero()) {
        ModPoly q, r;
        divrem(r0, r1, q, r);
        ModPoly s2 = s0 - q * s1;
        ModPoly t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    OKT_ASSERT(r0.degree() == 0, "bezout_mod_p: inputs not coprime");
    // scale so the combination equals 1
    mpz_class inv;
    OKT_ASSERT(mpz_invert(inv.get_mpz_t(), r0.c[0].get_mpz_t(), a.p.get_mpz_t()) != 0,
               "bezout_mod_p: lc not invertible");
    return {mul_scalar(s0, inv), mul_scalar(t0, inv)};
}

// Lift the factorization f == prod(facs) (valid mod p) to mod target, where
// target is a power of p reached by repeated squaring from p. Returns monic
// lifts, same order.
std::vector<IntPoly> lift_tree(const IntPoly& f,
                               const std::vector<ModPoly>& facs,
                               std::size_t lo, std::size_t hi,
                               const mpz_class& p, const mpz_class& target) {
    if (hi - lo == 1) return {zmod_poly(f, target)};
    std::size_t mid = lo + (hi - lo) / 2;
    ModPoly g0{p, {mpz_class(1)}}, h0{p, {mpz_class(1)}};
    for (std::size_t i = lo; i < mid; ++i) g0 = g0 * facs[i];
    for (std::size_t i = mid; i < hi; ++i) h0 = h0 * facs[i];
    auto [s0, t0] = bezout_mod_p(g0, h0);
    HenselPair cur{g0.lift(), h0.lift(), s0.lift(), t0.lift()};
    mpz_class m = p;
    while (m < target) {
        cur = hensel_step(zmod_poly(f, m * m), cur, m);
        m *= m;
    }
    OKT_ASSERT(m == target, "lift_tree: modulus overshoot");
    auto left = lift_tree(cur.g, facs, lo, mid, p, target);
    auto right = lift_tree(cur.h, facs, mid, hi, p, target);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - (k - i)) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Factor a monic squarefree polynomial over Z. Empty result <=> budget blown.
std::vector<IntPoly> factor_squarefree_z(const IntPoly& f, const IrredOptions& opts) {
    const int n = f.degree();
    if (n == 1) return {f};
    mpz_class disc = discriminant(f);
    OKT_ASSERT(disc != 0, "factor_squarefree_z: input not squarefree");

    // choose the prime (f squarefree mod p) giving the fewest modular factors
    std::vector<std::pair<ModPoly, unsigned>> best;
    mpz_class best_p = 0;
    int tried = 0;
    for (std::uint32_t q : small_primes()) {
        mpz_class p(q);
        if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
        SplitRng rng(opts.seed ^ (0x9e3779b97f4a7c15ull * q));
        auto fac = factor_mod_p(ModPoly::reduce(f, p), rng);
        if (fac.size() == 1 && fac[0].second == 1) return {f};  // irreducible mod p
        if (best.empty() || fac.size() < best.size()) {
            best = fac;
            best_p = p;
        }
        if (++tried >= 5) break;
    }
    OKT_ASSERT(!best.empty(), "factor_squarefree_z: no usable prime");

    std::vector<ModPoly> modular;
    for (auto& [g, e] : best) {
        OKT_ASSERT(e == 1, "squarefree poly factored with multiplicity mod p");
        modular.push_back(g);
    }

    // Landau-Mignotte style bound: any monic factor has coefficients bounded
    // by 2^n * ||f||_2; lift to a power of p exceeding twice that
    mpz_class norm2 = 0;
    for (const auto& v : f.c) norm2 += v * v;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    mpz_class bound = (root << static_cast<unsigned long>(n)) * 2 + 1;
    mpz_class target = best_p;
    while (target < bound) target *= target;

    std::vector<IntPoly> lifted =
        lift_tree(zmod_poly(f, target), modular, 0, modular.size(), best_p, target);

    // recombine subsets of lifted factors into true divisors
    std::vector<IntPoly> out;
    IntPoly rem = f;
    unsigned long budget = opts.max_subset_tests;
    std::size_t size = 1;
    while (lifted.size() > 0 && size <= lifted.size() / 2) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        bool removed = false;
        while (true) {
            if (budget-- == 0) return {};
            IntPoly prod = IntPoly::constant(1);
            for (std::size_t i : idx) prod = zmod_poly(prod * lifted[i], target);
            IntPoly cand = symmetric_lift(prod, target);
            IntPoly quot;
            if (cand.is_monic() && try_divide(rem, cand, quot)) {
                out.push_back(cand);
                rem = quot;
                std::vector<IntPoly> keep;
                for (std::size_t i = 0, k = 0; i < lifted.size(); ++i) {
                    if (k < idx.size() && idx[k] == i) {
                        ++k;
                        continue;
                    }
                    keep.push_back(lifted[i]);
                }
                lifted = std::move(keep);
                removed = true;
                break;
            }
            if (!next_combination(idx, lifted.size())) break;
        }
        if (!removed) ++size;
    }
    if (rem.degree() > 0) out.push_back(rem);
    OKT_ASSERT(!out.empty(), "factor_squarefree_z: lost all factors");
    return out;
}

}  // namespace

std::vector<std::pair<IntPoly, unsigned>> factor_over_z(const IntPoly& f,
                                                        const IrredOptions& opts) {
    if (!f.is_monic()) throw std::invalid_argument("factor_over_z needs a monic polynomial");
    if (f.degree() < 1) throw std::invalid_argument("factor_over_z needs degree >= 1");
    std::vector<std::pair<IntPoly, unsigned>> out;
    for (auto& [part, mult] : squarefree_decompose_z(f)) {
        auto irr = factor_squarefree_z(part, opts);
        if (irr.empty()) return {};
        for (auto& g : irr) out.emplace_back(g, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        return x.first.c < y.first.c;
    });
    return out;
}

IrreducibilityResult is_irreducible_over_q(const IntPoly& f, const IrredOptions& opts) {
    IrreducibilityResult res;
    if (f.degree() < 1) throw std::invalid_argument("irreducibility needs degree >= 1");
    if (!f.is_monic()) throw std::invalid_argument("irreducibility test needs a monic polynomial");
    const int n = f.degree();
    if (n == 1) {
        res.status = IrreducibilityResult::Status::proved;
        res.method = "degree-1";
        return res;
    }

    mpz_class disc = discriminant(f);
    if (disc == 0) {
        res.status = IrreducibilityResult::Status::disproved;
        res.witness_factor = poly_gcd(f, derivative(f));
        res.method = "repeated-factor";
        return res;
    }

    // rational roots: integer roots divide the constant term
    if (f.c[0] == 0) {
        res.status = IrreducibilityResult::Status::disproved;
        res.witness_factor = IntPoly::x_power(1);
        res.method = "rational-root";
        return res;
    }
    {
        auto fac = factor(abs(f.c[0]));
        std::vector<mpz_class> divs{1};
        bool complete = true;
        for (auto& [p, e] : fac.factors) {
            std::size_t cur = divs.size();
            if (cur * (e + 1) > 4096) {
                complete = false;
                break;
            }
            mpz_class pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= p;
                for (std::size_t i = 0; i < cur; ++i) divs.push_back(divs[i] * pk);
            }
        }
        if (complete) {
            for (const auto& d : divs) {
                for (int sgn : {1, -1}) {
                    mpz_class r = sgn * d;
                    if (eval(f, r) == 0) {
                        res.status = IrreducibilityResult::Status::disproved;
                        res.witness_factor = IntPoly({-r, mpz_class(1)});
                        res.method = "rational-root";
                        return res;
                    }
                }
            }
            if (n <= 3) {
                // degree 2 and 3 are reducible exactly when they have a root
                res.status = IrreducibilityResult::Status::proved;
                res.method = "rational-root";
                return res;
            }
        }
    }

    // Eisenstein at primes dividing every non-leading coefficient
    {
        std::vector<mpz_class> lows(f.c.begin(), f.c.end() - 1);
        mpz_class g = gcd_all(lows);
        if (g > 1) {
            for (auto& [p, e] : factor(g).factors) {
                (void)e;
                mpz_class p2 = p * p;
                if (!mpz_divisible_p(f.c[0].get_mpz_t(), p2.get_mpz_t())) {
                    res.status = IrreducibilityResult::Status::proved;
                    res.method = "eisenstein";
                    return res;
                }
            }
        }
    }

    // a single prime with f irreducible mod p proves irreducibility over Q
    {
        int scanned = 0;
        for (std::uint32_t q : small_primes()) {
            if (scanned >= opts.witness_primes) break;
            mpz_class p(q);
            if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
            ++scanned;
            if (is_irreducible_mod_p(ModPoly::reduce(f, p))) {
                res.status = IrreducibilityResult::Status::proved;
                res.method = "modp-witness";
                return res;
            }
        }
    }

    auto facs = factor_over_z(f, opts);
    if (facs.empty()) {
        res.status = IrreducibilityResult::Status::unknown;
        res.method = "budget-exhausted";
        return res;
    }
    if (facs.size() == 1 && facs[0].second == 1) {
        res.status = IrreducibilityResult::Status::proved;
        res.method = "zassenhaus";
        return res;
    }
    res.status = IrreducibilityResult::Status::disproved;
    res.witness_factor = facs[0].first;
    res.method = "zassenhaus";
    return res;
}

}  // namespace oktrace

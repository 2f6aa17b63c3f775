#include "oktrace/modpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "oktrace/errors.hpp"

namespace oktrace {

namespace {

mpz_class mod_p(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
}

mpz_class inv_mod_p(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    OKT_ASSERT(mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) != 0,
               "inverse of non-unit mod p");
    return r;
}

}  // namespace

ModPoly::ModPoly(mpz_class prime, std::vector<mpz_class> coeffs)
    : p(std::move(prime)), c(std::move(coeffs)) {
    if (p < 2) throw std::invalid_argument("ModPoly: modulus must be prime");
    for (auto& v : c) v = mod_p(v, p);
    normalize();
}

ModPoly ModPoly::reduce(const IntPoly& f, const mpz_class& p) {
    return ModPoly(p, f.c);
}

ModPoly ModPoly::x_power(const mpz_class& p, std::size_t k) {
    std::vector<mpz_class> c(k + 1, mpz_class(0));
    c[k] = 1;
    return ModPoly(p, std::move(c));
}

const mpz_class& ModPoly::lc() const {
    if (c.empty()) throw std::invalid_argument("lc of zero polynomial");
    return c.back();
}

void ModPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly ModPoly::lift() const { return IntPoly(c); }

IntPoly ModPoly::lift_symmetric() const {
    IntPoly f(c);
    mpz_class half = p / 2;
    for (auto& v : f.c) {
        if (v > half) v -= p;
    }
    f.normalize();
    return f;
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    OKT_ASSERT(a.p == b.p, "mixed moduli");
    std::vector<mpz_class> c(std::max(a.c.size(), b.c.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return ModPoly(a.p, std::move(c));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    OKT_ASSERT(a.p == b.p, "mixed moduli");
    std::vector<mpz_class> c(std::max(a.c.size(), b.c.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return ModPoly(a.p, std::move(c));
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    OKT_ASSERT(a.p == b.p, "mixed moduli");
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p, {});
    std::vector<mpz_class> c(a.c.size() + b.c.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return ModPoly(a.p, std::move(c));
}

ModPoly mul_scalar(const ModPoly& a, const mpz_class& s) {
    std::vector<mpz_class> c = a.c;
    for (auto& v : c) v *= s;
    return ModPoly(a.p, std::move(c));
}

ModPoly make_monic(const ModPoly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return mul_scalar(a, inv_mod_p(a.lc(), a.p));
}

mpz_class eval(const ModPoly& f, const mpz_class& x) {
    mpz_class r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = mod_p(r * x + f.c[i], f.p);
    return r;
}

ModPoly derivative(const ModPoly& f) {
    if (f.c.size() <= 1) return ModPoly(f.p, {});
    std::vector<mpz_class> c(f.c.size() - 1);
    mpz_class k = 0;
    for (std::size_t i = 1; i < f.c.size(); ++i) {
        k += 1;
        c[i - 1] = mod_p(f.c[i] * mod_p(k, f.p), f.p);
    }
    return ModPoly(f.p, std::move(c));
}

void divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
    OKT_ASSERT(a.p == b.p, "mixed moduli");
    if (b.is_zero()) throw std::invalid_argument("divrem by zero");
    r = a;
    q = ModPoly(a.p, {});
    if (a.degree() < b.degree()) return;
    mpz_class inv = inv_mod_p(b.lc(), a.p);
    std::vector<mpz_class> qc(a.c.size() - b.c.size() + 1, mpz_class(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        mpz_class f = mod_p(r.lc() * inv, a.p);
        qc[shift] = f;
        std::vector<mpz_class> rc = r.c;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            rc[shift + i] = mod_p(rc[shift + i] - f * b.c[i], a.p);
        r = ModPoly(a.p, std::move(rc));
    }
    q = ModPoly(a.p, std::move(qc));
}

ModPoly mod(const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    divrem(a, b, q, r);
    return r;
}

ModPoly divexact(const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    divrem(a, b, q, r);
    OKT_ASSERT(r.is_zero(), "divexact: inexact division");
    return q;
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
    ModPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        ModPoly q, r;
        divrem(r0, r1, q, r);
        r0 = r1;
        r1 = r;
    }
    return make_monic(r0);
}

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f) {
    return mod(a * b, f);
}

ModPoly powmod(const ModPoly& a, const mpz_class& e, const ModPoly& f) {
    OKT_ASSERT(e >= 0, "powmod: negative exponent");
    ModPoly base = mod(a, f);
    ModPoly acc(a.p, {mpz_class(1)});
    std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (std::size_t i = nbits; i-- > 0;) {
        acc = mulmod(acc, acc, f);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = mulmod(acc, base, f);
    }
    return acc;
}

mpz_class SplitRng::below(const mpz_class& bound) {
    OKT_ASSERT(bound > 0, "SplitRng::below needs a positive bound");
    if (bound == 1) return 0;
    std::size_t nbits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::size_t nwords = (nbits + 63) / 64;
    std::vector<std::uint64_t> words(nwords);
    while (true) {
        for (auto& w : words) w = eng_();
        if (nbits % 64 != 0)
            words.back() &= (std::uint64_t(1) << (nbits % 64)) - 1;
        mpz_class v;
        mpz_import(v.get_mpz_t(), nwords, -1 /* lsw first */, sizeof(std::uint64_t),
                   0, 0, words.data());
        if (v < bound) return v;
    }
}

namespace {

// f with zero derivative is g(x)^p; return g. Over F_p the coefficient map
// is the identity, so this is exponent division.
ModPoly pth_root(const ModPoly& f) {
    OKT_ASSERT(derivative(f).is_zero(), "pth_root of non-p-power");
    if (f.degree() <= 0) return f;
    OKT_ASSERT(mpz_fits_ulong_p(f.p.get_mpz_t()),
               "pth_root: modulus exceeds degree bound");
    unsigned long p = mpz_get_ui(f.p.get_mpz_t());
    std::vector<mpz_class> c;
    for (std::size_t i = 0; i < f.c.size(); i += p) c.push_back(f.c[i]);
    return ModPoly(f.p, std::move(c));
}

// (product of multiplicity-m factors, m), pairwise coprime, f monic
void squarefree_parts(const ModPoly& f, unsigned mult_scale,
                      std::vector<std::pair<ModPoly, unsigned>>& out) {
    if (f.degree() <= 0) return;
    ModPoly fp = derivative(f);
    if (fp.is_zero()) {
        unsigned long p = mpz_get_ui(f.p.get_mpz_t());
        squarefree_parts(pth_root(f), mult_scale * static_cast<unsigned>(p), out);
        return;
    }
    ModPoly c = gcd(f, fp);
    ModPoly w = divexact(f, c);
    unsigned j = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, c);
        ModPoly fac = divexact(w, y);
        if (fac.degree() > 0) out.emplace_back(fac, j * mult_scale);
        w = y;
        c = divexact(c, y);
        ++j;
    }
    if (c.degree() > 0) {
        unsigned long p = mpz_get_ui(c.p.get_mpz_t());
        squarefree_parts(pth_root(c), mult_scale * static_cast<unsigned>(p), out);
    }
}

// distinct-degree: (product of irreducible factors of degree d, d)
std::vector<std::pair<ModPoly, unsigned>> distinct_degree(const ModPoly& f) {
    std::vector<std::pair<ModPoly, unsigned>> out;
    ModPoly g = f;
    ModPoly x = ModPoly::x_power(f.p, 1);
    ModPoly h = mod(x, g);
    unsigned d = 0;
    while (g.degree() >= 2 * static_cast<int>(d + 1)) {
        ++d;
        h = powmod(h, f.p, g);
        ModPoly u = gcd(h - mod(x, g), g);
        if (u.degree() > 0) {
            out.emplace_back(u, d);
            g = divexact(g, u);
            h = mod(h, g);
        }
    }
    if (g.degree() > 0) out.emplace_back(g, static_cast<unsigned>(g.degree()));
    return out;
}

ModPoly random_below_degree(const mpz_class& p, int deg, SplitRng& rng) {
    std::vector<mpz_class> c(static_cast<std::size_t>(deg));
    for (auto& v : c) v = rng.below(p);
    return ModPoly(p, std::move(c));
}

// Cantor-Zassenhaus equal-degree splitting: g monic, all factors of degree d
void equal_degree(const ModPoly& g, unsigned d, SplitRng& rng,
                  std::vector<ModPoly>& out) {
    if (g.degree() == static_cast<int>(d)) {
        out.push_back(g);
        return;
    }
    ModPoly h(g.p, {});
    while (true) {
        ModPoly a = random_below_degree(g.p, g.degree(), rng);
        if (a.degree() < 1) continue;
        ModPoly u = gcd(a, g);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            h = u;
            break;
        }
        if (g.p == 2) {
            // trace map sum_{i<d} a^(2^i)
            ModPoly b = mod(a, g), cur = mod(a, g);
            for (unsigned i = 1; i < d; ++i) {
                cur = mulmod(cur, cur, g);
                b = b + cur;
            }
            u = gcd(b, g);
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), g.p.get_mpz_t(), d);
            e = (e - 1) / 2;
            ModPoly b = powmod(a, e, g) - ModPoly(g.p, {mpz_class(1)});
            u = gcd(b, g);
        }
        if (u.degree() > 0 && u.degree() < g.degree()) {
            h = u;
            break;
        }
    }
    equal_degree(h, d, rng, out);
    equal_degree(divexact(g, h), d, rng, out);
}

}  // namespace

std::vector<std::pair<ModPoly, unsigned>> factor_mod_p(const ModPoly& f,
                                                       SplitRng& rng) {
    if (f.is_zero()) throw std::invalid_argument("factor_mod_p of zero");
    std::vector<std::pair<ModPoly, unsigned>> out;
    if (f.degree() < 1) return out;
    ModPoly g = make_monic(f);

    std::vector<std::pair<ModPoly, unsigned>> parts;
    squarefree_parts(g, 1, parts);
    for (auto& [part, mult] : parts) {
        for (auto& [prod, d] : distinct_degree(part)) {
            std::vector<ModPoly> irr;
            equal_degree(prod, d, rng, irr);
            for (auto& q : irr) out.emplace_back(q, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree())
            return x.first.degree() < y.first.degree();
        return x.first.c < y.first.c;
    });
    return out;
}

bool is_squarefree_mod_p(const ModPoly& f) {
    if (f.is_zero()) return false;
    if (f.degree() == 0) return true;
    ModPoly fp = derivative(f);
    if (fp.is_zero()) return false;
    return gcd(f, fp).degree() == 0;
}

bool is_irreducible_mod_p(const ModPoly& f) {
    int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    // x^(p^n) == x mod f, and gcd(x^(p^(n/r)) - x, f) == 1 for prime r | n
    ModPoly x = ModPoly::x_power(f.p, 1);
    std::vector<ModPoly> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = mod(x, f);
    for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], f.p, f);
    if (!(frob[static_cast<std::size_t>(n)] == mod(x, f))) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool r_prime = true;
        for (int s = 2; s * s <= r; ++s)
            if (r % s == 0) r_prime = false;
        if (!r_prime) continue;
        if (gcd(frob[static_cast<std::size_t>(n / r)] - mod(x, f), f).degree() != 0)
            return false;
    }
    return true;
}

IntMat frobenius_matrix(const ModPoly& f) {
    int n = f.degree();
    if (n < 1) throw std::invalid_argument("frobenius_matrix needs degree >= 1");
    if (!f.is_monic()) throw std::invalid_argument("frobenius_matrix needs monic input");
    std::size_t un = static_cast<std::size_t>(n);
    ModPoly xp = powmod(ModPoly::x_power(f.p, 1), f.p, f);
    IntMat m(un, un);
    ModPoly cur(f.p, {mpz_class(1)});
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = 0; j < cur.c.size(); ++j) m.at(i, j) = cur.c[j];
        cur = mulmod(cur, xp, f);
    }
    return m;
}

}  // namespace oktrace

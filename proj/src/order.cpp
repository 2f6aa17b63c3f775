#include "oktrace/order.hpp"

#include <algorithm>
#include <stdexcept>

#include "oktrace/errors.hpp"
#include "oktrace/modpoly.hpp"

namespace oktrace {

namespace {

mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class divexact(const mpz_class& a, const mpz_class& b) {
    OKT_ASSERT(b != 0 && mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()),
               "inexact integer division");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

IntPoly Order::row_poly(std::size_t i) const {
    std::vector<mpz_class> c(basis.cols);
    for (std::size_t j = 0; j < basis.cols; ++j) c[j] = basis.at(i, j);
    return IntPoly(std::move(c));
}

std::uint64_t Order::tag() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& v : f.c) h = fnv1a(h, v.get_str());
    h = fnv1a(h, den.get_str());
    for (const auto& v : basis.a) h = fnv1a(h, v.get_str());
    return h;
}

Order order_zx(const IntPoly& f) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("order_zx needs a monic polynomial of degree >= 1");
    Order o;
    o.f = f;
    o.basis = IntMat::identity(static_cast<std::size_t>(f.degree()));
    o.den = 1;
    return o;
}

void order_canonicalize(Order& o) {
    o.basis = hnf(o.basis);
    OKT_ASSERT(o.basis.rows == o.basis.cols, "order basis lost rank");
    OKT_ASSERT(o.den > 0, "order denominator must be positive");
    mpz_class g = gcd(content(o.basis), o.den);
    if (g > 1) {
        for (auto& v : o.basis.a) v = divexact(v, g);
        o.den = divexact(o.den, g);
    }
}

bool order_equal(const Order& a, const Order& b) {
    return a.f == b.f && a.den == b.den && a.basis == b.basis;
}

mpz_class order_index(const Order& sub, const Order& sup) {
    OKT_ASSERT(sub.f == sup.f, "order_index across different fields");
    std::size_t n = sub.degree();
    // covolume(o) = det(basis) / den^n; index = covol(sub) / covol(sup)
    mpz_class num = det(sub.basis) * pow_mpz(sup.den, n);
    mpz_class den = det(sup.basis) * pow_mpz(sub.den, n);
    mpz_class idx = divexact(num, den);
    OKT_ASSERT(idx > 0, "order_index: sub not contained in sup");
    return idx;
}

Order order_join(const Order& a, const Order& b) {
    OKT_ASSERT(a.f == b.f, "order_join across different fields");
    mpz_class d = lcm(a.den, b.den);
    mpz_class sa = divexact(d, a.den), sb = divexact(d, b.den);
    IntMat top = a.basis, bot = b.basis;
    for (auto& v : top.a) v *= sa;
    for (auto& v : bot.a) v *= sb;
    Order j;
    j.f = a.f;
    j.basis = hnf(mat_stack(top, bot));
    j.den = d;
    order_canonicalize(j);
    return j;
}

std::vector<IntMat> mult_table(const Order& o) {
    std::size_t n = o.degree();
    IntMat scaled = o.basis;  // rows scaled by den: x * scaled = num works in Z
    for (auto& v : scaled.a) v *= o.den;
    std::vector<IntMat> tab(n, IntMat(n, n));
    for (std::size_t i = 0; i < n; ++i) {
        IntPoly bi = o.row_poly(i);
        for (std::size_t j = i; j < n; ++j) {
            IntPoly prod = mulmod_monic(bi, o.row_poly(j), o.f);
            std::vector<mpz_class> rhs(n, mpz_class(0));
            for (std::size_t k = 0; k < prod.c.size(); ++k) rhs[k] = prod.c[k];
            auto x = solve_in_hnf(scaled, rhs);
            OKT_ASSERT(x.has_value(), "order not closed under multiplication");
            for (std::size_t k = 0; k < n; ++k) {
                tab[i].at(j, k) = (*x)[k];
                tab[j].at(i, k) = (*x)[k];
            }
        }
    }
    return tab;
}

std::vector<mpz_class> order_one_coords(const Order& o) {
    std::size_t n = o.degree();
    std::vector<mpz_class> rhs(n, mpz_class(0));
    rhs[0] = o.den;
    auto x = solve_in_hnf(o.basis, rhs);
    OKT_ASSERT(x.has_value(), "order does not contain 1");
    return *x;
}

std::vector<mpz_class> coord_mul(const std::vector<IntMat>& tab,
                                 const std::vector<mpz_class>& y,
                                 const std::vector<mpz_class>& z) {
    std::size_t n = tab.size();
    std::vector<mpz_class> w(n, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (z[j] == 0) continue;
            mpz_class c = y[i] * z[j];
            for (std::size_t k = 0; k < n; ++k) {
                const mpz_class& t = tab[i].at(j, k);
                if (t != 0) w[k] += c * t;
            }
        }
    }
    return w;
}

std::vector<mpz_class> coord_mul_mod(const std::vector<IntMat>& tab,
                                     const std::vector<mpz_class>& y,
                                     const std::vector<mpz_class>& z,
                                     const mpz_class& p) {
    auto w = coord_mul(tab, y, z);
    for (auto& v : w) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return w;
}

std::vector<mpz_class> coord_pow_mod(const std::vector<IntMat>& tab,
                                     const std::vector<mpz_class>& y,
                                     const mpz_class& e, const mpz_class& p,
                                     const std::vector<mpz_class>& one) {
    OKT_ASSERT(e >= 0, "coord_pow_mod: negative exponent");
    std::vector<mpz_class> acc = one;
    for (auto& v : acc) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    if (e == 0) return acc;
    std::vector<mpz_class> base = y;
    for (auto& v : base) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = nbits; i-- > 0;) {
        acc = coord_mul_mod(tab, acc, acc, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = coord_mul_mod(tab, acc, base, p);
    }
    return acc;
}

DedekindResult dedekind_test(const IntPoly& f, const mpz_class& p) {
    std::size_t n = static_cast<std::size_t>(f.degree());
    ModPoly fbar = ModPoly::reduce(f, p);
    SplitRng rng(0x6f6b7472616365ull ^ mpz_get_ui(p.get_mpz_t()));
    auto fac = factor_mod_p(fbar, rng);

    ModPoly gbar(p, {mpz_class(1)});
    for (auto& [q, e] : fac) {
        (void)e;
        gbar = gbar * q;
    }
    ModPoly hbar = divexact(fbar, gbar);
    IntPoly g = gbar.lift(), h = hbar.lift();
    // T = (g*h - f)/p is integral because g*h == f mod p
    IntPoly gh = g * h;
    IntPoly T;
    {
        IntPoly diff = gh - f;
        T.c.resize(diff.c.size());
        for (std::size_t i = 0; i < diff.c.size(); ++i)
            T.c[i] = divexact(diff.c[i], p);
        T.normalize();
    }
    ModPoly ubar = gcd(gcd(ModPoly::reduce(T, p), gbar), hbar);

    DedekindResult res;
    if (ubar.degree() == 0) {
        res.p_maximal = true;
        return res;
    }
    // witness order Z[a] + (M(a)/p) Z[a], M lifting fbar/ubar
    IntPoly M = divexact(fbar, ubar).lift();
    IntMat rows(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) rows.at(i, i) = p;
    for (std::size_t k = 0; k < n; ++k) {
        IntPoly mk = mod_monic(IntPoly::x_power(k) * M, f);
        for (std::size_t j = 0; j < mk.c.size(); ++j) rows.at(n + k, j) = mk.c[j];
    }
    res.enlarged.f = f;
    res.enlarged.basis = hnf(rows);
    res.enlarged.den = p;
    order_canonicalize(res.enlarged);
    // the witness has index p^deg(ubar) over Z[a]
    mpz_class idx = order_index(order_zx(f), res.enlarged);
    OKT_ASSERT(idx == pow_mpz(p, static_cast<unsigned long>(ubar.degree())),
               "dedekind witness has unexpected index");
    return res;
}

IntMat p_radical(const Order& o, const mpz_class& p) {
    std::size_t n = o.degree();
    auto tab = mult_table(o);
    auto one = order_one_coords(o);
    mpz_class q = p;
    while (q < static_cast<long>(n)) q *= p;
    IntMat frob(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> e(n, mpz_class(0));
        e[i] = 1;
        auto img = coord_pow_mod(tab, e, q, p, one);
        for (std::size_t j = 0; j < n; ++j) frob.at(i, j) = img[j];
    }
    IntMat ker = kernel_mod_p(frob, p);
    return hnf(mat_stack(ker, IntMat::scalar(n, p)));
}

Order ring_of_multipliers(const Order& o, const IntMat& radical, const mpz_class& p) {
    std::size_t n = o.degree();
    auto tab = mult_table(o);
    // y * I <= p*I as linear conditions on y mod p: for each radical basis
    // vector r_m, the I-coordinates of y*r_m must vanish mod p
    IntMat cond(n, n * n);
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<mpz_class> r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = radical.at(m, j);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<mpz_class> e(n, mpz_class(0));
            e[i] = 1;
            auto prod = coord_mul(tab, e, r);
            auto s = solve_in_hnf(radical, prod);
            OKT_ASSERT(s.has_value(), "radical is not an ideal of the order");
            for (std::size_t j = 0; j < n; ++j) cond.at(i, m * n + j) = (*s)[j];
        }
    }
    IntMat ker = kernel_mod_p(cond, p);
    IntMat u = hnf(mat_stack(ker, IntMat::scalar(n, p)));  // = p * O', in o-coords
    Order res;
    res.f = o.f;
    res.basis = mat_mul(u, o.basis);
    res.den = o.den * p;
    order_canonicalize(res);
    return res;
}

Order p_maximal_order(const IntPoly& f, const mpz_class& p) {
    DedekindResult dk = dedekind_test(f, p);
    if (dk.p_maximal) return order_zx(f);
    Order o = dk.enlarged;
    for (int guard = 0;; ++guard) {
        OKT_ASSERT(guard < 64, "round-2 loop failed to stabilize");
        IntMat rad = p_radical(o, p);
        Order next = ring_of_multipliers(o, rad, p);
        if (order_index(o, next) == 1) return o;
        o = next;
    }
}

MaximalOrder maximal_order(const IntPoly& f) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("maximal_order needs a monic polynomial");
    MaximalOrder m;
    m.disc_poly = discriminant(f);
    OKT_ASSERT(m.disc_poly != 0, "maximal_order: polynomial has repeated roots");
    m.o = order_zx(f);
    auto fac = factor(abs(m.disc_poly));
    for (auto& [p, e] : fac.factors) {
        if (e < 2) continue;  // p^2 must divide disc(f) for p to divide the index
        m.o = order_join(m.o, p_maximal_order(f, p));
    }
    m.index = order_index(order_zx(f), m.o);
    m.disc = divexact(m.disc_poly, m.index * m.index);
    OKT_ASSERT(order_disc(m.o) == m.disc,
               "trace Gram determinant disagrees with discriminant");

    m.disc_fac.value = m.disc;
    m.disc_fac.sign = m.disc < 0 ? -1 : 1;
    for (auto& [p, e] : fac.factors) {
        unsigned v = e - 2 * valuation(m.index, p);
        if (v > 0) m.disc_fac.factors.emplace_back(p, v);
    }
    OKT_ASSERT(m.disc_fac.recompose() == m.disc, "discriminant factorization drift");
    return m;
}

IntMat trace_gram(const Order& o) {
    std::size_t n = o.degree();
    auto psums = power_sums(o.f, n == 0 ? 0 : n - 1);
    mpz_class den2 = o.den * o.den;
    IntMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        IntPoly bi = o.row_poly(i);
        for (std::size_t j = i; j < n; ++j) {
            IntPoly prod = mulmod_monic(bi, o.row_poly(j), o.f);
            mpz_class tr = 0;
            for (std::size_t k = 0; k < prod.c.size(); ++k) tr += prod.c[k] * psums[k];
            g.at(i, j) = divexact(tr, den2);  // traces of integral elements are integers
            g.at(j, i) = g.at(i, j);
        }
    }
    return g;
}

mpz_class order_disc(const Order& o) { return det(trace_gram(o)); }

FieldElement element_from_coords(const Order& o, std::vector<mpz_class> coords) {
    if (coords.size() != o.degree())
        throw std::invalid_argument("element coordinate length mismatch");
    FieldElement e;
    e.coords = std::move(coords);
    e.basis_tag = o.tag();
    return e;
}

FieldElement element_from_power_basis(const Order& o, const IntPoly& num,
                                      const mpz_class& den) {
    if (den <= 0) throw std::invalid_argument("element denominator must be positive");
    std::size_t n = o.degree();
    if (num.degree() >= static_cast<int>(n))
        throw std::invalid_argument("element numerator degree too large");
    IntMat scaled = o.basis;
    for (auto& v : scaled.a) v *= den;
    std::vector<mpz_class> rhs(n, mpz_class(0));
    for (std::size_t k = 0; k < num.c.size(); ++k) rhs[k] = num.c[k] * o.den;
    auto x = solve_in_hnf(scaled, rhs);
    if (!x.has_value()) throw std::invalid_argument("element is not in the order");
    return element_from_coords(o, std::move(*x));
}

std::pair<IntPoly, mpz_class> element_to_power_basis(const Order& o,
                                                     const FieldElement& a) {
    if (a.basis_tag != o.tag())
        throw std::invalid_argument("element belongs to a different basis");
    std::size_t n = o.degree();
    std::vector<mpz_class> c(n, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[j] += a.coords[i] * o.basis.at(i, j);
    IntPoly num(std::move(c));
    mpz_class den = o.den;
    mpz_class g = poly_content(num);
    if (g != 0) {
        g = gcd(g, den);
        if (g > 1) {
            for (auto& v : num.c) v = divexact(v, g);
            den = divexact(den, g);
        }
    } else {
        den = 1;
    }
    return {num, den};
}

FieldElement multiply(const Order& o, const FieldElement& a, const FieldElement& b) {
    if (a.basis_tag != o.tag() || b.basis_tag != o.tag())
        throw std::invalid_argument("multiply: mixed-basis operands");
    auto tab = mult_table(o);
    return element_from_coords(o, coord_mul(tab, a.coords, b.coords));
}

mpq_class element_trace(const Order& o, const FieldElement& a) {
    if (a.basis_tag != o.tag())
        throw std::invalid_argument("element belongs to a different basis");
    auto [num, den] = element_to_power_basis(o, a);
    std::size_t n = o.degree();
    auto psums = power_sums(o.f, n == 0 ? 0 : n - 1);
    mpz_class tr = 0;
    for (std::size_t k = 0; k < num.c.size(); ++k) tr += num.c[k] * psums[k];
    mpq_class q(tr, den);
    q.canonicalize();
    return q;
}

}  // namespace oktrace

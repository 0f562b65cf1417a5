#pragma once

// Arithmetic in explicit towers of finite fields GF(p) = L_0' ⊂ L_0 ⊂ L_1 ⊂ ...
// Each level is an extension of the previous one by a deterministic (lexicographically
// least) irreducible modulus.  Elements are encoded as integers: the base-p expansion
// of the index is the coefficient vector over the prime field, nested so that the
// base-|L_{i-1}| digits of a level-i element are its coordinates over L_{i-1}.
// Consequence: embedding a lower level into a higher one is the identity on indices,
// and the image of L_i inside L_j is exactly the indices < |L_i|.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsec {

using elem = std::uint32_t;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace detail

class FieldTower {
public:
    struct Level {
        int step_degree = 1;      // degree over the previous level
        int cum_degree = 1;       // degree over the prime field
        std::uint32_t size = 0;   // p^cum_degree
        std::uint32_t prev_size = 0;
        std::vector<elem> modulus;     // monic, length step_degree+1, coeffs in previous level
        std::vector<std::uint32_t> exp; // exp[i] = g^i, i in [0, 2(size-1))
        std::vector<std::uint32_t> log; // log[g^i] = i, log[0] undefined
        elem generator = 0;
    };

    FieldTower(std::uint32_t p, const std::vector<int>& degrees) : p_(p) {
        if (!detail::is_prime_u32(p)) throw std::invalid_argument("FieldTower: p must be prime");
        if (degrees.empty()) throw std::invalid_argument("FieldTower: empty degree list");
        long total = 1;
        for (int d : degrees) {
            if (d <= 0) throw std::invalid_argument("FieldTower: degree must be positive");
            total *= d;
            if (total > 24) throw std::invalid_argument("FieldTower: total degree cap (24) exceeded");
        }
        double sz = 1;
        for (int i = 0; i < total; ++i) sz *= p;
        if (sz > double(1u << 24)) throw std::invalid_argument("FieldTower: field size cap (2^24) exceeded");
        degrees_ = degrees;
        build();
    }

    std::uint32_t p() const { return p_; }
    int num_levels() const { return int(levels_.size()); }
    const Level& level(int i) const { return levels_.at(std::size_t(i)); }
    std::uint32_t size(int lvl) const { return level(lvl).size; }
    const std::vector<int>& degrees() const { return degrees_; }

    // ---- arithmetic (element indices, at a given level) ----

    elem add(int lvl, elem a, elem b) const {
        if (p_ == 2) return a ^ b;
        elem r = 0, mul = 1;
        std::uint32_t sz = size(lvl);
        for (std::uint32_t m = 1; m < sz; m *= p_) {
            elem da = (a / m) % p_, db = (b / m) % p_;
            r += ((da + db) % p_) * mul;
            mul *= p_;
        }
        return r;
    }

    elem neg(int lvl, elem a) const {
        if (p_ == 2) return a;
        elem r = 0, mul = 1;
        std::uint32_t sz = size(lvl);
        for (std::uint32_t m = 1; m < sz; m *= p_) {
            elem da = (a / m) % p_;
            r += ((p_ - da) % p_) * mul;
            mul *= p_;
        }
        return r;
    }

    elem sub(int lvl, elem a, elem b) const { return add(lvl, a, neg(lvl, b)); }

    elem mul(int lvl, elem a, elem b) const {
        if (a == 0 || b == 0) return 0;
        const Level& L = levels_[std::size_t(lvl)];
        return L.exp[L.log[a] + L.log[b]];
    }

    elem inv(int lvl, elem a) const {
        if (a == 0) throw std::domain_error("FieldTower: inverse of zero");
        const Level& L = levels_[std::size_t(lvl)];
        std::uint32_t n = L.size - 1;
        return L.exp[(n - L.log[a]) % n];
    }

    elem pow(int lvl, elem a, std::uint64_t e) const {
        const Level& L = levels_[std::size_t(lvl)];
        if (a == 0) return e == 0 ? 1 : 0;
        std::uint64_t n = L.size - 1;
        return L.exp[std::size_t((std::uint64_t(L.log[a]) * (e % n)) % n)];
    }

    // x ^ (s^i), s the order of the designated subfield
    elem frobenius(int lvl, elem a, std::uint32_t s, int i = 1) const {
        const Level& L = levels_[std::size_t(lvl)];
        std::uint64_t n = L.size - 1;
        std::uint64_t e = 1;
        for (int k = 0; k < i; ++k) e = (e * (s % n)) % n;
        return pow(lvl, a, e);
    }

    // Tr : current level -> subfield of order s
    elem trace(int lvl, elem a, std::uint32_t s) const {
        check_subfield_order(lvl, s);
        std::uint32_t sz = size(lvl);
        elem t = 0;
        std::uint64_t pw = 1;
        for (std::uint64_t q = 1; q < sz; q *= s) {
            t = add(lvl, t, pow(lvl, a, pw));
            pw = pw * s;
        }
        return t;
    }

    // true iff the subfield of order s (s = p^d, d | cum_degree) is well formed
    void check_subfield_order(int lvl, std::uint32_t s) const {
        int d = 0;
        std::uint64_t v = 1;
        while (v < s) { v *= p_; ++d; }
        if (v != s || d == 0 || level(lvl).cum_degree % d != 0)
            throw std::invalid_argument("FieldTower: order " + std::to_string(s) +
                                        " is not a subfield of level " + std::to_string(lvl));
    }

    bool in_subfield(int lvl, elem a, std::uint32_t s) const {
        check_subfield_order(lvl, s);
        return pow(lvl, a, s) == a;
    }

    // chain level with the given size, or -1
    int level_of_size(std::uint32_t s) const {
        for (int i = 0; i < num_levels(); ++i)
            if (levels_[std::size_t(i)].size == s) return i;
        return -1;
    }

    // coordinates of a level-lvl element over the chain level sub (digits base |L_sub|)
    std::vector<elem> coords(int lvl, elem a, int sub) const {
        std::uint32_t s = size(sub);
        int k = level(lvl).cum_degree / level(sub).cum_degree;
        std::vector<elem> c(std::size_t(k), 0);
        for (int i = 0; i < k; ++i) { c[std::size_t(i)] = a % s; a /= s; }
        return c;
    }

    // embed an integer residue (0..p-1) as a field constant; identity on our encoding
    elem from_int(std::uint32_t r) const { return r % p_; }

private:
    std::uint32_t p_;
    std::vector<int> degrees_;
    std::vector<Level> levels_;

    // --- construction-time polynomial arithmetic over a base "level" (-1 = prime field) ---

    elem base_add(int base, elem a, elem b) const {
        return base < 0 ? (a + b) % p_ : add(base, a, b);
    }
    elem base_mul(int base, elem a, elem b) const {
        return base < 0 ? (a * b) % p_ : mul(base, a, b);
    }
    elem base_neg(int base, elem a) const {
        return base < 0 ? (p_ - a) % p_ : neg(base, a);
    }
    std::uint32_t base_size(int base) const { return base < 0 ? p_ : size(base); }

    using Poly = std::vector<elem>; // little-endian coefficients over the base level

    static void trim(Poly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }

    Poly poly_mul(int base, const Poly& f, const Poly& g) const {
        if (f.empty() || g.empty()) return {};
        Poly r(f.size() + g.size() - 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                r[i + j] = base_add(base, r[i + j], base_mul(base, f[i], g[j]));
        trim(r);
        return r;
    }

    // remainder of f modulo monic m
    Poly poly_mod(int base, Poly f, const Poly& m) const {
        trim(f);
        std::size_t d = m.size() - 1;
        while (f.size() > d) {
            elem c = f.back();
            std::size_t shift = f.size() - 1 - d;
            if (c != 0)
                for (std::size_t i = 0; i <= d; ++i)
                    f[shift + i] = base_add(base, f[shift + i], base_neg(base, base_mul(base, c, m[i])));
            f.pop_back();
            trim(f);
        }
        return f;
    }

    elem poly_eval(int base, const Poly& f, elem x) const {
        elem r = 0;
        for (std::size_t i = f.size(); i-- > 0;)
            r = base_add(base, base_mul(base, r, x), f[i]);
        return r;
    }

    bool poly_divides(int base, const Poly& d, const Poly& f) const {
        // d monic
        return poly_mod(base, f, d).empty();
    }

    bool irreducible(int base, const Poly& m) const {
        std::size_t deg = m.size() - 1;
        if (deg == 1) return true;
        std::uint32_t S = base_size(base);
        for (elem x = 0; x < S; ++x)
            if (poly_eval(base, m, x) == 0) return false;
        if (deg <= 3) return true;
        // trial division by monic polynomials of degree 2..deg/2
        for (std::size_t dd = 2; dd <= deg / 2; ++dd) {
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < dd; ++i) count *= S;
            for (std::uint64_t code = 0; code < count; ++code) {
                Poly d(dd + 1);
                std::uint64_t c = code;
                for (std::size_t i = 0; i < dd; ++i) { d[i] = elem(c % S); c /= S; }
                d[dd] = 1;
                if (poly_divides(base, d, m)) return false;
            }
        }
        return true;
    }

    // lexicographically least monic irreducible of the given degree: the coefficient
    // tuple (c_0,...,c_{d-1}) is read as the integer sum c_i * S^i and scanned ascending
    Poly least_irreducible(int base, int degree) const {
        std::uint32_t S = base_size(base);
        std::uint64_t count = 1;
        for (int i = 0; i < degree; ++i) count *= S;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly m(std::size_t(degree) + 1);
            std::uint64_t c = code;
            for (int i = 0; i < degree; ++i) { m[std::size_t(i)] = elem(c % S); c /= S; }
            m[std::size_t(degree)] = 1;
            if (irreducible(base, m)) return m;
        }
        throw std::logic_error("FieldTower: no irreducible modulus found"); // unreachable
    }

    // multiply two level elements using construction-time polynomial arithmetic
    elem mul_raw(int lvl, elem a, elem b) const {
        const Level& L = levels_[std::size_t(lvl)];
        int base = lvl - 1;
        std::uint32_t S = L.prev_size;
        Poly fa, fb;
        for (elem x = a; x != 0; x /= S) fa.push_back(x % S);
        for (elem x = b; x != 0; x /= S) fb.push_back(x % S);
        Poly r = poly_mod(base, poly_mul(base, fa, fb), L.modulus);
        elem out = 0;
        for (std::size_t i = r.size(); i-- > 0;) out = out * S + r[i];
        return out;
    }

    elem pow_raw(int lvl, elem a, std::uint64_t e) const {
        elem r = 1, b = a;
        while (e) {
            if (e & 1) r = mul_raw(lvl, r, b);
            b = mul_raw(lvl, b, b);
            e >>= 1;
        }
        return r;
    }

    void build() {
        std::uint32_t prev = p_; // conceptual previous size; prime for level 0
        for (std::size_t li = 0; li < degrees_.size(); ++li) {
            Level L;
            L.step_degree = degrees_[li];
            L.cum_degree = (li == 0 ? 1 : levels_[li - 1].cum_degree) * degrees_[li];
            L.prev_size = prev;
            std::uint64_t sz = 1;
            for (int i = 0; i < L.step_degree; ++i) sz *= prev;
            L.size = std::uint32_t(sz);
            int base = int(li) - 1;
            L.modulus = least_irreducible(base, L.step_degree);
            levels_.push_back(std::move(L));
            build_tables(int(li));
            prev = levels_[li].size;
        }
    }

    void build_tables(int lvl) {
        Level& L = levels_[std::size_t(lvl)];
        std::uint64_t n = L.size - 1;
        auto fac = detail::prime_factors(n);
        elem g = 0;
        for (elem c = 1; c < L.size; ++c) {
            bool ok = true;
            for (auto f : fac)
                if (pow_raw(lvl, c, n / f) == 1) { ok = false; break; }
            if (ok) { g = c; break; }
        }
        if (g == 0 && n > 1) throw std::logic_error("FieldTower: no generator found");
        if (n == 1) g = 1;
        L.generator = g;
        L.exp.assign(std::size_t(2 * n), 0);
        L.log.assign(L.size, 0);
        elem cur = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            L.exp[std::size_t(i)] = cur;
            L.exp[std::size_t(i + n)] = cur;
            L.log[cur] = std::uint32_t(i);
            cur = mul_raw(lvl, cur, g);
        }
        if (cur != 1) throw std::logic_error("FieldTower: generator order mismatch");
    }
};

// Parameters of an irreducible t^2 + a t + 1 over F_q, with a root xi in F_{q^2}.
// Carries the change of basis between the chain coordinates of F_{q^2} over F_q
// and the basis {1, xi}.
struct QuadraticParam {
    int q_level = 0;   // chain level of F_q
    int q2_level = 0;  // chain level of F_{q^2}
    elem a = 0;
    elem xi = 0;
    // decompose u = u1 + u2*xi: u1 = d0*b00 + d1*b10, u2 = d0*b01 + d1*b11
    // where (d0, d1) are the chain digits of u over F_q
    elem binv[2][2] = {{0, 0}, {0, 0}};

    std::pair<elem, elem> split(const FieldTower& T, elem u) const {
        elem d0 = u % T.size(q_level);
        elem d1 = u / T.size(q_level);
        elem u1 = T.add(q_level, T.mul(q_level, d0, binv[0][0]), T.mul(q_level, d1, binv[1][0]));
        elem u2 = T.add(q_level, T.mul(q_level, d0, binv[0][1]), T.mul(q_level, d1, binv[1][1]));
        return {u1, u2};
    }

    elem join(const FieldTower& T, elem u1, elem u2) const {
        return T.add(q2_level, u1, T.mul(q2_level, u2, xi));
    }
};

// Least a (in element enumeration order) such that t^2 + a t + 1 is irreducible
// over F_q, together with a root xi in the next chain level.
inline QuadraticParam find_quadratic_param(const FieldTower& T, int q_level = 0) {
    if (T.p() != 2) throw std::invalid_argument("find_quadratic_param: characteristic 2 required");
    int q2 = q_level + 1;
    if (q2 >= T.num_levels() || T.level(q2).step_degree != 2)
        throw std::invalid_argument("find_quadratic_param: no quadratic extension in chain");
    std::uint32_t q = T.size(q_level);
    for (elem a = 0; a < q; ++a) {
        bool irr = true;
        for (elem t = 0; t < q; ++t) {
            // t^2 + a t + 1
            elem v = T.add(q_level, T.add(q_level, T.mul(q_level, t, t), T.mul(q_level, a, t)), 1);
            if (v == 0) { irr = false; break; }
        }
        if (!irr) continue;
        QuadraticParam P;
        P.q_level = q_level;
        P.q2_level = q2;
        P.a = a;
        for (elem x = 0; x < T.size(q2); ++x) {
            elem v = T.add(q2, T.add(q2, T.mul(q2, x, x), T.mul(q2, a, x)), 1);
            if (v == 0) { P.xi = x; break; }
        }
        if (P.xi == 0) continue; // no root up a level would signal a field bug
        // invert the 2x2 basis matrix rows = chain digits of {1, xi}
        elem b00 = 1, b01 = 0;
        elem b10 = P.xi % q, b11 = P.xi / q;
        elem det = T.sub(q_level, T.mul(q_level, b00, b11), T.mul(q_level, b01, b10));
        elem dinv = T.inv(q_level, det);
        P.binv[0][0] = T.mul(q_level, b11, dinv);
        P.binv[0][1] = T.mul(q_level, T.neg(q_level, b01), dinv);
        P.binv[1][0] = T.mul(q_level, T.neg(q_level, b10), dinv);
        P.binv[1][1] = T.mul(q_level, b00, dinv);
        return P;
    }
    throw std::logic_error("find_quadratic_param: exhausted a without an irreducible t^2+at+1");
}

// Independence of elements of the level-lvl field over the chain subfield of order s,
// computed both by the Moore determinant and by coefficient-vector rank.
inline bool moore_independence(const FieldTower& T, int lvl, const std::vector<elem>& xs,
                               std::uint32_t s) {
    if (xs.empty()) throw std::invalid_argument("moore_independence: empty sequence");
    int sub = T.level_of_size(s);
    if (sub < 0) throw std::invalid_argument("moore_independence: subfield not a chain level");
    int m = T.level(lvl).cum_degree / T.level(sub).cum_degree;
    int k = int(xs.size());
    if (k > m) throw std::invalid_argument("moore_independence: more elements than the degree");

    // Moore determinant route: rows x_j^(s^i), i = 0..k-1
    std::vector<elem> M(std::size_t(k) * std::size_t(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            M[std::size_t(i * k + j)] = T.frobenius(lvl, xs[std::size_t(j)], s, i);
    // Gaussian elimination determinant over the big field
    bool moore_indep = true;
    {
        int n = k;
        auto at = [&](int i, int j) -> elem& { return M[std::size_t(i * n + j)]; };
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (at(r, col) != 0) { piv = r; break; }
            if (piv < 0) { moore_indep = false; break; }
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
            elem ip = T.inv(lvl, at(col, col));
            for (int r = col + 1; r < n; ++r) {
                elem f = T.mul(lvl, at(r, col), ip);
                if (f == 0) continue;
                for (int j = col; j < n; ++j)
                    at(r, j) = T.sub(lvl, at(r, j), T.mul(lvl, f, at(col, j)));
            }
        }
    }

    // coefficient-vector rank route over the subfield
    std::vector<std::vector<elem>> rows;
    for (elem x : xs) rows.push_back(T.coords(lvl, x, sub));
    int rank = 0;
    {
        int cols = m;
        std::vector<std::vector<elem>>& A = rows;
        int r = 0;
        for (int c = 0; c < cols && r < k; ++c) {
            int piv = -1;
            for (int i = r; i < k; ++i)
                if (A[std::size_t(i)][std::size_t(c)] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(A[std::size_t(piv)], A[std::size_t(r)]);
            elem ip = T.inv(sub, A[std::size_t(r)][std::size_t(c)]);
            for (int j = 0; j < cols; ++j)
                A[std::size_t(r)][std::size_t(j)] = T.mul(sub, A[std::size_t(r)][std::size_t(j)], ip);
            for (int i = 0; i < k; ++i) {
                if (i == r) continue;
                elem f = A[std::size_t(i)][std::size_t(c)];
                if (f == 0) continue;
                for (int j = 0; j < cols; ++j)
                    A[std::size_t(i)][std::size_t(j)] =
                        T.sub(sub, A[std::size_t(i)][std::size_t(j)],
                              T.mul(sub, f, A[std::size_t(r)][std::size_t(j)]));
            }
            ++r;
        }
        rank = r;
    }
    bool rank_indep = (rank == k);
    if (moore_indep != rank_indep)
        throw std::logic_error("moore_independence: Moore determinant and rank disagree");
    return rank_indep;
}

} // namespace vsec

#include "cas/localsolve.hpp"

#include <algorithm>
#include <set>

namespace cas {

namespace {

using i128 = __int128;
using Point = std::array<uint64_t, 4>;  // (x, y, z, w)

struct Forms {
    uint64_t a, b, c;

    i128 f1(const Point& P) const {
        return i128(b) * P[1] * P[1] - i128(a) * P[0] * P[0] - i128(P[3]) * P[3];
    }
    i128 f2(const Point& P) const {
        return i128(c) * P[2] * P[2] - i128(b) * P[1] * P[1] - i128(P[3]) * P[3];
    }
    // Jacobian rows of (f1, f2) at P
    std::array<i128, 4> grad1(const Point& P) const {
        return {-2 * i128(a) * P[0], 2 * i128(b) * P[1], 0, -2 * i128(P[3])};
    }
    std::array<i128, 4> grad2(const Point& P) const {
        return {0, -2 * i128(b) * P[1], 2 * i128(c) * P[2], -2 * i128(P[3])};
    }
    std::array<i128, 6> minors(const Point& P) const {
        auto r1 = grad1(P), r2 = grad2(P);
        std::array<i128, 6> m;
        size_t k = 0;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j)
                m[k++] = r1[i] * r2[j] - r1[j] * r2[i];
        return m;
    }
};

unsigned valuation(i128 v, uint64_t p) {
    unsigned t = 0;
    if (v < 0) v = -v;
    while (v % p == 0) {
        v /= p;
        ++t;
    }
    return t;
}

uint64_t umod(i128 v, uint64_t p) {
    i128 r = v % i128(p);
    if (r < 0) r += p;
    return uint64_t(r);
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Hensel acceptance: at a point mod p^k, some 2x2 minor with valuation t
// and k > 2t guarantees a Z_p point.
bool hensel_accepts(const Forms& F, const Point& P, unsigned k, uint64_t p) {
    for (i128 m : F.minors(P)) {
        if (m == 0) continue;
        if (k > 2 * valuation(m, p)) return true;
    }
    return false;
}

// Solutions E mod p of  grad1.E = c1, grad2.E = c2, appended to `out`.
// Returns false (leaving `out` empty) when the space is inconsistent;
// throws when the space is too large to enumerate.
bool solve_linear_children(const Forms& F, const Point& P, unsigned k,
                           uint64_t p, std::vector<Point>& out) {
    uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;

    i128 v1 = F.f1(P), v2 = F.f2(P);
    // invariant: p^k | f_j(P)
    uint64_t c1 = umod(-(v1 / i128(pk)), p);
    uint64_t c2 = umod(-(v2 / i128(pk)), p);
    auto g1 = F.grad1(P), g2 = F.grad2(P);

    // Gaussian elimination on the 2x4 system over F_p
    uint64_t rows[2][5];
    for (size_t i = 0; i < 4; ++i) {
        rows[0][i] = umod(g1[i], p);
        rows[1][i] = umod(g2[i], p);
    }
    rows[0][4] = c1;
    rows[1][4] = c2;

    int pivot_col[2] = {-1, -1};
    int rank = 0;
    for (int col = 0; col < 4 && rank < 2; ++col) {
        int piv = -1;
        for (int r = rank; r < 2; ++r)
            if (rows[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        uint64_t inv = pow_mod(rows[rank][col], p - 2, p);
        for (int j = col; j < 5; ++j) rows[rank][j] = rows[rank][j] * inv % p;
        for (int r = 0; r < 2; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            uint64_t f = rows[r][col];
            for (int j = col; j < 5; ++j)
                rows[r][j] = (rows[r][j] + (p - f) * rows[rank][j]) % p;
        }
        pivot_col[rank++] = col;
    }
    for (int r = rank; r < 2; ++r)
        if (rows[r][4] != 0) return false;  // inconsistent

    int dim = 4 - rank;
    double count = 1;
    for (int i = 0; i < dim; ++i) count *= double(p);
    if (count > 30000)
        throw IndeterminateLocalSolvability(
            "child space too large to enumerate");

    std::array<bool, 4> is_free{true, true, true, true};
    for (int r = 0; r < rank; ++r) is_free[pivot_col[r]] = false;

    std::array<uint64_t, 4> e{};
    std::vector<int> free_cols;
    for (int i = 0; i < 4; ++i)
        if (is_free[i]) free_cols.push_back(i);

    uint64_t total = 1;
    for (int i = 0; i < dim; ++i) total *= p;
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t v = idx;
        for (int i = 0; i < dim; ++i) {
            e[free_cols[i]] = v % p;
            v /= p;
        }
        for (int r = rank - 1; r >= 0; --r) {
            uint64_t s = rows[r][4];
            for (int j = pivot_col[r] + 1; j < 4; ++j)
                s = (s + (p - rows[r][j] % p) * e[j]) % p;
            e[pivot_col[r]] = s;  // pivot coefficient is 1
        }
        out.push_back({P[0] + e[0] * pk, P[1] + e[1] * pk, P[2] + e[2] * pk,
                       P[3] + e[3] * pk});
    }
    return true;
}

unsigned depth_cap(const QuadricIntersection& q, uint64_t p) {
    unsigned v = valuation(i128(2) * q.a * q.b * q.c, p);
    unsigned cap = 2 * (2 * v + 1) + 1;
    unsigned floor_cap = (p == 2) ? 9 : 5;
    return std::max(cap, floor_cap);
}

void fill_witness(PadicWitness* w, uint64_t p, unsigned depth, const Point& P,
                  bool liftable) {
    if (!w) return;
    w->p = p;
    w->depth = depth;
    w->point = P;
    w->liftable = liftable;
}

// Breadth-first lift of the given level-1 seeds.
bool bfs_lift(const Forms& F, std::vector<Point> level, uint64_t p,
              unsigned cap, PadicWitness* witness) {
    for (unsigned k = 1; k <= cap; ++k) {
        std::set<Point> next;
        for (const Point& P : level) {
            if (hensel_accepts(F, P, k, p)) {
                fill_witness(witness, p, k, P, true);
                return true;
            }
            std::vector<Point> children;
            solve_linear_children(F, P, k, p, children);
            next.insert(children.begin(), children.end());
        }
        level.assign(next.begin(), next.end());
        if (level.empty()) return false;
    }
    throw IndeterminateLocalSolvability("depth cap reached with live branches");
}

bool solve_p2(const Forms& F, PadicWitness* witness, unsigned cap) {
    std::vector<Point> seeds;
    for (uint64_t m = 1; m < 16; ++m) {
        Point P{m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1};
        if (umod(F.f1(P), 2) == 0 && umod(F.f2(P), 2) == 0) seeds.push_back(P);
    }
    return bfs_lift(F, seeds, 2, cap, witness);
}

bool solve_odd(const Forms& F, uint64_t p, PadicWitness* witness,
               unsigned cap) {
    // square roots mod p
    std::vector<std::vector<uint64_t>> roots(p);
    for (uint64_t t = 0; t < p; ++t) roots[t * t % p].push_back(t);

    uint64_t am = F.a % p, bm = F.b % p, cm = F.c % p;
    uint64_t ainv = am ? pow_mod(am, p - 2, p) : 0;
    uint64_t cinv = cm ? pow_mod(cm, p - 2, p) : 0;

    std::vector<Point> singular;
    // free coordinate marker: the coefficient vanishes mod p, so the value
    // is unconstrained at level 1
    constexpr uint64_t FREE = ~uint64_t(0);

    auto coordinate_options = [&](uint64_t coeff_m, uint64_t inv, uint64_t rhs,
                                  std::vector<uint64_t>& out) {
        out.clear();
        if (coeff_m == 0) {
            if (rhs == 0) out.push_back(FREE);
            return;
        }
        for (uint64_t t : roots[rhs * inv % p]) out.push_back(t);
    };

    std::vector<uint64_t> xs, zs;
    for (uint64_t y = 0; y < p; ++y) {
        for (uint64_t w = 0; w < p; ++w) {
            uint64_t by2 = bm * y % p * y % p;
            uint64_t w2 = w * w % p;
            uint64_t rhs1 = (by2 + p - w2) % p;          // a x^2 = b y^2 - w^2
            uint64_t rhs2 = (by2 + w2) % p;              // c z^2 = b y^2 + w^2
            coordinate_options(am, ainv, rhs1, xs);
            if (xs.empty()) continue;
            coordinate_options(cm, cinv, rhs2, zs);
            if (zs.empty()) continue;

            for (uint64_t x : xs) {
                for (uint64_t z : zs) {
                    // representatives for smoothness: a FREE coordinate has a
                    // vanishing coefficient mod p, so minors do not depend on it
                    Point P{x == FREE ? 1 : x, y, z == FREE ? 1 : z, w};
                    if (P[0] == 0 && P[1] == 0 && P[2] == 0 && P[3] == 0)
                        continue;
                    if (hensel_accepts(F, P, 1, p)) {
                        fill_witness(witness, p, 1, P, true);
                        return true;
                    }
                    // singular class: expand free coordinates fully
                    std::vector<uint64_t> ex = (x == FREE)
                                                   ? std::vector<uint64_t>{}
                                                   : std::vector<uint64_t>{x};
                    std::vector<uint64_t> ez = (z == FREE)
                                                   ? std::vector<uint64_t>{}
                                                   : std::vector<uint64_t>{z};
                    if (x == FREE)
                        for (uint64_t t = 0; t < p; ++t) ex.push_back(t);
                    if (z == FREE)
                        for (uint64_t t = 0; t < p; ++t) ez.push_back(t);
                    for (uint64_t sx : ex)
                        for (uint64_t sz : ez) {
                            Point S{sx, y, sz, w};
                            if (S[0] == 0 && S[1] == 0 && S[2] == 0 &&
                                S[3] == 0)
                                continue;
                            singular.push_back(S);
                        }
                }
            }
        }
    }
    if (singular.empty()) return false;
    std::sort(singular.begin(), singular.end());
    singular.erase(std::unique(singular.begin(), singular.end()),
                   singular.end());
    return bfs_lift(F, singular, p, cap, witness);
}

}  // namespace

bool is_locally_solvable(const QuadricIntersection& q, uint64_t p,
                         PadicWitness* witness) {
    Forms F{q.a, q.b, q.c};
    unsigned cap = depth_cap(q, p);
    if (p == 2) return solve_p2(F, witness, cap);
    return solve_odd(F, p, witness, cap);
}

std::vector<uint64_t> relevant_primes(const QuadricIntersection& q) {
    uint64_t n = 2 * q.a * q.b * q.c;
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

bool locally_solvable_everywhere(const QuadricIntersection& q) {
    for (uint64_t p : relevant_primes(q))
        if (!is_locally_solvable(q, p)) return false;
    return true;
}

}  // namespace cas

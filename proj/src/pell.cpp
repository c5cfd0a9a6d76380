#include "cas/pell.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "cas/arith.hpp"

namespace cas {

namespace {

uint64_t isqrt_u64(uint64_t n) {
    mpz_class r;
    mpz_class m(static_cast<unsigned long>(n));
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return mpz_get_ui(r.get_mpz_t());
}

bool is_square_u64(uint64_t n) {
    uint64_t r = isqrt_u64(n);
    return r * r == n;
}

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// One step of the PQa recurrence for (P + sqrt(d)) / Q.
// s = floor(sqrt(d)); sqrt(d) is irrational, so the floor below is exact.
int64_t pqa_partial_quotient(int64_t P, int64_t Q, int64_t s) {
    if (Q > 0) return floor_div(P + s, Q);
    return -1 - floor_div(P + s, -Q);
}

}  // namespace

SqrtContinuedFraction cf_expand(uint64_t d) {
    if (d <= 1 || is_square_u64(d))
        throw std::invalid_argument("cf_expand: d must be a nonsquare >= 2");
    SqrtContinuedFraction cf;
    cf.d = d;
    cf.a0 = isqrt_u64(d);
    uint64_t m = cf.a0, den = d - cf.a0 * cf.a0, two_a0 = 2 * cf.a0;
    for (;;) {
        uint64_t a = (cf.a0 + m) / den;
        cf.period.push_back(a);
        if (a == two_a0) break;
        m = a * den - m;
        den = (d - m * m) / den;
    }
    return cf;
}

PellFundamental pell_fundamental(uint64_t d) {
    SqrtContinuedFraction cf = cf_expand(d);
    size_t len = cf.period.size();
    // convergent p_{len-1}/q_{len-1} of [a0; period...]
    mpz_class p_prev = 1, q_prev = 0;
    mpz_class p = mpz_class(static_cast<unsigned long>(cf.a0)), q = 1;
    for (size_t k = 0; k + 1 < len; ++k) {
        mpz_class a(static_cast<unsigned long>(cf.period[k]));
        mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p; q_prev = q;
        p = pn; q = qn;
    }
    PellFundamental f;
    f.d = d;
    if (len % 2 == 0) {
        f.t = p;
        f.u = q;
    } else {
        // p^2 - d q^2 = -1; square it
        f.t = p * p + mpz_class(static_cast<unsigned long>(d)) * q * q;
        f.u = 2 * p * q;
    }
    return f;
}

std::optional<std::pair<mpz_class, mpz_class>> negative_pell(uint64_t d) {
    SqrtContinuedFraction cf = cf_expand(d);
    size_t len = cf.period.size();
    if (len % 2 == 0) return std::nullopt;
    mpz_class p_prev = 1, q_prev = 0;
    mpz_class p = mpz_class(static_cast<unsigned long>(cf.a0)), q = 1;
    for (size_t k = 0; k + 1 < len; ++k) {
        mpz_class a(static_cast<unsigned long>(cf.period[k]));
        mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p; q_prev = q;
        p = pn; q = qn;
    }
    return std::make_pair(p, q);
}

NormRepresentation norm_represents(uint64_t d, uint64_t n) {
    if (is_square_u64(d))
        throw std::invalid_argument("norm_represents: d must be nonsquare");
    if (n < 1) throw std::invalid_argument("norm_represents: n must be >= 1");
    NormRepresentation rep;
    rep.d = d;
    rep.n = mpz_class(static_cast<unsigned long>(n));

    const mpz_class D(static_cast<unsigned long>(d));
    const int64_t s = int64_t(isqrt_u64(d));
    auto neg = [&]() { return negative_pell(d); };

    // Every solution class of x^2 - d y^2 = n has a representative found by
    // the PQa expansion of (z + sqrt(d))/m for some f^2 | n, m = n/f^2 and
    // z^2 = d (mod m), -m/2 < z <= m/2.
    for (uint64_t f = 1; f * f <= n; ++f) {
        if (n % (f * f) != 0) continue;
        int64_t m = int64_t(n / (f * f));
        int64_t zlo = (m % 2 == 0) ? -(m / 2) + 1 : -((m - 1) / 2);
        for (int64_t z = zlo; z <= m / 2; ++z) {
            int64_t r = (z * z - int64_t(d)) % m;
            if (r != 0) continue;

            int64_t P = z, Q = m;
            mpz_class G_m2 = -mpz_class(static_cast<long>(z));
            mpz_class G_m1 = m;
            mpz_class B_m2 = 1, B_m1 = 0;
            std::set<std::pair<int64_t, int64_t>> seen;
            seen.insert({P, Q});
            for (;;) {
                int64_t a = pqa_partial_quotient(P, Q, s);
                mpz_class G = a * G_m1 + G_m2;
                mpz_class B = a * B_m1 + B_m2;
                int64_t Pn = a * Q - P;
                int64_t Qn = (int64_t(d) - Pn * Pn) / Q;
                if (Qn == 1 || Qn == -1) {
                    mpz_class val = G * G - D * B * B;
                    if (val == m) {
                        rep.witness = {abs(G) * f, abs(B) * f};
                        return rep;
                    }
                    if (val == -m) {
                        if (auto np = neg()) {
                            mpz_class x = G * np->first + B * np->second * D;
                            mpz_class y = G * np->second + B * np->first;
                            rep.witness = {abs(x) * f, abs(y) * f};
                            return rep;
                        }
                    }
                }
                if (!seen.insert({Pn, Qn}).second) break;
                G_m2 = G_m1; G_m1 = G;
                B_m2 = B_m1; B_m1 = B;
                P = Pn; Q = Qn;
            }
        }
    }
    return rep;
}

NormRepresentation degenerate_norm(uint64_t d, uint64_t n) {
    uint64_t k = isqrt_u64(d);
    if (k * k != d)
        throw std::invalid_argument("degenerate_norm: d must be a perfect square");
    NormRepresentation rep;
    rep.d = d;
    rep.n = mpz_class(static_cast<unsigned long>(n));
    if (k == 0) {
        if (is_square_u64(n)) rep.witness = {mpz_class(static_cast<unsigned long>(isqrt_u64(n))), 0};
        return rep;
    }
    // (x - k y)(x + k y) = n over divisor pairs r * s = n, r <= s
    for (uint64_t r = 1; r * r <= n; ++r) {
        if (n % r != 0) continue;
        uint64_t sdiv = n / r;
        if ((r + sdiv) % 2 != 0) continue;
        if ((sdiv - r) % (2 * k) != 0) continue;
        rep.witness = {mpz_class(static_cast<unsigned long>((r + sdiv) / 2)),
                       mpz_class(static_cast<unsigned long>((sdiv - r) / (2 * k)))};
        return rep;
    }
    return rep;
}

bool norm_solvable(uint64_t d, uint64_t n) {
    if (is_square_u64(d)) return degenerate_norm(d, n).witness.has_value();
    return norm_represents(d, n).witness.has_value();
}

bool eq1_solvable(uint64_t a, uint64_t b) {
    // b y^2 - a x^2 = 1  <=>  Y^2 - ab x^2 = b with Y = b y
    // (b squarefree and b | Y^2 force b | Y, so the reduction is exact)
    return norm_solvable(a * b, b);
}

bool eq2_solvable(uint64_t b, uint64_t c) {
    return norm_solvable(b * c, c);
}

bool eq3_solvable(uint64_t a, uint64_t c) {
    // c z^2 - a x^2 = 2  <=>  X^2 - ac x^2 = 2c with X = c z
    // (c squarefree and c | X^2 force c | X; this also covers gcd(a,c) = 2,
    // where ac = 4 a'c' is a nonsquare unless a = c)
    return norm_solvable(a * c, 2 * c);
}

PellCache::PellCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    uint64_t d;
    std::string t, u;
    while (in >> d >> t >> u) {
        PellFundamental f;
        f.d = d;
        f.t = mpz_class(t);
        f.u = mpz_class(u);
        entries_[d] = f;
    }
}

std::optional<PellFundamental> PellCache::find(uint64_t d) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(d);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void PellCache::insert(const PellFundamental& f) {
    std::lock_guard<std::mutex> lock(mu_);
    entries_[f.d] = f;
}

void PellCache::save() const {
    if (path_.empty()) return;
    std::lock_guard<std::mutex> lock(mu_);
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("PellCache: cannot write " + tmp);
        for (const auto& [d, f] : entries_)
            out << d << ' ' << f.t.get_str() << ' ' << f.u.get_str() << '\n';
    }
    if (std::rename(tmp.c_str(), path_.c_str()) != 0)
        throw std::runtime_error("PellCache: rename failed for " + path_);
}

PellFundamental pell_fundamental(uint64_t d, PellCache* cache) {
    if (cache) {
        if (auto hit = cache->find(d)) return *hit;
    }
    PellFundamental f = pell_fundamental(d);
    if (cache) cache->insert(f);
    return f;
}

}  // namespace cas

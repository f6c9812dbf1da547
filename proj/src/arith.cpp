#include "lt/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lt {

namespace {

constexpr i64 kSegmentLen = i64(1) << 20;

// Plain sieve for the base primes up to n.
std::vector<i64> small_primes(i64 n)
{
    std::vector<bool> composite(size_t(n) + 1, false);
    std::vector<i64> out;
    for (i64 p = 2; p <= n; ++p) {
        if (composite[size_t(p)])
            continue;
        out.push_back(p);
        for (i64 q = p * p; q <= n; q += p)
            composite[size_t(q)] = true;
    }
    return out;
}

} // namespace

void for_each_prime(i64 limit, const std::function<void(i64)>& fn)
{
    if (limit < 2)
        return;
    i64 root = i64(std::sqrt(double(limit))) + 2;
    while (root * root > limit + 1)
        --root;
    std::vector<i64> base = small_primes(std::max<i64>(root, 2));
    for (i64 p : base)
        if (p <= limit)
            fn(p);

    std::vector<uint8_t> seg(static_cast<size_t>(kSegmentLen), 0);
    for (i64 lo = root + 1; lo <= limit; lo += kSegmentLen) {
        i64 hi = std::min(lo + kSegmentLen - 1, limit);
        std::fill(seg.begin(), seg.begin() + size_t(hi - lo + 1), 0);
        for (i64 p : base) {
            if (p * p > hi)
                break;
            i64 start = ((lo + p - 1) / p) * p;
            if (start < p * p)
                start = p * p;
            for (i64 q = start; q <= hi; q += p)
                seg[size_t(q - lo)] = 1;
        }
        for (i64 q = lo; q <= hi; ++q)
            if (!seg[size_t(q - lo)])
                fn(q);
    }
}

PrimeRange sieve_primes(i64 limit)
{
    if (limit < 2)
        throw domain_error("sieve_primes: empty range, limit < 2");
    PrimeRange r;
    r.lo = 2;
    r.hi = limit;
    double x = double(limit);
    if (x > 20)
        r.primes.reserve(size_t(x / (std::log(x) - 1.2)) + 16);
    for_each_prime(limit, [&](i64 p) { r.primes.push_back(p); });
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m)
{
    return u64((unsigned __int128)a * b % m);
}

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a proven deterministic set for n < 2^64.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

std::optional<u64> sqrt_mod(u64 a, u64 p)
{
    a %= p;
    if (a == 0)
        return 0;
    if (p == 2)
        return a;
    if (powmod(a, (p - 1) / 2, p) != 1)
        return std::nullopt;
    if (p % 4 == 3) {
        u64 r = powmod(a, (p + 1) / 4, p);
        return std::min(r, p - r);
    }
    // Tonelli-Shanks.
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    u64 m = u64(s);
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

namespace {

// Jacobi symbol (a/n) for odd n >= 1; a arbitrary.
int jacobi(i64 a, i64 n)
{
    a %= n;
    if (a < 0)
        a += n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n & 7;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

} // namespace

int legendre_symbol(i64 a, i64 p)
{
    if (p < 3 || (p & 1) == 0 || !is_prime(u64(p)))
        throw domain_error("legendre_symbol: p must be an odd prime");
    return jacobi(a, p);
}

int kronecker_symbol(i64 d, i64 n)
{
    if (n < 1)
        throw domain_error("kronecker_symbol: n must be positive");
    if (n == 1)
        return 1;
    int t = 1;
    while ((n & 1) == 0) {
        if ((d & 1) == 0)
            return 0;
        i64 r = ((d % 8) + 8) % 8;
        if (r == 3 || r == 5)
            t = -t;
        n >>= 1;
    }
    return t * jacobi(d, n);
}

i64 fundamental_discriminant(i64 D)
{
    if (D >= 0)
        throw domain_error("fundamental_discriminant: D must be negative");
    i64 m4 = ((D % 4) + 4) % 4;
    if (m4 == 2 || m4 == 3)
        throw domain_error("fundamental_discriminant: D must be 0 or 1 mod 4");
    // Squarefree part of |D| (sign carried separately).
    i64 n = -D;
    i64 core = 1;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e & 1)
            core *= p;
    }
    core *= n; // leftover factor is prime (or 1)
    i64 d0 = -core;
    i64 d = (((d0 % 4) + 4) % 4 == 1) ? d0 : 4 * d0;
    return d;
}

bool is_fundamental_discriminant(i64 d)
{
    if (d >= 0)
        return false;
    i64 m4 = ((d % 4) + 4) % 4;
    if (m4 == 2 || m4 == 3)
        return false;
    return fundamental_discriminant(d) == d;
}

namespace {

double li_integrand(double t)
{
    return 1.0 / std::log(t);
}

double simpson(double a, double b, double fa, double fm, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = li_integrand(lm), frm = li_integrand(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double li(double x)
{
    if (x < 2.0)
        throw domain_error("li: x must be >= 2");
    if (x == 2.0)
        return 0.0;
    double a = 2.0, b = x;
    double fa = li_integrand(a), fb = li_integrand(b);
    double m = 0.5 * (a + b);
    double fm = li_integrand(m);
    double whole = simpson(a, b, fa, fm, fb);
    double tol = std::max(1e-12, 1e-9 * std::fabs(whole));
    return adaptive_simpson(a, b, fa, fm, fb, whole, tol, 60);
}

} // namespace lt

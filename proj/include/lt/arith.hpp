#ifndef LT_ARITH_HPP
#define LT_ARITH_HPP

// Integer and finite-field primitives: prime sieving, quadratic symbols,
// fundamental discriminants and the logarithmic integral.  Everything here
// fits in 128-bit signed intermediates for inputs up to ~1e8.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lt/errors.hpp"

namespace lt {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// All primes in [lo, hi], ascending.
struct PrimeRange {
    i64 lo = 2;
    i64 hi = 2;
    std::vector<i64> primes;
};

// Segmented sieve of Eratosthenes; calls fn(p) for each prime p <= limit in
// ascending order.  Segment length 1<<20 keeps the working set cache-sized.
void for_each_prime(i64 limit, const std::function<void(i64)>& fn);

// All primes <= limit.  Throws domain_error for limit < 2.
PrimeRange sieve_primes(i64 limit);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Square root mod an odd prime p (Tonelli-Shanks); nullopt for non-residues.
std::optional<u64> sqrt_mod(u64 a, u64 p);

// Legendre symbol (a/p).  Throws domain_error unless p is an odd prime.
int legendre_symbol(i64 a, i64 p);

// Kronecker symbol (d/n) for n >= 1; completely multiplicative in n.
int kronecker_symbol(i64 d, i64 n);

// Discriminant of Q(sqrt(D)) for D < 0, D = 0 or 1 mod 4.  The result
// divides D and D/result is a square up to the usual mod-4 unit factor.
i64 fundamental_discriminant(i64 D);

bool is_fundamental_discriminant(i64 d);

// Logarithmic integral: integral of dt/log t from 2 to x, by adaptive
// Simpson quadrature (relative target 1e-9, absolute floor 1e-12).
double li(double x);

} // namespace lt

#endif

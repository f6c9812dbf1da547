#ifndef LT_ELLIPTIC_HPP
#define LT_ELLIPTIC_HPP

// Elliptic curves y^2 = x^3 + Ax + B over Q, reduction mod p, the a_p
// engine and the trace-of-power recurrence.
//
// Convention: a_p = p + 1 - #E(F_p), so the Frobenius satisfies
// x^2 - a_p x + p = 0.  Bad primes are over-approximated by p | disc of
// the given model; p = 2 is always skipped (16 | disc).

#include <cstdint>
#include <string>
#include <vector>

#include "lt/arith.hpp"

namespace lt {

struct EllipticCurve {
    i64 A = 0;
    i64 B = 0;
    i64 disc = 0; // -16(4A^3 + 27B^2), nonzero
};

// Validates disc != 0 and that it fits in 64 bits.
EllipticCurve make_curve(i64 A, i64 B);

// True iff p does not divide the model discriminant.
bool good_reduction(const EllipticCurve& E, i64 p);

// Trace of Frobenius at an odd prime of good reduction, computed as
// -sum_x legendre(x^3 + Ax + B, p).  O(p) time, O(p) bytes.
i64 ap(const EllipticCurve& E, i64 p);

struct ApRecord {
    i64 p = 0;          // odd prime of good reduction
    i64 a = 0;          // trace, |a| < 2 sqrt(p)
    bool ordinary = false; // a != 0 mod p
    i64 D = 0;          // a^2 - 4p < 0
    i64 d = 0;          // fundamental discriminant of D
};

enum class ReductionType { ordinary, supersingular };

ReductionType reduction_type(const ApRecord& rec);

struct ApTable {
    EllipticCurve curve;
    i64 x = 0;
    std::vector<ApRecord> records; // ascending p, one per good odd p <= x
};

// One record per good odd prime p <= x.  The prime range may be sharded
// across threads; shards fill disjoint slots so the result is identical
// for any shard count.  shards = 0 picks hardware concurrency.
ApTable build_ap_table(const EllipticCurve& E, i64 x, int shards = 0);

// Trace of M^m for a 2x2 matrix with trace a and determinant p, via the
// Newton recurrence s_m = a s_{m-1} - p s_{m-2}.
i64 trace_of_power(i64 a, i64 p, int m);

// Cache format: header "p,a,ordinary,D,d", one row per record, ascending,
// LF line endings, integers only.
void write_ap_csv(const ApTable& table, const std::string& path);
std::vector<ApRecord> read_ap_csv(const std::string& path);

} // namespace lt

#endif

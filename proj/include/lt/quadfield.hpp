#ifndef LT_QUADFIELD_HPP
#define LT_QUADFIELD_HPP

// Imaginary quadratic fields Q(sqrt(d)), d < 0 fundamental: class numbers
// via reduced binary quadratic forms, unit groups, prime splitting,
// principality tests, Cornacchia generators, the residue ring quotient
// (O/lO)^x / O^x at split primes, and ray class group orders.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lt/arith.hpp"

namespace lt {

struct QuadraticField {
    i64 d = -3; // fundamental discriminant
    i64 h = 1;  // class number
    int w = 6;  // unit count: 6 for d=-3, 4 for d=-4, else 2
};

// Positive definite integral form a x^2 + b xy + c y^2 of discriminant
// b^2 - 4ac = d.
struct QuadForm {
    i64 a = 1;
    i64 b = 0;
    i64 c = 0;
};

// Class number by counting reduced forms (|b| <= a <= c, b >= 0 when
// |b| = a or a = c).  Throws domain_error for non-fundamental d.
QuadraticField class_number(i64 d);

int unit_count(i64 d);

// The w elements (u, v) with (u^2 - d v^2)/4 = 1, i.e. units (u+v sqrt d)/2.
std::vector<std::pair<i64, i64>> unit_group(i64 d);

QuadForm principal_form(i64 d);

// Gauss reduction; terminates in at most 2 log2(a) + 2 steps.  The step
// count is written to *steps when non-null.
QuadForm reduce_form(QuadForm f, i64 d, int* steps = nullptr);

enum class SplittingType { split, inert, ramified };

SplittingType splitting_type(i64 d, i64 ell);

enum class IdealClass { principal, nonprincipal };

// Class of the prime ideal above a split prime p: build (p, b, *) with
// b^2 = d mod 4p and reduce.  Throws domain_error if p is inert/ramified.
IdealClass ideal_class_of_prime(i64 d, i64 p);

// Modified Cornacchia: (u, v) with u^2 - d v^2 = 4p, i.e. a generator
// (u + v sqrt d)/2 of norm p, when the ideal above p is principal;
// nullopt otherwise (inert p, or principal generator absent).
std::optional<std::pair<i64, i64>> cornacchia(i64 d, i64 p);

// (O/lO)^x modulo the image of the units, for a prime l >= 5 split in d.
// Residues are identified with pairs in F_l^x x F_l^x via the two primes
// above l; cosets are the orbits of the unit image acting by
// componentwise multiplication.
struct ResidueUnitQuotient {
    i64 d = 0;
    i64 ell = 0;
    int w = 2;
    i64 root = 0; // fixed square root of d mod ell
    std::vector<std::pair<i64, i64>> unit_pairs;
    std::vector<std::vector<std::pair<i64, i64>>> cosets;
    std::vector<int> coset_of;   // (s-1)*(ell-1) + (t-1) -> coset id
    std::vector<i64> norms;      // s*t, constant on each orbit
    std::vector<std::vector<i64>> traces; // sorted distinct s+t per orbit
    std::vector<int> mul_table;  // ncos x ncos
    std::vector<int> inv_of;     // coset inverse

    int ncos() const { return int(cosets.size()); }
    int coset_index(i64 s, i64 t) const;
    // Coset of (u + v sqrt d)/2; the element must be invertible mod ell.
    int coset_of_element(i64 u, i64 v) const;
    int mul(int i, int j) const { return mul_table[size_t(i) * cosets.size() + size_t(j)]; }
    int inv(int i) const { return inv_of[size_t(i)]; }
};

ResidueUnitQuotient residue_unit_quotient(i64 d, i64 ell);

struct NormTrace {
    i64 norm = 0;
    std::vector<i64> traces;
};

NormTrace norm_trace_of_coset(const ResidueUnitQuotient& q, int coset);

// |Cl_m| = h |(O/mO)^x| / w, exact, for m >= 5 (unit image injects).
i64 ray_class_order(i64 d, i64 m);

// |(O/mO)^x| by the Euler product over prime factors of m.
i64 residue_unit_group_order(i64 d, i64 m);

// Independent route for |Cl_m|: enumerate integral ideals coprime to m,
// dedup by exact ray-equivalence (no use of the order formula).  Small
// d and m only; used by verification suites.
i64 ray_class_order_enumerated(i64 d, i64 m);

} // namespace lt

#endif

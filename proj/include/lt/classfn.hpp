#ifndef LT_CLASSFN_HPP
#define LT_CLASSFN_HPP

// Class functions on finite groups given by explicit multiplication
// tables: conjugacy classes, induction from subgroups, inner products,
// lifts from quotients.  Values are exact rationals (complex pairs), so
// reciprocity identities can be asserted with equality.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lt/errors.hpp"

namespace lt {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const = default;
    double to_double() const { return double(num) / double(den); }
};

// Complex value with exact rational parts.
struct CRat {
    Rational re;
    Rational im;

    CRat() = default;
    CRat(Rational r) : re(r) {}
    CRat(Rational r, Rational i) : re(r), im(i) {}
    CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
    CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
    CRat operator*(const CRat& o) const
    {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CRat conj() const { return {re, Rational(0) - im}; }
    bool operator==(const CRat& o) const = default;
};

CRat operator*(const Rational& s, const CRat& v);

struct FiniteGroupTable {
    int n = 1;
    std::vector<uint16_t> mul; // n*n, mul[i*n+j] = i*j
    std::vector<uint16_t> inv;
    uint16_t id = 0;

    int at(int i, int j) const { return mul[size_t(i) * size_t(n) + size_t(j)]; }
};

// Builds inv and id from the table and validates the group laws.
// Associativity is checked on all triples for n <= 200 and on 2e6
// sampled triples above.  Throws contract_error on violation.
FiniteGroupTable make_group_table(int n, const std::vector<uint16_t>& mul);

using ClassFunction = std::vector<CRat>; // one value per element index

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroupTable& g);

bool is_class_function(const FiniteGroupTable& g, const ClassFunction& phi);

// Indicator of a conjugation-stable subset.
ClassFunction indicator(const FiniteGroupTable& g, const std::vector<int>& set);

// Ind_H^G phi: g -> (1/|H|) sum over t with t^-1 g t in H of phi(t^-1 g t).
// H is a set of element indices of G (checked to be a subgroup); phi is
// defined on G but only read at elements of H.
ClassFunction induce(const FiniteGroupTable& g, const std::vector<int>& H,
                     const ClassFunction& phi);

// <phi, psi> = (1/|G|) sum phi(g) conj(psi(g)).
CRat inner_product(const FiniteGroupTable& g, const ClassFunction& phi,
                   const ClassFunction& psi);

// Restriction of the inner product to a subgroup H.
CRat inner_product_on(const FiniteGroupTable& g, const std::vector<int>& H,
                      const ClassFunction& phi, const ClassFunction& psi);

struct Quotient {
    FiniteGroupTable table; // G/N
    std::vector<int> proj;  // element of G -> element of G/N
};

// G/N for N normal in G (throws contract_error otherwise).
Quotient build_quotient(const FiniteGroupTable& g, const std::vector<int>& N);

// Pullback of a class function on G/N along the projection.
ClassFunction lift_from_quotient(const FiniteGroupTable& g, const Quotient& q,
                                 const ClassFunction& phiQ);

// Inertia-averaged Frobenius power value: (1/|I|) sum of phi over the
// elements of D whose I-coset equals sigma^m I.  D must be a subgroup
// containing the normal subgroup I with sigma in D.
CRat frob_power_value(const FiniteGroupTable& g, const std::vector<int>& D,
                      const std::vector<int>& I, int sigma, int m,
                      const ClassFunction& phi);

// Table file format: first line n, then n lines of n space-separated
// indices.
FiniteGroupTable load_group_table(std::istream& in);
void save_group_table(const FiniteGroupTable& g, std::ostream& out);

// Small test groups.
FiniteGroupTable cyclic_table(int n);
FiniteGroupTable s3_table();
FiniteGroupTable d4_table();

} // namespace lt

#endif

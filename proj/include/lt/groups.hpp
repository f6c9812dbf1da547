#ifndef LT_GROUPS_HPP
#define LT_GROUPS_HPP

// Exhaustive enumeration of GL2(F_l) and its Borel machinery: the
// subgroups B (upper triangular), U (unipotent), H (equal eigenvalues
// in B), the trace/square sets C_a, and the mixed group G of pairs
// (A, u) with det(A) = N(u) over the residue-unit quotient of an
// imaginary quadratic field.  Everything is meant for small l (<= 13
// for the mixed group) where exact counting is cheap.

#include <cstdint>
#include <vector>

#include "lt/quadfield.hpp"

namespace lt {

struct Mat2 {
    int a = 1, b = 0, c = 0, d = 1;
};

// |GL2(F_l)| = (l-1)^2 (l+1) l.
i64 gl2_order(i64 ell);

struct GL2Table {
    int ell = 2;
    std::vector<uint32_t> packed;   // invertible matrices, ascending packed code
    std::vector<int32_t> index_of;  // packed code -> element index, -1 if singular
    std::vector<int8_t> trace;      // per element, in [0, ell)
    std::vector<int8_t> det;        // per element, in [1, ell)
    std::vector<int32_t> inverse;

    int size() const { return int(packed.size()); }
    Mat2 mat(int i) const;
    int index(const Mat2& m) const;
    int mul(int i, int j) const;
    int inv(int i) const { return inverse[size_t(i)]; }
    int id() const;
};

// Enumerates all of GL2(F_l); l a prime <= 31.
GL2Table enumerate_gl2(int ell);

// Element sets, sorted by index.
std::vector<int32_t> borel_set(const GL2Table& g);
std::vector<int32_t> unipotent_set(const GL2Table& g);
std::vector<int32_t> equal_eigenvalue_set(const GL2Table& g); // H <= B

// C_a = { A : tr A = a, tr(A)^2 - 4 det(A) a square in F_l } (0 counts
// as a square).
std::vector<int32_t> set_C_a(const GL2Table& g, i64 a);

bool is_subgroup(const GL2Table& g, const std::vector<int32_t>& s);
bool is_normal_in(const GL2Table& g, const std::vector<int32_t>& n,
                  const std::vector<int32_t>& b);
// N * set == set?
bool is_stable_under(const GL2Table& g, const std::vector<int32_t>& set,
                     const std::vector<int32_t>& n);

// |set| / |N| with the preconditions checked: N a subgroup normal in B
// with N*set = set.  Throws contract_error on violation.  The result is
// cross-checked against a direct coset count.
i64 quotient_image_count(const GL2Table& g, const std::vector<int32_t>& set,
                         const std::vector<int32_t>& n,
                         const std::vector<int32_t>& b);

// How many A in GL2(F_l) have trace t and determinant dt; indexed
// t * l + dt.  Used for exact Chebotarev fractions.
struct CharPolyCounts {
    i64 ell = 0;
    i64 group_order = 0;
    std::vector<i64> count; // size l*l, det 0 slots stay 0
};

CharPolyCounts charpoly_class_counts(i64 ell);

// Mixed group: pairs (A, u-coset) with det A = N(u).
struct MixedGroup {
    GL2Table gl2;
    ResidueUnitQuotient q;
    std::vector<std::pair<int32_t, int32_t>> elems; // (matrix idx, coset idx)
    std::vector<int32_t> index_of;                  // mat * ncos + coset

    int size() const { return int(elems.size()); }
    int index(int matIdx, int cosetIdx) const;
    int mul(int i, int j) const;
    int inv(int i) const;
};

MixedGroup mixed_group(i64 d, i64 ell);

struct MixedSets {
    std::vector<int32_t> C;     // tr A in Tr(u), disc square
    std::vector<int32_t> CB;    // C intersect B
    std::vector<int32_t> Bcal;  // A upper triangular
    std::vector<int32_t> Ucal;  // A in B with equal eigenvalues a, u = [a]
    i64 Cprime = 0;             // |C cap B| / |Ucal|
};

// Builds the sets and verifies: Ucal normal in Bcal, Ucal*(C cap B) =
// C cap B, and Cprime equal to the direct coset count.
MixedSets set_Ccal(const MixedGroup& mg);

// Dense multiplication table of a subgroup (for the class-function
// module); elements are re-indexed by position in `set`.
struct DenseSubgroup {
    std::vector<uint16_t> mul; // n*n
    std::vector<int32_t> members; // dense idx -> GL2 idx
};

DenseSubgroup dense_subgroup(const GL2Table& g, const std::vector<int32_t>& set);

} // namespace lt

#endif

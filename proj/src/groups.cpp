#include "lt/groups.hpp"

#include <algorithm>
#include <unordered_set>

namespace lt {

i64 gl2_order(i64 ell)
{
    if (ell < 2 || !is_prime(u64(ell)))
        throw domain_error("gl2_order: ell must be prime");
    return (ell - 1) * (ell - 1) * (ell + 1) * ell;
}

Mat2 GL2Table::mat(int i) const
{
    uint32_t code = packed[size_t(i)];
    int l = ell;
    Mat2 m;
    m.d = int(code % uint32_t(l));
    code /= uint32_t(l);
    m.c = int(code % uint32_t(l));
    code /= uint32_t(l);
    m.b = int(code % uint32_t(l));
    code /= uint32_t(l);
    m.a = int(code);
    return m;
}

int GL2Table::index(const Mat2& m) const
{
    uint32_t code = uint32_t(((m.a * ell + m.b) * ell + m.c) * ell + m.d);
    int32_t i = index_of[code];
    if (i < 0)
        throw contract_error("GL2Table::index: singular matrix");
    return i;
}

int GL2Table::mul(int i, int j) const
{
    Mat2 x = mat(i), y = mat(j);
    Mat2 z;
    z.a = (x.a * y.a + x.b * y.c) % ell;
    z.b = (x.a * y.b + x.b * y.d) % ell;
    z.c = (x.c * y.a + x.d * y.c) % ell;
    z.d = (x.c * y.b + x.d * y.d) % ell;
    return index(z);
}

int GL2Table::id() const
{
    Mat2 e;
    return index(e);
}

GL2Table enumerate_gl2(int ell)
{
    if (ell < 2 || ell > 31 || !is_prime(u64(ell)))
        throw domain_error("enumerate_gl2: ell must be a prime <= 31");
    GL2Table g;
    g.ell = ell;
    size_t total = size_t(ell) * ell * ell * ell;
    g.index_of.assign(total, -1);
    for (int a = 0; a < ell; ++a)
        for (int b = 0; b < ell; ++b)
            for (int c = 0; c < ell; ++c)
                for (int d = 0; d < ell; ++d) {
                    int det = ((a * d - b * c) % ell + ell) % ell;
                    if (det == 0)
                        continue;
                    uint32_t code = uint32_t(((a * ell + b) * ell + c) * ell + d);
                    g.index_of[code] = int32_t(g.packed.size());
                    g.packed.push_back(code);
                    g.trace.push_back(int8_t((a + d) % ell));
                    g.det.push_back(int8_t(det));
                }
    g.inverse.resize(g.packed.size());
    for (int i = 0; i < g.size(); ++i) {
        Mat2 m = g.mat(i);
        int det = g.det[size_t(i)];
        int dinv = int(powmod(u64(det), u64(ell - 2), u64(ell)));
        Mat2 w;
        w.a = m.d * dinv % ell;
        w.b = (ell - m.b % ell) % ell * dinv % ell;
        w.c = (ell - m.c % ell) % ell * dinv % ell;
        w.d = m.a * dinv % ell;
        g.inverse[size_t(i)] = g.index(w);
    }
    return g;
}

std::vector<int32_t> borel_set(const GL2Table& g)
{
    std::vector<int32_t> out;
    for (int i = 0; i < g.size(); ++i)
        if (g.mat(i).c == 0)
            out.push_back(i);
    return out;
}

std::vector<int32_t> unipotent_set(const GL2Table& g)
{
    std::vector<int32_t> out;
    for (int i = 0; i < g.size(); ++i) {
        Mat2 m = g.mat(i);
        if (m.c == 0 && m.a == 1 && m.d == 1)
            out.push_back(i);
    }
    return out;
}

std::vector<int32_t> equal_eigenvalue_set(const GL2Table& g)
{
    std::vector<int32_t> out;
    for (int i = 0; i < g.size(); ++i) {
        Mat2 m = g.mat(i);
        if (m.c == 0 && m.a == m.d)
            out.push_back(i);
    }
    return out;
}

namespace {

std::vector<bool> square_table(int ell)
{
    std::vector<bool> sq(size_t(ell), false);
    for (int t = 0; t < ell; ++t)
        sq[size_t(t * t % ell)] = true;
    return sq;
}

} // namespace

std::vector<int32_t> set_C_a(const GL2Table& g, i64 a)
{
    int ell = g.ell;
    int am = int(((a % ell) + ell) % ell);
    std::vector<bool> sq = square_table(ell);
    std::vector<int32_t> out;
    for (int i = 0; i < g.size(); ++i) {
        int t = g.trace[size_t(i)];
        if (t != am)
            continue;
        int disc = ((t * t - 4 * g.det[size_t(i)]) % ell + ell) % ell;
        if (sq[size_t(disc)])
            out.push_back(i);
    }
    return out;
}

namespace {

std::vector<bool> member_mask(const GL2Table& g, const std::vector<int32_t>& s)
{
    std::vector<bool> in(size_t(g.size()), false);
    for (int32_t i : s)
        in[size_t(i)] = true;
    return in;
}

} // namespace

bool is_subgroup(const GL2Table& g, const std::vector<int32_t>& s)
{
    if (s.empty())
        return false;
    std::vector<bool> in = member_mask(g, s);
    if (!in[size_t(g.id())])
        return false;
    for (int32_t i : s) {
        if (!in[size_t(g.inv(i))])
            return false;
        for (int32_t j : s)
            if (!in[size_t(g.mul(i, j))])
                return false;
    }
    return true;
}

bool is_normal_in(const GL2Table& g, const std::vector<int32_t>& n,
                  const std::vector<int32_t>& b)
{
    std::vector<bool> in = member_mask(g, n);
    for (int32_t x : b)
        for (int32_t y : n)
            if (!in[size_t(g.mul(g.mul(x, y), g.inv(x)))])
                return false;
    return true;
}

bool is_stable_under(const GL2Table& g, const std::vector<int32_t>& set,
                     const std::vector<int32_t>& n)
{
    std::vector<bool> in = member_mask(g, set);
    for (int32_t x : n)
        for (int32_t s : set)
            if (!in[size_t(g.mul(x, s))])
                return false;
    return true;
}

i64 quotient_image_count(const GL2Table& g, const std::vector<int32_t>& set,
                         const std::vector<int32_t>& n,
                         const std::vector<int32_t>& b)
{
    if (!is_subgroup(g, n))
        throw contract_error("quotient_image_count: N is not a subgroup");
    if (!is_normal_in(g, n, b))
        throw contract_error("quotient_image_count: N is not normal in B");
    if (!is_stable_under(g, set, n))
        throw contract_error("quotient_image_count: N*set != set");
    if (set.size() % n.size())
        throw contract_error("quotient_image_count: |set| not divisible by |N|");
    i64 by_ratio = i64(set.size() / n.size());

    // Cross-check: count distinct cosets directly (label = smallest
    // element index of s*N).
    std::unordered_set<int32_t> labels;
    for (int32_t s : set) {
        int32_t lo = INT32_MAX;
        for (int32_t x : n)
            lo = std::min(lo, int32_t(g.mul(s, x)));
        labels.insert(lo);
    }
    if (i64(labels.size()) != by_ratio)
        throw contract_error("quotient_image_count: coset count disagrees with ratio");
    return by_ratio;
}

CharPolyCounts charpoly_class_counts(i64 ell)
{
    if (ell < 2 || ell > 100 || !is_prime(u64(ell)))
        throw domain_error("charpoly_class_counts: ell must be a prime <= 100");
    int l = int(ell);
    CharPolyCounts cc;
    cc.ell = ell;
    cc.count.assign(size_t(l) * l, 0);
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b)
            for (int c = 0; c < l; ++c)
                for (int d = 0; d < l; ++d) {
                    int det = ((a * d - b * c) % l + l) % l;
                    if (det == 0)
                        continue;
                    ++cc.count[size_t(((a + d) % l) * l + det)];
                }
    cc.group_order = 0;
    for (i64 v : cc.count)
        cc.group_order += v;
    return cc;
}

int MixedGroup::index(int matIdx, int cosetIdx) const
{
    int32_t i = index_of[size_t(matIdx) * size_t(q.ncos()) + size_t(cosetIdx)];
    if (i < 0)
        throw contract_error("MixedGroup::index: det/norm mismatch");
    return i;
}

int MixedGroup::mul(int i, int j) const
{
    auto [m1, c1] = elems[size_t(i)];
    auto [m2, c2] = elems[size_t(j)];
    return index(gl2.mul(m1, m2), q.mul(c1, c2));
}

int MixedGroup::inv(int i) const
{
    auto [m, c] = elems[size_t(i)];
    return index(gl2.inv(m), q.inv(c));
}

MixedGroup mixed_group(i64 d, i64 ell)
{
    if (ell > 13)
        throw domain_error("mixed_group: enumeration bounded to ell <= 13");
    MixedGroup mg;
    mg.q = residue_unit_quotient(d, ell); // validates ell >= 5 split
    mg.gl2 = enumerate_gl2(int(ell));
    int ncos = mg.q.ncos();
    mg.index_of.assign(size_t(mg.gl2.size()) * size_t(ncos), -1);
    for (int m = 0; m < mg.gl2.size(); ++m) {
        int det = mg.gl2.det[size_t(m)];
        for (int c = 0; c < ncos; ++c) {
            if (mg.q.norms[size_t(c)] != det)
                continue;
            mg.index_of[size_t(m) * size_t(ncos) + size_t(c)] =
                int32_t(mg.elems.size());
            mg.elems.push_back({int32_t(m), int32_t(c)});
        }
    }
    return mg;
}

MixedSets set_Ccal(const MixedGroup& mg)
{
    const GL2Table& g = mg.gl2;
    int ell = g.ell;
    std::vector<bool> sq = square_table(ell);

    MixedSets s;
    for (int i = 0; i < mg.size(); ++i) {
        auto [m, c] = mg.elems[size_t(i)];
        Mat2 A = g.mat(m);
        bool inB = (A.c == 0);
        if (inB)
            s.Bcal.push_back(i);
        int t = g.trace[size_t(m)];
        int disc = ((t * t - 4 * g.det[size_t(m)]) % ell + ell) % ell;
        const auto& tr = mg.q.traces[size_t(c)];
        bool traceOk = std::binary_search(tr.begin(), tr.end(), i64(t));
        if (traceOk && sq[size_t(disc)]) {
            s.C.push_back(i);
            if (inB)
                s.CB.push_back(i);
        }
        // Ucal: A in B with equal eigenvalues a and u the class of the
        // scalar a (embedded diagonally).
        if (inB && A.a == A.d) {
            int scal = mg.q.coset_index(A.a, A.a);
            if (scal == c)
                s.Ucal.push_back(i);
        }
    }

    // Preconditions for collapsing C cap B by the normal subgroup.
    auto in_mask = [&](const std::vector<int32_t>& v) {
        std::vector<bool> in(size_t(mg.size()), false);
        for (int32_t i : v)
            in[size_t(i)] = true;
        return in;
    };
    std::vector<bool> inU = in_mask(s.Ucal);
    std::vector<bool> inCB = in_mask(s.CB);
    for (int32_t u : s.Ucal) {
        if (!inU[size_t(mg.inv(u))])
            throw contract_error("set_Ccal: Ucal not closed under inverse");
        for (int32_t b : s.Bcal)
            if (!inU[size_t(mg.mul(mg.mul(b, u), mg.inv(b)))])
                throw contract_error("set_Ccal: Ucal not normal in Bcal");
        for (int32_t x : s.CB)
            if (!inCB[size_t(mg.mul(u, x))])
                throw contract_error("set_Ccal: Ucal*(C cap B) != C cap B");
    }
    if (s.CB.size() % s.Ucal.size())
        throw contract_error("set_Ccal: |C cap B| not divisible by |Ucal|");
    s.Cprime = i64(s.CB.size() / s.Ucal.size());

    std::unordered_set<int32_t> labels;
    for (int32_t x : s.CB) {
        int32_t lo = INT32_MAX;
        for (int32_t u : s.Ucal)
            lo = std::min(lo, int32_t(mg.mul(x, u)));
        labels.insert(lo);
    }
    if (i64(labels.size()) != s.Cprime)
        throw contract_error("set_Ccal: coset count disagrees with |C cap B|/|Ucal|");
    return s;
}

DenseSubgroup dense_subgroup(const GL2Table& g, const std::vector<int32_t>& set)
{
    if (!is_subgroup(g, set))
        throw contract_error("dense_subgroup: set is not a subgroup");
    DenseSubgroup ds;
    ds.members = set;
    size_t n = set.size();
    if (n > 65535)
        throw contract_error("dense_subgroup: too large for a dense table");
    std::vector<int32_t> pos(size_t(g.size()), -1);
    for (size_t i = 0; i < n; ++i)
        pos[size_t(set[i])] = int32_t(i);
    ds.mul.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            int32_t p = pos[size_t(g.mul(set[i], set[j]))];
            if (p < 0)
                throw contract_error("dense_subgroup: not closed");
            ds.mul[i * n + j] = uint16_t(p);
        }
    return ds;
}

} // namespace lt

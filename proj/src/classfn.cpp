#include "lt/classfn.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

namespace lt {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 checked(i128 v, const char* who)
{
    if (v > i128(INT64_MAX) || v < -i128(INT64_MAX))
        throw contract_error(std::string(who) + ": rational overflow");
    return i64(v);
}

i128 gcd128(i128 a, i128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(i64 n, i64 d)
{
    if (d == 0)
        throw contract_error("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::operator+(const Rational& o) const
{
    i128 n = i128(num) * o.den + i128(o.num) * den;
    i128 d = i128(den) * o.den;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num = checked(n, "Rational+");
    r.den = checked(d, "Rational+");
    return r;
}

Rational Rational::operator-(const Rational& o) const
{
    Rational neg;
    neg.num = -o.num;
    neg.den = o.den;
    return *this + neg;
}

Rational Rational::operator*(const Rational& o) const
{
    i128 n = i128(num) * o.num;
    i128 d = i128(den) * o.den;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num = checked(n, "Rational*");
    r.den = checked(d, "Rational*");
    return r;
}

Rational Rational::operator/(const Rational& o) const
{
    if (o.num == 0)
        throw contract_error("Rational/: division by zero");
    Rational inv;
    inv.num = o.num < 0 ? -o.den : o.den;
    inv.den = o.num < 0 ? -o.num : o.num;
    return *this * inv;
}

CRat operator*(const Rational& s, const CRat& v)
{
    return {s * v.re, s * v.im};
}

FiniteGroupTable make_group_table(int n, const std::vector<uint16_t>& mul)
{
    if (n < 1 || n > 65535 || mul.size() != size_t(n) * size_t(n))
        throw contract_error("make_group_table: bad dimensions");
    FiniteGroupTable g;
    g.n = n;
    g.mul = mul;
    for (uint16_t v : mul)
        if (v >= n)
            throw contract_error("make_group_table: entry out of range");

    // Identity: two-sided.
    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = g.at(e, i) == i && g.at(i, e) == i;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id < 0)
        throw contract_error("make_group_table: no identity");
    g.id = uint16_t(id);

    g.inv.assign(size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        int found = -1;
        for (int j = 0; j < n; ++j)
            if (g.at(i, j) == id && g.at(j, i) == id) {
                found = j;
                break;
            }
        if (found < 0)
            throw contract_error("make_group_table: missing inverse");
        g.inv[size_t(i)] = uint16_t(found);
    }

    auto assoc = [&](int a, int b, int c) {
        return g.at(g.at(a, b), c) == g.at(a, g.at(b, c));
    };
    if (n <= 200) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!assoc(a, b, c))
                        throw contract_error("make_group_table: associativity fails");
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int k = 0; k < 2000000; ++k)
            if (!assoc(pick(rng), pick(rng), pick(rng)))
                throw contract_error("make_group_table: associativity fails");
    }
    return g;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroupTable& g)
{
    std::vector<int> cls(size_t(g.n), -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < g.n; ++i) {
        if (cls[size_t(i)] >= 0)
            continue;
        int id = int(out.size());
        std::vector<int> orbit;
        for (int t = 0; t < g.n; ++t) {
            int c = g.at(g.at(t, i), g.inv[size_t(t)]);
            if (cls[size_t(c)] < 0) {
                cls[size_t(c)] = id;
                orbit.push_back(c);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

bool is_class_function(const FiniteGroupTable& g, const ClassFunction& phi)
{
    if (phi.size() != size_t(g.n))
        return false;
    for (const auto& cls : conjugacy_classes(g))
        for (size_t i = 1; i < cls.size(); ++i)
            if (!(phi[size_t(cls[i])] == phi[size_t(cls[0])]))
                return false;
    return true;
}

ClassFunction indicator(const FiniteGroupTable& g, const std::vector<int>& set)
{
    ClassFunction phi(size_t(g.n));
    for (int i : set)
        phi[size_t(i)] = CRat(Rational(1));
    return phi;
}

namespace {

void require_subgroup(const FiniteGroupTable& g, const std::vector<int>& H,
                      const char* who)
{
    if (H.empty())
        throw contract_error(std::string(who) + ": empty subgroup");
    std::vector<bool> in(size_t(g.n), false);
    for (int i : H) {
        if (i < 0 || i >= g.n)
            throw contract_error(std::string(who) + ": index out of range");
        in[size_t(i)] = true;
    }
    for (int i : H) {
        if (!in[size_t(g.inv[size_t(i)])])
            throw contract_error(std::string(who) + ": set not closed under inverse");
        for (int j : H)
            if (!in[size_t(g.at(i, j))])
                throw contract_error(std::string(who) + ": set not closed under product");
    }
}

} // namespace

ClassFunction induce(const FiniteGroupTable& g, const std::vector<int>& H,
                     const ClassFunction& phi)
{
    require_subgroup(g, H, "induce");
    if (phi.size() != size_t(g.n))
        throw contract_error("induce: phi must be indexed by G");
    std::vector<bool> inH(size_t(g.n), false);
    for (int i : H)
        inH[size_t(i)] = true;
    Rational scale(1, i64(H.size()));
    ClassFunction out(size_t(g.n));
    for (int x = 0; x < g.n; ++x) {
        CRat sum;
        for (int t = 0; t < g.n; ++t) {
            int y = g.at(g.at(g.inv[size_t(t)], x), t);
            if (inH[size_t(y)])
                sum = sum + phi[size_t(y)];
        }
        out[size_t(x)] = scale * sum;
    }
    return out;
}

CRat inner_product(const FiniteGroupTable& g, const ClassFunction& phi,
                   const ClassFunction& psi)
{
    if (phi.size() != size_t(g.n) || psi.size() != size_t(g.n))
        throw contract_error("inner_product: size mismatch");
    CRat sum;
    for (int i = 0; i < g.n; ++i)
        sum = sum + phi[size_t(i)] * psi[size_t(i)].conj();
    return Rational(1, g.n) * sum;
}

CRat inner_product_on(const FiniteGroupTable& g, const std::vector<int>& H,
                      const ClassFunction& phi, const ClassFunction& psi)
{
    require_subgroup(g, H, "inner_product_on");
    CRat sum;
    for (int i : H)
        sum = sum + phi[size_t(i)] * psi[size_t(i)].conj();
    return Rational(1, i64(H.size())) * sum;
}

Quotient build_quotient(const FiniteGroupTable& g, const std::vector<int>& N)
{
    require_subgroup(g, N, "build_quotient");
    std::vector<bool> inN(size_t(g.n), false);
    for (int i : N)
        inN[size_t(i)] = true;
    for (int x = 0; x < g.n; ++x)
        for (int n : N)
            if (!inN[size_t(g.at(g.at(x, n), g.inv[size_t(x)]))])
                throw contract_error("build_quotient: N is not normal");

    Quotient q;
    q.proj.assign(size_t(g.n), -1);
    std::vector<int> reps;
    for (int x = 0; x < g.n; ++x) {
        if (q.proj[size_t(x)] >= 0)
            continue;
        int id = int(reps.size());
        reps.push_back(x);
        for (int n : N)
            q.proj[size_t(g.at(x, n))] = id;
    }
    int m = int(reps.size());
    std::vector<uint16_t> mul(size_t(m) * size_t(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            mul[size_t(i) * size_t(m) + size_t(j)] =
                uint16_t(q.proj[size_t(g.at(reps[size_t(i)], reps[size_t(j)]))]);
    q.table = make_group_table(m, mul);
    return q;
}

ClassFunction lift_from_quotient(const FiniteGroupTable& g, const Quotient& q,
                                 const ClassFunction& phiQ)
{
    if (q.proj.size() != size_t(g.n) || phiQ.size() != size_t(q.table.n))
        throw contract_error("lift_from_quotient: size mismatch");
    ClassFunction out(size_t(g.n));
    for (int x = 0; x < g.n; ++x)
        out[size_t(x)] = phiQ[size_t(q.proj[size_t(x)])];
    return out;
}

CRat frob_power_value(const FiniteGroupTable& g, const std::vector<int>& D,
                      const std::vector<int>& I, int sigma, int m,
                      const ClassFunction& phi)
{
    require_subgroup(g, D, "frob_power_value");
    require_subgroup(g, I, "frob_power_value");
    if (m < 1)
        throw domain_error("frob_power_value: m must be >= 1");
    std::vector<bool> inD(size_t(g.n), false);
    for (int i : D)
        inD[size_t(i)] = true;
    if (!inD[size_t(sigma)])
        throw contract_error("frob_power_value: sigma not in D");
    // sigma^m
    int sm = int(g.id);
    for (int i = 0; i < m; ++i)
        sm = g.at(sm, sigma);
    // coset sigma^m I
    std::vector<bool> target(size_t(g.n), false);
    for (int i : I)
        target[size_t(g.at(sm, i))] = true;
    CRat sum;
    for (int x : D)
        if (target[size_t(x)])
            sum = sum + phi[size_t(x)];
    return Rational(1, i64(I.size())) * sum;
}

FiniteGroupTable load_group_table(std::istream& in)
{
    int n = 0;
    if (!(in >> n) || n < 1)
        throw std::runtime_error("load_group_table: bad order");
    std::vector<uint16_t> mul(size_t(n) * size_t(n));
    for (auto& v : mul) {
        long x;
        if (!(in >> x) || x < 0 || x >= n)
            throw std::runtime_error("load_group_table: bad entry");
        v = uint16_t(x);
    }
    return make_group_table(n, mul);
}

void save_group_table(const FiniteGroupTable& g, std::ostream& out)
{
    out << g.n << "\n";
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j)
            out << (j ? " " : "") << g.at(i, j);
        out << "\n";
    }
}

FiniteGroupTable cyclic_table(int n)
{
    std::vector<uint16_t> mul(size_t(n) * size_t(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mul[size_t(i) * size_t(n) + size_t(j)] = uint16_t((i + j) % n);
    return make_group_table(n, mul);
}

namespace {

FiniteGroupTable perm_group(const std::vector<std::vector<int>>& perms)
{
    int n = int(perms.size());
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < n; ++i)
        idx[perms[size_t(i)]] = i;
    std::vector<uint16_t> mul(size_t(n) * size_t(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& p = perms[size_t(i)];
            const auto& q = perms[size_t(j)];
            std::vector<int> r(p.size());
            for (size_t k = 0; k < p.size(); ++k)
                r[k] = p[size_t(q[k])]; // (p*q)(k) = p(q(k))
            mul[size_t(i) * size_t(n) + size_t(j)] = uint16_t(idx.at(r));
        }
    return make_group_table(n, mul);
}

} // namespace

FiniteGroupTable s3_table()
{
    // Order: e, (01), (02), (12), (012), (021).
    return perm_group({{0, 1, 2},
                       {1, 0, 2},
                       {2, 1, 0},
                       {0, 2, 1},
                       {1, 2, 0},
                       {2, 0, 1}});
}

FiniteGroupTable d4_table()
{
    // Symmetries of the square as permutations of its corners.
    std::vector<std::vector<int>> perms;
    std::vector<int> r = {1, 2, 3, 0};
    std::vector<int> cur = {0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) {
        perms.push_back(cur);
        std::vector<int> next(4);
        for (int k = 0; k < 4; ++k)
            next[size_t(k)] = r[size_t(cur[size_t(k)])];
        cur = next;
    }
    std::vector<int> flip = {1, 0, 3, 2};
    for (int i = 0; i < 4; ++i) {
        std::vector<int> f(4);
        for (int k = 0; k < 4; ++k)
            f[size_t(k)] = flip[size_t(perms[size_t(i)][size_t(k)])];
        perms.push_back(f);
    }
    return perm_group(perms);
}

} // namespace lt

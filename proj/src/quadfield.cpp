#include "lt/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lt {

namespace {

void require_fundamental(i64 d, const char* who)
{
    if (!is_fundamental_discriminant(d))
        throw domain_error(std::string(who) + ": d must be a negative fundamental discriminant");
}

} // namespace

int unit_count(i64 d)
{
    if (d == -3)
        return 6;
    if (d == -4)
        return 4;
    return 2;
}

std::vector<std::pair<i64, i64>> unit_group(i64 d)
{
    // (u^2 + |d| v^2) = 4 has few solutions.
    std::vector<std::pair<i64, i64>> out;
    for (i64 v = -2; v <= 2; ++v) {
        i64 rem = 4 - (-d) * v * v;
        if (rem < 0)
            continue;
        i64 u = i64(std::sqrt(double(rem)));
        while (u * u < rem)
            ++u;
        if (u * u != rem)
            continue;
        out.push_back({u, v});
        if (u != 0)
            out.push_back({-u, v});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // Keep only elements with u = d*v mod 2 (integrality in O).
    std::vector<std::pair<i64, i64>> units;
    for (auto [u, v] : out)
        if (((u - d * v) & 1) == 0)
            units.push_back({u, v});
    return units;
}

QuadraticField class_number(i64 d)
{
    require_fundamental(d, "class_number");
    i64 h = 0;
    for (i64 a = 1; 3 * a * a <= -d; ++a) {
        i64 bstart = (d & 1) ? 1 : 0;
        for (i64 b = bstart; b <= a; b += 2) {
            i64 num = b * b - d;
            if (num % (4 * a))
                continue;
            i64 c = num / (4 * a);
            if (c < a)
                continue;
            if (b == 0 || b == a || a == c)
                h += 1;
            else
                h += 2;
        }
    }
    QuadraticField f;
    f.d = d;
    f.h = h;
    f.w = unit_count(d);
    return f;
}

QuadForm principal_form(i64 d)
{
    i64 b = (d & 1) ? 1 : 0;
    return {1, b, (b * b - d) / 4};
}

QuadForm reduce_form(QuadForm f, i64 d, int* steps)
{
    if (f.a <= 0 || i128(f.b) * f.b - i128(4) * f.a * f.c != i128(d))
        throw contract_error("reduce_form: not a positive definite form of discriminant d");
    int n = 0;
    for (;;) {
        // Normalize: b into (-a, a].
        if (f.b > f.a || f.b <= -f.a) {
            i64 two_a = 2 * f.a;
            i64 r = (f.b % two_a + two_a) % two_a; // in [0, 2a)
            if (r > f.a)
                r -= two_a; // in (-a, a]
            i64 q = (f.b - r) / two_a;
            f.c = i64(i128(f.c) - i128(q) * f.b + i128(q) * q * f.a);
            f.b = r;
            ++n;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            ++n;
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    if (steps)
        *steps = n;
    return f;
}

SplittingType splitting_type(i64 d, i64 ell)
{
    if (ell < 3 || (ell & 1) == 0 || !is_prime(u64(ell)))
        throw domain_error("splitting_type: ell must be an odd prime");
    if (d % ell == 0)
        return SplittingType::ramified;
    return kronecker_symbol(d, ell) == 1 ? SplittingType::split
                                         : SplittingType::inert;
}

IdealClass ideal_class_of_prime(i64 d, i64 p)
{
    require_fundamental(d, "ideal_class_of_prime");
    if (!is_prime(u64(p)))
        throw domain_error("ideal_class_of_prime: p must be prime");
    if (p == 2) {
        if (((d % 8) + 8) % 8 != 1)
            throw domain_error("ideal_class_of_prime: p = 2 not split");
        QuadForm f = reduce_form({2, 1, (1 - d) / 8}, d);
        QuadForm pf = principal_form(d);
        return (f.a == pf.a && f.b == pf.b && f.c == pf.c)
                   ? IdealClass::principal
                   : IdealClass::nonprincipal;
    }
    if (d % p == 0 || kronecker_symbol(d, p) != 1)
        throw domain_error("ideal_class_of_prime: p must split in Q(sqrt d)");
    u64 dm = u64(((d % p) + p) % p);
    auto r = sqrt_mod(dm, u64(p));
    if (!r)
        throw contract_error("ideal_class_of_prime: no sqrt despite split p");
    i64 b = i64(*r);
    if (((b ^ d) & 1) != 0)
        b = p - b; // fix parity so b^2 = d mod 4p
    i64 c = i64((i128(b) * b - d) / (4 * p));
    QuadForm f = reduce_form({p, b, c}, d);
    QuadForm pf = principal_form(d);
    return (f.a == pf.a && f.b == pf.b && f.c == pf.c)
               ? IdealClass::principal
               : IdealClass::nonprincipal;
}

std::optional<std::pair<i64, i64>> cornacchia(i64 d, i64 p)
{
    require_fundamental(d, "cornacchia");
    if (!is_prime(u64(p)) || p == 2)
        throw domain_error("cornacchia: p must be an odd prime");
    if (d % p == 0) {
        // Ramified: 4p = u^2 + |d| v^2 with tiny v, if solvable.
        for (i64 v = 0; (-d) * v * v <= 4 * p; ++v) {
            i64 rem = 4 * p + d * v * v;
            i64 u = i64(std::sqrt(double(rem)));
            while (u * u < rem)
                ++u;
            if (u * u == rem && ((u - d * v) & 1) == 0)
                return std::make_pair(u, v);
        }
        return std::nullopt;
    }
    if (kronecker_symbol(d, p) != 1)
        return std::nullopt; // inert
    u64 dm = u64(((d % p) + p) % p);
    auto r0 = sqrt_mod(dm, u64(p));
    if (!r0)
        return std::nullopt;
    i64 x0 = i64(*r0);
    if (((x0 ^ d) & 1) != 0)
        x0 = p - x0;
    // Now x0^2 = d mod 4p.  Half-GCD descent from (2p, x0).
    i64 a = 2 * p, b = x0;
    i64 L = i64(2.0 * std::sqrt(double(p)));
    while (i128(L + 1) * (L + 1) <= i128(4) * p)
        ++L;
    while (i128(L) * L > i128(4) * p)
        --L;
    while (b > L) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    i128 rem = i128(4) * p - i128(b) * b;
    if (rem <= 0)
        return std::nullopt;
    if (rem % (-d))
        return std::nullopt;
    i128 v2 = rem / (-d);
    i64 v = i64(std::sqrt(double(v2)));
    while (i128(v) * v < v2)
        ++v;
    while (i128(v) * v > v2)
        --v;
    if (i128(v) * v != v2)
        return std::nullopt;
    if (((b - d * v) & 1) != 0)
        return std::nullopt;
    return std::make_pair(b, v);
}

int ResidueUnitQuotient::coset_index(i64 s, i64 t) const
{
    s %= ell;
    t %= ell;
    if (s < 0)
        s += ell;
    if (t < 0)
        t += ell;
    if (s == 0 || t == 0)
        throw contract_error("coset_index: element not invertible");
    return coset_of[size_t((s - 1) * (ell - 1) + (t - 1))];
}

int ResidueUnitQuotient::coset_of_element(i64 u, i64 v) const
{
    // (u + v sqrt d)/2 -> ((u + v r)/2, (u - v r)/2) mod ell.
    i64 inv2 = (ell + 1) / 2;
    i64 s = ((u + v * root) % ell) * inv2 % ell;
    i64 t = ((u - v * root) % ell) * inv2 % ell;
    return coset_index(s, t);
}

ResidueUnitQuotient residue_unit_quotient(i64 d, i64 ell)
{
    require_fundamental(d, "residue_unit_quotient");
    if (ell < 5 || !is_prime(u64(ell)))
        throw domain_error("residue_unit_quotient: ell must be a prime >= 5");
    if (splitting_type(d, ell) != SplittingType::split)
        throw domain_error("residue_unit_quotient: ell must split in Q(sqrt d)");

    ResidueUnitQuotient q;
    q.d = d;
    q.ell = ell;
    q.w = unit_count(d);
    q.root = i64(*sqrt_mod(u64(((d % ell) + ell) % ell), u64(ell)));

    i64 inv2 = (ell + 1) / 2;
    for (auto [u, v] : unit_group(d)) {
        i64 s = (((u + v * q.root) % ell + ell) % ell) * inv2 % ell;
        i64 t = (((u - v * q.root) % ell + ell) % ell) * inv2 % ell;
        q.unit_pairs.push_back({s, t});
    }

    i64 n = ell - 1;
    q.coset_of.assign(size_t(n * n), -1);
    auto idx = [n](i64 s, i64 t) { return size_t((s - 1) * n + (t - 1)); };
    for (i64 s = 1; s < ell; ++s) {
        for (i64 t = 1; t < ell; ++t) {
            if (q.coset_of[idx(s, t)] >= 0)
                continue;
            int id = int(q.cosets.size());
            std::vector<std::pair<i64, i64>> orbit;
            for (auto [us, ut] : q.unit_pairs) {
                i64 s2 = s * us % ell, t2 = t * ut % ell;
                if (q.coset_of[idx(s2, t2)] < 0) {
                    q.coset_of[idx(s2, t2)] = id;
                    orbit.push_back({s2, t2});
                }
            }
            std::sort(orbit.begin(), orbit.end());
            q.cosets.push_back(std::move(orbit));
        }
    }

    for (const auto& orbit : q.cosets) {
        i64 nrm = orbit[0].first * orbit[0].second % ell;
        std::vector<i64> tr;
        for (auto [s, t] : orbit) {
            if (s * t % ell != nrm)
                throw contract_error("residue_unit_quotient: norm not constant on orbit");
            tr.push_back((s + t) % ell);
        }
        std::sort(tr.begin(), tr.end());
        tr.erase(std::unique(tr.begin(), tr.end()), tr.end());
        q.norms.push_back(nrm);
        q.traces.push_back(std::move(tr));
    }

    int nc = q.ncos();
    q.mul_table.assign(size_t(nc) * nc, -1);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            auto [s1, t1] = q.cosets[size_t(i)][0];
            auto [s2, t2] = q.cosets[size_t(j)][0];
            q.mul_table[size_t(i) * nc + j] = q.coset_index(s1 * s2 % ell, t1 * t2 % ell);
        }
    q.inv_of.assign(size_t(nc), -1);
    int one = q.coset_index(1, 1);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j)
            if (q.mul(i, j) == one) {
                q.inv_of[size_t(i)] = j;
                break;
            }
    return q;
}

NormTrace norm_trace_of_coset(const ResidueUnitQuotient& q, int coset)
{
    if (coset < 0 || coset >= q.ncos())
        throw contract_error("norm_trace_of_coset: coset out of range");
    return {q.norms[size_t(coset)], q.traces[size_t(coset)]};
}

i64 residue_unit_group_order(i64 d, i64 m)
{
    require_fundamental(d, "residue_unit_group_order");
    if (m < 1)
        throw domain_error("residue_unit_group_order: m must be >= 1");
    i64 order = 1;
    i64 n = m;
    for (i64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q)
            continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        i64 chi = (d % q == 0) ? 0 : kronecker_symbol(d, q);
        i64 f = (q - 1) * (q - chi);
        for (int i = 0; i < 2 * e - 2; ++i)
            f *= q;
        order *= f;
    }
    if (n > 1) {
        i64 q = n;
        i64 chi = (d % q == 0) ? 0 : kronecker_symbol(d, q);
        order *= (q - 1) * (q - chi);
    }
    return order;
}

i64 ray_class_order(i64 d, i64 m)
{
    if (m < 5)
        throw domain_error("ray_class_order: m must be >= 5");
    QuadraticField f = class_number(d);
    i64 u = residue_unit_group_order(d, m);
    if ((f.h * u) % f.w)
        throw contract_error("ray_class_order: unit image does not divide");
    return f.h * u / f.w;
}

} // namespace lt

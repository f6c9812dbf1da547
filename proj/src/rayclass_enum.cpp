// Ray class group orders by direct ideal enumeration.
//
// Work in O = Z[w], w = (d + sqrt d)/2, w^2 = d*w - (d^2-d)/4.  Integral
// ideals are kept in Hermite form [a, b + c*w] (c | a, c | b, 0 <= b < a,
// norm a*c).  Two ideals C, E coprime to m fall in the same ray class
// mod m exactly when C * conj(E) has a generator eta with
// eta = N(E) mod m*O; that test is a bounded lattice-point enumeration,
// so the whole computation is exact.  Classes are collected from the
// covering family { P * (theta) } with P running over primitive ideals
// hitting every form class and theta over residue representatives of
// (O/mO)^x.  Nothing here touches the order formula in quadfield.cpp.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "lt/quadfield.hpp"

namespace lt {

namespace {

struct Ctx {
    i64 d;  // fundamental discriminant
    i64 nm; // N(w) = (d^2 - d)/4
};

struct Vec {
    i64 x = 0;
    i64 y = 0; // x + y*w
};

struct Ideal {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1; // [a, b + c*w]
    i64 norm() const { return a * c; }
    bool operator==(const Ideal& o) const = default;
};

i64 ext_gcd(i64 a, i64 b, i64& s, i64& t)
{
    if (b == 0) {
        s = (a >= 0) ? 1 : -1;
        t = 0;
        return std::llabs(a);
    }
    i64 s1, t1;
    i64 g = ext_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

Ideal hnf_from_gens(const std::vector<Vec>& gens)
{
    // Build basis ((a,0),(b,c)) of the lattice spanned by gens.
    Vec u{0, 0};
    i64 a0 = 0;
    for (const Vec& g : gens) {
        if (g.y == 0) {
            a0 = std::gcd(a0, std::llabs(g.x));
            continue;
        }
        if (u.y == 0) {
            u = g;
            continue;
        }
        i64 s, t;
        i64 r = ext_gcd(u.y, g.y, s, t);
        Vec nu{s * u.x + t * g.x, r};
        // discarded combination has y = 0
        i64 k1 = g.y / r, k2 = u.y / r;
        i64 vx = k1 * u.x - k2 * g.x;
        a0 = std::gcd(a0, std::llabs(vx));
        u = nu;
    }
    if (u.y < 0) {
        u.x = -u.x;
        u.y = -u.y;
    }
    if (a0 == 0 || u.y == 0)
        throw contract_error("hnf_from_gens: lattice not of full rank");
    Ideal J;
    J.a = a0;
    J.c = u.y;
    J.b = ((u.x % a0) + a0) % a0;
    if (J.a % J.c || J.b % J.c)
        throw contract_error("hnf_from_gens: module is not an ideal");
    return J;
}

Ideal mul(const Ctx& k, const Ideal& I, const Ideal& J)
{
    Vec p1{I.a * J.a, 0};
    Vec p2{I.a * J.b, I.a * J.c};
    Vec p3{J.a * I.b, J.a * I.c};
    Vec p4{I.b * J.b - I.c * J.c * k.nm, I.b * J.c + J.b * I.c + I.c * J.c * k.d};
    return hnf_from_gens({p1, p2, p3, p4});
}

Ideal conj(const Ctx& k, const Ideal& I)
{
    return hnf_from_gens({{I.a, 0}, {I.b + I.c * k.d, -I.c}});
}

Ideal principal(const Ctx& k, i64 x, i64 y)
{
    return hnf_from_gens({{x, y}, {-y * k.nm, x + y * k.d}});
}

i64 elem_norm(const Ctx& k, i64 x, i64 y)
{
    return x * x + k.d * x * y + k.nm * y * y;
}

// Reduced-form label of the ideal class of I (primitive part).
std::tuple<i64, i64, i64> form_label(const Ctx& k, const Ideal& I)
{
    i64 a = I.a / I.c, b = I.b / I.c;
    QuadForm f{a, 2 * b + k.d, (b * b + b * k.d + k.nm) / a};
    f = reduce_form(f, k.d);
    return {f.a, f.b, f.c};
}

// Does C * conj(E) have a generator eta = N(E) mod m*O?
bool ray_equal(const Ctx& k, const Ideal& C, const Ideal& E, i64 m)
{
    Ideal J = mul(k, C, conj(k, E));
    i64 target = C.norm() * E.norm();
    if (J.norm() != target)
        throw contract_error("ray_equal: norm mismatch");
    i64 ne = E.norm();
    // Lattice points x + y*w of J with norm target:
    // 4*target = (2x + dy)^2 + |d| y^2, y a multiple of J.c,
    // x = j*J.b mod J.a where y = j*J.c.
    i64 ymax = i64(std::sqrt(4.0 * double(target) / double(-k.d))) + 2;
    for (i64 y = -ymax; y <= ymax; ++y) {
        if (y % J.c)
            continue;
        i128 s2 = i128(4) * target - i128(-k.d) * y * y;
        if (s2 < 0)
            continue;
        i64 s = i64(std::sqrt(double(s2)));
        while (i128(s) * s < s2)
            ++s;
        while (s > 0 && i128(s) * s > s2)
            --s;
        if (i128(s) * s != s2)
            continue;
        for (int sign = 0; sign < 2; ++sign) {
            i64 ss = sign ? -s : s;
            if (sign && s == 0)
                continue;
            i64 num = ss - k.d * y;
            if (num & 1)
                continue;
            i64 x = num / 2;
            if (elem_norm(k, x, y) != target)
                continue;
            i64 j = y / J.c;
            if (((x - j * J.b) % J.a + J.a) % J.a)
                continue; // not in J
            if (((x - ne) % m + m) % m == 0 && y % m == 0)
                return true;
        }
    }
    return false;
}

} // namespace

i64 ray_class_order_enumerated(i64 d, i64 m)
{
    if (!is_fundamental_discriminant(d) || d < -200)
        throw domain_error("ray_class_order_enumerated: need fundamental d in [-200, -3]");
    if (m < 2 || m > 50)
        throw domain_error("ray_class_order_enumerated: m out of the enumeration range");
    Ctx k{d, (d * d - d) / 4};
    i64 h = class_number(d).h;

    // One primitive ideal coprime to m for every form class.
    std::map<std::tuple<i64, i64, i64>, Ideal> class_reps;
    for (i64 g = 1; g <= 1000 && i64(class_reps.size()) < h; ++g) {
        if (std::gcd(g, m) != 1)
            continue;
        for (i64 hh = 0; hh < g; ++hh) {
            if (elem_norm(k, hh, 1) % g)
                continue;
            Ideal P{g, hh, 1};
            auto lbl = form_label(k, P);
            class_reps.emplace(lbl, P);
        }
    }
    if (i64(class_reps.size()) != h)
        throw contract_error("ray_class_order_enumerated: form classes not covered");

    // Minimal-norm representatives of the invertible residues mod m*O.
    std::vector<std::pair<i64, i64>> thetas;
    for (i64 x = 0; x < m; ++x) {
        for (i64 y = 0; y < m; ++y) {
            i64 n = ((elem_norm(k, x, y) % m) + m) % m;
            if (std::gcd(n, m) != 1)
                continue;
            i64 bx = x, by = y, bn = elem_norm(k, x, y);
            for (i64 xx = x - 3 * m; xx <= x + 3 * m; xx += m)
                for (i64 yy = y - 3 * m; yy <= y + 3 * m; yy += m) {
                    if (xx == 0 && yy == 0)
                        continue;
                    i64 nn = elem_norm(k, xx, yy);
                    if (nn < bn) {
                        bn = nn;
                        bx = xx;
                        by = yy;
                    }
                }
            thetas.push_back({bx, by});
        }
    }

    // Candidate ideals P * (theta) cover every ray class; dedup with the
    // exact pairwise test, bucketed by (form class, norm mod m).
    struct Cand {
        Ideal I;
        std::tuple<i64, i64, i64> lbl;
        i64 nmod;
    };
    std::vector<Cand> reps;
    for (const auto& [lbl, P] : class_reps) {
        for (auto [tx, ty] : thetas) {
            Ideal C = mul(k, P, principal(k, tx, ty));
            Cand cand{C, form_label(k, C), ((C.norm() % m) + m) % m};
            bool found = false;
            for (const Cand& r : reps) {
                if (r.lbl != cand.lbl || r.nmod != cand.nmod)
                    continue;
                if (ray_equal(k, cand.I, r.I, m)) {
                    found = true;
                    break;
                }
            }
            if (!found)
                reps.push_back(cand);
        }
    }
    return i64(reps.size());
}

} // namespace lt

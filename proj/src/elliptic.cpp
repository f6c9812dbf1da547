#include "lt/elliptic.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <thread>

namespace lt {

EllipticCurve make_curve(i64 A, i64 B)
{
    if (std::llabs(A) > 2000000 || std::llabs(B) > 2000000)
        throw domain_error("make_curve: |A|, |B| must be <= 2e6");
    i128 disc = i128(-16) * (i128(4) * A * A * A + i128(27) * B * B);
    if (disc == 0)
        throw domain_error("make_curve: singular model (discriminant 0)");
    EllipticCurve E;
    E.A = A;
    E.B = B;
    E.disc = i64(disc);
    return E;
}

bool good_reduction(const EllipticCurve& E, i64 p)
{
    return E.disc % p != 0;
}

i64 ap(const EllipticCurve& E, i64 p)
{
    if (p == 2)
        throw domain_error("ap: p = 2 not supported (short model)");
    if (!good_reduction(E, p))
        throw domain_error("ap: bad reduction at p");

    // Quadratic character table for F_p: chi[t] = legendre(t, p).
    std::vector<int8_t> chi(size_t(p), -1);
    chi[0] = 0;
    i64 sq = 1;
    for (i64 y = 1; y <= (p - 1) / 2; ++y) {
        chi[size_t(sq)] = 1;
        sq += 2 * y + 1; // (y+1)^2 - y^2
        if (sq >= p)
            sq -= p;
        if (sq >= p)
            sq -= p;
    }

    i64 Am = ((E.A % p) + p) % p;
    i64 Bm = ((E.B % p) + p) % p;
    i64 sum = 0;
    if (p < 8) {
        for (i64 x = 0; x < p; ++x)
            sum += chi[size_t((x * x % p * x + Am * x + Bm) % p)];
    } else {
        // f(x) = x^3 + Ax + B by forward differences:
        // delta f = 3x^2+3x+1+A, delta^2 f = 6x+6, delta^3 f = 6.
        i64 f = Bm;
        i64 d1 = (1 + Am) % p;
        i64 d2 = 6 % p;
        for (i64 x = 0; x < p; ++x) {
            sum += chi[size_t(f)];
            f += d1;
            if (f >= p)
                f -= p;
            d1 += d2;
            if (d1 >= p)
                d1 -= p;
            d2 += 6;
            if (d2 >= p)
                d2 -= p;
        }
    }
    i64 a = -sum;
    if (i128(a) * a >= i128(4) * p)
        throw contract_error("ap: Hasse bound violated (internal bug)");
    return a;
}

ReductionType reduction_type(const ApRecord& rec)
{
    return rec.a % rec.p == 0 ? ReductionType::supersingular
                              : ReductionType::ordinary;
}

namespace {

ApRecord make_record(const EllipticCurve& E, i64 p)
{
    ApRecord r;
    r.p = p;
    r.a = ap(E, p);
    r.ordinary = (r.a % p) != 0;
    r.D = r.a * r.a - 4 * p;
    r.d = fundamental_discriminant(r.D);
    return r;
}

} // namespace

ApTable build_ap_table(const EllipticCurve& E, i64 x, int shards)
{
    if (x < 3)
        throw domain_error("build_ap_table: x must be >= 3");
    ApTable table;
    table.curve = E;
    table.x = x;

    std::vector<i64> ps;
    for_each_prime(x, [&](i64 p) {
        if (p != 2 && good_reduction(E, p))
            ps.push_back(p);
    });
    table.records.resize(ps.size());

    if (shards <= 0)
        shards = int(std::thread::hardware_concurrency());
    if (shards < 1)
        shards = 1;
    if (size_t(shards) > ps.size())
        shards = int(ps.size() ? ps.size() : 1);

    if (shards == 1) {
        for (size_t i = 0; i < ps.size(); ++i)
            table.records[i] = make_record(E, ps[i]);
        return table;
    }

    // Contiguous chunks, each thread writing its own slots; the merged
    // table is ascending in p regardless of the shard count.
    std::vector<std::thread> workers;
    size_t chunk = (ps.size() + size_t(shards) - 1) / size_t(shards);
    for (int s = 0; s < shards; ++s) {
        size_t lo = size_t(s) * chunk;
        size_t hi = std::min(lo + chunk, ps.size());
        if (lo >= hi)
            break;
        workers.emplace_back([&, lo, hi]() {
            for (size_t i = lo; i < hi; ++i)
                table.records[i] = make_record(E, ps[i]);
        });
    }
    for (auto& w : workers)
        w.join();
    return table;
}

i64 trace_of_power(i64 a, i64 p, int m)
{
    if (m < 1)
        throw domain_error("trace_of_power: m must be >= 1");
    i128 s_prev = 2; // tr(M^0)
    i128 s = a;      // tr(M^1)
    for (int i = 2; i <= m; ++i) {
        i128 next = i128(a) * s - i128(p) * s_prev;
        s_prev = s;
        s = next;
        if (s > i128(INT64_MAX) || s < -i128(INT64_MAX))
            throw domain_error("trace_of_power: result exceeds 64 bits");
    }
    return i64(s);
}

void write_ap_csv(const ApTable& table, const std::string& path)
{
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw std::runtime_error("write_ap_csv: cannot open " + path + ": "
                                 + std::strerror(errno));
    std::fputs("p,a,ordinary,D,d\n", f);
    for (const ApRecord& r : table.records)
        std::fprintf(f, "%lld,%lld,%d,%lld,%lld\n", (long long)r.p,
                     (long long)r.a, r.ordinary ? 1 : 0, (long long)r.D,
                     (long long)r.d);
    if (std::fclose(f) != 0)
        throw std::runtime_error("write_ap_csv: write failed for " + path);
}

std::vector<ApRecord> read_ap_csv(const std::string& path)
{
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f)
        throw std::runtime_error("read_ap_csv: cannot open " + path + ": "
                                 + std::strerror(errno));
    char line[256];
    if (!std::fgets(line, sizeof line, f)
        || std::strcmp(line, "p,a,ordinary,D,d\n") != 0) {
        std::fclose(f);
        throw std::runtime_error("read_ap_csv: bad header in " + path);
    }
    std::vector<ApRecord> out;
    i64 prev_p = 0;
    while (std::fgets(line, sizeof line, f)) {
        long long p, a, D, d;
        int ord;
        if (std::sscanf(line, "%lld,%lld,%d,%lld,%lld", &p, &a, &ord, &D, &d)
            != 5) {
            std::fclose(f);
            throw std::runtime_error("read_ap_csv: malformed row in " + path);
        }
        if (p <= prev_p) {
            std::fclose(f);
            throw std::runtime_error("read_ap_csv: rows not ascending in p");
        }
        prev_p = p;
        out.push_back({p, a, ord != 0, D, d});
    }
    std::fclose(f);
    return out;
}

} // namespace lt

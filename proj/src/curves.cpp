#include "paraspin/curves.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "paraspin/errors.hpp"
#include "paraspin/primes.hpp"
#include "paraspin/rational.hpp"

namespace paraspin {

namespace {

using u64 = std::uint64_t;

// ---------- polynomial helpers over Q (validation only) ----------

int degree_of(const std::vector<Rational>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!p[static_cast<std::size_t>(i)].is_zero()) return i;
    return -1;
}

std::vector<Rational> derivative_q(const std::vector<Rational>& p) {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<i64>(i)));
    return d;
}

// Euclidean remainder over Q; inputs are normalized in-place.
std::vector<Rational> poly_mod_q(std::vector<Rational> a, const std::vector<Rational>& b) {
    int db = degree_of(b);
    if (db < 0) throw InvalidInputError("polynomial division by zero");
    Rational lead = b[static_cast<std::size_t>(db)];
    int da = degree_of(a);
    while (da >= db) {
        Rational c = a[static_cast<std::size_t>(da)] / lead;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] -= c * b[static_cast<std::size_t>(i)];
        a[static_cast<std::size_t>(da)] = Rational(0); // kill rounding-free residue exactly
        da = degree_of(a);
    }
    a.resize(static_cast<std::size_t>(da + 1 > 0 ? da + 1 : 0));
    return a;
}

bool gcd_is_constant_q(std::vector<Rational> a, std::vector<Rational> b) {
    if (degree_of(b) > degree_of(a)) std::swap(a, b);
    while (true) {
        int db = degree_of(b);
        if (db < 0) return degree_of(a) <= 0;
        if (db == 0) return true;
        auto r = poly_mod_q(a, b);
        a = std::move(b);
        b = std::move(r);
    }
}

// ---------- arithmetic mod odd prime q ----------

inline u64 mulmod(u64 a, u64 b, u64 q) { return a * b % q; } // q < 2^31 throughout

u64 eval_mod(const std::vector<u64>& coeffs, u64 x, u64 q) {
    u64 acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = (mulmod(acc, x, q) + coeffs[i]) % q;
    return acc;
}

std::vector<u64> reduce_mod(const std::vector<i64>& poly, i64 q) {
    std::vector<u64> out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        i64 c = poly[i] % q;
        if (c < 0) c += q;
        out[i] = static_cast<u64>(c);
    }
    return out;
}

int degree_mod(const std::vector<u64>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

u64 powmod(u64 b, u64 e, u64 q) {
    u64 r = 1 % q;
    while (e) {
        if (e & 1) r = mulmod(r, b, q);
        b = mulmod(b, b, q);
        e >>= 1;
    }
    return r;
}

// Legendre character table: chi[t] = 0, +1, -1 for t in [0, q).
std::vector<signed char> legendre_table(i64 q) {
    std::vector<signed char> chi(static_cast<std::size_t>(q), -1);
    chi[0] = 0;
    for (u64 x = 1; x < static_cast<u64>(q); ++x) chi[mulmod(x, x, static_cast<u64>(q))] = 1;
    return chi;
}

std::vector<u64> poly_mod_fq(std::vector<u64> a, const std::vector<u64>& b, u64 q) {
    int db = degree_mod(b);
    u64 inv_lead = powmod(b[static_cast<std::size_t>(db)], q - 2, q);
    int da = degree_mod(a);
    while (da >= db) {
        u64 c = mulmod(a[static_cast<std::size_t>(da)], inv_lead, q);
        for (int i = 0; i <= db; ++i) {
            u64& slot = a[static_cast<std::size_t>(da - db + i)];
            slot = (slot + q - mulmod(c, b[static_cast<std::size_t>(i)], q)) % q;
        }
        da = degree_mod(a);
    }
    a.resize(static_cast<std::size_t>(da + 1 > 0 ? da + 1 : 0));
    return a;
}

bool gcd_is_constant_fq(std::vector<u64> a, std::vector<u64> b, u64 q) {
    if (degree_mod(b) > degree_mod(a)) std::swap(a, b);
    while (true) {
        int db = degree_mod(b);
        if (db < 0) return degree_mod(a) <= 0;
        if (db == 0) return true;
        auto r = poly_mod_fq(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
}

// ---------- GF(2^k), k <= 6, bit-polynomial representation ----------

struct Gf2k {
    int k;
    unsigned modulus; // bits of the reducing polynomial

    explicit Gf2k(int ext) : k(ext) {
        static constexpr std::array<unsigned, 7> irred = {
            0u, 0b10u, 0b111u, 0b1011u, 0b10011u, 0b100101u, 0b1000011u};
        if (ext < 1 || ext > 6) throw InvalidInputError("GF(2^k) only supported for k <= 6");
        modulus = irred[static_cast<std::size_t>(ext)];
    }

    unsigned size() const { return 1u << k; }

    unsigned mul(unsigned a, unsigned b) const {
        unsigned acc = 0;
        while (b) {
            if (b & 1u) acc ^= a;
            b >>= 1;
            a <<= 1;
            if (a & (1u << k)) a ^= modulus;
        }
        return acc;
    }

    unsigned pow(unsigned a, unsigned e) const {
        unsigned r = 1;
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    unsigned inv(unsigned a) const { return pow(a, size() - 2); }

    // Trace to GF(2): a + a^2 + a^4 + ... + a^(2^(k-1)).
    unsigned trace(unsigned a) const {
        unsigned t = 0, s = a;
        for (int i = 0; i < k; ++i) {
            t ^= s;
            s = mul(s, s);
        }
        return t;
    }

    unsigned eval(const std::vector<unsigned>& coeffs, unsigned x) const {
        unsigned acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = mul(acc, x) ^ coeffs[i];
        return acc;
    }
};

std::vector<unsigned> reduce_mod2(const std::vector<i64>& poly) {
    std::vector<unsigned> out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
        out[i] = static_cast<unsigned>(((poly[i] % 2) + 2) % 2);
    return out;
}

i64 coeff_at(const std::vector<i64>& p, std::size_t i) { return i < p.size() ? p[i] : 0; }

// Solutions y in GF(2^k) of y^2 + a*y = b: one when a = 0 (squaring is a
// bijection), two when Tr(b / a^2) = 0, none otherwise.
unsigned artin_schreier_solutions(const Gf2k& field, unsigned a, unsigned b) {
    if (a == 0) return 1;
    unsigned u = field.mul(b, field.inv(field.mul(a, a)));
    return field.trace(u) == 0 ? 2u : 0u;
}

i64 count_char2(const CurveSpec& curve, int ext) {
    Gf2k field(ext);
    auto fb = reduce_mod2(curve.f);
    auto hb = reduce_mod2(curve.h);
    i64 total = 0;
    for (unsigned x = 0; x < field.size(); ++x) {
        unsigned a = field.eval(hb, x);
        unsigned b = field.eval(fb, x);
        total += artin_schreier_solutions(field, a, b);
    }
    unsigned h3 = static_cast<unsigned>(((coeff_at(curve.h, 3) % 2) + 2) % 2);
    unsigned f6 = static_cast<unsigned>(((coeff_at(curve.f, 6) % 2) + 2) % 2);
    total += artin_schreier_solutions(field, h3, f6);
    return total;
}

i64 count_odd_ext1(const std::vector<i64>& g, i64 q) {
    auto gm = reduce_mod(g, q);
    auto chi = legendre_table(q);
    i64 total = q; // one y per x on average: sum of (1 + chi(g(x)))
    for (u64 x = 0; x < static_cast<u64>(q); ++x) {
        u64 acc = 0;
        for (std::size_t i = gm.size(); i-- > 0;) acc = (acc * x + gm[i]) % static_cast<u64>(q);
        total += chi[acc];
    }
    int deg_z = static_cast<int>(g.size()) - 1;
    if (deg_z == 5) total += 1;
    else total += 1 + chi[gm[6]];
    return total;
}

i64 count_odd_ext2(const std::vector<i64>& g, i64 q) {
    auto gm = reduce_mod(g, q);
    auto chi = legendre_table(q);
    u64 uq = static_cast<u64>(q);
    // Least quadratic non-residue d: F_{q^2} = F_q(sqrt(d)).
    u64 d = 2;
    while (chi[d] != -1) ++d;

    i64 total = static_cast<i64>(uq) * static_cast<i64>(uq);
    for (u64 xa = 0; xa < uq; ++xa) {
        for (u64 xb = 0; xb < uq; ++xb) {
            // Horner in F_{q^2}: w = (wa + wb sqrt(d)) * x + c.
            u64 wa = 0, wb = 0;
            for (std::size_t i = gm.size(); i-- > 0;) {
                u64 na = (mulmod(wa, xa, uq) + mulmod(mulmod(wb, xb, uq), d, uq) + gm[i]) % uq;
                u64 nb = (mulmod(wa, xb, uq) + mulmod(wb, xa, uq)) % uq;
                wa = na;
                wb = nb;
            }
            // chi over F_{q^2} factors through the norm wa^2 - d*wb^2.
            u64 norm = (mulmod(wa, wa, uq) + uq - mulmod(d, mulmod(wb, wb, uq), uq)) % uq;
            total += chi[norm];
        }
    }
    int deg_z = static_cast<int>(g.size()) - 1;
    if (deg_z == 5) total += 1;
    else {
        u64 lead = gm[6];
        u64 norm = mulmod(lead, lead, uq);
        total += 1 + chi[norm];
    }
    return total;
}

bool good_at_2(const CurveSpec& curve) {
    auto fb = reduce_mod2(curve.f);
    auto hb = reduce_mod2(curve.h);
    unsigned h3 = static_cast<unsigned>(((coeff_at(curve.h, 3) % 2) + 2) % 2);
    unsigned h2 = static_cast<unsigned>(((coeff_at(curve.h, 2) % 2) + 2) % 2);
    unsigned f5 = static_cast<unsigned>(((coeff_at(curve.f, 5) % 2) + 2) % 2);
    unsigned f6 = static_cast<unsigned>(((coeff_at(curve.f, 6) % 2) + 2) % 2);

    // Chart at infinity (u = 1/x): singular exactly when h3 = 0 and
    // h2^2 f6 = f5^2 in F_2.
    if (h3 == 0 && ((h2 & f6) == f5)) return false;

    // Affine chart: a singular point needs h(x) = 0 and f'(x)^2 = h'(x)^2 f(x).
    // Roots of h mod 2 have degree <= 3, so F_64 (which contains F_2, F_4 and
    // F_8) sees them all.  If h vanishes identically mod 2 every x qualifies
    // and the condition degenerates to f' mod 2 having a root, i.e. f' not a
    // nonzero constant.
    bool h_zero = true;
    for (unsigned c : hb)
        if (c) { h_zero = false; break; }
    if (h_zero) {
        unsigned f1 = static_cast<unsigned>(((coeff_at(curve.f, 1) % 2) + 2) % 2);
        unsigned f3 = static_cast<unsigned>(((coeff_at(curve.f, 3) % 2) + 2) % 2);
        return f1 == 1 && f3 == 0 && f5 == 0;
    }

    Gf2k field(6);
    std::vector<unsigned> hd, fd; // derivatives mod 2
    for (std::size_t i = 1; i < hb.size(); ++i) hd.push_back(i % 2 ? hb[i] : 0);
    for (std::size_t i = 1; i < fb.size(); ++i) fd.push_back(i % 2 ? fb[i] : 0);
    for (unsigned x = 0; x < field.size(); ++x) {
        if (field.eval(hb, x) != 0) continue;
        unsigned lhs = field.eval(fd, x);
        lhs = field.mul(lhs, lhs);
        unsigned hp = field.eval(hd, x);
        unsigned rhs = field.mul(field.mul(hp, hp), field.eval(fb, x));
        if (lhs == rhs) return false;
    }
    return true;
}

} // namespace

std::vector<i64> branch_polynomial(const CurveSpec& curve) {
    std::vector<i64> g(7, 0);
    for (std::size_t i = 0; i < curve.f.size(); ++i)
        g[i] = checked_add64(g[i], checked_mul64(4, curve.f[i]));
    for (std::size_t i = 0; i < curve.h.size(); ++i)
        for (std::size_t j = 0; j < curve.h.size(); ++j)
            g[i + j] = checked_add64(g[i + j], checked_mul64(curve.h[i], curve.h[j]));
    while (g.size() > 1 && g.back() == 0) g.pop_back();
    return g;
}

void CurveSpec::validate() const {
    if (!is_prime_i64(level)) throw InvalidInputError("curve level must be prime");
    if (al_sign != 1 && al_sign != -1) throw InvalidInputError("functional-equation sign must be +1 or -1");
    if (f.size() > 7) throw InvalidInputError("f has degree > 6");
    if (h.size() > 4) throw InvalidInputError("h has degree > 3");
    auto g = branch_polynomial(*this);
    int deg = static_cast<int>(g.size()) - 1;
    if (deg != 5 && deg != 6)
        throw InvalidInputError("4f + h^2 must have degree 5 or 6 for a genus-2 model");
    std::vector<Rational> gq, gq_d;
    for (i64 c : g) gq.emplace_back(c);
    gq_d = derivative_q(gq);
    if (!gcd_is_constant_q(gq, gq_d))
        throw InvalidInputError("4f + h^2 has a repeated root; the model is singular over Q");
}

i64 count_points(const CurveSpec& curve, i64 q, int ext) {
    if (ext != 1 && ext != 2) throw InvalidInputError("count_points: ext must be 1 or 2");
    if (!is_prime_i64(q)) throw InvalidInputError("count_points: q must be prime");
    if (!is_good_at(curve, q))
        throw InvalidInputError("count_points: bad reduction at q=" + std::to_string(q) +
                                " for curve " + curve.key);
    if (q == 2) return count_char2(curve, ext);
    auto g = branch_polynomial(curve);
    return ext == 1 ? count_odd_ext1(g, q) : count_odd_ext2(g, q);
}

std::pair<i64, i64> hecke_from_counts(const PointCounts& pc) {
    if (pc.n2 < 0) throw InvalidInputError("hecke_from_counts: N2 missing");
    i64 q = pc.q;
    i64 lambda_q = 1 + q - pc.n1;
    i64 s = checked_mul64(pc.n1, pc.n1) - pc.n2;
    if (s % 2 != 0)
        throw InternalCheckError("N1^2 - N2 is odd at q=" + std::to_string(q) +
                                 "; point counts are inconsistent");
    i64 a_q2 = 1 + q + checked_mul64(q, q) - checked_mul64(1 + q, pc.n1) + s / 2;
    return {lambda_q, a_q2 - 1};
}

bool is_good_at(const CurveSpec& curve, i64 q) {
    if (!is_prime_i64(q)) throw InvalidInputError("is_good_at: q must be prime");
    if (q == 2) return good_at_2(curve);
    auto g = branch_polynomial(curve);
    auto gm = reduce_mod(g, q);
    if (degree_mod(gm) < 5) return false;
    std::vector<u64> gd;
    for (std::size_t i = 1; i < gm.size(); ++i)
        gd.push_back(mulmod(gm[i], static_cast<u64>(i % static_cast<std::size_t>(q)),
                            static_cast<u64>(q)));
    return gcd_is_constant_fq(gm, gd, static_cast<u64>(q));
}

std::optional<CurveSpec> two_adic_repair(const CurveSpec& curve) {
    // Substitution y = 2Y + v(x) needs every h coefficient even; it yields
    //   Y^2 + (v + h/2) Y = (f - v^2 - h v) / 4
    // which is integral iff f - v^2 - h v == 0 mod 4 coefficientwise.
    for (i64 c : curve.h)
        if (((c % 2) + 2) % 2 != 0) return std::nullopt;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<i64> v;
        for (int i = 0; i < 4; ++i) v.push_back((mask >> i) & 1);
        while (v.size() > 1 && v.back() == 0) v.pop_back();
        if (v.size() == 1 && v[0] == 0) v.clear();

        std::vector<i64> num(7, 0);
        for (std::size_t i = 0; i < curve.f.size(); ++i) num[i] += curve.f[i];
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) num[i + j] -= v[i] * v[j];
        for (std::size_t i = 0; i < curve.h.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) num[i + j] -= curve.h[i] * v[j];

        bool integral = true;
        for (i64 c : num)
            if (((c % 4) + 4) % 4 != 0) { integral = false; break; }
        if (!integral) continue;

        CurveSpec repaired = curve;
        repaired.f.assign(num.begin(), num.end());
        for (i64& c : repaired.f) c /= 4;
        while (repaired.f.size() > 1 && repaired.f.back() == 0) repaired.f.pop_back();
        repaired.h.assign(4, 0);
        for (std::size_t i = 0; i < v.size(); ++i) repaired.h[i] = v[i];
        for (std::size_t i = 0; i < curve.h.size(); ++i) repaired.h[i] += curve.h[i] / 2;
        while (repaired.h.size() > 1 && repaired.h.back() == 0) repaired.h.pop_back();
        if (repaired.h.size() == 1 && repaired.h[0] == 0) repaired.h.clear();

        if (good_at_2(repaired)) return repaired;
    }
    return std::nullopt;
}

void save_counts_csv(const std::string& path, const std::vector<PointCounts>& counts) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open count cache for writing: " + path);
    out << "q,N1,N2\n";
    for (const auto& pc : counts) out << pc.q << "," << pc.n1 << "," << pc.n2 << "\n";
}

std::vector<PointCounts> load_counts_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open count cache: " + path);
    std::vector<PointCounts> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("q,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream ss(line);
        std::string field;
        PointCounts pc;
        if (!std::getline(ss, field, ',')) throw InvalidInputError("bad count cache line: " + line);
        pc.q = std::stoll(field);
        if (!std::getline(ss, field, ',')) throw InvalidInputError("bad count cache line: " + line);
        pc.n1 = std::stoll(field);
        if (!std::getline(ss, field, ',')) throw InvalidInputError("bad count cache line: " + line);
        pc.n2 = std::stoll(field);
        out.push_back(pc);
    }
    return out;
}

} // namespace paraspin

#include "paraspin/quadforms.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "paraspin/errors.hpp"
#include "paraspin/lseries.hpp"
#include "paraspin/primes.hpp"

namespace paraspin {

namespace {

void require_negative_fundamental(i64 d, const char* who) {
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw InvalidInputError(std::string(who) + ": " + std::to_string(d) +
                                " is not a negative fundamental discriminant");
}

void require_level(i64 d, i64 p, const char* who) {
    require_negative_fundamental(d, who);
    if (!is_prime_i64(p)) throw InvalidInputError(std::string(who) + ": level must be prime");
    if (d % p == 0)
        throw InvalidInputError(std::string(who) +
                                ": discriminants divisible by the level are outside the "
                                "verified range");
}

} // namespace

std::vector<std::array<i64, 3>> reduced_forms(i64 d) {
    require_negative_fundamental(d, "reduced_forms");
    std::vector<std::array<i64, 3>> out;
    i64 absd = -d;
    for (i64 b = (absd % 2 == 0) ? 0 : 1; checked_mul64(b, b) <= absd / 3; b += 2) {
        i64 n4 = b * b + absd; // 4ac
        for (i64 a = std::max<i64>(b, 1); 4 * a * a <= n4; ++a) {
            if (n4 % (4 * a) != 0) continue;
            i64 c = n4 / (4 * a);
            // reduced: |b| <= a <= c with b >= 0 when |b| = a or a = c
            out.push_back({a, b, c});
            if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClassData class_data(i64 d) {
    require_negative_fundamental(d, "class_data");
    ClassData cd;
    cd.h = static_cast<i64>(reduced_forms(d).size());
    cd.w = (d == -3) ? 6 : (d == -4) ? 4 : 2;
    return cd;
}

i64 sqrt_class_count(i64 d, i64 p) {
    require_negative_fundamental(d, "sqrt_class_count");
    if (!is_prime_i64(p)) throw InvalidInputError("sqrt_class_count: level must be prime");
    i64 s = 0;
    for (i64 beta = 0; beta < 2 * p; ++beta) {
        i64 r = (beta * beta - d) % (4 * p);
        if (r < 0) r += 4 * p;
        if (r == 0) ++s;
    }
    return s;
}

bool solvable(i64 d, i64 p) { return sqrt_class_count(d, p) > 0; }

std::vector<std::pair<i64, i64>> represent(i64 a, i64 b, i64 c, i64 value) {
    if (a <= 0 || b * b - 4 * a * c >= 0)
        throw InvalidInputError("represent: form must be positive definite");
    std::vector<std::pair<i64, i64>> out;
    if (value < 0) return out;
    i64 absd = 4 * a * c - b * b;
    // For fixed y the minimum over real x is |D| y^2 / (4a) <= value.
    i64 ybound = isqrt64((4 * checked_mul64(a, value)) / absd);
    for (i64 y = -ybound; y <= ybound; ++y) {
        // a x^2 + (b y) x + (c y^2 - value) = 0
        i64 discx = 4 * checked_mul64(a, value) - checked_mul64(absd, checked_mul64(y, y));
        if (discx < 0) continue;
        i64 r = isqrt64(discx);
        if (r * r != discx) continue;
        i64 nb = -b * y;
        for (int pm = 0; pm < (r == 0 ? 1 : 2); ++pm) {
            i64 num = pm == 0 ? nb - r : nb + r;
            if (num % (2 * a) != 0) continue;
            out.emplace_back(num / (2 * a), y);
        }
    }
    return out;
}

std::optional<Mat2> is_equivalent(const BinaryForm& t1, const BinaryForm& t2) {
    if (t1.level != t2.level) throw InvalidInputError("is_equivalent: level mismatch");
    if (t1.disc() != t2.disc()) return std::nullopt;
    i64 p = t1.level;
    i64 a1 = checked_mul64(p, t1.a0), b1 = t1.b, c1 = t1.c;
    i64 a2 = checked_mul64(p, t2.a0), c2 = t2.c;

    // First column (m00, m10): T1[col] = a2, lower entry divisible by p.
    auto cols1 = represent(a1, b1, c1, a2);
    auto cols2 = represent(a1, b1, c1, c2);
    for (const auto& [al, ga] : cols1) {
        if (ga % p != 0) continue;
        for (const auto& [be, de] : cols2) {
            i64 det = al * de - be * ga;
            if (det != 1 && det != -1) continue;
            // Off-diagonal of U^T T1 U must match b2.
            i64 cross = 2 * a1 * al * be + b1 * (al * de + be * ga) + 2 * c1 * ga * de;
            if (cross != t2.b) continue;
            return Mat2{al, be, ga, de};
        }
    }
    return std::nullopt;
}

i64 epsilon_t(const BinaryForm& t) {
    i64 p = t.level;
    i64 a1 = checked_mul64(p, t.a0), b1 = t.b, c1 = t.c;
    auto cols1 = represent(a1, b1, c1, a1);
    auto cols2 = represent(a1, b1, c1, c1);
    i64 count = 0;
    for (const auto& [al, ga] : cols1) {
        if (ga % p != 0) continue;
        for (const auto& [be, de] : cols2) {
            i64 det = al * de - be * ga;
            if (det != 1 && det != -1) continue;
            i64 cross = 2 * a1 * al * be + b1 * (al * de + be * ga) + 2 * c1 * ga * de;
            if (cross != b1) continue;
            ++count;
        }
    }
    if (count <= 0) throw InternalCheckError("epsilon_t: stabilizer search found nothing");
    return count;
}

Rational OrbitDecomposition::stabilizer_sum() const {
    Rational sum(0);
    for (const auto& rep : reps) sum += Rational(1, rep.epsilon);
    return sum;
}

namespace {

OrbitDecomposition orbits_with_bound(i64 d, i64 p, i64 a0_bound, const ClassData& cd, i64 s,
                                     bool* closed) {
    OrbitDecomposition od;
    od.disc = d;
    od.level = p;
    od.h = cd.h;
    od.w = cd.w;
    od.s = s;
    *closed = false;

    Rational target(checked_mul64(cd.h, s)); // sum of 2w/epsilon over all orbits
    Rational mass(0);
    if (target.is_zero()) {
        *closed = true;
        return od;
    }

    for (i64 a0 = 1; a0 <= a0_bound; ++a0) {
        i64 modulus = 4 * p * a0;
        for (i64 b = -p * a0 + 1; b <= p * a0; ++b) {
            i64 num = b * b - d;
            if (num % modulus != 0) continue;
            BinaryForm cand{p, a0, b, num / modulus};
            bool fresh = true;
            for (const auto& rep : od.reps) {
                if (is_equivalent(rep.form, cand)) { fresh = false; break; }
            }
            if (!fresh) continue;
            i64 eps = epsilon_t(cand);
            od.reps.push_back({cand, eps});
            mass += Rational(2 * cd.w, eps);
            if (mass == target) {
                *closed = true;
                return od;
            }
        }
    }
    return od;
}

} // namespace

OrbitDecomposition gamma0p_orbits(i64 d, i64 p) {
    require_level(d, p, "gamma0p_orbits");
    ClassData cd = class_data(d);
    i64 s = sqrt_class_count(d, p);

    i64 primary = isqrt64((-d) / 3) + 1;
    bool closed = false;
    OrbitDecomposition od = orbits_with_bound(d, p, primary, cd, s, &closed);
    if (!closed) {
        i64 coarse = 4 * p * (isqrt64((-d) / 3) + 1);
        od = orbits_with_bound(d, p, coarse, cd, s, &closed);
    }
    if (!closed)
        throw InternalCheckError(
            "gamma0p_orbits: mass certificate failed to close for D=" + std::to_string(d) +
            ", p=" + std::to_string(p));
    return od;
}

FourierCoefficientTable load_coefficient_csv(const std::string& path, i64 level) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open coefficient table: " + path);
    FourierCoefficientTable tbl;
    tbl.level = level;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("a0,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream ss(line);
        std::string fa, fb, fc, fv;
        if (!std::getline(ss, fa, ',') || !std::getline(ss, fb, ',') ||
            !std::getline(ss, fc, ',') || !std::getline(ss, fv, ','))
            throw InvalidInputError("bad coefficient row: " + line);
        BinaryForm form{level, std::stoll(fa), std::stoll(fb), std::stoll(fc)};
        if (form.a0 < 1 || form.c < 1 || form.disc() >= 0)
            throw InvalidInputError("coefficient row is not positive definite: " + line);
        auto [it, inserted] = tbl.entries.emplace(form.key(), Rational::parse(fv));
        if (!inserted) throw InvalidInputError("duplicate coefficient row: " + line);
    }
    return tbl;
}

TwinPairing load_twin_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open twin pairing: " + path);
    TwinPairing twin;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("a0,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream ss(line);
        std::array<i64, 6> v{};
        std::string field;
        for (int i = 0; i < 6; ++i) {
            if (!std::getline(ss, field, ',')) throw InvalidInputError("bad twin row: " + line);
            v[i] = std::stoll(field);
        }
        auto [it, inserted] = twin.emplace(std::array<i64, 3>{v[0], v[1], v[2]},
                                           std::array<i64, 3>{v[3], v[4], v[5]});
        if (!inserted) throw InvalidInputError("duplicate twin row: " + line);
    }
    return twin;
}

namespace {

// Value of the table on an orbit: exact key hit, otherwise equivalence scan
// over same-discriminant entries.  Verifies orbit-constancy across all keys
// that land on this orbit.
std::optional<Rational> table_value_on_orbit(const FourierCoefficientTable& tbl,
                                             const BinaryForm& rep) {
    std::optional<Rational> found;
    i64 d = rep.disc();
    for (const auto& [key, value] : tbl.entries) {
        BinaryForm cand{tbl.level, key[0], key[1], key[2]};
        if (cand.disc() != d) continue;
        bool hit = (key == rep.key()) || is_equivalent(rep, cand).has_value();
        if (!hit) continue;
        if (found && !(*found == value))
            throw InvalidInputError(
                "coefficient table is not constant on the orbit of (" +
                std::to_string(rep.a0) + "," + std::to_string(rep.b) + "," +
                std::to_string(rep.c) + ")");
        found = value;
    }
    return found;
}

} // namespace

Rational average_ad(const FourierCoefficientTable& tbl, i64 d, i64 p) {
    if (tbl.level != p) throw InvalidInputError("average_ad: table level mismatch");
    OrbitDecomposition od = gamma0p_orbits(d, p);
    Rational sum(0);
    std::string missing;
    for (const auto& rep : od.reps) {
        auto value = table_value_on_orbit(tbl, rep.form);
        if (!value) {
            missing += (missing.empty() ? "" : " ") + std::string("(") +
                       std::to_string(rep.form.a0) + "," + std::to_string(rep.form.b) + "," +
                       std::to_string(rep.form.c) + ")";
            continue;
        }
        sum += *value / Rational(rep.epsilon);
    }
    if (!missing.empty())
        throw InvalidInputError("average_ad: coefficient table misses orbits of D=" +
                                std::to_string(d) + "; supply values at " + missing);
    return sum;
}

std::string minus_space_vanishing_check(const FourierCoefficientTable& tbl,
                                        const TwinPairing& twin, i64 d, i64 p) {
    OrbitDecomposition od = gamma0p_orbits(d, p);
    for (const auto& rep : od.reps) {
        auto value = table_value_on_orbit(tbl, rep.form);
        if (!value)
            return "no table value on orbit of (" + std::to_string(rep.form.a0) + "," +
                   std::to_string(rep.form.b) + "," + std::to_string(rep.form.c) + ")";
        auto t = twin.find(rep.form.key());
        if (t == twin.end())
            return "twin pairing missing key (" + std::to_string(rep.form.a0) + "," +
                   std::to_string(rep.form.b) + "," + std::to_string(rep.form.c) + ")";
        BinaryForm twin_form{p, t->second[0], t->second[1], t->second[2]};
        if (twin_form.disc() != d) return "twin image has wrong discriminant";
        auto twin_value = table_value_on_orbit(tbl, twin_form);
        if (!twin_value)
            return "no table value on the twin orbit of (" + std::to_string(rep.form.a0) + "," +
                   std::to_string(rep.form.b) + "," + std::to_string(rep.form.c) + ")";
        if (!(*twin_value == -*value))
            return "twin antisymmetry fails at (" + std::to_string(rep.form.a0) + "," +
                   std::to_string(rep.form.b) + "," + std::to_string(rep.form.c) + ")";
    }
    Rational avg = average_ad(tbl, d, p);
    if (!avg.is_zero()) return "average does not vanish: " + avg.str();
    return "";
}

} // namespace paraspin

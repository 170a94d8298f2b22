#include "paraspin/gritsenko.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "paraspin/analytic.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/quadforms.hpp"

namespace paraspin {

namespace {

i64 jacobi_disc(i64 n, i64 r, i64 p) {
    return checked_sub64(checked_mul64(r, r), checked_mul64(4, checked_mul64(n, p)));
}

i64 ipow(i64 base, int e) {
    i64 out = 1;
    for (int i = 0; i < e; ++i) out = checked_mul64(out, base);
    return out;
}

} // namespace

JacobiCoefficientTable JacobiCoefficientTable::from_entries(
    i64 index_p, std::map<std::pair<i64, i64>, i64> entries) {
    if (index_p < 1) throw InvalidInputError("jacobi index must be positive");
    JacobiCoefficientTable jt;
    jt.index_p_ = index_p;
    std::map<i64, i64> by_disc;
    for (const auto& [key, value] : entries) {
        auto [n, r] = key;
        if (n < 1) throw InvalidInputError("jacobi coefficient with n < 1");
        const i64 disc = jacobi_disc(n, r, index_p);
        auto [it, fresh] = by_disc.emplace(disc, value);
        if (!fresh && it->second != value) {
            throw FixtureError("jacobi coefficients disagree on discriminant " +
                               std::to_string(disc));
        }
        jt.entries_[{n, std::llabs(r)}] = value;
    }
    return jt;
}

JacobiCoefficientTable JacobiCoefficientTable::from_generator(i64 index_p,
                                                              std::function<i64(i64)> gen) {
    if (index_p < 1) throw InvalidInputError("jacobi index must be positive");
    JacobiCoefficientTable jt;
    jt.index_p_ = index_p;
    jt.generator_ = std::move(gen);
    return jt;
}

i64 JacobiCoefficientTable::coefficient(i64 n, i64 r) const {
    if (n < 1) throw InvalidInputError("jacobi coefficient requested with n < 1");
    const i64 disc = jacobi_disc(n, r, index_p_);
    if (generator_) return generator_(disc);
    auto it = entries_.find({n, std::llabs(r)});
    if (it != entries_.end()) return it->second;
    // Coefficients depend on (n, r) only through the discriminant, so any
    // loaded entry with the same discriminant determines the value.
    for (const auto& [key, value] : entries_) {
        if (jacobi_disc(key.first, key.second, index_p_) == disc) return value;
    }
    throw FixtureError("jacobi table has no entry for n=" + std::to_string(n) +
                       ", r=" + std::to_string(r) + " (discriminant " + std::to_string(disc) +
                       ")");
}

i64 JacobiCoefficientTable::cstar(i64 d) const {
    if (d >= 0) throw InvalidInputError("cstar expects a negative discriminant");
    const i64 fourp = 4 * index_p_;
    for (i64 r = 0; r < 2 * index_p_; ++r) {
        const i64 num = checked_sub64(checked_mul64(r, r), d);
        if (num % fourp != 0) continue;
        return coefficient(num / fourp, r);
    }
    return 0;
}

JacobiCoefficientTable load_jacobi_csv(const std::string& path, i64 index_p) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open jacobi coefficient file: " + path);
    std::map<std::pair<i64, i64>, i64> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("n,", 0) == 0) continue; // header
        std::istringstream ss(line);
        std::string field;
        std::vector<i64> vals;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t pos = 0;
                vals.push_back(std::stoll(field, &pos));
                if (pos != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw FixtureError(path + ":" + std::to_string(lineno) +
                                   ": malformed integer field '" + field + "'");
            }
        }
        if (vals.size() != 3) {
            throw FixtureError(path + ":" + std::to_string(lineno) + ": expected 3 fields `n,r,c`");
        }
        auto key = std::make_pair(vals[0], std::llabs(vals[1]));
        auto [it, fresh] = entries.emplace(key, vals[2]);
        if (!fresh && it->second != vals[2]) {
            throw FixtureError(path + ":" + std::to_string(lineno) + ": conflicting duplicate row");
        }
    }
    return JacobiCoefficientTable::from_entries(index_p, std::move(entries));
}

JacobiCoefficientTable make_constant_cstar(i64 index_p, i64 value) {
    return JacobiCoefficientTable::from_generator(index_p, [value](i64) { return value; });
}

JacobiCoefficientTable make_pseudorandom_cstar(i64 index_p, std::uint64_t seed) {
    return JacobiCoefficientTable::from_generator(index_p, [seed](i64 disc) {
        std::uint64_t z = static_cast<std::uint64_t>(disc) + seed * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        const i64 v = static_cast<i64>(z % 18) - 9; // deterministic value in [-9, 9] \ {0}
        return v >= 0 ? v + 1 : v;
    });
}

i64 lift_coefficient(const JacobiCoefficientTable& jt, i64 n, i64 r, i64 m, int k) {
    if (n < 1 || m < 1) throw InvalidInputError("lift coefficient requires n, m >= 1");
    if (k < 1) throw InvalidInputError("lift coefficient requires weight k >= 1");
    const i64 p = jt.index();
    const i64 disc = checked_sub64(checked_mul64(r, r), 4 * checked_mul64(p, checked_mul64(m, n)));
    if (disc >= 0) throw InvalidInputError("lift coefficient requires a positive-definite form");
    const i64 g = std::gcd(std::gcd(n, std::llabs(r)), m);
    i64 total = 0;
    for (i64 delta = 1; delta <= g; ++delta) {
        if (g % delta != 0) continue;
        const i64 term = checked_mul64(ipow(delta, k - 1),
                                       jt.coefficient(m * n / (delta * delta), r / delta));
        total = checked_add64(total, term);
    }
    return total;
}

AverageIdentityResult verify_lift_average(const JacobiCoefficientTable& jt, i64 d, i64 p) {
    if (jt.index() != p) throw InvalidInputError("jacobi index does not match the level");
    const OrbitDecomposition od = gamma0p_orbits(d, p);

    FourierCoefficientTable tbl;
    tbl.level = p;
    for (const OrbitRep& rep : od.reps) {
        const BinaryForm& t = rep.form;
        // T = [[p*a0, b/2], [b/2, c]] corresponds to (n, r, m) = (c, b, a0).
        tbl.entries[t.key()] = Rational(lift_coefficient(jt, t.c, t.b, t.a0, 2));
    }

    AverageIdentityResult out;
    out.lhs = average_ad(tbl, d, p);
    out.rhs = Rational(od.h, od.w) * Rational(jt.cstar(d));
    out.equal = (out.lhs == out.rhs);
    return out;
}

double lift_prefactor(i64 d) {
    const auto [l0, l1] = dirichlet_class_number_values(d);
    return l0.to_double() * l1;
}

double lift_central_value(const LSeriesCoefficients& newform, int root_number, i64 d, i64 p,
                          double tol) {
    if (newform.level != p) throw InvalidInputError("newform level does not match the lift level");
    if (root_number != 1 && root_number != -1) {
        throw InvalidInputError("root number must be +1 or -1");
    }
    if (!is_fundamental_discriminant(d) || d >= 0) {
        throw InvalidInputError("lift central value expects a fundamental discriminant D < 0");
    }
    const LSeriesCoefficients twisted = twist(newform, d);
    // Twisted functional-equation sign of the degree-2 factor: w * (D | -p).
    const int sign = root_number * (d < 0 ? -1 : 1) * kronecker_symbol(d, p);
    const SelbergData sd = selberg_data_degree2(p, d, sign);
    const CentralValueResult cv = central_value(twisted, sd, tol);
    return lift_prefactor(d) * cv.value;
}

} // namespace paraspin

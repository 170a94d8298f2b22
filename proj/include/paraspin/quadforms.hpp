#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paraspin/checked_int.hpp"
#include "paraspin/rational.hpp"

namespace paraspin {

// Positive-definite integral binary quadratic form with level structure:
//   T = [[p*a0, b/2], [b/2, c]],  disc(T) = b^2 - 4 p a0 c < 0.
// The group acting is Gamma_0(p) extended by diag(1,-1) (determinant -1
// allowed, lower-left entry divisible by p).
struct BinaryForm {
    i64 level = 0; // p
    i64 a0 = 0;    // top-left entry divided by p
    i64 b = 0;
    i64 c = 0;

    i64 disc() const { return b * b - 4 * level * a0 * c; }
    std::array<i64, 3> key() const { return {a0, b, c}; }
};

struct ClassData {
    i64 h = 0; // class number of fundamental discriminant D
    i64 w = 0; // number of roots of unity: 6 (D=-3), 4 (D=-4), else 2
};

// 2x2 integer matrix U with det +-1; transforms forms by T -> U^T T U.
struct Mat2 {
    i64 m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    i64 det() const { return m00 * m11 - m01 * m10; }
};

struct OrbitRep {
    BinaryForm form;
    i64 epsilon = 0; // order of the stabilizer in the extended group
};

struct OrbitDecomposition {
    i64 disc = 0;
    i64 level = 0;
    i64 h = 0; // class number of the discriminant
    i64 w = 0; // roots of unity
    i64 s = 0; // square-root classes of D mod 4p
    std::vector<OrbitRep> reps;

    // sum over representatives of 1/epsilon; equals h/w when the
    // decomposition is complete.
    Rational stabilizer_sum() const;
};

// SL2(Z)-reduced forms (a, b, c) of fundamental discriminant D < 0.
std::vector<std::array<i64, 3>> reduced_forms(i64 d);

// Class number and unit count of the order of discriminant D < 0.
ClassData class_data(i64 d);

// Number of residues beta mod 2p with beta^2 = D mod 4p.
i64 sqrt_class_count(i64 d, i64 p);

// True when D is represented mod 4p, i.e. forms of level p and
// discriminant D exist.
bool solvable(i64 d, i64 p);

// All integer pairs (x, y) with A x^2 + B xy + C y^2 = value for the
// positive-definite form (A, B, C); deterministic order (y ascending, then
// the smaller root first).
std::vector<std::pair<i64, i64>> represent(i64 a, i64 b, i64 c, i64 value);

// Transform search: U with det +-1, p | U.m10, U^T T1 U = T2.  Returns the
// first match in a deterministic enumeration, or nothing.
std::optional<Mat2> is_equivalent(const BinaryForm& t1, const BinaryForm& t2);

// Order of the stabilizer of T in the extended group (automorphs with
// lower-left divisible by p, det +-1).
i64 epsilon_t(const BinaryForm& t);

// Orbit decomposition of the forms of discriminant D under the extended
// group.  Enumerates ascending a0 and stops once the mass certificate
//   sum over reps of 2w/epsilon == h*s
// closes; if the primary bound exhausts without closure the search retries
// once with the coarse safe bound 4p*ceil(sqrt(|D|/3)) before failing.
OrbitDecomposition gamma0p_orbits(i64 d, i64 p);

// Fourier-coefficient table of a paramodular form: exact rational values on
// form keys (a0, b, c).  Values are constant on extended-group orbits; the
// consumers below verify that on every orbit they touch.
struct FourierCoefficientTable {
    i64 level = 0;
    std::map<std::array<i64, 3>, Rational> entries;
};

// CSV rows `a0,b,c,value` with rational values ("3" or "-5/2").
FourierCoefficientTable load_coefficient_csv(const std::string& path, i64 level);

// A(D) = sum over orbit representatives of a(T)/epsilon(T), exact.
// Every orbit must be covered by the table (directly or through an
// equivalent key); missing orbits raise an error listing the needed keys.
Rational average_ad(const FourierCoefficientTable& tbl, i64 d, i64 p);

// Twin pairing on form keys (an involution realized by an Atkin-Lehner
// conjugation; supplied as fixture data).
using TwinPairing = std::map<std::array<i64, 3>, std::array<i64, 3>>;

// CSV rows `a0,b,c,ta0,tb,tc` mapping each key to its twin.
TwinPairing load_twin_csv(const std::string& path);

// Checks a(Twin(T)) = -a(T) across the table for discriminant D and that the
// resulting average vanishes.  Diagnostic string on failure, empty on pass.
std::string minus_space_vanishing_check(const FourierCoefficientTable& tbl,
                                        const TwinPairing& twin, i64 d, i64 p);

} // namespace paraspin

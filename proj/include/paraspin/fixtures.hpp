#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "paraspin/checked_int.hpp"
#include "paraspin/curves.hpp"
#include "paraspin/rational.hpp"

namespace paraspin {

// One reference row of a published central-value table: discriminant,
// coefficient average A(D) when the source states it ("unknown" rows keep
// a_known = false), and the printed normalized value, verbatim.
struct ValueRow {
    i64 d = 0;
    bool a_known = false;
    Rational a;
    std::string printed; // fixed 6-decimal string, e.g. "-0.000003"

    double printed_value() const;
};

// Reference table for one level/eigenform, with the published normalization
// constant (kept verbatim alongside its parsed value).
struct ValueTable {
    std::string level_key;
    i64 level = 0;
    int al_sign = 0;
    std::string c_f_printed;
    double c_f = 0.0;
    std::vector<ValueRow> rows;
};

// Directory resolution: explicit argument if nonempty, else the
// PARASPIN_FIXTURES environment variable, else "./fixtures".
std::string resolve_fixtures_dir(const std::string& explicit_dir = "");

// "587+" -> "587p", "587-" -> "587m", digits unchanged; used in file names.
std::string level_key_filename(const std::string& key);

// curves.json: all curve models keyed by level handle.  Each file carries a
// checksum over a canonical rendering; mismatch or malformed content throws
// FixtureError.
std::map<std::string, CurveSpec> load_curves(const std::string& dir);

// values_<key>.json for one level handle (e.g. "277", "587-").
ValueTable load_values(const std::string& dir, const std::string& key);

// FNV-1a 64-bit hash; fixture checksums are "fnv1a64:" + 16 hex digits.
std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum_string(const std::string& bytes);

// Canonical renderings hashed into the fixture checksums (also what the
// fixture generator writes).
std::string canonical_curves_text(const std::map<std::string, CurveSpec>& curves);
std::string canonical_values_text(const ValueTable& table);

} // namespace paraspin

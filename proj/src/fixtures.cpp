#include "paraspin/fixtures.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "paraspin/errors.hpp"

namespace paraspin {

namespace {

using nlohmann::json;

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
    return j;
}

// Strict double parse of the verbatim printed strings.
double parse_printed(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FixtureError("malformed " + what + " value: '" + s + "'");
    }
}

std::string join_i64(const std::vector<i64>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

void check_checksum(const json& j, const std::string& canonical, const std::string& path) {
    if (!j.contains("checksum") || !j["checksum"].is_string()) {
        throw FixtureError(path + ": missing checksum");
    }
    const std::string expect = j["checksum"].get<std::string>();
    const std::string actual = checksum_string(canonical);
    if (expect != actual) {
        throw FixtureError(path + ": checksum mismatch (file says " + expect + ", content hashes to " +
                           actual + ")");
    }
}

} // namespace

double ValueRow::printed_value() const { return parse_printed(printed, "printed table"); }

std::string resolve_fixtures_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("PARASPIN_FIXTURES"); env && *env) return env;
    return "fixtures";
}

std::string level_key_filename(const std::string& key) {
    std::string out;
    for (char ch : key) {
        if (ch == '+') out += 'p';
        else if (ch == '-') out += 'm';
        else out += ch;
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string checksum_string(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string canonical_curves_text(const std::map<std::string, CurveSpec>& curves) {
    std::string out;
    for (const auto& [key, c] : curves) {
        out += "key=" + key + ";p=" + std::to_string(c.level) + ";eps=" +
               std::to_string(c.al_sign) + ";lam=" + std::to_string(c.lambda_p) + ";f=" +
               join_i64(c.f) + ";h=" + join_i64(c.h) + "\n";
    }
    return out;
}

std::string canonical_values_text(const ValueTable& table) {
    std::string out = "level=" + table.level_key + ";p=" + std::to_string(table.level) + ";eps=" +
                      std::to_string(table.al_sign) + ";C=" + table.c_f_printed + "\n";
    for (const ValueRow& row : table.rows) {
        out += "D=" + std::to_string(row.d) + ";A=" + (row.a_known ? row.a.str() : "?") + ";v=" +
               row.printed + "\n";
    }
    return out;
}

std::map<std::string, CurveSpec> load_curves(const std::string& dir) {
    const std::string path = dir + "/curves.json";
    const json j = parse_json_file(path);
    if (!j.contains("curves") || !j["curves"].is_array()) {
        throw FixtureError(path + ": expected a 'curves' array");
    }
    std::map<std::string, CurveSpec> out;
    try {
        for (const json& e : j["curves"]) {
            CurveSpec c;
            c.key = e.at("key").get<std::string>();
            c.level = e.at("level").get<i64>();
            c.al_sign = e.at("al_sign").get<int>();
            c.lambda_p = e.at("lambda_p").get<i64>();
            c.f = e.at("f").get<std::vector<i64>>();
            c.h = e.at("h").get<std::vector<i64>>();
            c.validate();
            if (!out.emplace(c.key, c).second) {
                throw FixtureError(path + ": duplicate curve key " + c.key);
            }
        }
    } catch (const json::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
    check_checksum(j, canonical_curves_text(out), path);
    return out;
}

ValueTable load_values(const std::string& dir, const std::string& key) {
    const std::string path = dir + "/values_" + level_key_filename(key) + ".json";
    const json j = parse_json_file(path);
    ValueTable t;
    try {
        t.level_key = j.at("level_key").get<std::string>();
        t.level = j.at("level").get<i64>();
        t.al_sign = j.at("al_sign").get<int>();
        t.c_f_printed = j.at("c_f").get<std::string>();
        t.c_f = parse_printed(t.c_f_printed, "normalization constant");
        for (const json& e : j.at("rows")) {
            ValueRow row;
            row.d = e.at("D").get<i64>();
            if (row.d >= 0) throw FixtureError(path + ": row with non-negative discriminant");
            if (e.contains("A")) {
                const std::string a = e.at("A").get<std::string>();
                if (a != "unknown") {
                    row.a = Rational::parse(a);
                    row.a_known = true;
                }
            }
            row.printed = e.at("value").get<std::string>();
            parse_printed(row.printed, "printed table"); // validate now, fail early
            t.rows.push_back(row);
        }
    } catch (const json::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
    if (t.level_key != key) {
        throw FixtureError(path + ": level_key '" + t.level_key + "' does not match requested '" +
                           key + "'");
    }
    check_checksum(j, canonical_values_text(t), path);
    return t;
}

} // namespace paraspin

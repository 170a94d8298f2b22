#include "paraspin/report.hpp"

#include <algorithm>
#include <cstdio>

namespace paraspin {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
            out += ch;
        } else if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
            out += buf;
        } else {
            out += ch;
        }
    }
    return out;
}

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

} // namespace

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string format_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::string render_verify_json(const ConjectureReport& rep) {
    std::string out = "{\n";
    out += "  \"level\": " + quoted(rep.level_key) + ",\n";
    out += "  \"p\": " + std::to_string(rep.level) + ",\n";
    out += "  \"al_sign\": " + std::to_string(rep.al_sign) + ",\n";
    out += "  \"n_max\": " + std::to_string(rep.n_max) + ",\n";
    out += "  \"tol\": " + format_sci(rep.tol) + ",\n";
    out += "  \"c_f_discriminant\": " + std::to_string(rep.c_f_discriminant) + ",\n";
    out += "  \"c_f\": " + format_fixed(rep.c_f, 11) + ",\n";
    out += "  \"c_f_reference\": " + format_fixed(rep.c_f_reference, 11) + ",\n";
    out += "  \"rows\": [\n";
    std::size_t in_ref = 0, marked = 0;
    double max_err = 0.0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ReportRow& r = rep.rows[i];
        std::string line = "    {\"D\": " + std::to_string(r.d) +
                           ", \"sign\": " + std::to_string(r.sign) +
                           ", \"normalized\": " + format_fixed(r.normalized, 6) +
                           ", \"tail_bound\": " + format_sci(r.tail_bound) +
                           ", \"terms\": " + std::to_string(r.terms_used) +
                           ", \"marked\": " + (r.marked ? "true" : "false") +
                           ", \"nearest_square\": " +
                           std::to_string(r.nearest_square * r.nearest_square);
        if (r.a_known) {
            line += ", \"A\": " + quoted(r.a.str()) +
                    ", \"target\": " + format_fixed(r.target, 6) +
                    ", \"abs_err\": " + format_sci(r.abs_err);
            if (!r.marked) max_err = std::max(max_err, r.abs_err);
        }
        if (r.in_reference) {
            line += ", \"printed\": " + quoted(r.printed);
            ++in_ref;
        }
        if (!r.note.empty()) line += ", \"note\": " + quoted(r.note);
        line += "}";
        if (i + 1 < rep.rows.size()) line += ",";
        out += line + "\n";
        if (r.marked) ++marked;
    }
    out += "  ],\n";
    out += "  \"summary\": {\"rows\": " + std::to_string(rep.rows.size()) +
           ", \"in_reference\": " + std::to_string(in_ref) +
           ", \"marked\": " + std::to_string(marked) +
           ", \"max_abs_err_unmarked\": " + format_sci(max_err) + "}\n";
    out += "}\n";
    return out;
}

std::string render_verify_text(const ConjectureReport& rep) {
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf), "level %s (p=%lld, eps=%+d)  n_max=%lld  tol=%.1e\n",
                  rep.level_key.c_str(), static_cast<long long>(rep.level), rep.al_sign,
                  static_cast<long long>(rep.n_max), rep.tol);
    out += buf;
    std::snprintf(buf, sizeof(buf), "C_F = %.11f at D=%lld  (reference %.11f)\n", rep.c_f,
                  static_cast<long long>(rep.c_f_discriminant), rep.c_f_reference);
    out += buf;
    out += "     D        A    normalized        target       |err|       tail  note\n";
    for (const ReportRow& r : rep.rows) {
        std::string a = r.a_known ? r.a.str() : (r.in_reference ? "?" : "-");
        std::snprintf(buf, sizeof(buf), "%6lld %8s %13.6f", static_cast<long long>(r.d), a.c_str(),
                      r.normalized);
        out += buf;
        if (r.target_known) {
            std::snprintf(buf, sizeof(buf), " %13.6f %11.3e", r.target, r.abs_err);
        } else {
            const long long sq = static_cast<long long>(r.nearest_square);
            std::snprintf(buf, sizeof(buf), "  = %4lld^2 %+.3e", sq,
                          r.normalized - static_cast<double>(sq * sq));
        }
        out += buf;
        std::snprintf(buf, sizeof(buf), " %11.3e", r.tail_bound);
        out += buf;
        if (r.marked) out += "  [tail over tol]";
        if (!r.note.empty()) out += "  " + r.note;
        out += "\n";
    }
    return out;
}

std::string render_central_json(const CentralReport& rep) {
    std::string out = "{";
    out += "\"level\": " + quoted(rep.level_key);
    out += ", \"p\": " + std::to_string(rep.level);
    out += ", \"D\": " + std::to_string(rep.d);
    out += ", \"sign\": " + std::to_string(rep.sign);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12e", rep.value);
    out += std::string(", \"value\": ") + buf;
    out += ", \"tail_bound\": " + format_sci(rep.tail_bound);
    out += ", \"terms\": " + std::to_string(rep.terms_used);
    out += ", \"n_max\": " + std::to_string(rep.n_max);
    out += ", \"c_f_discriminant\": " + std::to_string(rep.c_f_discriminant);
    out += ", \"c_f\": " + format_fixed(rep.c_f, 11);
    out += ", \"normalized\": " + format_fixed(rep.normalized, 6);
    out += "}\n";
    return out;
}

std::string render_central_text(const CentralReport& rep) {
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf), "L(1/2, chi_D)      = %.12e  (level %s, D=%lld, sign %+d)\n",
                  rep.value, rep.level_key.c_str(), static_cast<long long>(rep.d), rep.sign);
    out += buf;
    std::snprintf(buf, sizeof(buf), "tail estimate      = %.3e  (%lld terms, n_max %lld)\n",
                  rep.tail_bound, static_cast<long long>(rep.terms_used),
                  static_cast<long long>(rep.n_max));
    out += buf;
    std::snprintf(buf, sizeof(buf), "C_F                = %.11f  (normalized at D=%lld)\n",
                  rep.c_f, static_cast<long long>(rep.c_f_discriminant));
    out += buf;
    std::snprintf(buf, sizeof(buf), "L * |D| / C_F      = %.6f\n", rep.normalized);
    out += buf;
    return out;
}

} // namespace paraspin

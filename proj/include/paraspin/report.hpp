#pragma once

#include <string>

#include "paraspin/pipeline.hpp"

namespace paraspin {

// Renderings are deterministic: fixed snprintf formats, insertion-ordered
// keys, no timestamps.  Identical inputs produce byte-identical output.
std::string render_verify_json(const ConjectureReport& rep);
std::string render_verify_text(const ConjectureReport& rep);
std::string render_central_json(const CentralReport& rep);
std::string render_central_text(const CentralReport& rep);

// "%.6f"-style fixed formatting used across reports.
std::string format_fixed(double v, int digits);
std::string format_sci(double v);

} // namespace paraspin

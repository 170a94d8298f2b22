#pragma once

namespace paraspin {

// Full command-line driver; returns the process exit code.
//   0 success, 1 internal failure, 2 bad input/usage,
//   3 insufficient precision for the requested tolerance, 4 fixture problem.
int cli_main(int argc, const char* const* argv);

} // namespace paraspin

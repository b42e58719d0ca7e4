#pragma once

#include <iosfwd>

namespace hqc::cli {

/// Entry point of the hqc-cli front end. Returns the process exit code:
/// 0 on success, 2 on validation errors, 1 on runtime errors. Error records
/// go to `err` as single-line JSON.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hqc::cli

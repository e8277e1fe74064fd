#pragma once

#include <ostream>

namespace mgw {

// Entry point of the mgw tool. Returns 0 on success, 1 when a computation
// could not be completed (budget, Unknown verdict), 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mgw

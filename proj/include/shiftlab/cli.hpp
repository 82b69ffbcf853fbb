#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftlab {

// Command-line surface. Returns 0 on success, 1 on a domain error, 2 on a
// usage error. Deterministic in its arguments, input files and seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace shiftlab

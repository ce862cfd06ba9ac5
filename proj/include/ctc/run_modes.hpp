#pragma once

#include "ctc/config.hpp"

#include <cstdint>
#include <iosfwd>

namespace ctc {

struct RunOptions {
    int jobs = 1;
    std::uint64_t seed = 0;
};

/// Executes one run configuration, writing CSV/JSON artifacts under
/// cfg.out_dir. Returns the process exit status: 0 on success (for verify:
/// all invariants held), 1 on a run failure (a machine-readable failure.json
/// is left in out_dir), with progress on `log`.
int run_mode(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);

}  // namespace ctc

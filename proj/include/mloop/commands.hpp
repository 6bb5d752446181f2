#pragma once

#include <cstdint>
#include <ostream>

#include "mloop/config.hpp"
#include "mloop/report.hpp"

namespace mloop {

struct CommandOptions {
  std::string out_dir;   // empty: stdout only
  unsigned jobs = 1;     // per-weight parallelism for the scan
  uint64_t seed = 12345; // randomized property checks only
};

/// Exit codes: 0 all good, 1 a check failed, 2 config or algebra errors
/// (raised as exceptions and handled by the caller).
int cmd_construct(const RunConfig &cfg, const CommandOptions &opt, std::ostream &out);
int cmd_verify(const RunConfig &cfg, const CommandOptions &opt, std::ostream &out);
int cmd_h2_scan(const RunConfig &cfg, const CommandOptions &opt, std::ostream &out);
int cmd_density(const RunConfig &cfg, const CommandOptions &opt, std::ostream &out);

} // namespace mloop

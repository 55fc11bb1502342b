#pragma once

namespace fdk {

// Worker count used when a caller passes jobs <= 0: the FDK_JOBS environment
// variable if set to a positive integer, otherwise the OpenMP default.
int default_jobs();

// jobs > 0 is returned unchanged; otherwise default_jobs().
int resolve_jobs(int jobs);

}  // namespace fdk

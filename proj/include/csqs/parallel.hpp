#pragma once

namespace csqs {

/// Environment variable that caps the worker count everywhere.
inline constexpr const char* kThreadsEnv = "CSQS_LAB_THREADS";

/// requested <= 0 means "all available"; the result is capped by CSQS_LAB_THREADS
/// when set, and is always >= 1.
int resolve_workers(int requested = 0);

}  // namespace csqs

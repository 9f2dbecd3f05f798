#pragma once

namespace grpd {

/// Worker count for OpenMP loops and the catalog pool: min(omp max threads,
/// GRPD_CONV_THREADS) when the environment variable is set and positive.
int worker_count();

/// Applies worker_count() to the OpenMP runtime. Called once by the CLI and
/// the catalog runner; library code just uses plain parallel regions.
void apply_thread_cap();

}  // namespace grpd

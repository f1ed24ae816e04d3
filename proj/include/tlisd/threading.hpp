#pragma once

namespace tlisd {

/// Caps library parallelism (OpenMP). n <= 0 restores the runtime default.
void set_num_threads(int n);

int num_threads();

} // namespace tlisd

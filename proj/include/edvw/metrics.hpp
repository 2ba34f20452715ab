#pragma once

#include <span>

namespace edvw {

/// Fraction of labelled vertices on the wrong side, minimized over the two
/// ways of matching sides to classes. `labels[v]` is the class of v or -1
/// when unknown. Throws ContractViolation for more than two classes.
double clustering_error(int num_vertices, std::span<const int> side_a,
                        std::span<const int> labels);

}  // namespace edvw

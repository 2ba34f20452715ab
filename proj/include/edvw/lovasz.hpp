#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace edvw {

/// Set function on subsets of {0..N-1}, given as a sorted index list.
/// F(empty) must be 0.
using SetFunction = std::function<double(std::span<const int>)>;

/// Lovasz extension: sort x non-increasingly (ties by index) and sum
/// F(S_j) * (x_{i_j} - x_{i_{j+1}}) over prefixes, plus F(V) * x_min.
double lovasz_extension(const SetFunction& f,
                        Eigen::Ref<const Eigen::VectorXd> x);

/// Exhaustive submodularity check over all pairs of subsets of {0..n-1};
/// returns the largest violation of F(A) + F(B) >= F(A|B) + F(A&B).
double submodularity_violation(const SetFunction& f, int n);

/// All subsets of {0..n-1} as sorted lists, in mask order (n <= 20).
std::vector<std::vector<int>> all_subsets(int n);

}  // namespace edvw

#pragma once

// Shared numeric tolerances. Set-function identities are checked in absolute
// terms, solver cross-checks in relative terms.
namespace edvw::tol {

inline constexpr double kSetIdentity = 1e-9;
inline constexpr double kSolverRelative = 1e-7;

// Ingested EDVW are rounded to multiples of 2^-20.
inline constexpr double kGammaDenominator = 1048576.0;

}  // namespace edvw::tol

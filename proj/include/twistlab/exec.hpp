#pragma once

namespace twistlab {

/// Execution policy for the heavy sweep kernels. Every kernel taking an
/// Exec has a plain serial implementation (the reference) and an
/// OpenMP-parallel one; both return identical results.
enum class Exec { serial, parallel };

}  // namespace twistlab

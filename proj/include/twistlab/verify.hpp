#pragma once

#include <string>
#include <vector>

#include "twistlab/exec.hpp"

namespace twistlab::verify {

struct IdentityReport {
  std::string name;
  long long cases = 0;
  long long failures = 0;
  bool ok() const { return failures == 0; }
};

/// Exhaustive identity sweeps per module, at the given dimension (2 or 4).
std::vector<IdentityReport> quadform_suite(int dim, Exec exec = Exec::parallel);
std::vector<IdentityReport> pollatsek_suite(int dim, Exec exec = Exec::parallel);
std::vector<IdentityReport> cohomology_suite(int dim, Exec exec = Exec::parallel);

std::vector<IdentityReport> run_suite(const std::string& suite, int dim,
                                      Exec exec = Exec::parallel);

bool all_ok(const std::vector<IdentityReport>& reports);

}  // namespace twistlab::verify

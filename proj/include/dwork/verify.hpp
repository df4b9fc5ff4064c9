#pragma once

#include "dwork/cohomology.hpp"
#include "dwork/deformation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dwork {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int iterations = 200;
  /// Test hook: swaps K_G for an operator that does not square to zero.
  bool corrupt_operator = false;
};

struct FamilyReport {
  std::string name;
  int checks = 0;
  bool passed = true;
  std::string counterexample;
};

struct VerifyReport {
  std::vector<FamilyReport> families;
  bool passed() const;
};

VerifyReport run_verify(const QuotientPresentation& P, const DeformationData* def, const VerifyOptions& opt);

}  // namespace dwork

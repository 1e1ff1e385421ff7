#pragma once

#include <functional>
#include <string>
#include <vector>

#include "escat/specfun.hpp"
#include "escat/types.hpp"

namespace escat::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

/// Runs every module's invariant spot-checks with the given seed.
VerifyReport run_verify_suite(std::uint64_t seed);

/// Machine-readable summary; byte-identical for identical seeds.
std::string report_to_json(const VerifyReport& report, std::uint64_t seed);

/// Injectable Bessel backend so broken evaluators are caught by the
/// Wronskian check (see the fault-injection test fixture).
using BesselFn = std::function<Real(specfun::BesselKind, int, Real)>;

/// Max deviation of J1 Y0 - J0 Y1 from 2/(pi x) over x in [0.1, 50].
Real wronskian_max_deviation(const BesselFn& bessel);

}  // namespace escat::verify

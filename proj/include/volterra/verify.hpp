#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace volterra {

struct VerifyOptions {
  /// Grid used by the mesh-dependent checks (duality, positivity, mesh
  /// convergence). Checks whose tolerance is tied to a particular grid use
  /// that grid regardless.
  int grid_n = 1024;
  /// Seed of the random test functions.
  std::uint64_t seed = 20240611;
};

/// Outcome of one invariant: the largest violation measured over its
/// sampling set and the tolerance it was held to. pass is
/// max_residual <= tolerance.
struct InvariantRecord {
  std::string name;
  double max_residual;
  double tolerance;
  bool pass;
};

/// Names of every invariant, in the order run_invariants reports them.
const std::vector<std::string>& invariant_names();

/// Runs one invariant. Throws DomainError for an unknown name; errors raised
/// by the computations themselves propagate.
InvariantRecord run_invariant(const std::string& name, const VerifyOptions& options);

std::vector<InvariantRecord> run_invariants(const VerifyOptions& options);

}  // namespace volterra

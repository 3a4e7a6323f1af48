// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace reebindex {

/// Base class for every domain error raised by the library. The `name()`
/// string is stable and machine readable; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define REEBINDEX_ERROR(NAME)                          \
  class NAME : public Error {                          \
   public:                                             \
    explicit NAME(const std::string& what)             \
        : Error(#NAME, what) {}                        \
  };

// sympath
REEBINDEX_ERROR(NonSymmetricGenerator)
REEBINDEX_ERROR(IntegrationDivergence)
REEBINDEX_ERROR(EigenSolverFailure)

// index
REEBINDEX_ERROR(DegenerateEndpoint)
REEBINDEX_ERROR(CrossingResolutionFailure)
REEBINDEX_ERROR(EpsilonSelectionFailure)
REEBINDEX_ERROR(ContinuationAmbiguity)

// bott
REEBINDEX_ERROR(GapTooSmall)

// toric
REEBINDEX_ERROR(NotStrictlyConvex)
REEBINDEX_ERROR(NonPrimitiveNormal)
REEBINDEX_ERROR(FaceFacetCountMismatch)
REEBINDEX_ERROR(NotIntegralBasisCompletable)
REEBINDEX_ERROR(RedundantNormal)
REEBINDEX_ERROR(NotInInteriorDualCone)
REEBINDEX_ERROR(DegenerateEdgeBasis)
REEBINDEX_ERROR(NonUniqueLift)
REEBINDEX_ERROR(DegenerateReebVector)
REEBINDEX_ERROR(CutoffTooSmall)
REEBINDEX_ERROR(PerturbationFailure)
REEBINDEX_ERROR(NotInSubgroupK)

// estimates
REEBINDEX_ERROR(MorseIndexOutOfRange)
REEBINDEX_ERROR(HypothesesNotMet)
REEBINDEX_ERROR(PinchingViolated)

#undef REEBINDEX_ERROR

}  // namespace reebindex

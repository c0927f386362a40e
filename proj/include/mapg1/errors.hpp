#pragma once

#include <stdexcept>
#include <string>

namespace mapg1 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : Error { using Error::Error; };
struct MultiplePole : Error { using Error::Error; };
struct MultipleRoot : Error { using Error::Error; };
struct RootCountMismatch : Error { using Error::Error; };
struct NullspaceDim : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct CancellationFailure : Error { using Error::Error; };
struct DegenerateRoot : Error { using Error::Error; };
struct BasisDeficiency : Error { using Error::Error; };
struct InversionFailure : Error { using Error::Error; };
struct NewtonDivergence : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct BranchViolation : Error { using Error::Error; };
struct Unstable : Error { using Error::Error; };
struct NotPoisson : Error { using Error::Error; };
struct Reducible : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

}  // namespace mapg1

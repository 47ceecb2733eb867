#pragma once

#include <stdexcept>
#include <string>

namespace demazure {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// scalar / series arithmetic
class CyclicBinding : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };
class NonNilpotentImage : public Error { public: using Error::Error; };
class NotAUnit : public Error { public: using Error::Error; };
class NotDivisible : public Error { public: using Error::Error; };
class NotPrimitive : public Error { public: using Error::Error; };

// root systems and lattices
class InvalidGcm : public Error { public: using Error::Error; };
class Decomposable : public Error { public: using Error::Error; };
class NotAffine : public Error { public: using Error::Error; };
class NotIntegralInverse : public Error { public: using Error::Error; };
class PairingNotIntegral : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };

// formal group algebra / twisted algebra
class AxiomViolation : public Error { public: using Error::Error; };
class NotRegular : public Error { public: using Error::Error; };
class SingularSolve : public Error { public: using Error::Error; };
class UnsupportedOrder : public Error { public: using Error::Error; };

// input handling
class ParseError : public Error { public: using Error::Error; };

} // namespace demazure

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gfdft {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gf
struct DegreeOutOfRange : Error {
    using Error::Error;
};
struct NonPrimitiveModulus : Error {
    using Error::Error;
};
struct DegreeNotDivisor : Error {
    using Error::Error;
};
struct ZeroElement : Error {
    using Error::Error;
};

// poly
struct DivisionByZeroPoly : Error {
    using Error::Error;
};
struct OddDegree : Error {
    using Error::Error;
};
struct WrongCardinality : Error {
    using Error::Error;
};

// conjugacy
struct OddExtensionDegree : Error {
    using Error::Error;
};
struct SingularBasis : Error {
    using Error::Error;
};

// matrices
struct OddSize : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};

// evaluator / plans
struct DegreeTooSmall : Error {
    using Error::Error;
};
struct SingularSystem : Error {
    using Error::Error;
};
struct UnsupportedDegree : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};

// text / config input
struct ParseError : Error {
    using Error::Error;
};

} // namespace gfdft

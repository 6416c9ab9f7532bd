#pragma once

#include <stdexcept>
#include <string>

namespace sqt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbol layer
struct IllConditioned : Error {
    double cond;
    explicit IllConditioned(double c)
        : Error("ill conditioned problem (cond = " + std::to_string(c) + ")"), cond(c) {}
};
struct ZeroOnCircle : Error {
    ZeroOnCircle() : Error("symbol vanishes on the unit circle") {}
};
struct BadGridSize : Error {
    using Error::Error;
};
struct AsymmetryDetected : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct DomainFault : Error {
    using Error::Error;
};

// Matrix layer
struct ModeMismatch : Error {
    ModeMismatch() : Error("operands use different representation modes") {}
};
struct AlphaMismatch : Error {
    AlphaMismatch() : Error("operands use different alpha") {}
};
struct SingularSmallBlock : Error {
    SingularSmallBlock() : Error("SWM small block is singular to working precision") {}
};

// Algebra / finite layer
struct BadAlpha : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct NotImplemented : Error {
    using Error::Error;
};
struct BinomialOverflow : Error {
    using Error::Error;
};
struct BadInput : Error {
    using Error::Error;
};

}  // namespace sqt

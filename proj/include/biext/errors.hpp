// Error types raised by the engine.
#pragma once

#include <stdexcept>
#include <string>

namespace biext {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfiniteGroup : Error {
    using Error::Error;
};
struct SizeGuardExceeded : Error {
    using Error::Error;
};
struct IllDefinedHom : Error {
    using Error::Error;
};
struct RouteMismatch : Error {
    using Error::Error;
};
struct BicomplexInvalid : Error {
    using Error::Error;
};
struct BlockLabelsMissing : Error {
    using Error::Error;
};

} // namespace biext

#pragma once

#include <stdexcept>
#include <string>

namespace setid {

// Exit-code mapping used by the CLI: InvalidInput/ParseError/DataError -> 2,
// InfeasibleError/CoherenceError/TieError -> 3, anything else -> 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct InfeasibleError : Error {
    using Error::Error;
};

struct UnboundedError : Error {
    using Error::Error;
};

struct CoherenceError : Error {
    using Error::Error;
};

struct TieError : Error {
    using Error::Error;
};

} // namespace setid

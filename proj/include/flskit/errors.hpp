#pragma once

#include <stdexcept>
#include <string>

namespace flskit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct InsufficientBits : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct InvalidModel : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct InvalidLength : Error {
    using Error::Error;
};

struct InvalidDetectLength : Error {
    using Error::Error;
};

} // namespace flskit

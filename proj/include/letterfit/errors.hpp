#pragma once

#include <stdexcept>
#include <string>

namespace letterfit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyDocumentError : Error {
    using Error::Error;
};
struct ProfileMismatchError : Error {
    using Error::Error;
};
struct EmptyCountsError : Error {
    using Error::Error;
};
struct SpaceNotTrackedError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct InsufficientDataError : Error {
    using Error::Error;
};
struct TooFewRanksError : Error {
    using Error::Error;
};
struct LengthMismatchError : Error {
    using Error::Error;
};

} // namespace letterfit

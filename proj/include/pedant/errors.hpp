#pragma once

#include <stdexcept>
#include <string>

namespace pedant {

// Base class for all pipeline errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File missing, unreadable, or unwritable.
struct IoError : Error {
    using Error::Error;
};

// Invalid configuration, seed file, or lexicon file. Maps to exit code 2 in the CLI.
struct ConfigError : Error {
    using Error::Error;
};

// Bad runtime data (absent class, insufficient users, unmapped label).
struct DataError : Error {
    using Error::Error;
};

// A backend provider (generator, embedder, sentiment, classifier) failed.
struct ProviderError : Error {
    using Error::Error;
};

// An operation was called with inputs that violate its contract.
struct PreconditionError : Error {
    using Error::Error;
};

} // namespace pedant

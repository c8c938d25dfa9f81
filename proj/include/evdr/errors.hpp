#pragma once

#include <stdexcept>
#include <string>

namespace evdr {

// Base class for all library errors. Subclasses distinguish the broad
// failure categories the CLI maps to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration: manifests, tariff documents, flag combinations.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Bad input data: CSV files, session records, price series.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Solver-side failures: unavailable backend, inconsistent results.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

} // namespace evdr

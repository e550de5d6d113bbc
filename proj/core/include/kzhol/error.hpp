#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kzhol {

// Failure classes surfaced by the CLI as distinct exit codes.
enum class ErrorCategory { config, geometry, numerics, io };

std::string_view to_string(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& what) : Error(ErrorCategory::geometry, what) {}
};

class NumericsError : public Error {
public:
    explicit NumericsError(const std::string& what) : Error(ErrorCategory::numerics, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace kzhol

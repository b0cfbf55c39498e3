#ifndef EVSSTA_ERRORS_HPP
#define EVSSTA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evssta {

// Argument outside the mathematical domain of an operation (NaN, p outside
// (0,1), nonpositive sigma, n < 2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Covariance matrix failed the square-root factorization beyond tolerance.
class NotPsdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what)
        , line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class CycleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateEdgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Path enumeration stopped after exceeding the configured cap.
class PathExplosionError : public std::runtime_error {
public:
    PathExplosionError(std::size_t count_reached, std::size_t cap)
        : std::runtime_error("path count exceeded cap " + std::to_string(cap) + " (reached " +
                             std::to_string(count_reached) + ")")
        , count_reached_(count_reached)
        , cap_(cap) {}

    [[nodiscard]] std::size_t count_reached() const noexcept { return count_reached_; }
    [[nodiscard]] std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t count_reached_;
    std::size_t cap_;
};

}  // namespace evssta

#endif  // EVSSTA_ERRORS_HPP

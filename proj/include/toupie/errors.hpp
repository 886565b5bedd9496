#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace toupie {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Invalid user input (parse or admissibility failure). `field` addresses the
// offending input item as "section:index" (1-based) when known.
class ValidationError : public Error {
public:
    ValidationError(std::string code, const std::string& message, std::string field = "")
        : Error(std::move(code), message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Internal consistency failure: constructive result disagrees with linear algebra.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(int degree, std::size_t count, std::size_t budget)
        : Error("BudgetExceeded", "degree " + std::to_string(degree) + " needs " + std::to_string(count) +
                                      " tuples, budget is " + std::to_string(budget)),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

}  // namespace toupie

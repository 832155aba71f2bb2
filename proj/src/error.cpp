#include "strel/error.hpp"

#include <utility>

namespace strel {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : Error(std::move(message)), line_(line), column_(column), expected_(std::move(expected)) {}

}  // namespace strel

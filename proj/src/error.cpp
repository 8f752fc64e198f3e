#include "egonet/error.hpp"

namespace egonet {

ParseError::ParseError(std::size_t line, const std::string& detail, const std::string& source)
    : Error((source.empty() ? "line " : source + ":") + std::to_string(line) + ": " + detail),
      line_(line),
      detail_(detail) {}

}  // namespace egonet

#include "quatfhe/errors.hpp"

#include <sstream>
#include <utility>

namespace quatfhe {

namespace {

std::string describe_parse_error(std::size_t offset,
                                 const std::vector<std::string>& expected,
                                 const std::string& found) {
  std::ostringstream os;
  os << "parse error at offset " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : Error(describe_parse_error(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

UnboundVariable::UnboundVariable(std::string name)
    : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}

}  // namespace quatfhe

#pragma once

#include <stdexcept>
#include <string>

namespace treembed {

// Error taxonomy maps onto CLI exit codes:
//   ArgError -> 2, IoError -> 3, FormatError (and ParseError) -> 4.
struct ArgError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph text parse failure; message carries the 1-based line number.
struct ParseError : FormatError {
  using FormatError::FormatError;
};

}  // namespace treembed

#pragma once

#include <ginijel/dataset.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace ginijel::cli {

/// Malformed or unreadable input. The message names the file and, where it
/// applies, the line and column.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvSchema {
  std::string x_col;
  std::string y_col;
  char delimiter = ',';
};

/// Reads a header-led delimited file. Fields may be double-quoted with ""
/// escapes; CRLF line ends and a UTF-8 byte-order mark are accepted. The x
/// column must parse fully as a finite real; y cells are opaque labels.
Dataset parse_dataset(std::istream& in, const CsvSchema& schema,
                      const std::string& source = "<input>");

Dataset read_dataset(const std::string& path, const CsvSchema& schema);

/// Writes the dataset back as two columns, x at 17 significant digits.
void write_dataset(std::ostream& out, const Dataset& d, const CsvSchema& schema);

}  // namespace ginijel::cli

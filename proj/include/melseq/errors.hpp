#pragma once

#include <stdexcept>
#include <string>

namespace melseq {

// Bad or unusable input data (files, corpora, artifacts).
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tokenizer/parser failure with source location.
struct parse_error : data_error {
  parse_error(const std::string& msg, int line_, int col_)
      : data_error(msg + " at line " + std::to_string(line_) + ", column " +
                   std::to_string(col_)),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

// Non-finite values or diverging numerics.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched alphabet sizes / parameter shapes.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace melseq

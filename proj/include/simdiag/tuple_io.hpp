#pragma once

#include <iosfwd>
#include <string>

#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

// Plain-text tuple format:
//   - first non-empty, non-comment line: "n K"
//   - then K blocks of n lines, each with n whitespace-separated entries
//   - '#' starts a comment that runs to the end of the line
// Entries are either a real literal ("1.5", "-3e-2") or a complex token of
// the form re+imi / re-imi with a trailing 'i' ("1.5+0.5i", "2-1e-3i").
// Purely imaginary values are written with an explicit zero real part.

Complex parse_complex(const std::string& token);
std::string format_complex(const Complex& value);

MatrixTuple read_tuple(std::istream& in);
MatrixTuple read_tuple_file(const std::string& path);

void write_tuple(std::ostream& out, const MatrixTuple& tuple);
void write_tuple_file(const std::string& path, const MatrixTuple& tuple);

}  // namespace simdiag

#pragma once

#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "apnkit/boolean_function.hpp"
#include "apnkit/vectorial.hpp"

namespace apn {

/// One line of space-separated hexadecimal images in index order; m is
/// inferred from the image count. Images must be < 2^n.
VectorialFunction parse_vectorial(std::string_view line, int n);
/// Images as lower-case hex, padded to ceil(n/4) digits, single spaces.
std::string format_vectorial(const VectorialFunction& f);

/// Calls `sink(function, line_number)` for each non-blank, non-comment line.
/// Lines starting with '#' are comments. Throws ParseError carrying the line
/// number on malformed input.
void read_vectorial_lines(std::istream& in, int n,
                          const std::function<void(VectorialFunction, std::size_t)>& sink);
std::vector<VectorialFunction> read_vectorial_file(const std::string& path, int n);

void read_boolean_lines(std::istream& in, int m, const std::function<void(BooleanFunction, std::size_t)>& sink);
std::vector<BooleanFunction> read_boolean_file(const std::string& path, int m);

std::vector<Rational> read_rationals(std::istream& in);

}  // namespace apn

#pragma once

#include <string_view>

#include "qprobe/program.hpp"

namespace qprobe {

// Parses QPL-mini source text into a validated Program. The first defined
// subroutine becomes the entry unless `entry` is given. Throws ParseError
// with line/column on syntax errors.
Program parse_program(std::string_view source, std::string entry = "");

}  // namespace qprobe

#pragma once

#include <string>
#include <string_view>

#include "docrank/java_ast.hpp"

namespace docrank::java {

// Parses one compilation unit. Empty or comment-only input yields a unit with
// no types. Throws ParseError (with line and column) on syntax outside the
// supported subset.
SourceUnit parse_unit(std::string_view source, const std::string& path = {});

}  // namespace docrank::java

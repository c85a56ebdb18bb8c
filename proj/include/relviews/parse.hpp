#pragma once

#include "relviews/spatial.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace relviews {

// Name resolution for the text syntax of expressions and assertions.
struct ParseScope {
    // Location bases readable from expressions ("k", "arg" for "arg[1]").
    std::set<std::string> locations;
    std::map<std::string, Value> constants;
    std::set<std::string> macros;
    std::set<std::string> methods;
};

// Location base names of a location table.
std::set<std::string> location_bases(const std::vector<std::string>& table);

// Expressions: integers, names, loc[E], mytid(), ! - + == != < <= > >= && ||.
// Names of locations in `scope` become reads, constants become values and
// anything else is a logical variable.
Expr parse_expr(const std::string& text, const ParseScope& scope);
// A location operand: "name" or "name[E]" (a leading & is ignored).
LocRef parse_loc(const std::string& text, const ParseScope& scope);

// Assertions:
//   emp | true | false | E | l |-> E | l |=> E | l |-/-> E
//   | todo(T, m, A, R) | done(T, m, A, R) | box(P) | P * P | P \/ P | ~P
//   | exists X Y. P | bigstar j. P | macro(E, ...)
// `_` in an argument position is an anonymous existential.
Spatial parse_spatial(const std::string& text, const ParseScope& scope);

} // namespace relviews

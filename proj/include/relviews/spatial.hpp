#pragma once

#include "relviews/expr.hpp"
#include "relviews/state.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace relviews {

// View assertions over (local, shared) world pairs:
//   emp | true | false | E | E |-> F | E |=> F | [todo(m,a,r)]_T | [done(m,a,r)]_T
//   | box(pi) | pi * pi | pi \/ pi | ~pi | exists X. pi | macro(args) | *_{j} pi
// Pure formulas occupy no resources. `|->` describes the concrete heap,
// `|=>` the abstract heap.
struct Spatial {
    enum class Kind { Emp, True, False, Pure, PointsTo, APointsTo, Token, Box, Star, Or, Not, Exists, Macro, BigStar };

    Kind kind = Kind::Emp;
    Expr e1;   // Pure condition; points-to value; token thread
    Expr e2;   // token argument
    Expr e3;   // token return
    LocRef loc;
    TokenKind token = TokenKind::Todo;
    std::string name; // token method; Exists/BigStar variable; Macro name
    std::vector<Expr> args; // Macro arguments
    std::vector<Spatial> kids;

    std::string str() const;
    bool operator==(const Spatial& o) const;
};

namespace sp {
Spatial emp();
Spatial truth();
Spatial falsity();
Spatial pure(Expr e);
Spatial points_to(LocRef l, Expr v);
Spatial apoints_to(LocRef l, Expr v);
Spatial token(TokenKind k, Expr thread, std::string method, Expr arg, Expr ret);
Spatial box(Spatial p);
Spatial star(Spatial a, Spatial b);
Spatial star(const std::vector<Spatial>& parts);
Spatial disj(Spatial a, Spatial b);
Spatial negate(Spatial a);
Spatial exists(std::string var, Spatial body);
Spatial macro(std::string name, std::vector<Expr> args);
Spatial bigstar(std::string var, Spatial body);
} // namespace sp

struct MacroDef {
    std::vector<std::string> params;
    Spatial body;
};

using MacroTable = std::map<std::string, MacroDef>;

// Expands macros and iterated stars; rejects recursive macros and arity
// mismatches with ModelError.
Spatial expand(const Spatial& p, const MacroTable& macros, int threads);
// Binds |-> locations to the concrete table and |=> to the abstract one.
void bind_spatial(Spatial& p, const Domains& d);
void free_lvars(const Spatial& p, std::set<std::string>& out);
Spatial substitute(const Spatial& p, const Interpretation& interp);
bool contains_box(const Spatial& p);
bool is_pure(const Spatial& p);

struct SpatialContext {
    const Domains* domains = nullptr;
    // Universe used for `true` and spatial negation when generating
    // extensional sets. Optional.
    const std::vector<WorldTriple>* universe = nullptr;
};

// Satisfaction of pi by a (local, shared) pair under an interpretation.
bool satisfies(const WorldTriple& local, const WorldTriple& shared, const Interpretation& i, const Spatial& p,
               const SpatialContext& ctx);

// Every sub-triple of `whole` that satisfies pi exactly as a local part
// (with an empty shared part).
std::vector<WorldTriple> fragments(const Spatial& p, const WorldTriple& whole, const Interpretation& i,
                                   const SpatialContext& ctx);

enum class GenerateMode {
    Exact,        // boxes rejected; true/~ use the universe
    LocalOverApprox, // boxes contribute the empty local part
};

// Every triple satisfying pi as a local part (shared part ignored under
// LocalOverApprox, which may over-approximate and must be filtered by
// `satisfies`).
std::vector<WorldTriple> generate(const Spatial& p, const Interpretation& i, const SpatialContext& ctx,
                                  GenerateMode mode);

} // namespace relviews

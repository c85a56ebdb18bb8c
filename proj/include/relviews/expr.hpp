#pragma once

#include "relviews/state.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace relviews {

// Total map from logical variables to values. Kept sorted by name.
class Interpretation {
public:
    Interpretation() = default;

    std::optional<Value> lookup(const std::string& name) const;
    Interpretation with(const std::string& name, Value v) const;
    void bind(const std::string& name, Value v);
    const std::vector<std::pair<std::string, Value>>& bindings() const { return vars_; }
    std::string str() const;

    bool operator==(const Interpretation&) const = default;

private:
    std::vector<std::pair<std::string, Value>> vars_;
};

// Every interpretation of `vars` over `values`, in lexicographic order.
std::vector<Interpretation> enumerate_interpretations(const Interpretation& base, const std::set<std::string>& vars,
                                                      const std::vector<Value>& values);

struct Expr;

// A program location: a plain name (`L`) or an array cell (`res[E]` resolves
// to the location named `res[<value of E>]`).
struct LocRef {
    std::string base;
    std::shared_ptr<const Expr> index;
    // Filled by bind(): slot of the plain name, or slot per index value.
    int plain_slot = -1;
    std::vector<int> indexed_slots; // by value - kMinValue
    bool bound = false;

    std::string str() const;
};

enum class ExprKind { Const, LVar, Self, Read, Plus, Minus, Eq, Ne, Lt, Le, Not, And, Or };

struct Expr {
    ExprKind kind = ExprKind::Const;
    Value value = 0;
    std::string name;         // LVar
    LocRef loc;               // Read
    std::vector<Expr> kids;   // operators

    static Expr constant(Value v);
    static Expr lvar(std::string name);
    static Expr self();
    static Expr read(LocRef loc);
    static Expr binary(ExprKind k, Expr a, Expr b);
    static Expr negate(Expr a);

    std::string str() const;
    bool operator==(const Expr& o) const;
};

struct EvalEnv {
    const Heap* heap = nullptr;
    const Interpretation* interp = nullptr;
    ThreadId self = 1;
    Value modulus = 1;
};

// Resolves a location against the table it was bound to; nullopt when the
// location is not declared.
std::optional<std::size_t> resolve_location(const LocRef& loc, const EvalEnv& env);

// nullopt when a read location is absent or undeclared.
std::optional<Value> try_eval(const Expr& e, const EvalEnv& env);
// Throws UndefinedLocation when a read location is absent.
Value eval_expr(const Expr& e, const Heap& heap, const Interpretation& interp, ThreadId self, Value modulus);

// Binds every location reference in `e` to slots of `table`.
void bind_locations(Expr& e, const std::vector<std::string>& table, const std::vector<Value>& index_values);
void bind_location(LocRef& loc, const std::vector<std::string>& table, const std::vector<Value>& index_values);

// Replaces logical variables by constants.
Expr substitute(const Expr& e, const Interpretation& interp);
void free_lvars(const Expr& e, std::set<std::string>& out);
bool reads_heap(const Expr& e);

} // namespace relviews

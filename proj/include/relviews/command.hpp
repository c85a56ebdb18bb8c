#pragma once

#include "relviews/expr.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace relviews {

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

// Primitive command instance: a transformer name with location and value
// operands. `body` is used by `atomic`, whose transformer runs a whole
// command to completion in one step.
struct PrimCommand {
    std::string name;
    std::vector<LocRef> locs;
    std::vector<Expr> args;
    CommandPtr body;

    std::string str() const;
    bool operator==(const PrimCommand& o) const;
};

using PrimPtr = std::shared_ptr<const PrimCommand>;

const PrimPtr& id_prim();

struct Command {
    enum class Kind { Prim, Seq, Choice, Iter, Skip };

    Kind kind = Kind::Skip;
    PrimPtr prim;
    CommandPtr first;
    CommandPtr second;
    std::size_t hash = 0;

    std::string str() const;
};

bool same_command(const CommandPtr& a, const CommandPtr& b);

struct CommandHash {
    std::size_t operator()(const CommandPtr& c) const noexcept { return c->hash; }
};
struct CommandEq {
    bool operator()(const CommandPtr& a, const CommandPtr& b) const { return same_command(a, b); }
};

namespace cmd {
CommandPtr skip();
CommandPtr prim(PrimPtr p);
CommandPtr prim(PrimCommand p);
CommandPtr seq(CommandPtr a, CommandPtr b);
CommandPtr seq(const std::vector<CommandPtr>& parts);
CommandPtr choice(CommandPtr a, CommandPtr b);
CommandPtr iter(CommandPtr c);

PrimCommand id();
PrimCommand assume(Expr e);
PrimCommand store(LocRef l, Expr e);
PrimCommand load(LocRef dst, LocRef src);
PrimCommand cas_succ(LocRef l, Expr expected, Expr desired);
PrimCommand cas_fail(LocRef l, Expr expected, Expr desired);
PrimCommand atomic(CommandPtr body);

// if E then C1 else C2  ==  (assume(E); C1) + (assume(!E); C2)
CommandPtr if_then_else(const Expr& cond, CommandPtr then_branch, CommandPtr else_branch);
// while E do C  ==  (assume(E); C)*; assume(!E)
CommandPtr while_do(const Expr& cond, CommandPtr body);
// CAS(l, old, new) as a choice between the two atomic outcomes.
CommandPtr cas(const LocRef& l, const Expr& expected, const Expr& desired, CommandPtr on_success,
               CommandPtr on_failure);
} // namespace cmd

struct Outcome {
    std::vector<Heap> states;
    bool fault = false;
};

struct TransformerEntry {
    std::size_t loc_arity = 0;
    std::size_t arg_arity = 0;
    bool takes_body = false;
    std::function<Outcome(const PrimCommand&, const Heap&, ThreadId, Value modulus)> apply;
};

// Primitive-command name -> state transformer. The same table serves
// concrete and abstract heaps; operands are bound to the right location
// table at load time.
class TransformerTable {
public:
    static const TransformerTable& builtin();

    bool contains(const std::string& name) const { return entries_.count(name) != 0; }
    const TransformerEntry& at(const std::string& name) const;
    Outcome apply(const PrimCommand& p, const Heap& sigma, ThreadId t, Value modulus) const;
    // Throws ModelError when a primitive is undeclared or has the wrong arity.
    void validate(const PrimCommand& p) const;
    void validate(const CommandPtr& c) const;
    std::vector<std::string> names() const;

    void add(const std::string& name, TransformerEntry e) { entries_[name] = std::move(e); }

private:
    std::map<std::string, TransformerEntry> entries_;
};

struct Transition {
    PrimPtr prim;
    CommandPtr next;
};

// Structural steps C --alpha--> C'.
std::vector<Transition> step(const CommandPtr& c);

struct StateTransition {
    PrimPtr prim;
    CommandPtr next;
    Heap state;
};

struct StateStepResult {
    std::vector<StateTransition> transitions;
    bool fault = false;
    std::string fault_prim;
};

StateStepResult state_step(const CommandPtr& c, const Heap& sigma, ThreadId t, Value modulus,
                           const TransformerTable& table = TransformerTable::builtin());

// All final states of running `c` to completion from `sigma`.
Outcome run_to_completion(const CommandPtr& c, const Heap& sigma, ThreadId t, Value modulus,
                          const TransformerTable& table = TransformerTable::builtin());

// Every command reachable from `c` by structural steps, including `c`.
std::vector<CommandPtr> derivatives(const CommandPtr& c);

// Distinct primitives occurring in `c` (including atomic bodies' owners only).
std::vector<PrimPtr> primitives(const CommandPtr& c);

CommandPtr substitute(const CommandPtr& c, const Interpretation& interp);
// Copy of `c` with every location operand bound to `table`.
CommandPtr bind_command(const CommandPtr& c, const std::vector<std::string>& table, const std::vector<Value>& values);

} // namespace relviews

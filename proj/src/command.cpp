#include "relviews/command.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace relviews {

std::string PrimCommand::str() const {
    if (name == "atomic") return "atomic{" + (body ? body->str() : std::string("?")) + "}";
    std::ostringstream os;
    os << name;
    if (locs.empty() && args.empty()) return os.str();
    os << '(';
    bool first = true;
    for (const auto& l : locs) {
        if (!first) os << ", ";
        first = false;
        os << l.str();
    }
    for (const auto& a : args) {
        if (!first) os << ", ";
        first = false;
        os << a.str();
    }
    os << ')';
    return os.str();
}

bool PrimCommand::operator==(const PrimCommand& o) const {
    if (name != o.name || args != o.args || locs.size() != o.locs.size()) return false;
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (locs[i].str() != o.locs[i].str()) return false;
    }
    if (!body || !o.body) return !body && !o.body;
    return same_command(body, o.body);
}

const PrimPtr& id_prim() {
    static const PrimPtr p = std::make_shared<const PrimCommand>(cmd::id());
    return p;
}

std::string Command::str() const {
    switch (kind) {
    case Kind::Skip: return "skip";
    case Kind::Prim: return prim->str();
    case Kind::Seq: return first->str() + "; " + second->str();
    case Kind::Choice: return "(" + first->str() + ") + (" + second->str() + ")";
    case Kind::Iter: return "(" + first->str() + ")*";
    }
    return "?";
}

bool same_command(const CommandPtr& a, const CommandPtr& b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
    case Command::Kind::Skip: return true;
    case Command::Kind::Prim: return a->prim == b->prim || *a->prim == *b->prim;
    case Command::Kind::Iter: return same_command(a->first, b->first);
    default: return same_command(a->first, b->first) && same_command(a->second, b->second);
    }
}

namespace {
std::size_t combine(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

CommandPtr make(Command::Kind k, PrimPtr p, CommandPtr a, CommandPtr b) {
    auto c = std::make_shared<Command>();
    c->kind = k;
    std::size_t h = static_cast<std::size_t>(k) * 0x100000001b3ULL;
    if (p) h = combine(h, std::hash<std::string>{}(p->str()));
    if (a) h = combine(h, a->hash);
    if (b) h = combine(h, b->hash);
    c->prim = std::move(p);
    c->first = std::move(a);
    c->second = std::move(b);
    c->hash = h;
    return c;
}
} // namespace

namespace cmd {

CommandPtr skip() {
    static const CommandPtr s = make(Command::Kind::Skip, nullptr, nullptr, nullptr);
    return s;
}

CommandPtr prim(PrimPtr p) { return make(Command::Kind::Prim, std::move(p), nullptr, nullptr); }
CommandPtr prim(PrimCommand p) { return prim(std::make_shared<const PrimCommand>(std::move(p))); }
CommandPtr seq(CommandPtr a, CommandPtr b) { return make(Command::Kind::Seq, nullptr, std::move(a), std::move(b)); }

CommandPtr seq(const std::vector<CommandPtr>& parts) {
    if (parts.empty()) return skip();
    CommandPtr out = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) out = seq(*it, out);
    return out;
}

CommandPtr choice(CommandPtr a, CommandPtr b) {
    return make(Command::Kind::Choice, nullptr, std::move(a), std::move(b));
}
CommandPtr iter(CommandPtr c) { return make(Command::Kind::Iter, nullptr, std::move(c), nullptr); }

PrimCommand id() { return PrimCommand{"id", {}, {}, nullptr}; }
PrimCommand assume(Expr e) { return PrimCommand{"assume", {}, {std::move(e)}, nullptr}; }
PrimCommand store(LocRef l, Expr e) { return PrimCommand{"store", {std::move(l)}, {std::move(e)}, nullptr}; }
PrimCommand load(LocRef dst, LocRef src) { return PrimCommand{"load", {std::move(dst), std::move(src)}, {}, nullptr}; }
PrimCommand cas_succ(LocRef l, Expr expected, Expr desired) {
    return PrimCommand{"cas_succ", {std::move(l)}, {std::move(expected), std::move(desired)}, nullptr};
}
PrimCommand cas_fail(LocRef l, Expr expected, Expr desired) {
    return PrimCommand{"cas_fail", {std::move(l)}, {std::move(expected), std::move(desired)}, nullptr};
}
PrimCommand atomic(CommandPtr body) { return PrimCommand{"atomic", {}, {}, std::move(body)}; }

CommandPtr if_then_else(const Expr& cond, CommandPtr then_branch, CommandPtr else_branch) {
    return choice(seq(prim(assume(cond)), std::move(then_branch)),
                  seq(prim(assume(Expr::negate(cond))), std::move(else_branch)));
}

CommandPtr while_do(const Expr& cond, CommandPtr body) {
    return seq(iter(seq(prim(assume(cond)), std::move(body))), prim(assume(Expr::negate(cond))));
}

CommandPtr cas(const LocRef& l, const Expr& expected, const Expr& desired, CommandPtr on_success,
               CommandPtr on_failure) {
    return choice(seq(prim(cas_succ(l, expected, desired)), std::move(on_success)),
                  seq(prim(cas_fail(l, expected, desired)), std::move(on_failure)));
}

} // namespace cmd

namespace {

Outcome single(const Heap& h) { return Outcome{{h}, false}; }
Outcome blocked() { return Outcome{{}, false}; }
Outcome faulted() { return Outcome{{}, true}; }

// Reads through a bound location; nullopt when undeclared or absent.
std::optional<std::size_t> present_slot(const LocRef& l, const Heap& h, const EvalEnv& env) {
    auto slot = resolve_location(l, env);
    if (!slot || !h.has(*slot)) return std::nullopt;
    return slot;
}

TransformerTable make_builtin() {
    TransformerTable t;
    t.add("id", {0, 0, false, [](const PrimCommand&, const Heap& h, ThreadId, Value) { return single(h); }});
    t.add("assume", {0, 1, false, [](const PrimCommand& p, const Heap& h, ThreadId tid, Value mod) {
              EvalEnv env{&h, nullptr, tid, mod};
              auto v = try_eval(p.args[0], env);
              if (!v) return faulted();
              return *v != 0 ? single(h) : blocked();
          }});
    t.add("store", {1, 1, false, [](const PrimCommand& p, const Heap& h, ThreadId tid, Value mod) {
              EvalEnv env{&h, nullptr, tid, mod};
              auto slot = present_slot(p.locs[0], h, env);
              auto v = try_eval(p.args[0], env);
              if (!slot || !v) return faulted();
              Heap out = h;
              out.set(*slot, *v);
              return single(out);
          }});
    t.add("load", {2, 0, false, [](const PrimCommand& p, const Heap& h, ThreadId tid, Value mod) {
              EvalEnv env{&h, nullptr, tid, mod};
              auto dst = present_slot(p.locs[0], h, env);
              auto src = present_slot(p.locs[1], h, env);
              if (!dst || !src) return faulted();
              Heap out = h;
              out.set(*dst, *h.get(*src));
              return single(out);
          }});
    t.add("cas_succ", {1, 2, false, [](const PrimCommand& p, const Heap& h, ThreadId tid, Value mod) {
              EvalEnv env{&h, nullptr, tid, mod};
              auto slot = present_slot(p.locs[0], h, env);
              auto expected = try_eval(p.args[0], env);
              auto desired = try_eval(p.args[1], env);
              if (!slot || !expected || !desired) return faulted();
              if (*h.get(*slot) != *expected) return blocked();
              Heap out = h;
              out.set(*slot, *desired);
              return single(out);
          }});
    t.add("cas_fail", {1, 2, false, [](const PrimCommand& p, const Heap& h, ThreadId tid, Value mod) {
              EvalEnv env{&h, nullptr, tid, mod};
              auto slot = present_slot(p.locs[0], h, env);
              auto expected = try_eval(p.args[0], env);
              auto desired = try_eval(p.args[1], env);
              if (!slot || !expected || !desired) return faulted();
              return *h.get(*slot) != *expected ? single(h) : blocked();
          }});
    t.add("atomic", {0, 0, true, [](const PrimCommand& p, const Heap& h, ThreadId tid, Value mod) {
              return run_to_completion(p.body, h, tid, mod, TransformerTable::builtin());
          }});
    return t;
}

} // namespace

const TransformerTable& TransformerTable::builtin() {
    static const TransformerTable table = make_builtin();
    return table;
}

const TransformerEntry& TransformerTable::at(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw Error(ErrorKind::ModelError, "undeclared primitive command " + name);
    return it->second;
}

Outcome TransformerTable::apply(const PrimCommand& p, const Heap& sigma, ThreadId t, Value modulus) const {
    return at(p.name).apply(p, sigma, t, modulus);
}

void TransformerTable::validate(const PrimCommand& p) const {
    const auto& e = at(p.name);
    if (e.loc_arity != p.locs.size() || e.arg_arity != p.args.size() || e.takes_body != static_cast<bool>(p.body)) {
        throw Error(ErrorKind::ModelError, "arity mismatch for primitive " + p.name);
    }
    if (p.body) validate(p.body);
}

void TransformerTable::validate(const CommandPtr& c) const {
    switch (c->kind) {
    case Command::Kind::Skip: return;
    case Command::Kind::Prim: validate(*c->prim); return;
    case Command::Kind::Iter: validate(c->first); return;
    default:
        validate(c->first);
        validate(c->second);
    }
}

std::vector<std::string> TransformerTable::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

std::vector<Transition> step(const CommandPtr& c) {
    using K = Command::Kind;
    switch (c->kind) {
    case K::Skip: return {};
    case K::Prim: return {{c->prim, cmd::skip()}};
    case K::Choice: return {{id_prim(), c->first}, {id_prim(), c->second}};
    case K::Iter: return {{id_prim(), cmd::seq(c->first, c)}, {id_prim(), cmd::skip()}};
    case K::Seq: {
        if (c->first->kind == K::Skip) return {{id_prim(), c->second}};
        std::vector<Transition> out;
        for (auto& tr : step(c->first)) out.push_back({tr.prim, cmd::seq(tr.next, c->second)});
        return out;
    }
    }
    return {};
}

StateStepResult state_step(const CommandPtr& c, const Heap& sigma, ThreadId t, Value modulus,
                           const TransformerTable& table) {
    StateStepResult out;
    for (auto& tr : step(c)) {
        Outcome o = table.apply(*tr.prim, sigma, t, modulus);
        if (o.fault) {
            out.fault = true;
            out.fault_prim = tr.prim->str();
        }
        for (auto& s : o.states) out.transitions.push_back({tr.prim, tr.next, s});
    }
    return out;
}

Outcome run_to_completion(const CommandPtr& c, const Heap& sigma, ThreadId t, Value modulus,
                          const TransformerTable& table) {
    struct Key {
        CommandPtr c;
        Heap h;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.c->hash ^ (HeapHash{}(k.h) * 31); }
    };
    struct KeyEq {
        bool operator()(const Key& a, const Key& b) const { return a.h == b.h && same_command(a.c, b.c); }
    };
    std::unordered_set<Key, KeyHash, KeyEq> seen;
    std::vector<Key> work{{c, sigma}};
    seen.insert(work.back());
    Outcome out;
    std::set<Heap> finals;
    while (!work.empty()) {
        Key k = work.back();
        work.pop_back();
        if (k.c->kind == Command::Kind::Skip) {
            finals.insert(k.h);
            continue;
        }
        auto r = state_step(k.c, k.h, t, modulus, table);
        if (r.fault) out.fault = true;
        for (auto& tr : r.transitions) {
            Key nk{tr.next, tr.state};
            if (seen.insert(nk).second) work.push_back(nk);
        }
    }
    out.states.assign(finals.begin(), finals.end());
    return out;
}

std::vector<CommandPtr> derivatives(const CommandPtr& c) {
    std::unordered_set<CommandPtr, CommandHash, CommandEq> seen{c};
    std::vector<CommandPtr> order{c};
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto& tr : step(order[i])) {
            if (seen.insert(tr.next).second) order.push_back(tr.next);
        }
    }
    return order;
}

namespace {
void collect_prims(const CommandPtr& c, std::vector<PrimPtr>& out) {
    switch (c->kind) {
    case Command::Kind::Skip: return;
    case Command::Kind::Prim:
        if (std::none_of(out.begin(), out.end(), [&](const PrimPtr& p) { return *p == *c->prim; })) {
            out.push_back(c->prim);
        }
        return;
    case Command::Kind::Iter: collect_prims(c->first, out); return;
    default:
        collect_prims(c->first, out);
        collect_prims(c->second, out);
    }
}

template <typename F>
CommandPtr rebuild(const CommandPtr& c, F&& on_prim) {
    using K = Command::Kind;
    switch (c->kind) {
    case K::Skip: return c;
    case K::Prim: return cmd::prim(on_prim(*c->prim));
    case K::Iter: return cmd::iter(rebuild(c->first, on_prim));
    case K::Seq: return cmd::seq(rebuild(c->first, on_prim), rebuild(c->second, on_prim));
    case K::Choice: return cmd::choice(rebuild(c->first, on_prim), rebuild(c->second, on_prim));
    }
    return c;
}
} // namespace

std::vector<PrimPtr> primitives(const CommandPtr& c) {
    std::vector<PrimPtr> out;
    collect_prims(c, out);
    return out;
}

CommandPtr substitute(const CommandPtr& c, const Interpretation& interp) {
    return rebuild(c, [&](const PrimCommand& p) {
        PrimCommand q = p;
        for (auto& a : q.args) a = substitute(a, interp);
        for (auto& l : q.locs) {
            if (l.index) l.index = std::make_shared<const Expr>(substitute(*l.index, interp));
        }
        if (q.body) q.body = substitute(q.body, interp);
        return q;
    });
}

CommandPtr bind_command(const CommandPtr& c, const std::vector<std::string>& table, const std::vector<Value>& values) {
    return rebuild(c, [&](const PrimCommand& p) {
        PrimCommand q = p;
        for (auto& a : q.args) bind_locations(a, table, values);
        for (auto& l : q.locs) bind_location(l, table, values);
        if (q.body) q.body = bind_command(q.body, table, values);
        return q;
    });
}

} // namespace relviews

#include "relviews/spatial.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace relviews {

namespace sp {
namespace {
Spatial node(Spatial::Kind k) {
    Spatial s;
    s.kind = k;
    return s;
}
} // namespace

Spatial emp() { return node(Spatial::Kind::Emp); }
Spatial truth() { return node(Spatial::Kind::True); }
Spatial falsity() { return node(Spatial::Kind::False); }

Spatial pure(Expr e) {
    auto s = node(Spatial::Kind::Pure);
    s.e1 = std::move(e);
    return s;
}

Spatial points_to(LocRef l, Expr v) {
    auto s = node(Spatial::Kind::PointsTo);
    s.loc = std::move(l);
    s.e1 = std::move(v);
    return s;
}

Spatial apoints_to(LocRef l, Expr v) {
    auto s = node(Spatial::Kind::APointsTo);
    s.loc = std::move(l);
    s.e1 = std::move(v);
    return s;
}

Spatial token(TokenKind k, Expr thread, std::string method, Expr arg, Expr ret) {
    auto s = node(Spatial::Kind::Token);
    s.token = k;
    s.e1 = std::move(thread);
    s.name = std::move(method);
    s.e2 = std::move(arg);
    s.e3 = std::move(ret);
    return s;
}

Spatial box(Spatial p) {
    auto s = node(Spatial::Kind::Box);
    s.kids = {std::move(p)};
    return s;
}

Spatial star(Spatial a, Spatial b) {
    auto s = node(Spatial::Kind::Star);
    s.kids = {std::move(a), std::move(b)};
    return s;
}

Spatial star(const std::vector<Spatial>& parts) {
    if (parts.empty()) return emp();
    Spatial out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = star(out, parts[i]);
    return out;
}

Spatial disj(Spatial a, Spatial b) {
    auto s = node(Spatial::Kind::Or);
    s.kids = {std::move(a), std::move(b)};
    return s;
}

Spatial negate(Spatial a) {
    auto s = node(Spatial::Kind::Not);
    s.kids = {std::move(a)};
    return s;
}

Spatial exists(std::string var, Spatial body) {
    auto s = node(Spatial::Kind::Exists);
    s.name = std::move(var);
    s.kids = {std::move(body)};
    return s;
}

Spatial macro(std::string name, std::vector<Expr> args) {
    auto s = node(Spatial::Kind::Macro);
    s.name = std::move(name);
    s.args = std::move(args);
    return s;
}

Spatial bigstar(std::string var, Spatial body) {
    auto s = node(Spatial::Kind::BigStar);
    s.name = std::move(var);
    s.kids = {std::move(body)};
    return s;
}
} // namespace sp

std::string Spatial::str() const {
    switch (kind) {
    case Kind::Emp: return "emp";
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Pure: return e1.str();
    case Kind::PointsTo: return loc.str() + " |-> " + e1.str();
    case Kind::APointsTo: return loc.str() + " |=> " + e1.str();
    case Kind::Token:
        return std::string("[") + (token == TokenKind::Todo ? "todo" : "done") + "(" + name + "(" + e2.str() + "," +
               e3.str() + "))]_" + e1.str();
    case Kind::Box: return "<" + kids[0].str() + ">";
    case Kind::Star: return "(" + kids[0].str() + " * " + kids[1].str() + ")";
    case Kind::Or: return "(" + kids[0].str() + " \\/ " + kids[1].str() + ")";
    case Kind::Not: return "~" + kids[0].str();
    case Kind::Exists: return "(exists " + name + ". " + kids[0].str() + ")";
    case Kind::BigStar: return "(*_" + name + " " + kids[0].str() + ")";
    case Kind::Macro: {
        std::string s = name + "(";
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].str();
        return s + ")";
    }
    }
    return "?";
}

bool Spatial::operator==(const Spatial& o) const {
    if (kind != o.kind || name != o.name || kids != o.kids) return false;
    switch (kind) {
    case Kind::Pure: return e1 == o.e1;
    case Kind::PointsTo:
    case Kind::APointsTo: return loc.str() == o.loc.str() && e1 == o.e1;
    case Kind::Token: return token == o.token && e1 == o.e1 && e2 == o.e2 && e3 == o.e3;
    case Kind::Macro: return args == o.args;
    default: return true;
    }
}

namespace {

// Expression-level substitution of variables by expressions.
Expr subst_expr(const Expr& e, const std::map<std::string, Expr>& m) {
    if (e.kind == ExprKind::LVar) {
        auto it = m.find(e.name);
        return it == m.end() ? e : it->second;
    }
    Expr out = e;
    if (out.kind == ExprKind::Read && out.loc.index) {
        out.loc.index = std::make_shared<const Expr>(subst_expr(*out.loc.index, m));
    }
    for (auto& k : out.kids) k = subst_expr(k, m);
    return out;
}

Spatial subst_spatial(const Spatial& p, const std::map<std::string, Expr>& m) {
    Spatial out = p;
    if (p.kind == Spatial::Kind::Exists || p.kind == Spatial::Kind::BigStar) {
        if (m.count(p.name)) {
            auto inner = m;
            inner.erase(p.name);
            out.kids[0] = subst_spatial(p.kids[0], inner);
            return out;
        }
    }
    out.e1 = subst_expr(p.e1, m);
    out.e2 = subst_expr(p.e2, m);
    out.e3 = subst_expr(p.e3, m);
    if (out.loc.index) out.loc.index = std::make_shared<const Expr>(subst_expr(*out.loc.index, m));
    for (auto& a : out.args) a = subst_expr(a, m);
    for (auto& k : out.kids) k = subst_spatial(k, m);
    return out;
}

// Renames every bound variable in `p` apart. Numbering restarts for each
// expanded assertion so equal text gives equal results.
Spatial rename_bound(const Spatial& p, int& counter) {
    Spatial out = p;
    if (p.kind == Spatial::Kind::Exists || p.kind == Spatial::Kind::BigStar) {
        std::string fresh = p.name + "#" + std::to_string(counter++);
        out.name = fresh;
        out.kids[0] = rename_bound(subst_spatial(p.kids[0], {{p.name, Expr::lvar(fresh)}}), counter);
        return out;
    }
    for (auto& k : out.kids) k = rename_bound(k, counter);
    return out;
}

Spatial expand_rec(const Spatial& p, const MacroTable& macros, int threads, std::vector<std::string>& stack,
                   int& counter) {
    if (p.kind == Spatial::Kind::Macro) {
        auto it = macros.find(p.name);
        if (it == macros.end()) throw Error(ErrorKind::ModelError, "unknown predicate macro " + p.name);
        if (std::find(stack.begin(), stack.end(), p.name) != stack.end()) {
            throw Error(ErrorKind::ModelError, "recursive predicate macro " + p.name);
        }
        if (it->second.params.size() != p.args.size()) {
            throw Error(ErrorKind::ModelError, "macro " + p.name + " expects " +
                                                   std::to_string(it->second.params.size()) + " arguments");
        }
        std::map<std::string, Expr> m;
        for (std::size_t i = 0; i < p.args.size(); ++i) m[it->second.params[i]] = p.args[i];
        Spatial body = subst_spatial(rename_bound(it->second.body, counter), m);
        stack.push_back(p.name);
        Spatial out = expand_rec(body, macros, threads, stack, counter);
        stack.pop_back();
        return out;
    }
    if (p.kind == Spatial::Kind::BigStar) {
        std::vector<Spatial> parts;
        for (int j = 1; j <= threads; ++j) {
            parts.push_back(expand_rec(subst_spatial(p.kids[0], {{p.name, Expr::constant(j)}}), macros, threads, stack, counter));
        }
        return sp::star(parts);
    }
    Spatial out = p;
    for (auto& k : out.kids) k = expand_rec(k, macros, threads, stack, counter);
    return out;
}

} // namespace

Spatial expand(const Spatial& p, const MacroTable& macros, int threads) {
    std::vector<std::string> stack;
    int counter = 0;
    return expand_rec(p, macros, threads, stack, counter);
}

void bind_spatial(Spatial& p, const Domains& d) {
    if (p.kind == Spatial::Kind::PointsTo) bind_location(p.loc, d.concrete_locations, d.values);
    if (p.kind == Spatial::Kind::APointsTo) bind_location(p.loc, d.abstract_locations, d.values);
    for (auto& k : p.kids) bind_spatial(k, d);
}

void free_lvars(const Spatial& p, std::set<std::string>& out) {
    std::set<std::string> inner;
    free_lvars(p.e1, inner);
    free_lvars(p.e2, inner);
    free_lvars(p.e3, inner);
    if (p.loc.index) free_lvars(*p.loc.index, inner);
    for (const auto& a : p.args) free_lvars(a, inner);
    for (const auto& k : p.kids) free_lvars(k, inner);
    if (p.kind == Spatial::Kind::Exists || p.kind == Spatial::Kind::BigStar) inner.erase(p.name);
    out.insert(inner.begin(), inner.end());
}

Spatial substitute(const Spatial& p, const Interpretation& interp) {
    std::map<std::string, Expr> m;
    for (const auto& [k, v] : interp.bindings()) m[k] = Expr::constant(v);
    return subst_spatial(p, m);
}

bool contains_box(const Spatial& p) {
    if (p.kind == Spatial::Kind::Box) return true;
    return std::any_of(p.kids.begin(), p.kids.end(), [](const Spatial& k) { return contains_box(k); });
}

bool is_pure(const Spatial& p) {
    switch (p.kind) {
    case Spatial::Kind::Emp:
    case Spatial::Kind::Pure:
    case Spatial::Kind::False: return true;
    case Spatial::Kind::Star:
    case Spatial::Kind::Or:
    case Spatial::Kind::Not:
    case Spatial::Kind::Exists: return std::all_of(p.kids.begin(), p.kids.end(), [](const Spatial& k) { return is_pure(k); });
    default: return false;
    }
}

namespace {

// Interpretation plus existential variables whose value is still open.
struct Env {
    Interpretation interp;
    std::vector<std::string> pending;

    bool operator<(const Env& o) const {
        if (interp.bindings() != o.interp.bindings()) return interp.bindings() < o.interp.bindings();
        return pending < o.pending;
    }
    bool operator==(const Env& o) const { return interp == o.interp && pending == o.pending; }

    bool is_pending(const std::string& v) const { return std::find(pending.begin(), pending.end(), v) != pending.end(); }
    void resolve(const std::string& v, Value x) {
        pending.erase(std::remove(pending.begin(), pending.end(), v), pending.end());
        interp.bind(v, x);
    }
};

struct Res {
    WorldTriple part;
    bool open = false;
    Env env;

    bool operator<(const Res& o) const {
        if (part != o.part) return part < o.part;
        if (open != o.open) return open < o.open;
        return env < o.env;
    }
    bool operator==(const Res& o) const { return part == o.part && open == o.open && env == o.env; }
};

void dedupe(std::vector<Res>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

class Engine {
public:
    explicit Engine(const SpatialContext& ctx) : ctx_(ctx), d_(*ctx.domains) {}

    // Resolves the pending variables free in `exprs` by enumeration.
    std::vector<Env> settle(const Env& env, std::initializer_list<const Expr*> exprs) const {
        std::set<std::string> vars;
        for (const Expr* e : exprs) {
            std::set<std::string> fv;
            free_lvars(*e, fv);
            for (const auto& v : fv) {
                if (env.is_pending(v)) vars.insert(v);
            }
        }
        std::vector<Env> out{env};
        for (const auto& v : vars) {
            std::vector<Env> next;
            for (const auto& e : out) {
                for (Value x : d_.values) {
                    Env n = e;
                    n.resolve(v, x);
                    next.push_back(std::move(n));
                }
            }
            out = std::move(next);
        }
        return out;
    }

    std::vector<Env> settle_all(const Env& env, const Spatial& p) const {
        std::set<std::string> fv;
        free_lvars(p, fv);
        std::vector<Env> out{env};
        for (const auto& v : fv) {
            if (!env.is_pending(v)) continue;
            std::vector<Env> next;
            for (const auto& e : out) {
                for (Value x : d_.values) {
                    Env n = e;
                    n.resolve(v, x);
                    next.push_back(std::move(n));
                }
            }
            out = std::move(next);
        }
        return out;
    }

    std::optional<Value> value_of(const Expr& e, const Env& env) const {
        EvalEnv ev{nullptr, &env.interp, 1, d_.modulus};
        return try_eval(e, ev);
    }

    std::optional<std::size_t> slot_of(const LocRef& l, const Env& env) const {
        EvalEnv ev{nullptr, &env.interp, 1, d_.modulus};
        return resolve_location(l, ev);
    }

    // Binds or checks `e` against an observed value.
    std::vector<Env> unify(const Expr& e, Value observed, const Env& env) const {
        if (e.kind == ExprKind::LVar && env.is_pending(e.name)) {
            Env n = env;
            n.resolve(e.name, observed);
            return {n};
        }
        std::vector<Env> out;
        for (auto& s : settle(env, {&e})) {
            auto v = value_of(e, s);
            if (v && *v == observed) out.push_back(std::move(s));
        }
        return out;
    }

    int token_index(const Spatial& p, Value a, Value r) const {
        const int m = d_.method_index(p.name);
        if (m < 0) return -1;
        return d_.alphabet_index({m, a, r});
    }

    // Fragments of `local` satisfying p, relative to `shared`.
    std::vector<Res> match(const Spatial& p, const WorldTriple& local, const WorldTriple& shared, const Env& env) const {
        using K = Spatial::Kind;
        std::vector<Res> out;
        switch (p.kind) {
        case K::Emp: out.push_back({WorldTriple{}, false, env}); break;
        case K::True: out.push_back({WorldTriple{}, true, env}); break;
        case K::False: break;
        case K::Pure:
            for (auto& s : settle(env, {&p.e1})) {
                auto v = value_of(p.e1, s);
                if (v && *v != 0) out.push_back({WorldTriple{}, false, std::move(s)});
            }
            break;
        case K::PointsTo:
        case K::APointsTo: {
            const bool abs = p.kind == K::APointsTo;
            const Heap& h = abs ? local.abstract : local.concrete;
            std::vector<Env> envs{env};
            if (p.loc.index) envs = settle(env, {p.loc.index.get()});
            for (auto& s : envs) {
                auto slot = slot_of(p.loc, s);
                if (!slot || !h.has(*slot)) continue;
                const Value v = *h.get(*slot);
                for (auto& u : unify(p.e1, v, s)) {
                    WorldTriple part;
                    (abs ? part.abstract : part.concrete).set(*slot, v);
                    out.push_back({part, false, std::move(u)});
                }
            }
            break;
        }
        case K::Token: {
            for (auto& s : settle(env, {&p.e1})) {
                auto t = value_of(p.e1, s);
                if (!t || *t < 1 || *t > d_.threads) continue;
                const Token tok = local.tokens.get(*t);
                if (!tok.present()) continue;
                const auto want = p.token == TokenKind::Todo ? TokenKind::Todo : TokenKind::Done;
                if (tok.kind() != want) continue;
                const auto alpha = alphabet();
                const auto& inst = alpha[static_cast<std::size_t>(tok.apcom())];
                if (d_.methods[static_cast<std::size_t>(inst.method)].name != p.name) continue;
                for (auto& ua : unify(p.e2, inst.arg, s)) {
                    for (auto& ur : unify(p.e3, inst.ret, ua)) {
                        WorldTriple part;
                        part.tokens.set(*t, tok);
                        out.push_back({part, false, std::move(ur)});
                    }
                }
            }
            break;
        }
        case K::Box: {
            if (contains_box(p.kids[0])) throw Error(ErrorKind::ModelError, "nested boxed assertion");
            for (auto& r : match(p.kids[0], shared, WorldTriple{}, env)) {
                if (r.open || r.part == shared) out.push_back({WorldTriple{}, false, std::move(r.env)});
            }
            break;
        }
        case K::Star:
            for (auto& ra : match(p.kids[0], local, shared, env)) {
                const WorldTriple rest = world_minus(local, ra.part);
                for (auto& rb : match(p.kids[1], rest, shared, ra.env)) {
                    auto u = compose_worlds(ra.part, rb.part);
                    out.push_back({*u, ra.open || rb.open, std::move(rb.env)});
                }
            }
            break;
        case K::Or:
            out = match(p.kids[0], local, shared, env);
            for (auto& r : match(p.kids[1], local, shared, env)) out.push_back(std::move(r));
            break;
        case K::Not:
            for (auto& s : settle_all(env, p.kids[0])) {
                if (is_pure(p.kids[0])) {
                    if (!covers(match(p.kids[0], WorldTriple{}, shared, s), WorldTriple{})) {
                        out.push_back({WorldTriple{}, false, s});
                    }
                    continue;
                }
                for (const auto& f : subsets(local)) {
                    if (!covers(match(p.kids[0], f, shared, s), f)) out.push_back({f, false, s});
                }
            }
            break;
        case K::Exists: {
            auto outer = env.interp.lookup(p.name);
            Env inner = env;
            inner.interp = Interpretation{};
            for (const auto& [k, v] : env.interp.bindings()) {
                if (k != p.name) inner.interp.bind(k, v);
            }
            inner.pending.push_back(p.name);
            for (auto& r : match(p.kids[0], local, shared, inner)) {
                out.push_back(restore(std::move(r), p.name, outer, env));
            }
            break;
        }
        case K::Macro:
        case K::BigStar: throw Error(ErrorKind::ModelError, "unexpanded assertion " + p.str());
        }
        dedupe(out);
        return out;
    }

    static bool covers(const std::vector<Res>& rs, const WorldTriple& whole) {
        return std::any_of(rs.begin(), rs.end(), [&](const Res& r) { return r.open || r.part == whole; });
    }

    // Leaves the scope of an existential: the outer binding (or pending
    // status) of `var` is restored.
    static Res restore(Res r, const std::string& var, const std::optional<Value>& outer, const Env& before) {
        r.env.pending.erase(std::remove(r.env.pending.begin(), r.env.pending.end(), var), r.env.pending.end());
        Interpretation clean;
        for (const auto& [k, v] : r.env.interp.bindings()) {
            if (k != var) clean.bind(k, v);
        }
        if (outer) clean.bind(var, *outer);
        r.env.interp = clean;
        if (before.is_pending(var)) r.env.pending.push_back(var);
        std::sort(r.env.pending.begin(), r.env.pending.end());
        return r;
    }

    static std::vector<WorldTriple> subsets(const WorldTriple& w) {
        struct Item {
            int kind;
            std::size_t idx;
        };
        std::vector<Item> items;
        for (std::size_t i = 0; i < kMaxLocations; ++i) {
            if (w.concrete.has(i)) items.push_back({0, i});
            if (w.abstract.has(i)) items.push_back({1, i});
        }
        for (std::size_t t = 1; t <= kMaxThreads; ++t) {
            if (w.tokens.get(static_cast<ThreadId>(t)).present()) items.push_back({2, t});
        }
        if (items.size() > 20) throw Error(ErrorKind::UniverseTooLarge, "negation over a fragment with too many cells");
        std::vector<WorldTriple> out;
        for (std::uint32_t mask = 0; mask < (1u << items.size()); ++mask) {
            WorldTriple f;
            for (std::size_t b = 0; b < items.size(); ++b) {
                if (!(mask & (1u << b))) continue;
                const auto& it = items[b];
                if (it.kind == 0) f.concrete.set(it.idx, *w.concrete.get(it.idx));
                if (it.kind == 1) f.abstract.set(it.idx, *w.abstract.get(it.idx));
                if (it.kind == 2) f.tokens.set(static_cast<ThreadId>(it.idx), w.tokens.get(static_cast<ThreadId>(it.idx)));
            }
            out.push_back(f);
        }
        return out;
    }

    struct Gen {
        WorldTriple part;
        Env env;
        bool operator<(const Gen& o) const { return part != o.part ? part < o.part : env < o.env; }
        bool operator==(const Gen& o) const { return part == o.part && env == o.env; }
    };

    std::vector<Gen> gen(const Spatial& p, const Env& env, GenerateMode mode) const {
        using K = Spatial::Kind;
        std::vector<Gen> out;
        switch (p.kind) {
        case K::Emp: out.push_back({WorldTriple{}, env}); break;
        case K::False: break;
        case K::True:
            if (mode != GenerateMode::Exact || !ctx_.universe) {
                throw Error(ErrorKind::ModelError, "`true` outside a boxed assertion cannot be enumerated");
            }
            for (const auto& w : *ctx_.universe) out.push_back({w, env});
            break;
        case K::Pure:
            for (auto& s : settle(env, {&p.e1})) {
                auto v = value_of(p.e1, s);
                if (v && *v != 0) out.push_back({WorldTriple{}, std::move(s)});
            }
            break;
        case K::PointsTo:
        case K::APointsTo: {
            const bool abs = p.kind == K::APointsTo;
            std::vector<Env> envs{env};
            if (p.loc.index) envs = settle(env, {p.loc.index.get()});
            for (auto& s : envs) {
                auto slot = slot_of(p.loc, s);
                if (!slot) continue;
                for (auto& u : settle(s, {&p.e1})) {
                    auto v = value_of(p.e1, u);
                    if (!v) continue;
                    WorldTriple part;
                    (abs ? part.abstract : part.concrete).set(*slot, *v);
                    out.push_back({part, std::move(u)});
                }
            }
            break;
        }
        case K::Token:
            for (auto& s : settle(env, {&p.e1, &p.e2, &p.e3})) {
                auto t = value_of(p.e1, s);
                auto a = value_of(p.e2, s);
                auto r = value_of(p.e3, s);
                if (!t || !a || !r || *t < 1 || *t > d_.threads) continue;
                const int idx = token_index(p, *a, *r);
                if (idx < 0) continue;
                WorldTriple part;
                part.tokens.set(*t, p.token == TokenKind::Todo ? Token::todo(idx) : Token::done(idx));
                out.push_back({part, std::move(s)});
            }
            break;
        case K::Box:
            if (mode == GenerateMode::Exact) throw Error(ErrorKind::ModelError, "boxed assertion in a DCSL view");
            out.push_back({WorldTriple{}, env});
            break;
        case K::Star:
            for (auto& ga : gen(p.kids[0], env, mode)) {
                for (auto& gb : gen(p.kids[1], ga.env, mode)) {
                    if (auto u = compose_worlds(ga.part, gb.part)) out.push_back({*u, std::move(gb.env)});
                }
            }
            break;
        case K::Or:
            out = gen(p.kids[0], env, mode);
            for (auto& g : gen(p.kids[1], env, mode)) out.push_back(std::move(g));
            break;
        case K::Not:
            for (auto& s : settle_all(env, p.kids[0])) {
                if (is_pure(p.kids[0])) {
                    if (!covers(match(p.kids[0], WorldTriple{}, WorldTriple{}, s), WorldTriple{})) {
                        out.push_back({WorldTriple{}, s});
                    }
                    continue;
                }
                if (mode != GenerateMode::Exact || !ctx_.universe) {
                    throw Error(ErrorKind::ModelError, "spatial negation outside a boxed assertion cannot be enumerated");
                }
                for (const auto& w : *ctx_.universe) {
                    if (!covers(match(p.kids[0], w, WorldTriple{}, s), w)) out.push_back({w, s});
                }
            }
            break;
        case K::Exists: {
            auto outer = env.interp.lookup(p.name);
            Env inner = env;
            inner.interp = Interpretation{};
            for (const auto& [k, v] : env.interp.bindings()) {
                if (k != p.name) inner.interp.bind(k, v);
            }
            inner.pending.push_back(p.name);
            for (auto& g : gen(p.kids[0], inner, mode)) {
                Res r{g.part, false, std::move(g.env)};
                r = restore(std::move(r), p.name, outer, env);
                out.push_back({r.part, std::move(r.env)});
            }
            break;
        }
        case K::Macro:
        case K::BigStar: throw Error(ErrorKind::ModelError, "unexpanded assertion " + p.str());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    const std::vector<APComInstance>& alphabet() const {
        if (alphabet_.empty()) alphabet_ = d_.alphabet();
        return alphabet_;
    }

private:
    const SpatialContext& ctx_;
    const Domains& d_;
    mutable std::vector<APComInstance> alphabet_;
};

} // namespace

bool satisfies(const WorldTriple& local, const WorldTriple& shared, const Interpretation& i, const Spatial& p,
               const SpatialContext& ctx) {
    Engine eng(ctx);
    Env env{i, {}};
    return Engine::covers(eng.match(p, local, shared, env), local);
}

std::vector<WorldTriple> fragments(const Spatial& p, const WorldTriple& whole, const Interpretation& i,
                                   const SpatialContext& ctx) {
    Engine eng(ctx);
    Env env{i, {}};
    std::vector<WorldTriple> out;
    for (auto& r : eng.match(p, whole, WorldTriple{}, env)) {
        if (!r.open) {
            out.push_back(r.part);
            continue;
        }
        for (const auto& extra : Engine::subsets(world_minus(whole, r.part))) {
            out.push_back(*compose_worlds(r.part, extra));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<WorldTriple> generate(const Spatial& p, const Interpretation& i, const SpatialContext& ctx,
                                  GenerateMode mode) {
    Engine eng(ctx);
    Env env{i, {}};
    std::vector<WorldTriple> out;
    for (auto& g : eng.gen(p, env, mode)) out.push_back(g.part);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace relviews

#include "relviews/expr.hpp"

#include <algorithm>
#include <sstream>

namespace relviews {

std::optional<Value> Interpretation::lookup(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                               [](const auto& p, const std::string& n) { return p.first < n; });
    if (it == vars_.end() || it->first != name) return std::nullopt;
    return it->second;
}

void Interpretation::bind(const std::string& name, Value v) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                               [](const auto& p, const std::string& n) { return p.first < n; });
    if (it != vars_.end() && it->first == name) {
        it->second = v;
    } else {
        vars_.insert(it, {name, v});
    }
}

Interpretation Interpretation::with(const std::string& name, Value v) const {
    Interpretation out = *this;
    out.bind(name, v);
    return out;
}

std::string Interpretation::str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << ", ";
        os << vars_[i].first << '=' << vars_[i].second;
    }
    os << '}';
    return os.str();
}

std::vector<Interpretation> enumerate_interpretations(const Interpretation& base, const std::set<std::string>& vars,
                                                      const std::vector<Value>& values) {
    std::vector<Interpretation> out{base};
    for (const auto& v : vars) {
        std::vector<Interpretation> next;
        next.reserve(out.size() * values.size());
        for (const auto& i : out) {
            for (Value x : values) next.push_back(i.with(v, x));
        }
        out = std::move(next);
    }
    return out;
}

std::string LocRef::str() const {
    if (!index) return base;
    return base + "[" + index->str() + "]";
}

Expr Expr::constant(Value v) {
    Expr e;
    e.kind = ExprKind::Const;
    e.value = v;
    return e;
}

Expr Expr::lvar(std::string name) {
    Expr e;
    e.kind = ExprKind::LVar;
    e.name = std::move(name);
    return e;
}

Expr Expr::self() {
    Expr e;
    e.kind = ExprKind::Self;
    return e;
}

Expr Expr::read(LocRef loc) {
    Expr e;
    e.kind = ExprKind::Read;
    e.loc = std::move(loc);
    return e;
}

Expr Expr::binary(ExprKind k, Expr a, Expr b) {
    Expr e;
    e.kind = k;
    e.kids = {std::move(a), std::move(b)};
    return e;
}

Expr Expr::negate(Expr a) {
    Expr e;
    e.kind = ExprKind::Not;
    e.kids = {std::move(a)};
    return e;
}

namespace {
const char* op_name(ExprKind k) {
    switch (k) {
    case ExprKind::Plus: return "+";
    case ExprKind::Minus: return "-";
    case ExprKind::Eq: return "==";
    case ExprKind::Ne: return "!=";
    case ExprKind::Lt: return "<";
    case ExprKind::Le: return "<=";
    case ExprKind::And: return "&&";
    case ExprKind::Or: return "||";
    default: return "?";
    }
}

bool same_loc(const LocRef& a, const LocRef& b) {
    if (a.base != b.base) return false;
    if (!a.index || !b.index) return !a.index && !b.index;
    return *a.index == *b.index;
}
} // namespace

std::string Expr::str() const {
    switch (kind) {
    case ExprKind::Const: return std::to_string(value);
    case ExprKind::LVar: return name;
    case ExprKind::Self: return "mytid()";
    case ExprKind::Read: return loc.str();
    case ExprKind::Not: return "!(" + kids[0].str() + ")";
    default: return "(" + kids[0].str() + " " + op_name(kind) + " " + kids[1].str() + ")";
    }
}

bool Expr::operator==(const Expr& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
    case ExprKind::Const: return value == o.value;
    case ExprKind::LVar: return name == o.name;
    case ExprKind::Self: return true;
    case ExprKind::Read: return same_loc(loc, o.loc);
    default: return kids == o.kids;
    }
}

namespace {
Value wrap(Value v, Value modulus) {
    Value r = v % modulus;
    return r < 0 ? r + modulus : r;
}
} // namespace

std::optional<std::size_t> resolve_location(const LocRef& loc, const EvalEnv& env) {
    if (!loc.bound) throw Error(ErrorKind::ModelError, "location " + loc.str() + " used before binding");
    if (!loc.index) {
        if (loc.plain_slot < 0) return std::nullopt;
        return static_cast<std::size_t>(loc.plain_slot);
    }
    auto idx = try_eval(*loc.index, env);
    if (!idx || *idx < kMinValue || *idx > kMaxValue) return std::nullopt;
    const int slot = loc.indexed_slots[static_cast<std::size_t>(*idx - kMinValue)];
    if (slot < 0) return std::nullopt;
    return static_cast<std::size_t>(slot);
}

std::optional<Value> try_eval(const Expr& e, const EvalEnv& env) {
    switch (e.kind) {
    case ExprKind::Const: return e.value;
    case ExprKind::LVar: {
        if (!env.interp) throw Error(ErrorKind::ModelError, "unbound logical variable " + e.name);
        auto v = env.interp->lookup(e.name);
        if (!v) throw Error(ErrorKind::ModelError, "unbound logical variable " + e.name);
        return v;
    }
    case ExprKind::Self: return env.self;
    case ExprKind::Read: {
        if (!env.heap) return std::nullopt;
        auto slot = resolve_location(e.loc, env);
        if (!slot) return std::nullopt;
        return env.heap->get(*slot);
    }
    case ExprKind::Not: {
        auto a = try_eval(e.kids[0], env);
        if (!a) return std::nullopt;
        return *a == 0 ? 1 : 0;
    }
    default: break;
    }
    auto a = try_eval(e.kids[0], env);
    if (!a) return std::nullopt;
    // Short-circuit connectives do not read the right operand when decided.
    if (e.kind == ExprKind::And && *a == 0) return 0;
    if (e.kind == ExprKind::Or && *a != 0) return 1;
    auto b = try_eval(e.kids[1], env);
    if (!b) return std::nullopt;
    switch (e.kind) {
    case ExprKind::Plus: return wrap(*a + *b, env.modulus);
    case ExprKind::Minus: return wrap(*a - *b, env.modulus);
    case ExprKind::Eq: return *a == *b ? 1 : 0;
    case ExprKind::Ne: return *a != *b ? 1 : 0;
    case ExprKind::Lt: return *a < *b ? 1 : 0;
    case ExprKind::Le: return *a <= *b ? 1 : 0;
    case ExprKind::And: return *b != 0 ? 1 : 0;
    case ExprKind::Or: return *b != 0 ? 1 : 0;
    default: return std::nullopt;
    }
}

Value eval_expr(const Expr& e, const Heap& heap, const Interpretation& interp, ThreadId self, Value modulus) {
    EvalEnv env{&heap, &interp, self, modulus};
    auto v = try_eval(e, env);
    if (!v) throw Error(ErrorKind::UndefinedLocation, "undefined location read in " + e.str());
    return *v;
}

void bind_location(LocRef& loc, const std::vector<std::string>& table, const std::vector<Value>& index_values) {
    auto find = [&](const std::string& n) -> int {
        auto it = std::find(table.begin(), table.end(), n);
        return it == table.end() ? -1 : static_cast<int>(it - table.begin());
    };
    loc.bound = true;
    if (!loc.index) {
        loc.plain_slot = find(loc.base);
        return;
    }
    Expr idx = *loc.index;
    bind_locations(idx, table, index_values);
    loc.index = std::make_shared<const Expr>(std::move(idx));
    loc.indexed_slots.assign(static_cast<std::size_t>(kMaxValue - kMinValue + 1), -1);
    // Any value may index; only declared cells resolve.
    for (Value v = kMinValue; v <= kMaxValue; ++v) {
        loc.indexed_slots[static_cast<std::size_t>(v - kMinValue)] = find(loc.base + "[" + std::to_string(v) + "]");
    }
    (void)index_values;
}

void bind_locations(Expr& e, const std::vector<std::string>& table, const std::vector<Value>& index_values) {
    if (e.kind == ExprKind::Read) bind_location(e.loc, table, index_values);
    for (auto& k : e.kids) bind_locations(k, table, index_values);
}

Expr substitute(const Expr& e, const Interpretation& interp) {
    if (e.kind == ExprKind::LVar) {
        if (auto v = interp.lookup(e.name)) return Expr::constant(*v);
        return e;
    }
    Expr out = e;
    if (out.kind == ExprKind::Read && out.loc.index) {
        out.loc.index = std::make_shared<const Expr>(substitute(*out.loc.index, interp));
    }
    for (auto& k : out.kids) k = substitute(k, interp);
    return out;
}

void free_lvars(const Expr& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::LVar) out.insert(e.name);
    if (e.kind == ExprKind::Read && e.loc.index) free_lvars(*e.loc.index, out);
    for (const auto& k : e.kids) free_lvars(k, out);
}

bool reads_heap(const Expr& e) {
    if (e.kind == ExprKind::Read) return true;
    return std::any_of(e.kids.begin(), e.kids.end(), [](const Expr& k) { return reads_heap(k); });
}

} // namespace relviews

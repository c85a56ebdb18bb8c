#include "relviews/logic.hpp"

#include <algorithm>
#include <sstream>

namespace relviews {

namespace as {
Assertion leaf(Spatial pi) {
    Assertion a;
    a.kind = Assertion::Kind::Leaf;
    a.leaf = std::move(pi);
    return a;
}
Assertion star(Assertion a, Assertion b) {
    Assertion s;
    s.kind = Assertion::Kind::Star;
    s.kids = {std::move(a), std::move(b)};
    return s;
}
Assertion disj(Assertion a, Assertion b) {
    Assertion s;
    s.kind = Assertion::Kind::Or;
    s.kids = {std::move(a), std::move(b)};
    return s;
}
Assertion exists(std::string var, Assertion body) {
    Assertion s;
    s.kind = Assertion::Kind::Exists;
    s.var = std::move(var);
    s.kids = {std::move(body)};
    return s;
}
} // namespace as

std::string Assertion::str() const {
    switch (kind) {
    case Kind::Leaf: return leaf.str();
    case Kind::Star: return "(" + kids[0].str() + " ** " + kids[1].str() + ")";
    case Kind::Or: return "(" + kids[0].str() + " || " + kids[1].str() + ")";
    case Kind::Exists: return "(EX " + var + ". " + kids[0].str() + ")";
    }
    return "?";
}

bool Assertion::operator==(const Assertion& o) const {
    return kind == o.kind && var == o.var && kids == o.kids && (kind != Kind::Leaf || leaf == o.leaf);
}

void free_lvars(const Assertion& p, std::set<std::string>& out) {
    if (p.kind == Assertion::Kind::Leaf) {
        free_lvars(p.leaf, out);
        return;
    }
    std::set<std::string> inner;
    for (const auto& k : p.kids) free_lvars(k, inner);
    if (p.kind == Assertion::Kind::Exists) inner.erase(p.var);
    out.insert(inner.begin(), inner.end());
}

View Evaluator::eval(const Assertion& p, const Interpretation& i, ThreadId t) const {
    std::set<std::string> fv;
    free_lvars(p, fv);
    Interpretation relevant;
    for (const auto& v : fv) {
        auto x = i.lookup(v);
        if (!x) throw Error(ErrorKind::ModelError, "unbound logical variable " + v + " in " + p.str());
        relevant.bind(v, *x);
    }
    const std::string key = std::to_string(t) + "|" + relevant.str() + "|" + p.str();
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto v = std::make_shared<const View>(eval_uncached(p, relevant, t));
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, v);
    return *v;
}

View Evaluator::eval_uncached(const Assertion& p, const Interpretation& i, ThreadId t) const {
    switch (p.kind) {
    case Assertion::Kind::Leaf: return m_.eval_leaf(p.leaf, i, t);
    case Assertion::Kind::Star: return m_.compose(eval(p.kids[0], i, t), eval(p.kids[1], i, t));
    case Assertion::Kind::Or: return m_.disjoin(eval(p.kids[0], i, t), eval(p.kids[1], i, t));
    case Assertion::Kind::Exists: {
        std::optional<View> acc;
        for (Value n : m_.domains().values) {
            View v = eval(p.kids[0], i.with(p.var, n), t);
            acc = acc ? m_.disjoin(*acc, v) : v;
        }
        if (!acc) return m_.eval_leaf(sp::falsity(), i, t);
        return *acc;
    }
    }
    throw Error(ErrorKind::ModelError, "bad assertion");
}

namespace {

void flatten_seq(const CommandPtr& c, std::vector<CommandPtr>& out) {
    if (c->kind == Command::Kind::Seq) {
        flatten_seq(c->first, out);
        flatten_seq(c->second, out);
    } else {
        out.push_back(normalize(c));
    }
}

} // namespace

CommandPtr normalize(const CommandPtr& c) {
    switch (c->kind) {
    case Command::Kind::Seq: {
        std::vector<CommandPtr> parts;
        flatten_seq(c, parts);
        return cmd::seq(parts);
    }
    case Command::Kind::Choice: return cmd::choice(normalize(c->first), normalize(c->second));
    case Command::Kind::Iter: return cmd::iter(normalize(c->first));
    default: return c;
    }
}

CommandPtr command_of(const OutlineNode& n) {
    using K = OutlineNode::Kind;
    switch (n.kind) {
    case K::Seq: {
        std::vector<CommandPtr> parts;
        for (const auto& it : n.items) {
            if (it.node) parts.push_back(command_of(*it.node));
        }
        return cmd::seq(parts);
    }
    case K::Prim: return cmd::prim(n.prim);
    case K::Skip: return cmd::skip();
    case K::Choice: {
        CommandPtr out = command_of(*n.kids.back());
        for (auto it = n.kids.rbegin() + 1; it != n.kids.rend(); ++it) out = cmd::choice(command_of(**it), out);
        return out;
    }
    case K::Iter: return cmd::iter(command_of(*n.kids[0]));
    case K::While: return cmd::while_do(n.cond, command_of(*n.kids[0]));
    case K::Branch: {
        CommandPtr out;
        for (std::size_t k = n.kids.size(); k-- > 0;) {
            CommandPtr b = cmd::seq(cmd::prim(n.guards[k]), command_of(*n.kids[k]));
            out = out ? cmd::choice(b, out) : b;
        }
        return out;
    }
    case K::Frame:
    case K::Conseq:
    case K::Exists: return command_of(*n.kids[0]);
    case K::Disj: {
        CommandPtr first = normalize(command_of(*n.kids[0]));
        for (std::size_t k = 1; k < n.kids.size(); ++k) {
            if (!same_command(first, normalize(command_of(*n.kids[k])))) {
                throw Error(ErrorKind::ModelError, "disjunction branches prove different commands");
            }
        }
        return command_of(*n.kids[0]);
    }
    }
    return cmd::skip();
}

std::string FailureReport::str(const Domains& d) const {
    std::ostringstream os;
    os << rule << " at " << path;
    if (!interpretation.empty()) os << " under " << interpretation;
    os << ": " << message;
    if (counterexample) os << " [" << counterexample->str(d) << "]";
    return os.str();
}

namespace {

class Prover {
public:
    Prover(ThreadId t, const Interpretation& base, const Evaluator& ev) : t_(t), base_(base), ev_(ev) {}

    std::size_t obligations = 0;

    std::vector<Interpretation> interps(std::initializer_list<const Assertion*> as) const {
        std::set<std::string> fv;
        for (const Assertion* a : as) free_lvars(*a, fv);
        for (const auto& [k, v] : base_.bindings()) fv.erase(k);
        return enumerate_interpretations(base_, fv, ev_.monoid().domains().values);
    }

    std::optional<FailureReport> implies(const Assertion& a, const Assertion& b, const std::string& path) {
        if (a == b) return std::nullopt;
        for (const auto& i : interps({&a, &b})) {
            ++obligations;
            auto r = ev_.monoid().repart_implies(ev_.eval(a, i, t_), ev_.eval(b, i, t_));
            if (!r.holds()) {
                FailureReport f;
                f.path = path;
                f.rule = "Conseq";
                f.interpretation = i.str();
                f.not_established = r.result == Implication::NotEstablished;
                f.message = std::string(f.not_established ? "implication not established" : "implication fails") +
                            ": " + a.str() + " => " + b.str() + (r.witness.empty() ? "" : " (" + r.witness + ")");
                return f;
            }
        }
        return std::nullopt;
    }

    std::optional<FailureReport> action(const PrimPtr& prim, const Assertion& a, const Assertion& b,
                                        const std::string& path) {
        for (const auto& i : interps({&a, &b})) {
            ++obligations;
            CommandPtr c = substitute(cmd::prim(prim), i);
            auto v = ev_.monoid().check_action(t_, *c->prim, ev_.eval(a, i, t_), ev_.eval(b, i, t_));
            if (!v.ok) {
                FailureReport f;
                f.path = path;
                f.rule = "Prim";
                f.interpretation = i.str();
                f.message = (v.error == ErrorKind::ModelError ? std::string("action judgement fails")
                                                             : std::string(to_string(v.error))) +
                            ": " + prim->str() + " from " + a.str() + " to " +
                            b.str();
                f.counterexample = v.counterexample;
                return f;
            }
        }
        return std::nullopt;
    }

    std::optional<FailureReport> prove(const OutlineNode& n, const Assertion& p, const Assertion& q,
                                       const std::string& path) {
        using K = OutlineNode::Kind;
        const std::string here = path + "/" + (n.label.empty() ? kind_name(n.kind) : n.label);
        switch (n.kind) {
        case K::Prim: return action(n.prim, p, q, here);
        case K::Skip: {
            auto f = implies(p, q, here);
            if (f) f->rule = "Skip";
            return f;
        }
        case K::Seq: {
            const Assertion* cur = &p;
            const OutlineNode* pending = nullptr;
            std::size_t pending_idx = 0;
            for (std::size_t k = 0; k < n.items.size(); ++k) {
                const auto& it = n.items[k];
                const std::string sub = here + "[" + std::to_string(k) + "]";
                if (it.assertion) {
                    if (pending) {
                        if (auto f = prove(*pending, *cur, *it.assertion, here + "[" + std::to_string(pending_idx) + "]"))
                            return f;
                        pending = nullptr;
                    } else if (auto f = implies(*cur, *it.assertion, sub)) {
                        return f;
                    }
                    cur = &*it.assertion;
                } else {
                    if (pending) {
                        throw Error(ErrorKind::SchemaError, "outline " + sub +
                                                                ": consecutive commands need an intermediate assertion");
                    }
                    pending = it.node.get();
                    pending_idx = k;
                }
            }
            if (pending) return prove(*pending, *cur, q, here + "[" + std::to_string(pending_idx) + "]");
            return implies(*cur, q, here + "[end]");
        }
        case K::Choice:
            for (std::size_t k = 0; k < n.kids.size(); ++k) {
                if (auto f = prove(*n.kids[k], p, q, here + "[" + std::to_string(k) + "]")) return f;
            }
            return std::nullopt;
        case K::Iter: {
            const Assertion& inv = need(n.invariant, here, "invariant");
            if (auto f = implies(p, inv, here + "[entry]")) return f;
            if (auto f = prove(*n.kids[0], inv, inv, here)) return f;
            return implies(inv, q, here + "[exit]");
        }
        case K::While: {
            const Assertion& inv = need(n.invariant, here, "invariant");
            const Assertion& body_pre = n.body_pre ? *n.body_pre : inv;
            const Assertion& exit = n.exit ? *n.exit : q;
            if (auto f = implies(p, inv, here + "[entry]")) return f;
            if (auto f = action(std::make_shared<const PrimCommand>(cmd::assume(n.cond)), inv, body_pre, here + "[guard]"))
                return f;
            if (auto f = prove(*n.kids[0], body_pre, inv, here)) return f;
            if (auto f = action(std::make_shared<const PrimCommand>(cmd::assume(Expr::negate(n.cond))), inv, exit,
                                here + "[leave]"))
                return f;
            return implies(exit, q, here + "[exit]");
        }
        case K::Branch:
            for (std::size_t k = 0; k < n.kids.size(); ++k) {
                const Assertion& bp = n.branch_pre[k] ? *n.branch_pre[k] : p;
                const std::string sub = here + "[" + std::to_string(k) + "]";
                if (auto f = action(n.guards[k], p, bp, sub + "[guard]")) return f;
                if (auto f = prove(*n.kids[k], bp, q, sub)) return f;
            }
            return std::nullopt;
        case K::Frame: {
            const Assertion& r = need(n.frame, here, "frame");
            const Assertion& ip = need(n.pre, here, "pre");
            const Assertion& iq = need(n.post, here, "post");
            if (auto f = implies(p, as::star(ip, r), here + "[pre]")) return f;
            if (auto f = prove(*n.kids[0], ip, iq, here)) return f;
            return implies(as::star(iq, r), q, here + "[post]");
        }
        case K::Conseq: {
            const Assertion& ip = need(n.pre, here, "pre");
            const Assertion& iq = need(n.post, here, "post");
            if (auto f = implies(p, ip, here + "[pre]")) return f;
            if (auto f = prove(*n.kids[0], ip, iq, here)) return f;
            return implies(iq, q, here + "[post]");
        }
        case K::Disj: {
            if (n.kids.empty() || n.disj_pre.size() != n.kids.size() || n.disj_post.size() != n.kids.size()) {
                throw Error(ErrorKind::SchemaError, "outline " + here + ": disjunction branches need pre and post");
            }
            (void)command_of(n);
            Assertion all_pre = n.disj_pre[0], all_post = n.disj_post[0];
            for (std::size_t k = 1; k < n.kids.size(); ++k) {
                all_pre = as::disj(all_pre, n.disj_pre[k]);
                all_post = as::disj(all_post, n.disj_post[k]);
            }
            if (auto f = implies(p, all_pre, here + "[pre]")) return f;
            for (std::size_t k = 0; k < n.kids.size(); ++k) {
                if (auto f = prove(*n.kids[k], n.disj_pre[k], n.disj_post[k], here + "[" + std::to_string(k) + "]"))
                    return f;
            }
            return implies(all_post, q, here + "[post]");
        }
        case K::Exists: {
            const Assertion& ip = need(n.pre, here, "pre");
            const Assertion& iq = need(n.post, here, "post");
            if (base_.lookup(n.var)) throw Error(ErrorKind::SchemaError, "outline " + here + ": " + n.var + " is a parameter");
            if (auto f = implies(p, as::exists(n.var, ip), here + "[pre]")) return f;
            if (auto f = prove(*n.kids[0], ip, iq, here)) return f;
            return implies(as::exists(n.var, iq), q, here + "[post]");
        }
        }
        return std::nullopt;
    }

private:
    static std::string kind_name(OutlineNode::Kind k) {
        switch (k) {
        case OutlineNode::Kind::Seq: return "seq";
        case OutlineNode::Kind::Prim: return "prim";
        case OutlineNode::Kind::Skip: return "skip";
        case OutlineNode::Kind::Choice: return "choice";
        case OutlineNode::Kind::Iter: return "iter";
        case OutlineNode::Kind::While: return "while";
        case OutlineNode::Kind::Branch: return "branch";
        case OutlineNode::Kind::Frame: return "frame";
        case OutlineNode::Kind::Conseq: return "conseq";
        case OutlineNode::Kind::Disj: return "disj";
        case OutlineNode::Kind::Exists: return "exists";
        }
        return "?";
    }

    static const Assertion& need(const std::optional<Assertion>& a, const std::string& path, const char* what) {
        if (!a) throw Error(ErrorKind::SchemaError, "outline " + path + ": missing " + what);
        return *a;
    }

    ThreadId t_;
    Interpretation base_;
    const Evaluator& ev_;
};

} // namespace

ProofResult check_proof(const OutlineNode& root, const Assertion& pre, const Assertion& post, ThreadId t,
                        const Interpretation& base, const Evaluator& ev) {
    Prover pr(t, base, ev);
    ProofResult r;
    r.failure = pr.prove(root, pre, post, "");
    r.ok = !r.failure;
    r.obligations = pr.obligations;
    return r;
}

bool check_safe(const Monoid& m, ThreadId t, const View& p, const CommandPtr& c, const View& q,
                const std::vector<View>& universe) {
    std::vector<View> views = universe;
    std::size_t p_idx = views.size();
    for (std::size_t u = 0; u < views.size(); ++u) {
        if (m.equal(views[u], p)) {
            p_idx = u;
            break;
        }
    }
    if (p_idx == views.size()) views.push_back(p);
    const auto cmds = derivatives(c);
    auto index_of = [&](const CommandPtr& x) {
        for (std::size_t k = 0; k < cmds.size(); ++k) {
            if (same_command(cmds[k], x)) return k;
        }
        throw Error(ErrorKind::ModelError, "derivative missing from closure");
    };
    std::vector<std::vector<std::pair<PrimPtr, std::size_t>>> trans(cmds.size());
    for (std::size_t k = 0; k < cmds.size(); ++k) {
        for (const auto& tr : step(cmds[k])) trans[k].emplace_back(tr.prim, index_of(tr.next));
    }
    const std::size_t nu = views.size(), nc = cmds.size();
    std::vector<char> alive(nu * nc, 1);
    for (std::size_t u = 0; u < nu; ++u) {
        for (std::size_t k = 0; k < nc; ++k) {
            if (cmds[k]->kind == Command::Kind::Skip) alive[u * nc + k] = m.repart_implies(views[u], q).holds();
        }
    }
    std::map<std::tuple<std::size_t, std::string, std::size_t>, bool> judged;
    auto judge = [&](std::size_t u, const PrimPtr& a, std::size_t v) {
        auto key = std::make_tuple(u, a->str(), v);
        auto it = judged.find(key);
        if (it != judged.end()) return it->second;
        const bool ok = m.check_action(t, *a, views[u], views[v]).ok;
        judged.emplace(key, ok);
        return ok;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t u = 0; u < nu; ++u) {
            for (std::size_t k = 0; k < nc; ++k) {
                if (!alive[u * nc + k] || cmds[k]->kind == Command::Kind::Skip) continue;
                for (const auto& [a, next] : trans[k]) {
                    bool witnessed = false;
                    for (std::size_t v = 0; v < nu && !witnessed; ++v) {
                        witnessed = alive[v * nc + next] && judge(u, a, v);
                    }
                    if (!witnessed) {
                        alive[u * nc + k] = 0;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    return alive[p_idx * nc + index_of(c)] != 0;
}

} // namespace relviews

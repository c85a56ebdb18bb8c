#include "relviews/obligations.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace relviews {

std::string ObligationFailure::str(const Domains& d) const {
    std::ostringstream os;
    os << "obligation " << obligation << " failed for " << instance << " on thread " << thread;
    if (not_established) os << " (not established)";
    os << ": " << message;
    if (witness) os << "\n  witness " << format_world(*witness, d);
    if (proof) os << "\n" << proof->str(d);
    return os.str();
}

namespace {

std::string instance_name(const Domains& d, std::size_t k) {
    const auto a = d.alphabet().at(k);
    return d.methods[static_cast<std::size_t>(a.method)].name + "(" + std::to_string(a.arg) + ") -> " +
           std::to_string(a.ret);
}

const MethodSpec& spec_of(const Session& s, const std::string& method) {
    auto it = s.model().spec.find(method);
    if (it == s.model().spec.end()) throw Error(ErrorKind::ModelError, "no specification for method " + method);
    return it->second;
}

// Interpretations of the specification's free variables beyond t, a and r.
std::vector<Interpretation> spec_interpretations(const Session& s, const Assertion& p, std::size_t k, ThreadId t) {
    const Interpretation base = instance_interpretation(s.model(), k, t);
    std::set<std::string> fv;
    free_lvars(p, fv);
    for (const auto& [n, v] : base.bindings()) fv.erase(n);
    return enumerate_interpretations(base, fv, s.domains().values);
}

std::vector<WorldTriple> reify(const Session& s, const View& v) { return s.monoid().reify(v); }

// Worlds holding `tok` at t, with that token removed.
std::vector<WorldTriple> project(const std::vector<WorldTriple>& ws, ThreadId t, Token tok) {
    std::vector<WorldTriple> out;
    for (auto w : ws) {
        if (w.tokens.get(t) != tok) continue;
        w.tokens.set(t, Token::none());
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<WorldTriple> first_difference(const std::vector<WorldTriple>& a, const std::vector<WorldTriple>& b) {
    std::vector<WorldTriple> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    if (diff.empty()) return std::nullopt;
    return diff.front();
}

// Pairs whose parts compose, with the token of thread t swapped.
std::vector<LocalShared> swap_token(const RgsepView& v, ThreadId t, Token from, Token to) {
    std::vector<LocalShared> out;
    for (auto [l, sh] : v.pred) {
        if (!compose_worlds(l, sh)) continue;
        if (l.tokens.get(t) == from) l.tokens.set(t, to);
        if (sh.tokens.get(t) == from) sh.tokens.set(t, to);
        out.emplace_back(std::move(l), std::move(sh));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void collect_assertions(const OutlineNode& n, const std::string& path,
                        std::vector<std::pair<std::string, const Assertion*>>& out) {
    using K = OutlineNode::Kind;
    auto add = [&](const std::optional<Assertion>& a, const std::string& where) {
        if (a) out.emplace_back(where, &*a);
    };
    for (std::size_t i = 0; i < n.items.size(); ++i) {
        const std::string here = path + "/seq[" + std::to_string(i) + "]";
        add(n.items[i].assertion, here);
        if (n.items[i].node) collect_assertions(*n.items[i].node, here, out);
    }
    add(n.invariant, path + "/invariant");
    add(n.body_pre, path + "/body_pre");
    add(n.exit, path + "/exit");
    add(n.pre, path + "/pre");
    add(n.post, path + "/post");
    add(n.frame, path + "/frame");
    for (std::size_t i = 0; i < n.branch_pre.size(); ++i) add(n.branch_pre[i], path + "/branch[" + std::to_string(i) + "]");
    for (std::size_t i = 0; i < n.disj_pre.size(); ++i) out.emplace_back(path + "/disj[" + std::to_string(i) + "]/pre", &n.disj_pre[i]);
    for (std::size_t i = 0; i < n.disj_post.size(); ++i) {
        out.emplace_back(path + "/disj[" + std::to_string(i) + "]/post", &n.disj_post[i]);
    }
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
        collect_assertions(*n.kids[i], path + (n.kind == K::Seq ? "" : "/" + std::to_string(i)), out);
    }
}

} // namespace

std::optional<ObligationFailure> check_token_ownership(const Session& s, const OutlineNode& outline,
                                                       const std::string& method, std::size_t k, ThreadId t) {
    if (!dynamic_cast<const DcslMonoid*>(&s.monoid())) return std::nullopt;
    std::vector<std::pair<std::string, const Assertion*>> all;
    collect_assertions(outline, "", all);
    for (const auto& [path, a] : all) {
        for (const auto& i : spec_interpretations(s, *a, k, t)) {
            for (const auto& w : reify(s, s.evaluator().eval(*a, i, t))) {
                for (ThreadId u = 1; u <= s.domains().threads; ++u) {
                    if (u == t || !w.tokens.get(u).present()) continue;
                    ObligationFailure f;
                    f.obligation = 1;
                    f.method = method;
                    f.instance = instance_name(s.domains(), k);
                    f.thread = t;
                    f.message = "token composition undefined: the assertion at " + (path.empty() ? "/" : path) +
                                " holds the token of thread " + std::to_string(u) +
                                ", which that thread's own precondition also holds";
                    f.witness = w;
                    return f;
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<ObligationFailure> check_pinning(const Session& s, const std::string& method, std::size_t k, ThreadId t) {
    const MethodSpec& spec = spec_of(s, method);
    const Evaluator& ev = s.evaluator();
    const int kk = static_cast<int>(k);
    for (int side = 0; side < 2; ++side) {
        const Assertion& a = side == 0 ? spec.pre : spec.post;
        const Token want = side == 0 ? Token::todo(kk) : Token::done(kk);
        for (const auto& i : spec_interpretations(s, a, k, t)) {
            for (const auto& w : reify(s, ev.eval(a, i, t))) {
                if (w.tokens.get(t) == want) continue;
                ObligationFailure f;
                f.obligation = 2;
                f.method = method;
                f.instance = instance_name(s.domains(), k);
                f.thread = t;
                f.message = std::string(side == 0 ? "precondition" : "postcondition") + " admits a world where thread " +
                            std::to_string(t) + " holds " + format_token(w.tokens.get(t), s.domains()) + " instead of " +
                            format_token(want, s.domains());
                f.witness = w;
                return f;
            }
        }
    }
    return std::nullopt;
}

std::optional<ObligationFailure> check_swap(const Session& s, const std::string& method, std::size_t k_post,
                                            std::size_t k_pre, ThreadId t) {
    const Domains& d = s.domains();
    const auto alpha = d.alphabet();
    const std::string pre_method = d.methods[static_cast<std::size_t>(alpha.at(k_pre).method)].name;
    const MethodSpec& post_spec = spec_of(s, method);
    const MethodSpec& pre_spec = spec_of(s, pre_method);
    const Evaluator& ev = s.evaluator();
    const Monoid& m = s.monoid();
    const Token done = Token::done(static_cast<int>(k_post));
    const Token todo = Token::todo(static_cast<int>(k_pre));

    auto fail = [&](std::string msg, std::optional<WorldTriple> w, bool ne) {
        ObligationFailure f;
        f.obligation = 3;
        f.method = method;
        f.instance = instance_name(d, k_post) + " against " + instance_name(d, k_pre);
        f.thread = t;
        f.message = std::move(msg);
        f.witness = std::move(w);
        f.not_established = ne;
        return f;
    };

    // Both sides are evaluated under the same interpretation of the shared
    // free variables; t, a and r follow each side's instance.
    std::set<std::string> fv;
    free_lvars(post_spec.post, fv);
    free_lvars(pre_spec.pre, fv);
    for (const char* n : {"t", "a", "r"}) fv.erase(n);
    for (const auto& i : enumerate_interpretations(Interpretation{}, fv, d.values)) {
        Interpretation iq = instance_interpretation(s.model(), k_post, t), ip = instance_interpretation(s.model(), k_pre, t);
        for (const auto& [n, v] : i.bindings()) {
            iq.bind(n, v);
            ip.bind(n, v);
        }
        const View q = ev.eval(post_spec.post, iq, t);
        const View p = ev.eval(pre_spec.pre, ip, t);
        if (const auto* dm = dynamic_cast<const DcslMonoid*>(&m)) {
            std::vector<WorldTriple> frames{WorldTriple{}};
            for (const auto& w : dm->universe()) {
                if (!w.empty()) frames.push_back(w);
            }
            for (const auto& f : frames) {
                const View r = DcslView{dcsl_view({f})};
                const auto a = project(m.reify(m.compose(q, r)), t, done);
                const auto b = project(m.reify(m.compose(p, r)), t, todo);
                if (auto w = first_difference(a, b)) {
                    return fail("post and pre differ beyond the token of thread " + std::to_string(t) + " under frame " +
                                    format_world(f, d),
                                w, false);
                }
            }
            continue;
        }
        const auto a = project(m.reify(q), t, done);
        const auto b = project(m.reify(p), t, todo);
        if (auto w = first_difference(a, b)) {
            return fail("post and pre differ beyond the token of thread " + std::to_string(t) + " under the unit frame",
                        w, false);
        }
        const auto& qv = std::get<RgsepView>(q);
        const auto& pv = std::get<RgsepView>(p);
        const bool same = qv.bottom == pv.bottom &&
                          (qv.bottom || (qv.rely->key() == pv.rely->key() && qv.guar->key() == pv.guar->key() &&
                                         swap_token(qv, t, done, todo) == swap_token(pv, t, todo, todo)));
        if (!same) return fail("post and pre agree on the unit frame but are not token-swapped images", std::nullopt, true);
    }
    return std::nullopt;
}

ObligationReport check_obligations(const Session& s, const OutlineSet& outlines, unsigned jobs) {
    const Model& model = s.model();
    const Domains& d = s.domains();
    const auto alpha = d.alphabet();

    struct Task {
        std::string method;
        std::size_t k;
        ThreadId t;
    };
    std::vector<Task> tasks;
    for (const auto& [name, body] : model.methods) {
        if (!outlines.methods.count(name)) throw Error(ErrorKind::ModelError, "no outline for method " + name);
        spec_of(s, name);
        const auto shape = normalize(command_of(*outlines.methods.at(name)))->str();
        if (shape != normalize(body)->str()) {
            throw Error(ErrorKind::ModelError, "outline for " + name + " does not match the method body");
        }
        const int mi = d.method_index(name);
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k].method != mi) continue;
            for (ThreadId t = 1; t <= d.threads; ++t) tasks.push_back({name, k, t});
        }
    }
    (void)s.monoid();

    struct Outcome {
        std::optional<ObligationFailure> failure;
        std::size_t proof_obligations = 0;
        std::size_t checks = 0;
        std::exception_ptr error;
    };
    std::vector<Outcome> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_bad{tasks.size()};

    auto run = [&](std::size_t idx) {
        const Task& task = tasks[idx];
        Outcome& out = results[idx];
        const MethodSpec& spec = spec_of(s, task.method);
        const Interpretation base = instance_interpretation(model, task.k, task.t);
        if (auto f = check_token_ownership(s, *outlines.methods.at(task.method), task.method, task.k, task.t)) {
            out.failure = std::move(f);
            return;
        }
        const ProofResult pr =
            check_proof(*outlines.methods.at(task.method), spec.pre, spec.post, task.t, base, s.evaluator());
        out.proof_obligations = pr.obligations;
        if (!pr.ok) {
            ObligationFailure f;
            f.obligation = 1;
            f.method = task.method;
            f.instance = instance_name(d, task.k);
            f.thread = task.t;
            f.message = "the outline does not prove the specification";
            f.proof = pr.failure;
            f.not_established = pr.failure && pr.failure->not_established;
            out.failure = std::move(f);
            return;
        }
        ++out.checks;
        if (auto f = check_pinning(s, task.method, task.k, task.t)) {
            out.failure = std::move(f);
            return;
        }
        for (std::size_t kp = 0; kp < alpha.size(); ++kp) {
            ++out.checks;
            if (auto f = check_swap(s, task.method, task.k, kp, task.t)) {
                out.failure = std::move(f);
                return;
            }
        }
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            if (idx > first_bad.load()) continue;
            try {
                run(idx);
            } catch (...) {
                results[idx].error = std::current_exception();
            }
            if (results[idx].failure || results[idx].error) {
                std::size_t cur = first_bad.load();
                while (idx < cur && !first_bad.compare_exchange_weak(cur, idx)) {
                }
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    ObligationReport rep;
    rep.instances = tasks.size();
    for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
        const Outcome& o = results[idx];
        if (o.error) std::rethrow_exception(o.error);
        rep.proof_obligations += o.proof_obligations;
        rep.checks += o.checks;
        if (o.failure) {
            rep.ok = false;
            rep.failure = o.failure;
            break;
        }
    }
    return rep;
}

} // namespace relviews

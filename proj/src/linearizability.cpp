#include "relviews/linearizability.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace relviews {

std::string format_event(const Event& e, const Domains& d) {
    std::ostringstream os;
    os << "t=" << e.thread << (e.call ? " call " : " ret ") << d.methods[static_cast<std::size_t>(e.method)].name << "("
       << e.value << ")";
    return os.str();
}

std::string format_history(const History& h, const Domains& d) {
    if (h.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "\n" : "") + format_event(h[i], d);
    return out;
}

bool history_less(const History& a, const History& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace {

struct Config {
    Heap heap;
    std::array<std::int32_t, kMaxThreads> cmd{};
    std::array<std::int32_t, kMaxThreads> op{};

    bool operator==(const Config&) const = default;
};

struct ConfigHash {
    std::size_t operator()(const Config& c) const noexcept {
        std::size_t h = HeapHash{}(c.heap);
        for (std::size_t i = 0; i < kMaxThreads; ++i) h = (h * 1000003u) ^ (static_cast<std::size_t>(c.cmd[i]) << 8) ^
                                                            static_cast<std::size_t>(c.op[i]);
        return h;
    }
};

class Explorer {
public:
    Explorer(const Library& lib, std::size_t cap) : lib_(lib), d_(*lib.domains), cap_(cap), alpha_(d_.alphabet()) {
        if (lib_.bodies.size() != alpha_.size()) throw Error(ErrorKind::ModelError, "library does not cover the alphabet");
    }

    int initial() {
        Config c;
        c.heap = lib_.initial;
        c.cmd.fill(-1);
        c.op.fill(-1);
        return intern(c);
    }

    std::size_t size() const { return configs_.size(); }

    // Internal transitions of a configuration.
    const std::vector<int>& internal(int id) {
        if (auto it = internal_.find(id); it != internal_.end()) return it->second;
        std::vector<int> out;
        const Config c = configs_[static_cast<std::size_t>(id)];
        for (int t = 1; t <= d_.threads; ++t) {
            const int ci = c.cmd[static_cast<std::size_t>(t - 1)];
            if (ci < 0) continue;
            const auto r = state_step(cmds_[static_cast<std::size_t>(ci)], c.heap, t, d_.modulus, *lib_.table);
            if (r.fault) {
                throw Error(ErrorKind::FaultReachable, "thread " + std::to_string(t) + " faults executing " +
                                                           r.fault_prim + " in state " +
                                                           format_heap(c.heap, d_.concrete_locations));
            }
            for (const auto& tr : r.transitions) {
                Config n = c;
                n.heap = tr.state;
                n.cmd[static_cast<std::size_t>(t - 1)] = intern_cmd(tr.next);
                out.push_back(intern(n));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return internal_.emplace(id, std::move(out)).first->second;
    }

    // Call and return transitions of a configuration.
    std::vector<std::pair<Event, int>> external(int id) {
        std::vector<std::pair<Event, int>> out;
        const Config c = configs_[static_cast<std::size_t>(id)];
        for (int t = 1; t <= d_.threads; ++t) {
            const auto ti = static_cast<std::size_t>(t - 1);
            if (c.cmd[ti] < 0) {
                for (std::size_t k = 0; k < alpha_.size(); ++k) {
                    Config n = c;
                    n.cmd[ti] = intern_cmd(lib_.bodies[k]);
                    n.op[ti] = static_cast<std::int32_t>(k);
                    out.push_back({Event{t, true, alpha_[k].method, alpha_[k].arg}, intern(n)});
                }
            } else if (cmds_[static_cast<std::size_t>(c.cmd[ti])]->kind == Command::Kind::Skip) {
                const auto& a = alpha_[static_cast<std::size_t>(c.op[ti])];
                Config n = c;
                n.cmd[ti] = -1;
                n.op[ti] = -1;
                out.push_back({Event{t, false, a.method, a.ret}, intern(n)});
            }
        }
        return out;
    }

private:
    int intern(const Config& c) {
        auto it = index_.find(c);
        if (it != index_.end()) return it->second;
        if (configs_.size() >= cap_) {
            throw Error(ErrorKind::UniverseTooLarge, "more than " + std::to_string(cap_) +
                                                         " configurations; raise --cap or RELVIEWS_CAP");
        }
        const int id = static_cast<int>(configs_.size());
        configs_.push_back(c);
        index_.emplace(c, id);
        return id;
    }

    std::int32_t intern_cmd(const CommandPtr& c) {
        auto it = cmd_index_.find(c);
        if (it != cmd_index_.end()) return it->second;
        const auto id = static_cast<std::int32_t>(cmds_.size());
        cmds_.push_back(c);
        cmd_index_.emplace(c, id);
        return id;
    }

    const Library& lib_;
    const Domains& d_;
    std::size_t cap_;
    std::vector<APComInstance> alpha_;
    std::vector<Config> configs_;
    std::unordered_map<Config, int, ConfigHash> index_;
    std::vector<CommandPtr> cmds_;
    std::unordered_map<CommandPtr, std::int32_t, CommandHash, CommandEq> cmd_index_;
    std::unordered_map<int, std::vector<int>> internal_;
};

class EventAutomaton {
public:
    EventAutomaton(Explorer& ex) : ex_(ex) {}

    int start() { return intern(closure({ex_.initial()})); }

    const std::vector<std::pair<Event, int>>& successors(int state) {
        if (auto it = succ_.find(state); it != succ_.end()) return it->second;
        std::map<Event, std::vector<int>> by_event;
        for (int c : sets_[static_cast<std::size_t>(state)]) {
            for (auto& [e, n] : ex_.external(c)) by_event[e].push_back(n);
        }
        std::vector<std::pair<Event, int>> out;
        for (auto& [e, ns] : by_event) out.emplace_back(e, intern(closure(std::move(ns))));
        return succ_.emplace(state, std::move(out)).first->second;
    }

private:
    std::vector<int> closure(std::vector<int> seeds) {
        std::set<int> seen(seeds.begin(), seeds.end());
        std::vector<int> work(seen.begin(), seen.end());
        while (!work.empty()) {
            const int c = work.back();
            work.pop_back();
            for (int n : ex_.internal(c)) {
                if (seen.insert(n).second) work.push_back(n);
            }
        }
        return {seen.begin(), seen.end()};
    }

    int intern(std::vector<int> set) {
        auto it = index_.find(set);
        if (it != index_.end()) return it->second;
        const int id = static_cast<int>(sets_.size());
        index_.emplace(set, id);
        sets_.push_back(std::move(set));
        return id;
    }

    Explorer& ex_;
    std::vector<std::vector<int>> sets_;
    std::map<std::vector<int>, int> index_;
    std::unordered_map<int, std::vector<std::pair<Event, int>>> succ_;
};

std::string schedule_note(const History& h, const Domains& d) {
    std::string s;
    for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "; " : "") + format_event(h[i], d);
    return h.empty() ? std::string("after the empty history") : "after " + s;
}

HistorySet by_events(const Library& lib, const HistoryOptions& opt) {
    Explorer ex(lib, opt.cap);
    EventAutomaton dfa(ex);
    HistorySet out;
    std::vector<std::pair<History, int>> frontier;
    try {
        frontier.push_back({History{}, dfa.start()});
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::FaultReachable) throw;
        throw Error(ErrorKind::FaultReachable, std::string(e.what()) + " " + schedule_note({}, *lib.domains));
    }
    out.histories.push_back({});
    for (std::size_t depth = 0; depth < opt.bound; ++depth) {
        std::vector<std::pair<History, int>> next;
        for (const auto& [h, s] : frontier) {
            try {
                for (const auto& [e, n] : dfa.successors(s)) {
                    History g = h;
                    g.push_back(e);
                    next.emplace_back(std::move(g), n);
                }
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::FaultReachable) throw;
                throw Error(ErrorKind::FaultReachable, std::string(err.what()) + " " + schedule_note(h, *lib.domains));
            }
        }
        for (const auto& [h, s] : next) out.histories.push_back(h);
        frontier = std::move(next);
    }
    for (const auto& [h, s] : frontier) {
        try {
            if (!dfa.successors(s).empty()) {
                out.growing = true;
                break;
            }
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::FaultReachable) throw;
            out.growing = true;
            break;
        }
    }
    std::sort(out.histories.begin(), out.histories.end(), history_less);
    out.configurations = ex.size();
    return out;
}

HistorySet by_steps(const Library& lib, const HistoryOptions& opt) {
    Explorer ex(lib, opt.cap);
    // Histories are nodes of a trie.
    std::vector<std::pair<int, Event>> node_parent{{-1, Event{}}};
    std::map<std::pair<int, Event>, int> children;
    auto child = [&](int parent, const Event& e) {
        auto key = std::make_pair(parent, e);
        auto it = children.find(key);
        if (it != children.end()) return it->second;
        const int id = static_cast<int>(node_parent.size());
        node_parent.push_back(key);
        children.emplace(key, id);
        return id;
    };
    auto history_of = [&](int node) {
        History h;
        while (node > 0) {
            h.push_back(node_parent[static_cast<std::size_t>(node)].second);
            node = node_parent[static_cast<std::size_t>(node)].first;
        }
        std::reverse(h.begin(), h.end());
        return h;
    };
    std::set<std::pair<int, int>> frontier{{ex.initial(), 0}};
    std::set<std::pair<int, int>> seen = frontier;
    HistorySet out;
    for (std::size_t depth = 0; depth < opt.bound && !frontier.empty(); ++depth) {
        std::set<std::pair<int, int>> next;
        for (const auto& [c, node] : frontier) {
            try {
                for (int n : ex.internal(c)) {
                    if (seen.insert({n, node}).second) next.insert({n, node});
                }
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::FaultReachable) throw;
                throw Error(ErrorKind::FaultReachable,
                            std::string(err.what()) + " " + schedule_note(history_of(node), *lib.domains));
            }
            for (const auto& [e, n] : ex.external(c)) {
                const int h = child(node, e);
                if (seen.insert({n, h}).second) next.insert({n, h});
            }
        }
        frontier = std::move(next);
    }
    for (const auto& [c, node] : frontier) {
        if (!ex.internal(c).empty() || !ex.external(c).empty()) {
            out.growing = true;
            break;
        }
    }
    std::set<int> nodes;
    for (const auto& [c, node] : seen) nodes.insert(node);
    for (int n : nodes) out.histories.push_back(history_of(n));
    std::sort(out.histories.begin(), out.histories.end(), history_less);
    out.configurations = ex.size();
    return out;
}

} // namespace

HistorySet generate_histories(const Library& lib, const HistoryOptions& opt) {
    return opt.kind == BoundKind::Events ? by_events(lib, opt) : by_steps(lib, opt);
}

std::optional<History> first_missing(const std::vector<History>& a, const std::vector<History>& b) {
    for (const auto& h : a) {
        if (!std::binary_search(b.begin(), b.end(), h, history_less)) return h;
    }
    return std::nullopt;
}

LinearizabilityResult check_linearizable(const Library& concrete, const Library& abstract, const HistoryOptions& opt,
                                         int jobs) {
    LinearizabilityResult r;
    HistorySet conc, abs;
    if (opt.kind == BoundKind::Events) {
        if (jobs > 1) {
            auto fut = std::async(std::launch::async, [&] { return generate_histories(abstract, opt); });
            conc = generate_histories(concrete, opt);
            abs = fut.get();
        } else {
            conc = generate_histories(concrete, opt);
            abs = generate_histories(abstract, opt);
        }
        r.abstract_bound = opt.bound;
    } else {
        conc = generate_histories(concrete, opt);
        std::size_t need = 0;
        for (const auto& h : conc.histories) {
            const auto calls = static_cast<std::size_t>(std::count_if(h.begin(), h.end(), [](const Event& e) { return e.call; }));
            need = std::max(need, h.size() + calls);
        }
        HistoryOptions ao = opt;
        ao.bound = need;
        abs = generate_histories(abstract, ao);
        r.abstract_bound = need;
    }
    r.concrete_histories = conc.histories.size();
    r.abstract_histories = abs.histories.size();
    r.bound_too_small = conc.growing;
    r.configurations = conc.configurations;
    r.counterexample = first_missing(conc.histories, abs.histories);
    r.ok = !r.counterexample;
    return r;
}

} // namespace relviews

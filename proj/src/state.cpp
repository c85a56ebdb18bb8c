#include "relviews/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace relviews {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UndefinedLocation: return "UndefinedLocation";
    case ErrorKind::FaultReachable: return "FaultReachable";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::StabilityViolation: return "StabilityViolation";
    case ErrorKind::LocalityViolation: return "LocalityViolation";
    case ErrorKind::ModelError: return "ModelError";
    case ErrorKind::SchemaError: return "SchemaError";
    }
    return "?";
}

void Heap::set(std::size_t loc, Value v) {
    if (v < kMinValue || v > kMaxValue) {
        throw Error(ErrorKind::ModelError, "value out of representable range: " + std::to_string(v));
    }
    cells_[loc] = static_cast<std::int8_t>(v);
}

bool Heap::empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](std::int8_t c) { return c == kAbsent; });
}

std::size_t Heap::size() const {
    return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(), [](std::int8_t c) { return c != kAbsent; }));
}

std::optional<Heap> compose_heaps(const Heap& a, const Heap& b) {
    Heap out = a;
    for (std::size_t i = 0; i < kMaxLocations; ++i) {
        if (!b.has(i)) continue;
        if (a.has(i)) return std::nullopt;
        out.set(i, *b.get(i));
    }
    return out;
}

std::optional<HeapState> compose_states(const HeapState& a, const HeapState& b) {
    if (a.fault || b.fault) return HeapState::faulted();
    auto h = compose_heaps(a.heap, b.heap);
    if (!h) return std::nullopt;
    return HeapState::of(*h);
}

Heap heap_minus(const Heap& a, const Heap& b) {
    Heap out = a;
    for (std::size_t i = 0; i < kMaxLocations; ++i) {
        if (b.has(i)) out.erase(i);
    }
    return out;
}

bool heap_contains(const Heap& a, const Heap& b) {
    for (std::size_t i = 0; i < kMaxLocations; ++i) {
        if (b.has(i) && a.get(i) != b.get(i)) return false;
    }
    return true;
}

bool TokenMap::empty() const {
    return std::none_of(slots_.begin(), slots_.end(), [](Token t) { return t.present(); });
}

std::size_t TokenMap::size() const {
    return static_cast<std::size_t>(
        std::count_if(slots_.begin(), slots_.end(), [](Token t) { return t.present(); }));
}

std::optional<TokenMap> compose_tokens(const TokenMap& a, const TokenMap& b) {
    TokenMap out = a;
    for (ThreadId t = 1; t <= static_cast<ThreadId>(kMaxThreads); ++t) {
        if (!b.get(t).present()) continue;
        if (a.get(t).present()) return std::nullopt;
        out.set(t, b.get(t));
    }
    return out;
}

TokenMap tokens_minus(const TokenMap& a, const TokenMap& b) {
    TokenMap out = a;
    for (ThreadId t = 1; t <= static_cast<ThreadId>(kMaxThreads); ++t) {
        if (b.get(t).present()) out.set(t, Token::none());
    }
    return out;
}

bool tokens_contain(const TokenMap& a, const TokenMap& b) {
    for (ThreadId t = 1; t <= static_cast<ThreadId>(kMaxThreads); ++t) {
        if (b.get(t).present() && a.get(t) != b.get(t)) return false;
    }
    return true;
}

std::optional<WorldTriple> compose_worlds(const WorldTriple& a, const WorldTriple& b) {
    auto c = compose_heaps(a.concrete, b.concrete);
    if (!c) return std::nullopt;
    auto s = compose_heaps(a.abstract, b.abstract);
    if (!s) return std::nullopt;
    auto d = compose_tokens(a.tokens, b.tokens);
    if (!d) return std::nullopt;
    return WorldTriple{*c, *s, *d};
}

bool world_contains(const WorldTriple& whole, const WorldTriple& part) {
    return heap_contains(whole.concrete, part.concrete) && heap_contains(whole.abstract, part.abstract) &&
           tokens_contain(whole.tokens, part.tokens);
}

WorldTriple world_minus(const WorldTriple& whole, const WorldTriple& part) {
    return WorldTriple{heap_minus(whole.concrete, part.concrete), heap_minus(whole.abstract, part.abstract),
                       tokens_minus(whole.tokens, part.tokens)};
}

namespace {
std::size_t mix(std::size_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t pack8(const std::int8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<std::uint8_t>(p[i]);
    return v;
}
} // namespace

std::size_t HeapHash::operator()(const Heap& h) const noexcept {
    const auto& r = h.raw();
    std::size_t out = 0;
    for (std::size_t i = 0; i < kMaxLocations; i += 8) out = mix(out, pack8(r.data() + i));
    return out;
}

std::size_t WorldHash::operator()(const WorldTriple& w) const noexcept {
    std::size_t h = HeapHash{}(w.concrete);
    h = mix(h, HeapHash{}(w.abstract));
    std::uint64_t toks = 0;
    for (ThreadId t = 1; t <= static_cast<ThreadId>(kMaxThreads); ++t) toks = (toks << 16) | w.tokens.get(t).bits;
    return mix(h, toks);
}

std::vector<APComInstance> Domains::alphabet() const {
    std::vector<APComInstance> out;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (Value a : methods[m].args) {
            for (Value v : methods[m].rets) out.push_back({static_cast<int>(m), a, v});
        }
    }
    return out;
}

int Domains::alphabet_index(const APComInstance& a) const {
    int offset = 0;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        const auto& md = methods[m];
        if (static_cast<int>(m) == a.method) {
            auto ai = std::find(md.args.begin(), md.args.end(), a.arg);
            auto ri = std::find(md.rets.begin(), md.rets.end(), a.ret);
            if (ai == md.args.end() || ri == md.rets.end()) return -1;
            return offset + static_cast<int>((ai - md.args.begin()) * static_cast<long>(md.rets.size()) +
                                             (ri - md.rets.begin()));
        }
        offset += static_cast<int>(md.args.size() * md.rets.size());
    }
    return -1;
}

std::optional<std::size_t> Domains::concrete_index(const std::string& name) const {
    auto it = std::find(concrete_locations.begin(), concrete_locations.end(), name);
    if (it == concrete_locations.end()) return std::nullopt;
    return static_cast<std::size_t>(it - concrete_locations.begin());
}

std::optional<std::size_t> Domains::abstract_index(const std::string& name) const {
    auto it = std::find(abstract_locations.begin(), abstract_locations.end(), name);
    if (it == abstract_locations.end()) return std::nullopt;
    return static_cast<std::size_t>(it - abstract_locations.begin());
}

int Domains::method_index(const std::string& name) const {
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (methods[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

void Domains::validate() const {
    if (concrete_locations.size() > kMaxLocations || abstract_locations.size() > kMaxLocations) {
        throw Error(ErrorKind::ModelError, "at most " + std::to_string(kMaxLocations) + " locations per heap");
    }
    if (threads < 1 || threads > static_cast<int>(kMaxThreads)) {
        throw Error(ErrorKind::ModelError, "thread count must be in 1.." + std::to_string(kMaxThreads));
    }
    if (values.empty()) throw Error(ErrorKind::ModelError, "Val must be non-empty and finite");
    for (Value v : values) {
        if (v < kMinValue || v > kMaxValue) throw Error(ErrorKind::ModelError, "value out of range");
    }
    if (modulus <= 0) throw Error(ErrorKind::ModelError, "modulus must be positive");
    std::set<std::string> seen;
    for (const auto& l : concrete_locations) {
        if (!seen.insert(l).second) throw Error(ErrorKind::ModelError, "duplicate location " + l);
    }
    seen.clear();
    for (const auto& l : abstract_locations) {
        if (!seen.insert(l).second) throw Error(ErrorKind::ModelError, "duplicate abstract location " + l);
    }
}

double world_universe_size(const Domains& d) {
    const double cell = static_cast<double>(d.values.size() + 1);
    const double toks = 1.0 + 2.0 * static_cast<double>(d.alphabet().size());
    return std::pow(cell, static_cast<double>(d.concrete_locations.size() + d.abstract_locations.size())) *
           std::pow(toks, d.threads);
}

std::vector<Heap> enumerate_heaps(std::size_t locations, const std::vector<Value>& values) {
    std::vector<Heap> out{Heap{}};
    for (std::size_t l = 0; l < locations; ++l) {
        std::vector<Heap> next;
        next.reserve(out.size() * (values.size() + 1));
        for (const Heap& h : out) {
            next.push_back(h);
            for (Value v : values) {
                Heap g = h;
                g.set(l, v);
                next.push_back(g);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<WorldTriple> enumerate_worlds(const Domains& d) {
    const double size = world_universe_size(d);
    if (size > static_cast<double>(d.cap)) {
        std::ostringstream os;
        os << "world universe has " << size << " triples, cap is " << d.cap << "; raise --cap or RELVIEWS_CAP";
        throw Error(ErrorKind::UniverseTooLarge, os.str());
    }
    const auto conc = enumerate_heaps(d.concrete_locations.size(), d.values);
    const auto abs = enumerate_heaps(d.abstract_locations.size(), d.values);
    std::vector<TokenMap> toks{TokenMap{}};
    const auto n = static_cast<int>(d.alphabet().size());
    for (ThreadId t = 1; t <= d.threads; ++t) {
        std::vector<TokenMap> next;
        for (const auto& m : toks) {
            next.push_back(m);
            for (int a = 0; a < n; ++a) {
                TokenMap x = m;
                x.set(t, Token::todo(a));
                next.push_back(x);
                x.set(t, Token::done(a));
                next.push_back(x);
            }
        }
        toks = std::move(next);
    }
    std::vector<WorldTriple> out;
    out.reserve(conc.size() * abs.size() * toks.size());
    for (const auto& c : conc) {
        for (const auto& s : abs) {
            for (const auto& m : toks) out.push_back({c, s, m});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_heap(const Heap& h, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!h.has(i)) continue;
        if (!first) os << ", ";
        first = false;
        os << names[i] << ':' << *h.get(i);
    }
    os << ']';
    return os.str();
}

std::string format_token(const Token& tok, const Domains& d) {
    if (!tok.present()) return "none";
    const auto alpha = d.alphabet();
    const auto& a = alpha.at(static_cast<std::size_t>(tok.apcom()));
    std::ostringstream os;
    os << (tok.kind() == TokenKind::Todo ? "todo(" : "done(") << d.methods[static_cast<std::size_t>(a.method)].name
       << '(' << a.arg << ',' << a.ret << "))";
    return os.str();
}

std::string format_tokens(const TokenMap& m, const Domains& d) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (ThreadId t = 1; t <= d.threads; ++t) {
        if (!m.get(t).present()) continue;
        if (!first) os << ", ";
        first = false;
        os << t << ':' << format_token(m.get(t), d);
    }
    os << ']';
    return os.str();
}

std::string format_world(const WorldTriple& w, const Domains& d) {
    return "(" + format_heap(w.concrete, d.concrete_locations) + ", " + format_heap(w.abstract, d.abstract_locations) +
           ", " + format_tokens(w.tokens, d) + ")";
}

} // namespace relviews

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relviews {

using Value = int;
using ThreadId = int;

inline constexpr std::size_t kMaxLocations = 16;
inline constexpr std::size_t kMaxThreads = 4;
inline constexpr std::int8_t kAbsent = INT8_MIN;
inline constexpr Value kMinValue = -100;
inline constexpr Value kMaxValue = 100;

enum class ErrorKind {
    UndefinedLocation,
    FaultReachable,
    UniverseTooLarge,
    StabilityViolation,
    LocalityViolation,
    ModelError,
    SchemaError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Finite partial map Loc -> Val over a model-declared location table.
// Cells beyond the table size are always absent.
class Heap {
public:
    Heap() { cells_.fill(kAbsent); }

    bool has(std::size_t loc) const { return cells_[loc] != kAbsent; }
    std::optional<Value> get(std::size_t loc) const {
        if (cells_[loc] == kAbsent) return std::nullopt;
        return cells_[loc];
    }
    void set(std::size_t loc, Value v);
    void erase(std::size_t loc) { cells_[loc] = kAbsent; }
    bool empty() const;
    std::size_t size() const;

    auto operator<=>(const Heap&) const = default;
    bool operator==(const Heap&) const = default;

    const std::array<std::int8_t, kMaxLocations>& raw() const { return cells_; }

private:
    std::array<std::int8_t, kMaxLocations> cells_;
};

// Heap or the fault state.
struct HeapState {
    bool fault = false;
    Heap heap;

    static HeapState faulted() { return HeapState{true, Heap{}}; }
    static HeapState of(const Heap& h) { return HeapState{false, h}; }
    bool operator==(const HeapState&) const = default;
};

// Composition result for the partial operation: nullopt is "undefined".
std::optional<HeapState> compose_states(const HeapState& a, const HeapState& b);
std::optional<Heap> compose_heaps(const Heap& a, const Heap& b);
// a with every cell of b removed; b must be contained in a.
Heap heap_minus(const Heap& a, const Heap& b);
bool heap_contains(const Heap& a, const Heap& b);

// Abstract primitive command instance L(m, a, v), indexed in the model's
// token alphabet.
struct APComInstance {
    int method = 0;
    Value arg = 0;
    Value ret = 0;
    auto operator<=>(const APComInstance&) const = default;
};

enum class TokenKind : std::uint8_t { None = 0, Todo = 1, Done = 2 };

// Packed token: 0 is "no token", otherwise (alphabet index + 1) * 4 + kind.
struct Token {
    std::uint16_t bits = 0;

    static Token none() { return {}; }
    static Token todo(int apcom) { return Token{static_cast<std::uint16_t>((apcom + 1) * 4 + 1)}; }
    static Token done(int apcom) { return Token{static_cast<std::uint16_t>((apcom + 1) * 4 + 2)}; }

    TokenKind kind() const { return static_cast<TokenKind>(bits & 3); }
    int apcom() const { return bits / 4 - 1; }
    bool present() const { return bits != 0; }

    auto operator<=>(const Token&) const = default;
};

// Thread id -> token. Index 0 is thread 1.
class TokenMap {
public:
    TokenMap() = default;

    Token get(ThreadId t) const { return slots_[static_cast<std::size_t>(t - 1)]; }
    void set(ThreadId t, Token tok) { slots_[static_cast<std::size_t>(t - 1)] = tok; }
    bool empty() const;
    std::size_t size() const;

    auto operator<=>(const TokenMap&) const = default;
    bool operator==(const TokenMap&) const = default;

private:
    std::array<Token, kMaxThreads> slots_{};
};

std::optional<TokenMap> compose_tokens(const TokenMap& a, const TokenMap& b);
TokenMap tokens_minus(const TokenMap& a, const TokenMap& b);
bool tokens_contain(const TokenMap& a, const TokenMap& b);

// One (concrete state, abstract state, tokens) configuration.
struct WorldTriple {
    Heap concrete;
    Heap abstract;
    TokenMap tokens;

    auto operator<=>(const WorldTriple&) const = default;
    bool operator==(const WorldTriple&) const = default;

    bool empty() const { return concrete.empty() && abstract.empty() && tokens.empty(); }
};

std::optional<WorldTriple> compose_worlds(const WorldTriple& a, const WorldTriple& b);
bool world_contains(const WorldTriple& whole, const WorldTriple& part);
WorldTriple world_minus(const WorldTriple& whole, const WorldTriple& part);

struct WorldHash {
    std::size_t operator()(const WorldTriple& w) const noexcept;
};
struct HeapHash {
    std::size_t operator()(const Heap& h) const noexcept;
};

struct MethodDecl {
    std::string name;
    std::vector<Value> args;
    std::vector<Value> rets;
};

// Finite domains of a model: locations, values, threads, token alphabet.
struct Domains {
    std::vector<std::string> concrete_locations;
    std::vector<std::string> abstract_locations;
    std::vector<Value> values;
    Value modulus = 0;
    int threads = 1;
    std::vector<MethodDecl> methods;
    std::map<std::string, Value> constants;
    std::size_t cap = 2'000'000;

    // Token alphabet: every L(m, a, v) over the method domains.
    std::vector<APComInstance> alphabet() const;
    int alphabet_index(const APComInstance& a) const;
    std::optional<std::size_t> concrete_index(const std::string& name) const;
    std::optional<std::size_t> abstract_index(const std::string& name) const;
    int method_index(const std::string& name) const;

    void validate() const;
};

// The complete universe of world triples over the domains.
std::vector<WorldTriple> enumerate_worlds(const Domains& d);
// Cardinality without materializing.
double world_universe_size(const Domains& d);
std::vector<Heap> enumerate_heaps(std::size_t locations, const std::vector<Value>& values);

std::string format_heap(const Heap& h, const std::vector<std::string>& names);
std::string format_token(const Token& tok, const Domains& d);
std::string format_tokens(const TokenMap& m, const Domains& d);
std::string format_world(const WorldTriple& w, const Domains& d);

} // namespace relviews

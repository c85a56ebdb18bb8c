#pragma once

#include "relviews/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace relviews {

// One failed obligation for a method instance L(m, a, v) on thread t.
struct ObligationFailure {
    int obligation = 0; // 1 proof, 2 token pinning, 3 token swap
    std::string method;
    std::string instance;
    ThreadId thread = 1;
    std::string message;
    std::optional<FailureReport> proof;
    std::optional<WorldTriple> witness;
    bool not_established = false;

    std::string str(const Domains& d) const;
};

struct ObligationReport {
    bool ok = true;
    std::optional<ObligationFailure> failure; // first in (method, instance, thread, obligation) order
    std::size_t instances = 0;
    std::size_t proof_obligations = 0;
    std::size_t checks = 0;
};

// Checks, for every method instance and thread: the outline proves the
// specification, the pre and post pin the thread's token to todo and done,
// and pre and post differ only by that token.
ObligationReport check_obligations(const Session& s, const OutlineSet& outlines, unsigned jobs = 1);

// Individual obligations, exposed for tests.
// DCSL only: an outline assertion of thread t may not hold another thread's
// token, since that view could never compose with the other thread's own.
std::optional<ObligationFailure> check_token_ownership(const Session& s, const OutlineNode& outline,
                                                       const std::string& method, std::size_t k, ThreadId t);
std::optional<ObligationFailure> check_pinning(const Session& s, const std::string& method, std::size_t k, ThreadId t);
std::optional<ObligationFailure> check_swap(const Session& s, const std::string& method, std::size_t k_post,
                                            std::size_t k_pre, ThreadId t);

} // namespace relviews

#pragma once

#include "relviews/monoid.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace relviews {

// P ::= rho | P * P | P \/ P | exists X. P
struct Assertion {
    enum class Kind { Leaf, Star, Or, Exists };

    Kind kind = Kind::Leaf;
    Spatial leaf;
    std::string var;
    std::vector<Assertion> kids;

    std::string str() const;
    bool operator==(const Assertion& o) const;
};

namespace as {
Assertion leaf(Spatial pi);
Assertion star(Assertion a, Assertion b);
Assertion disj(Assertion a, Assertion b);
Assertion exists(std::string var, Assertion body);
} // namespace as

void free_lvars(const Assertion& p, std::set<std::string>& out);

// Evaluates assertions to views, memoized on the relevant part of the
// interpretation.
class Evaluator {
public:
    explicit Evaluator(const Monoid& m) : m_(m) {}

    const Monoid& monoid() const { return m_; }
    View eval(const Assertion& p, const Interpretation& i, ThreadId t) const;

private:
    View eval_uncached(const Assertion& p, const Interpretation& i, ThreadId t) const;

    const Monoid& m_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::shared_ptr<const View>> cache_;
};

struct OutlineNode;
using OutlinePtr = std::shared_ptr<const OutlineNode>;

// A proof outline mirrors the command tree and carries the assertions the
// rules need.
struct OutlineNode {
    enum class Kind { Seq, Prim, Skip, Choice, Iter, While, Branch, Frame, Conseq, Disj, Exists };

    struct Item {
        std::optional<Assertion> assertion;
        OutlinePtr node;
    };

    Kind kind = Kind::Skip;
    std::vector<Item> items;          // Seq
    PrimPtr prim;                     // Prim
    std::vector<OutlinePtr> kids;     // Choice, Disj branches; body of Iter/While/Frame/Conseq/Exists
    // Branch: guards[k] guards kids[k]; branch_pre[k] holds after the guard.
    std::vector<PrimPtr> guards;
    std::vector<std::optional<Assertion>> branch_pre;
    Expr cond;                        // While
    std::optional<Assertion> invariant, body_pre, exit;
    std::optional<Assertion> pre, post, frame; // Frame, Conseq, Disj branches, Exists
    std::vector<Assertion> disj_pre, disj_post;
    std::string var;                  // Exists
    std::string label;
};

// The command an outline proves.
CommandPtr command_of(const OutlineNode& n);
// Right-nested sequencing everywhere.
CommandPtr normalize(const CommandPtr& c);

struct FailureReport {
    std::string path;
    std::string rule;
    std::string interpretation;
    std::string message;
    std::optional<ActionCounterexample> counterexample;
    bool not_established = false;

    std::string str(const Domains& d) const;
};

struct ProofResult {
    bool ok = true;
    std::optional<FailureReport> failure;
    std::size_t obligations = 0;
};

// Checks {pre} C {post} for thread t, with `base` binding the outline's
// parameters.
ProofResult check_proof(const OutlineNode& root, const Assertion& pre, const Assertion& post, ThreadId t,
                        const Interpretation& base, const Evaluator& ev);

// Greatest-fixpoint safety over a finite universe of views.
bool check_safe(const Monoid& m, ThreadId t, const View& p, const CommandPtr& c, const View& q,
                const std::vector<View>& universe);

} // namespace relviews

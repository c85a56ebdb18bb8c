#pragma once

#include "relviews/dcsl.hpp"
#include "relviews/rgsep.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace relviews {

using View = std::variant<DcslView, RgsepView>;

// Uniform access to a view monoid instantiation.
class Monoid {
public:
    virtual ~Monoid() = default;

    virtual std::string name() const = 0;
    virtual View unit() const = 0;
    virtual View compose(const View& p, const View& q) const = 0;
    virtual View disjoin(const View& p, const View& q) const = 0;
    virtual std::vector<WorldTriple> reify(const View& p) const = 0;
    virtual ActionVerdict check_action(ThreadId t, const PrimCommand& alpha, const View& p, const View& q) const = 0;
    virtual ImplicationVerdict repart_implies(const View& p, const View& q) const = 0;
    // Meaning of a view assertion for thread t.
    virtual View eval_leaf(const Spatial& pi, const Interpretation& i, ThreadId t) const = 0;
    virtual bool equal(const View& p, const View& q) const = 0;
    virtual std::size_t size(const View& p) const = 0;

    const LpContext& lp() const { return lp_; }
    const Domains& domains() const { return lp_.domains(); }

protected:
    explicit Monoid(const LpContext& lp) : lp_(lp) {}
    const LpContext& lp_;
};

class DcslMonoid : public Monoid {
public:
    // `universe` supplies the singleton frames and the meaning of `true`.
    DcslMonoid(const LpContext& lp, std::vector<WorldTriple> universe);

    std::string name() const override { return "dcsl"; }
    View unit() const override;
    View compose(const View& p, const View& q) const override;
    View disjoin(const View& p, const View& q) const override;
    std::vector<WorldTriple> reify(const View& p) const override;
    ActionVerdict check_action(ThreadId t, const PrimCommand& alpha, const View& p, const View& q) const override;
    ImplicationVerdict repart_implies(const View& p, const View& q) const override;
    View eval_leaf(const Spatial& pi, const Interpretation& i, ThreadId t) const override;
    bool equal(const View& p, const View& q) const override;
    std::size_t size(const View& p) const override;

    const std::vector<WorldTriple>& universe() const { return universe_; }

private:
    std::vector<WorldTriple> universe_;
};

// Rely and guarantee of a thread.
using RelyGuarantee = std::function<std::pair<RelationPtr, RelationPtr>(ThreadId)>;

class RgsepMonoid : public Monoid {
public:
    RgsepMonoid(const LpContext& lp, SharedSpace space, RelyGuarantee rg);

    std::string name() const override { return "rgsep"; }
    View unit() const override;
    View compose(const View& p, const View& q) const override;
    View disjoin(const View& p, const View& q) const override;
    std::vector<WorldTriple> reify(const View& p) const override;
    ActionVerdict check_action(ThreadId t, const PrimCommand& alpha, const View& p, const View& q) const override;
    ImplicationVerdict repart_implies(const View& p, const View& q) const override;
    View eval_leaf(const Spatial& pi, const Interpretation& i, ThreadId t) const override;
    bool equal(const View& p, const View& q) const override;
    std::size_t size(const View& p) const override;

    const SharedSpace& space() const { return space_; }
    std::pair<RelationPtr, RelationPtr> rely_guarantee(ThreadId t) const { return rg_(t); }

private:
    SharedSpace space_;
    RelyGuarantee rg_;
};

} // namespace relviews

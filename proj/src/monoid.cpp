#include "relviews/monoid.hpp"

namespace relviews {

namespace {
const DcslView& dv(const View& v) {
    if (auto p = std::get_if<DcslView>(&v)) return *p;
    throw Error(ErrorKind::ModelError, "RGSep view passed to the DCSL monoid");
}
const RgsepView& rv(const View& v) {
    if (auto p = std::get_if<RgsepView>(&v)) return *p;
    throw Error(ErrorKind::ModelError, "DCSL view passed to the RGSep monoid");
}
} // namespace

DcslMonoid::DcslMonoid(const LpContext& lp, std::vector<WorldTriple> universe)
    : Monoid(lp), universe_(std::move(universe)) {}

View DcslMonoid::unit() const { return dcsl_unit(); }
View DcslMonoid::compose(const View& p, const View& q) const { return compose_dcsl(dv(p), dv(q)); }
View DcslMonoid::disjoin(const View& p, const View& q) const { return disjoin_dcsl(dv(p), dv(q)); }
std::vector<WorldTriple> DcslMonoid::reify(const View& p) const { return reify_dcsl(dv(p)); }

ActionVerdict DcslMonoid::check_action(ThreadId t, const PrimCommand& alpha, const View& p, const View& q) const {
    return check_action_dcsl(t, alpha, dv(p), dv(q), lp_, universe_);
}

ImplicationVerdict DcslMonoid::repart_implies(const View& p, const View& q) const {
    return repart_implies_dcsl(dv(p), dv(q), domains());
}

View DcslMonoid::eval_leaf(const Spatial& pi, const Interpretation& i, ThreadId) const {
    SpatialContext ctx{&domains(), &universe_};
    return dcsl_view(generate(pi, i, ctx, GenerateMode::Exact));
}

bool DcslMonoid::equal(const View& p, const View& q) const { return dv(p) == dv(q); }
std::size_t DcslMonoid::size(const View& p) const { return dv(p).worlds.size(); }

RgsepMonoid::RgsepMonoid(const LpContext& lp, SharedSpace space, RelyGuarantee rg)
    : Monoid(lp), space_(std::move(space)), rg_(std::move(rg)) {}

View RgsepMonoid::unit() const { return rgsep_unit(space_); }
View RgsepMonoid::compose(const View& p, const View& q) const { return compose_rgsep(rv(p), rv(q), space_); }
View RgsepMonoid::disjoin(const View& p, const View& q) const { return disjoin_rgsep(rv(p), rv(q)); }
std::vector<WorldTriple> RgsepMonoid::reify(const View& p) const { return reify_rgsep(rv(p)); }

ActionVerdict RgsepMonoid::check_action(ThreadId t, const PrimCommand& alpha, const View& p, const View& q) const {
    return check_action_rgsep(t, alpha, rv(p), rv(q), lp_, space_);
}

ImplicationVerdict RgsepMonoid::repart_implies(const View& p, const View& q) const {
    return repart_implies_rgsep(rv(p), rv(q), space_);
}

View RgsepMonoid::eval_leaf(const Spatial& pi, const Interpretation& i, ThreadId t) const {
    auto [rely, guar] = rg_(t);
    return eval_rgsep(pi, i, rely, guar, space_);
}

bool RgsepMonoid::equal(const View& p, const View& q) const {
    const auto& a = rv(p);
    const auto& b = rv(q);
    if (a.bottom || b.bottom) return a.bottom == b.bottom;
    return a.pred == b.pred && a.rely->key() == b.rely->key() && a.guar->key() == b.guar->key();
}

std::size_t RgsepMonoid::size(const View& p) const { return rv(p).pred.size(); }

} // namespace relviews

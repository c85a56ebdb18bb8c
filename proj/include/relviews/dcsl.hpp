#pragma once

#include "relviews/views.hpp"

#include <vector>

namespace relviews {

// A DCSL view: a finite set of world triples.
struct DcslView {
    WorldSet worlds;

    bool operator==(const DcslView& o) const { return worlds.items() == o.worlds.items(); }
};

DcslView dcsl_view(std::vector<WorldTriple> ws);
DcslView dcsl_unit();
DcslView compose_dcsl(const DcslView& p, const DcslView& q);
DcslView disjoin_dcsl(const DcslView& p, const DcslView& q);
const std::vector<WorldTriple>& reify_dcsl(const DcslView& p);

// Unit plus every singleton view over the universe.
std::vector<DcslView> frames_dcsl(const std::vector<WorldTriple>& universe);

// Action judgement with frames ranging over unit and the singletons of
// `universe`.
ActionVerdict check_action_dcsl(ThreadId t, const PrimCommand& alpha, const DcslView& p, const DcslView& q,
                                const LpContext& lp, const std::vector<WorldTriple>& universe);
// The same judgement quantified over an explicit frame list.
ActionVerdict check_action_dcsl_frames(ThreadId t, const PrimCommand& alpha, const DcslView& p, const DcslView& q,
                                       const LpContext& lp, const std::vector<DcslView>& frames);

ImplicationVerdict repart_implies_dcsl(const DcslView& p, const DcslView& q, const Domains& d);
ImplicationVerdict repart_implies_dcsl_frames(const DcslView& p, const DcslView& q, const std::vector<DcslView>& frames,
                                              const Domains& d);

} // namespace relviews

// typespec.hpp -- the CLI type grammar: `x`-separated products of
// A<n> B<n> C<n> D<n> G2 F4 E6 E7 E8 GL<n> SL<n> Sp<2n> SO<n> T<r>, each with
// an optional ^2/^3 twist-order suffix (e.g. SO8^3).
#pragma once

#include "langparams/dualgroup.hpp"
#include "langparams/rootdata.hpp"

#include <string>
#include <vector>

namespace langparams::typespec {

struct ParsedComponent {
    std::string label;
    int twist_order = 1;
};

std::vector<ParsedComponent> parse_components(const std::string& spec);

struct TypeWithTwist {
    rootdata::BasedRootDatum datum;
    rootdata::DiagramAutomorphism beta;
};

// Product datum plus the block-diagonal standard twist.
TypeWithTwist build_type(const std::string& spec);

// L-group spec with one factor per non-torus component (cycle length 1) and
// the torus components merged into the abelian block.
dualgroup::LGroupSpec build_lgroup_spec(const std::string& spec,
                                        const dualgroup::ArithContext& ctx);

}  // namespace langparams::typespec

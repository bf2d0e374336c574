#ifndef PSPAN_EXTENSIONS_HPP
#define PSPAN_EXTENSIONS_HPP

#include "pspan/netgraph.hpp"

namespace pspan {

// Annotated-net entry points.  The tagging grammar extends uniformly:
//   node entry  sign label(K,W)      e.g. -s8(8,13)
//   triple      (signW,label(K),signW)  e.g. (-2,s9(9),-14)
// with inhibitor arcs rendered as a doubled sign "--".  Defaults (weight 1,
// capacity inf, no inhibitor) fall back to the plain grammar, so an
// all-default net renders identically to net_to_netgraph.

// Weighted/capacitated nets.  Rejects inhibitor arcs (InvalidInhibitor).
NetGraph pt_net_to_netgraph(const Net& net);

// Nets with inhibitor arcs (weights/capacities allowed too).
NetGraph inhibitor_net_to_netgraph(const Net& net);

} // namespace pspan

#endif

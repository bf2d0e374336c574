#include "pspan/extensions.hpp"

namespace pspan {

NetGraph pt_net_to_netgraph(const Net& net) {
    for (const auto& a : net.arcs)
        if (a.inhibitor)
            throw InvalidInhibitor("weighted transform does not accept inhibitor arcs (" +
                                   a.from + " -> " + a.to + ")");
    return net_to_netgraph(net);
}

NetGraph inhibitor_net_to_netgraph(const Net& net) {
    // inhibitor arcs ride through the shared transform as the '--' sign
    return net_to_netgraph(net);
}

} // namespace pspan

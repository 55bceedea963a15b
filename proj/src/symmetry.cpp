#include "stadium/symmetry.hpp"

#include <algorithm>

namespace stadium {

StadiumConfig relabel_dihedral(const StadiumConfig &config, int rotation, bool reflect) {
    const int n = config.gates;
    const int r = ((rotation % n) + n) % n;
    auto map = [&](GateId g) { return reflect ? (n - 1 - g + r) % n : (g + r) % n; };

    StadiumConfig out = config;
    for (Curve c : {Curve::Bob, Curve::Alice})
        for (std::size_t k = 0; k < config.order(c).size(); ++k)
            out.order(c)[k] = map(config.order(c)[k]);
    for (GateId s = 0; s < n; ++s)
        out.side_order[map(s)] = reflect ? flip(config.side_order[s]) : config.side_order[s];
    return out;
}

StadiumConfig swap_curves(const StadiumConfig &config) {
    StadiumConfig out = config;
    std::swap(out.bob_order, out.alice_order);
    for (auto &s : out.side_order)
        s = flip(s);
    return out;
}

StadiumConfig reverse_walks(const StadiumConfig &config) {
    if (!config.shared_endpoint)
        throw StadiumError(ErrorKind::NotSharedEndpoint, "walk reversal needs a shared endpoint");
    // Each gate keeps the same Bob point and Alice point, so the flags stay.
    StadiumConfig out = config;
    std::reverse(out.bob_order.begin(), out.bob_order.end());
    std::reverse(out.alice_order.begin(), out.alice_order.end());
    return out;
}

StadiumConfig apply(const StadiumConfig &config, const SymmetryElement &g) {
    StadiumConfig out = g.reverse_walks ? reverse_walks(config) : config;
    if (g.rotation != 0 || g.reflect)
        out = relabel_dihedral(out, g.rotation, g.reflect);
    if (g.swap_curves)
        out = swap_curves(out);
    return out;
}

std::vector<SymmetryElement> symmetry_group(int gates, bool shared) {
    std::vector<SymmetryElement> group;
    for (bool rev : {false, true}) {
        if (rev && !shared)
            continue;
        for (bool swap : {false, true})
            for (bool refl : {false, true})
                for (int r = 0; r < gates; ++r)
                    group.push_back({r, refl, swap, rev});
    }
    return group;
}

StadiumConfig canonical_form(const StadiumConfig &config) {
    StadiumConfig best = config;
    for (const auto &g : symmetry_group(config.gates, config.shared_endpoint)) {
        StadiumConfig image = apply(config, g);
        if (image < best)
            best = std::move(image);
    }
    return best;
}

bool is_canonical(const StadiumConfig &config) {
    for (const auto &g : symmetry_group(config.gates, config.shared_endpoint))
        if (apply(config, g) < config)
            return false;
    return true;
}

} // namespace stadium

#pragma once

#include <vector>

#include "stadium/model.hpp"

namespace stadium {

// One element of dihedral relabelings x curve swap x walk reversal.
struct SymmetryElement {
    int rotation = 0;
    bool reflect = false;
    bool swap_curves = false;
    bool reverse_walks = false; // only valid on shared-endpoint configs
};

// Gate g maps to g + r (mod n); with reflect, to (n - 1 - g + r) mod n and each
// side's point order flips along with the orientation.
StadiumConfig relabel_dihedral(const StadiumConfig &config, int rotation, bool reflect);

StadiumConfig swap_curves(const StadiumConfig &config);

// Both walks run backwards from the shared end. Throws NotSharedEndpoint.
StadiumConfig reverse_walks(const StadiumConfig &config);

// Applies reversal, then the dihedral relabeling, then the curve swap.
StadiumConfig apply(const StadiumConfig &config, const SymmetryElement &g);

// All group elements acting on configs with this gate count / endpoint mode.
std::vector<SymmetryElement> symmetry_group(int gates, bool shared);

// Lexicographically least member of the orbit.
StadiumConfig canonical_form(const StadiumConfig &config);

bool is_canonical(const StadiumConfig &config);

} // namespace stadium

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>

#include "stadium/model.hpp"

namespace stadium::testing {

constexpr SideOrder B = SideOrder::BobFirst;
constexpr SideOrder A = SideOrder::AliceFirst;

inline StadiumConfig make(std::vector<GateId> bob, std::vector<GateId> alice, std::vector<SideOrder> flags,
                          bool shared = false) {
    StadiumConfig c;
    c.gates = static_cast<int>(bob.size());
    c.bob_order = std::move(bob);
    c.alice_order = std::move(alice);
    c.side_order = std::move(flags);
    c.shared_endpoint = shared;
    return validate_config(std::move(c));
}

// bob = alice = [0, 1, 2], flags B A B
inline StadiumConfig shadow3(bool shared = false) { return make({0, 1, 2}, {0, 1, 2}, {B, A, B}, shared); }

// Realizable with first gates 0 and 3.
inline StadiumConfig reverse_walk4() { return make({0, 1, 2, 3}, {3, 2, 1, 0}, {B, A, B, A}); }

// Every candidate, realizable or not, in no particular order.
inline void for_each_candidate(int n, bool shared, const std::function<void(const StadiumConfig &)> &visit) {
    StadiumConfig c;
    c.gates = n;
    c.shared_endpoint = shared;
    c.bob_order.resize(n);
    c.side_order.resize(n);
    std::iota(c.bob_order.begin(), c.bob_order.end(), 0);
    do {
        c.alice_order.resize(n);
        std::iota(c.alice_order.begin(), c.alice_order.end(), 0);
        do {
            for (int m = 0; m < (1 << n); ++m) {
                for (int s = 0; s < n; ++s)
                    c.side_order[s] = ((m >> s) & 1) ? A : B;
                visit(c);
            }
        } while (std::next_permutation(c.alice_order.begin(), c.alice_order.end()));
    } while (std::next_permutation(c.bob_order.begin(), c.bob_order.end()));
}

} // namespace stadium::testing

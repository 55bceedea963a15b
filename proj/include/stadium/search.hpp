#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stadium/model.hpp"

namespace stadium {

struct SearchOptions {
    int gates = 3;
    bool shared_endpoint = false;
    bool up_to_symmetry = false;
    int parallel_width = 1;
    std::optional<std::uint64_t> limit;
    // Largest gate count accepted. 7 is an explicit opt-in; see allow_large().
    int max_gates = 6;

    SearchOptions &allow_large() {
        max_gates = 7;
        return *this;
    }
};

struct SearchSummary {
    std::uint64_t raw_candidates = 0; // n! * n! * 2^n
    std::uint64_t nodes_visited = 0;  // DFS placements tried, pruned or not
    std::uint64_t realizable = 0;     // configs passing the oracle (all orbits)
    std::uint64_t emitted = 0;        // consumer invocations
};

std::uint64_t raw_candidate_count(int gates);

// Calls `consumer` once per realizable configuration (once per orbit when
// up_to_symmetry) in lexicographic order, from the calling thread, for every
// parallel_width. Throws BudgetExceeded above opts.max_gates.
SearchSummary enumerate_realizable(const SearchOptions &opts,
                                   const std::function<void(const StadiumConfig &)> &consumer);

// Same enumeration, stopping as soon as `consumer` returns false.
SearchSummary enumerate_realizable_until(const SearchOptions &opts,
                                         const std::function<bool(const StadiumConfig &)> &consumer);

// Reference enumeration: every one of the n!·n!·2^n candidates goes through
// model::realizable. Same order and output as the pruned search.
SearchSummary unpruned_scan(int gates, bool shared, const std::function<void(const StadiumConfig &)> &consumer);

enum class Claim { StadiumFirstGate, GeneralOrderEquality, FirstLastEquality, DistinctFirstWitness };

std::string to_string(Claim claim);

struct Report {
    Claim claim = Claim::StadiumFirstGate;
    int gates = 0;
    bool shared_endpoint = false;
    bool holds = false;
    std::vector<StadiumConfig> counterexamples;
    std::vector<StadiumConfig> witnesses;
    std::uint64_t configs_scanned = 0;
    std::uint64_t realizable_count = 0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t cross_checked = 0; // first-last: reversal cross-checks run
    std::chrono::nanoseconds elapsed{0};
};

// Counterexamples are capped so a false claim cannot exhaust memory.
constexpr std::size_t kMaxRecordedCounterexamples = 64;

struct VerifyOptions {
    int parallel_width = 1;
    int max_gates = 6;
};

// Non-shared walks, odd n: every realizable config crosses the same gate first.
Report verify_stadium(int gates, const VerifyOptions &opts = {});

// Shared endpoint, any n: both walks cross the gates in the same order.
Report verify_general_order(int gates, const VerifyOptions &opts = {});

// Shared endpoint, odd n: same first and same last gate, plus the reversal
// cross-check (first gate of the reversed pair is the original last gate).
Report verify_first_last(int gates, const VerifyOptions &opts = {});

// Lexicographically least realizable non-shared config with distinct first gates.
std::optional<StadiumConfig> find_distinct_first_witness(int gates, const VerifyOptions &opts = {});

Report distinct_first_report(int gates, const VerifyOptions &opts = {});

struct RealizableCounts {
    std::uint64_t raw = 0;
    std::uint64_t realizable = 0;
    std::optional<std::uint64_t> orbits;
};

RealizableCounts count_realizable(int gates, bool shared, bool up_to_symmetry, const VerifyOptions &opts = {});

} // namespace stadium

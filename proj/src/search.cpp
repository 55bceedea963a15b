#include "stadium/search.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <thread>

#include "stadium/symmetry.hpp"

namespace stadium {

namespace {

using Sink = std::function<bool(const StadiumConfig &)>;

struct Endpoint {
    Curve curve;
    GateId gate;
};

struct ActiveChord {
    Region region;
    Endpoint a;
    Endpoint b;
};

enum class PairStatus { Apart, Cross, Undecided };

Region section_region(int k) { return k % 2 == 1 ? Region::Exterior : Region::Interior; }

// Depth-first search over (bob_order, alice_order, side_order) prefixes. Chords
// appear as soon as both of their crossings are placed. A chord pair whose
// interleaving depends on side flags not yet chosen is deferred to the flag
// phase and checked once the last of those gates is fixed.
class PrunedSearch {
public:
    struct Emission {
        std::uint64_t realizable_so_far;
        std::uint64_t nodes_so_far;
    };
    using LeafSink = std::function<bool(const StadiumConfig &, const Emission &)>;

    PrunedSearch(int gates, bool shared, bool up_to_symmetry)
        : n_(gates), shared_(shared), up_to_symmetry_(up_to_symmetry), bob_(gates, -1), alice_(gates, -1),
          used_bob_(gates, false), used_alice_(gates, false), flags_(gates, SideOrder::BobFirst) {}

    // Explores everything below a fixed Bob prefix. Returns false if the sink
    // asked to stop.
    bool run(const std::vector<GateId> &bob_prefix, const LeafSink &sink) {
        sink_ = &sink;
        for (std::size_t k = 0; k < bob_prefix.size(); ++k) {
            const GateId g = bob_prefix[k];
            bob_[k] = g;
            used_bob_[g] = true;
            if (k > 0 && !add_chord(section_region(static_cast<int>(k)), {Curve::Bob, bob_[k - 1]}, {Curve::Bob, g}))
                return true;
        }
        return place_bob(static_cast<int>(bob_prefix.size()));
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t realizable() const { return realizable_; }

private:
    struct Deferred {
        std::size_t i;
        std::size_t j;
        GateId check_at;
    };

    SideOrder flag_for(GateId g, GateId shared_gate_a, SideOrder fa, GateId shared_gate_b, SideOrder fb) const {
        if (g == shared_gate_a)
            return fa;
        if (g == shared_gate_b)
            return fb;
        return g < known_flags_ ? flags_[g] : SideOrder::BobFirst;
    }

    PairStatus status(const ActiveChord &c1, const ActiveChord &c2, GateId *check_at) const {
        const Endpoint ends[4] = {c1.a, c1.b, c2.a, c2.b};
        // Gates carrying two of the four endpoints: only their flags matter.
        GateId unknown[2] = {-1, -1};
        int unknown_count = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (ends[i].gate == ends[j].gate && ends[i].gate >= known_flags_ && unknown_count < 2 &&
                    (unknown_count == 0 || unknown[0] != ends[i].gate))
                    unknown[unknown_count++] = ends[i].gate;

        auto evaluate = [&](SideOrder fa, SideOrder fb) {
            auto pos = [&](const Endpoint &e) {
                const SideOrder f = flag_for(e.gate, unknown[0], fa, unknown[1], fb);
                return 2 * e.gate + (f == first_on_side(e.curve) ? 0 : 1);
            };
            const Chord a{pos(c1.a), pos(c1.b)};
            const Chord b{pos(c2.a), pos(c2.b)};
            return chords_interleave(a, b, 2 * n_);
        };

        bool any_cross = false;
        bool any_apart = false;
        const int combos = 1 << unknown_count;
        for (int m = 0; m < combos; ++m) {
            const bool cross = evaluate((m & 1) ? SideOrder::AliceFirst : SideOrder::BobFirst,
                                        (m & 2) ? SideOrder::AliceFirst : SideOrder::BobFirst);
            (cross ? any_cross : any_apart) = true;
        }
        if (any_cross && any_apart) {
            *check_at = std::max(unknown[0], unknown[1]);
            return PairStatus::Undecided;
        }
        return any_cross ? PairStatus::Cross : PairStatus::Apart;
    }

    // Pushes the chord; on a definite crossing, undoes everything and fails.
    bool add_chord(Region region, Endpoint a, Endpoint b) {
        const ActiveChord chord{region, a, b};
        const std::size_t deferred_mark = deferred_.size();
        for (std::size_t i = 0; i < chords_.size(); ++i) {
            if (chords_[i].region != region)
                continue;
            GateId check_at = -1;
            switch (status(chords_[i], chord, &check_at)) {
            case PairStatus::Apart: break;
            case PairStatus::Cross: deferred_.resize(deferred_mark); return false;
            case PairStatus::Undecided: deferred_.push_back({i, chords_.size(), check_at}); break;
            }
        }
        chords_.push_back(chord);
        chord_marks_.push_back(deferred_mark);
        return true;
    }

    void pop_chord() {
        deferred_.resize(chord_marks_.back());
        chord_marks_.pop_back();
        chords_.pop_back();
    }

    bool place_bob(int k) {
        if (k == n_)
            return place_alice(0);
        for (GateId g = 0; g < n_; ++g) {
            if (used_bob_[g])
                continue;
            ++nodes_;
            bob_[k] = g;
            used_bob_[g] = true;
            const bool has_chord = k > 0;
            if (!has_chord || add_chord(section_region(k), {Curve::Bob, bob_[k - 1]}, {Curve::Bob, g})) {
                const bool go_on = place_bob(k + 1);
                if (has_chord)
                    pop_chord();
                if (!go_on) {
                    used_bob_[g] = false;
                    return false;
                }
            }
            used_bob_[g] = false;
        }
        return true;
    }

    bool place_alice(int k) {
        if (k == n_)
            return place_flag(0);
        for (GateId g = 0; g < n_; ++g) {
            if (used_alice_[g])
                continue;
            ++nodes_;
            alice_[k] = g;
            used_alice_[g] = true;
            int pushed = 0;
            bool ok = true;
            if (k == 0) {
                ok = add_chord(Region::Interior, {Curve::Bob, bob_[0]}, {Curve::Alice, g});
                pushed += ok;
            } else {
                ok = add_chord(section_region(k), {Curve::Alice, alice_[k - 1]}, {Curve::Alice, g});
                pushed += ok;
            }
            if (ok && k == n_ - 1 && shared_) {
                ok = add_chord(section_region(n_), {Curve::Bob, bob_[n_ - 1]}, {Curve::Alice, g});
                pushed += ok;
            }
            bool go_on = true;
            if (ok)
                go_on = place_alice(k + 1);
            for (; pushed > 0; --pushed)
                pop_chord();
            used_alice_[g] = false;
            if (!go_on)
                return false;
        }
        return true;
    }

    bool place_flag(GateId s) {
        if (s == n_)
            return emit();
        for (SideOrder f : {SideOrder::BobFirst, SideOrder::AliceFirst}) {
            ++nodes_;
            flags_[s] = f;
            known_flags_ = s + 1;
            bool ok = true;
            for (const auto &d : deferred_) {
                if (d.check_at != s)
                    continue;
                GateId unused = -1;
                if (status(chords_[d.i], chords_[d.j], &unused) != PairStatus::Apart) {
                    ok = false;
                    break;
                }
            }
            if (ok && !place_flag(s + 1)) {
                known_flags_ = s;
                return false;
            }
            known_flags_ = s;
        }
        return true;
    }

    bool emit() {
        ++realizable_;
        StadiumConfig c;
        c.gates = n_;
        c.bob_order = bob_;
        c.alice_order = alice_;
        c.side_order = flags_;
        c.shared_endpoint = shared_;
        if (up_to_symmetry_ && !is_canonical(c))
            return true;
        return (*sink_)(c, {realizable_, nodes_});
    }

    int n_;
    bool shared_;
    bool up_to_symmetry_;
    std::vector<GateId> bob_, alice_;
    std::vector<bool> used_bob_, used_alice_;
    std::vector<SideOrder> flags_;
    GateId known_flags_ = 0;
    std::vector<ActiveChord> chords_;
    std::vector<std::size_t> chord_marks_;
    std::vector<Deferred> deferred_;
    const LeafSink *sink_ = nullptr;
    std::uint64_t nodes_ = 0;
    std::uint64_t realizable_ = 0;
};

void check_budget(int gates, int max_gates) {
    if (gates < 3)
        throw StadiumError(ErrorKind::GateCountTooSmall, "need at least 3 gates");
    if (gates > max_gates)
        throw StadiumError(ErrorKind::BudgetExceeded, std::to_string(gates) + " gates exceeds the search budget of " +
                                                          std::to_string(max_gates));
}

struct Emitted {
    StadiumConfig config;
    PrunedSearch::Emission at;
};

struct TaskResult {
    std::vector<Emitted> emitted;
    std::uint64_t realizable = 0;
    std::uint64_t nodes = 0;
};

std::vector<std::vector<GateId>> split_prefixes(int n, int depth) {
    std::vector<std::vector<GateId>> out;
    std::vector<GateId> prefix;
    std::vector<bool> used(n, false);
    auto rec = [&](auto &&self) -> void {
        if (static_cast<int>(prefix.size()) == depth) {
            out.push_back(prefix);
            return;
        }
        for (GateId g = 0; g < n; ++g) {
            if (used[g])
                continue;
            used[g] = true;
            prefix.push_back(g);
            self(self);
            prefix.pop_back();
            used[g] = false;
        }
    };
    rec(rec);
    return out;
}

} // namespace

std::uint64_t raw_candidate_count(int gates) {
    const std::uint64_t f = factorial(gates);
    return f * f * (std::uint64_t{1} << gates);
}

SearchSummary enumerate_realizable_until(const SearchOptions &opts, const Sink &consumer) {
    check_budget(opts.gates, opts.max_gates);
    const int n = opts.gates;
    SearchSummary summary;
    summary.raw_candidates = raw_candidate_count(n);

    // The search tree is split at Bob-prefix depth 2; those placements are
    // counted here so node totals do not depend on the worker count.
    const int depth = 2;
    const auto tasks = split_prefixes(n, depth);
    summary.nodes_visited = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(n) * (n - 1);

    std::uint64_t budget_left = opts.limit.value_or(UINT64_MAX);
    if (budget_left == 0)
        return summary;

    // Returns false once the caller wants no more configs.
    auto deliver = [&](const StadiumConfig &c) {
        ++summary.emitted;
        const bool more = consumer(c);
        --budget_left;
        return more && budget_left > 0;
    };

    const int width = std::max(1, opts.parallel_width);
    if (width == 1) {
        for (const auto &prefix : tasks) {
            PrunedSearch search(n, opts.shared_endpoint, opts.up_to_symmetry);
            bool stopped = false;
            const PrunedSearch::LeafSink sink = [&](const StadiumConfig &c, const PrunedSearch::Emission &) {
                stopped = !deliver(c);
                return !stopped;
            };
            search.run(prefix, sink);
            summary.nodes_visited += search.nodes();
            summary.realizable += search.realizable();
            if (stopped)
                return summary;
        }
        return summary;
    }

    // Workers fill per-task buffers; this thread drains them in task order.
    std::vector<TaskResult> results(tasks.size());
    std::vector<bool> done(tasks.size(), false);
    std::mutex mutex;
    std::condition_variable cv;
    std::size_t next_task = 0;
    std::size_t consumed = 0;
    std::atomic<bool> stop{false};
    const std::size_t window = static_cast<std::size_t>(width) * 2;

    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::unique_lock lock(mutex);
                cv.wait(lock, [&] {
                    return stop.load() || next_task >= tasks.size() || next_task < consumed + window;
                });
                if (stop.load() || next_task >= tasks.size())
                    return;
                i = next_task++;
            }
            TaskResult result;
            PrunedSearch search(n, opts.shared_endpoint, opts.up_to_symmetry);
            const PrunedSearch::LeafSink sink = [&](const StadiumConfig &c, const PrunedSearch::Emission &at) {
                result.emitted.push_back({c, at});
                return !stop.load(std::memory_order_relaxed);
            };
            search.run(tasks[i], sink);
            result.nodes = search.nodes();
            result.realizable = search.realizable();
            {
                std::lock_guard lock(mutex);
                results[i] = std::move(result);
                done[i] = true;
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < width; ++w)
        pool.emplace_back(worker);

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        TaskResult result;
        {
            std::unique_lock lock(mutex);
            cv.wait(lock, [&] { return static_cast<bool>(done[i]); });
            result = std::move(results[i]);
            consumed = i + 1;
        }
        cv.notify_all();
        bool stopped = false;
        for (const auto &e : result.emitted) {
            if (!deliver(e.config)) {
                summary.nodes_visited += e.at.nodes_so_far;
                summary.realizable += e.at.realizable_so_far;
                stopped = true;
                break;
            }
        }
        if (stopped) {
            stop.store(true);
            cv.notify_all();
            break;
        }
        summary.nodes_visited += result.nodes;
        summary.realizable += result.realizable;
    }
    for (auto &t : pool)
        t.join();
    return summary;
}

SearchSummary enumerate_realizable(const SearchOptions &opts,
                                   const std::function<void(const StadiumConfig &)> &consumer) {
    return enumerate_realizable_until(opts, [&](const StadiumConfig &c) {
        consumer(c);
        return true;
    });
}

SearchSummary unpruned_scan(int gates, bool shared, const std::function<void(const StadiumConfig &)> &consumer) {
    check_budget(gates, 7);
    SearchSummary summary;
    summary.raw_candidates = raw_candidate_count(gates);
    StadiumConfig c;
    c.gates = gates;
    c.shared_endpoint = shared;
    c.bob_order.resize(gates);
    std::iota(c.bob_order.begin(), c.bob_order.end(), 0);
    c.side_order.resize(gates);
    do {
        c.alice_order.resize(gates);
        std::iota(c.alice_order.begin(), c.alice_order.end(), 0);
        do {
            // Gate 0's flag is the most significant bit, matching lexicographic order.
            for (std::uint32_t mask = 0; mask < (1u << gates); ++mask) {
                ++summary.nodes_visited;
                for (int s = 0; s < gates; ++s)
                    c.side_order[s] = ((mask >> (gates - 1 - s)) & 1u) ? SideOrder::AliceFirst : SideOrder::BobFirst;
                if (realizable(c)) {
                    ++summary.realizable;
                    ++summary.emitted;
                    consumer(c);
                }
            }
        } while (std::next_permutation(c.alice_order.begin(), c.alice_order.end()));
    } while (std::next_permutation(c.bob_order.begin(), c.bob_order.end()));
    return summary;
}

std::string to_string(Claim claim) {
    switch (claim) {
    case Claim::StadiumFirstGate: return "StadiumFirstGate";
    case Claim::GeneralOrderEquality: return "GeneralOrderEquality";
    case Claim::FirstLastEquality: return "FirstLastEquality";
    case Claim::DistinctFirstWitness: return "DistinctFirstWitness";
    }
    return "Unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

SearchOptions options_for(int gates, bool shared, const VerifyOptions &opts) {
    SearchOptions s;
    s.gates = gates;
    s.shared_endpoint = shared;
    s.parallel_width = opts.parallel_width;
    s.max_gates = opts.max_gates;
    return s;
}

void require_odd(int gates) {
    if (gates % 2 == 0)
        throw StadiumError(ErrorKind::EvenGateCount, "claim is stated for an odd number of gates, got " +
                                                         std::to_string(gates));
}

void record(Report &r, const StadiumConfig &c) {
    r.holds = false;
    if (r.counterexamples.size() < kMaxRecordedCounterexamples)
        r.counterexamples.push_back(c);
}

} // namespace

Report verify_stadium(int gates, const VerifyOptions &opts) {
    require_odd(gates);
    const auto start = Clock::now();
    Report r;
    r.claim = Claim::StadiumFirstGate;
    r.gates = gates;
    r.holds = true;
    const auto summary = enumerate_realizable(options_for(gates, false, opts), [&](const StadiumConfig &c) {
        if (c.first_gate(Curve::Bob) != c.first_gate(Curve::Alice))
            record(r, c);
    });
    r.configs_scanned = summary.raw_candidates;
    r.realizable_count = summary.realizable;
    r.nodes_visited = summary.nodes_visited;
    r.elapsed = Clock::now() - start;
    return r;
}

Report verify_general_order(int gates, const VerifyOptions &opts) {
    const auto start = Clock::now();
    Report r;
    r.claim = Claim::GeneralOrderEquality;
    r.gates = gates;
    r.shared_endpoint = true;
    r.holds = true;
    const auto summary = enumerate_realizable(options_for(gates, true, opts), [&](const StadiumConfig &c) {
        if (c.bob_order != c.alice_order)
            record(r, c);
    });
    r.configs_scanned = summary.raw_candidates;
    r.realizable_count = summary.realizable;
    r.nodes_visited = summary.nodes_visited;
    r.elapsed = Clock::now() - start;
    return r;
}

Report verify_first_last(int gates, const VerifyOptions &opts) {
    require_odd(gates);
    const auto start = Clock::now();
    Report r;
    r.claim = Claim::FirstLastEquality;
    r.gates = gates;
    r.shared_endpoint = true;
    r.holds = true;
    const auto summary = enumerate_realizable(options_for(gates, true, opts), [&](const StadiumConfig &c) {
        const bool direct = c.first_gate(Curve::Bob) == c.first_gate(Curve::Alice) &&
                            c.last_gate(Curve::Bob) == c.last_gate(Curve::Alice);
        // Reversed walks start at the shared end; dropping the shared end leaves
        // a pair the first-gate claim applies to.
        const StadiumConfig reversed = reverse_walks(c);
        StadiumConfig relaxed = reversed;
        relaxed.shared_endpoint = false;
        const bool via_reversal = realizable(reversed) && realizable(relaxed) &&
                                  reversed.first_gate(Curve::Bob) == c.last_gate(Curve::Bob) &&
                                  reversed.first_gate(Curve::Alice) == c.last_gate(Curve::Alice) &&
                                  relaxed.first_gate(Curve::Bob) == relaxed.first_gate(Curve::Alice);
        ++r.cross_checked;
        if (!direct || !via_reversal)
            record(r, c);
    });
    r.configs_scanned = summary.raw_candidates;
    r.realizable_count = summary.realizable;
    r.nodes_visited = summary.nodes_visited;
    r.elapsed = Clock::now() - start;
    return r;
}

std::optional<StadiumConfig> find_distinct_first_witness(int gates, const VerifyOptions &opts) {
    const Report r = distinct_first_report(gates, opts);
    if (r.witnesses.empty())
        return std::nullopt;
    return r.witnesses.front();
}

Report distinct_first_report(int gates, const VerifyOptions &opts) {
    const auto start = Clock::now();
    Report r;
    r.claim = Claim::DistinctFirstWitness;
    r.gates = gates;
    std::optional<StadiumConfig> found;
    const auto summary = enumerate_realizable_until(options_for(gates, false, opts), [&](const StadiumConfig &c) {
        if (c.first_gate(Curve::Bob) != c.first_gate(Curve::Alice)) {
            found = c;
            return false;
        }
        return true;
    });
    r.holds = found.has_value();
    if (found)
        r.witnesses.push_back(*found);
    r.configs_scanned = summary.raw_candidates;
    r.realizable_count = summary.realizable;
    r.nodes_visited = summary.nodes_visited;
    r.elapsed = Clock::now() - start;
    return r;
}

RealizableCounts count_realizable(int gates, bool shared, bool up_to_symmetry, const VerifyOptions &opts) {
    RealizableCounts counts;
    SearchOptions s = options_for(gates, shared, opts);
    s.up_to_symmetry = up_to_symmetry;
    std::uint64_t canonical = 0;
    const auto summary = enumerate_realizable(s, [&](const StadiumConfig &) { ++canonical; });
    counts.raw = summary.raw_candidates;
    counts.realizable = summary.realizable;
    if (up_to_symmetry)
        counts.orbits = canonical;
    return counts;
}

} // namespace stadium

#include "stadium/reduction.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "stadium/search.hpp"

namespace stadium {

namespace {

constexpr std::size_t kMaxLostRecorded = 16;

int count_curve(const std::vector<CrossingLabel> &arc, Curve c) {
    return static_cast<int>(std::count_if(arc.begin(), arc.end(), [c](const CrossingLabel &l) { return l.curve == c; }));
}

bool first_gates_equal(const StadiumConfig &c) { return c.first_gate(Curve::Bob) == c.first_gate(Curve::Alice); }

std::vector<GateId> gates_of(const BoundaryWord &word, const std::vector<CrossingLabel> &labels) {
    std::set<GateId> gates;
    for (const auto &l : labels)
        gates.insert(word.position_of(l) / 2);
    return {gates.begin(), gates.end()};
}

// Steps each walk keeps under a plan, in order.
std::vector<int> kept_steps(const StadiumConfig &config, const RewritePlan &plan, Curve curve) {
    std::vector<bool> gone(config.gates + 1, false);
    for (const auto &l : plan.removed)
        if (l.curve == curve)
            gone[l.step] = true;
    std::vector<int> kept;
    for (int k = 1; k <= config.gates; ++k)
        if (!gone[k])
            kept.push_back(k);
    return kept;
}

RewritePlan remove_gates(const StadiumConfig &config, const std::vector<GateId> &gates) {
    const BoundaryWord word = boundary_word(config);
    RewritePlan plan;
    for (GateId g : gates) {
        plan.removed.push_back(word.points[2 * g]);
        plan.removed.push_back(word.points[2 * g + 1]);
    }
    std::sort(plan.removed.begin(), plan.removed.end());
    return plan;
}

// Everything a rewrite must satisfy regardless of case. Returns the reason
// the plan is unacceptable, or nothing with `out` set to the result.
std::optional<std::string> rewrite_problem(const StadiumConfig &config, const RewritePlan &plan,
                                           StadiumConfig &out) {
    const int n = config.gates;
    std::set<CrossingLabel> removed;
    for (const auto &l : plan.removed) {
        if (l.step < 1 || l.step > n)
            return "removed label " + to_string(l) + " out of range";
        if (!removed.insert(l).second)
            return "removed label " + to_string(l) + " listed twice";
    }
    if (plan.pairing_offset != 0 && plan.pairing_offset != 1)
        return "pairing offset must be 0 or 1";
    for (Curve c : {Curve::Bob, Curve::Alice}) {
        const auto kept = kept_steps(config, plan, c);
        if (kept.empty() || kept.front() != 1)
            return "first crossing " + to_string(CrossingLabel{c, 1}) + " removed";
        for (std::size_t i = 0; i + 1 < kept.size(); ++i)
            if ((kept[i + 1] - kept[i]) % 2 == 0)
                return "inside/outside alternation of " + to_string(CrossingLabel{c, kept[i]}) + " broken";
        if ((n - kept.back()) % 2 != 0)
            return "tail of the " + std::string(c == Curve::Bob ? "Bob" : "Alice") + " walk changes region";
    }
    try {
        out = redraw_polygon(config, plan);
    } catch (const StadiumError &e) {
        return std::string(e.what());
    }
    const int m = out.gates;
    if (m >= n || (n - m) % 2 != 0)
        return "gate count " + std::to_string(n) + " -> " + std::to_string(m) + " is not an even drop";
    if (m < 3)
        return "fewer than 3 gates left";
    if (first_gates_equal(out) != first_gates_equal(config))
        return "first gates no longer " + std::string(first_gates_equal(config) ? "equal" : "distinct");
    if (realizable(config) && !realizable(out))
        return "result is not realizable";
    return std::nullopt;
}

bool acceptable(const StadiumConfig &config, const RewritePlan &plan) {
    StadiumConfig out;
    return !rewrite_problem(config, plan, out);
}

// Gates with both points in the closed even arc; the Figure-3 style rewrite
// removes these first, then the smallest working subset of gates touching it.
std::optional<RewritePlan> fig3_plan(const StadiumConfig &config, const SectionSplit &split) {
    const BoundaryWord word = boundary_word(config);
    std::map<GateId, int> hits;
    hits[split.p / 2]++;
    hits[split.q / 2]++;
    for (const auto &l : split.arc_even)
        hits[word.position_of(l) / 2]++;

    std::vector<GateId> full;
    std::vector<GateId> touching;
    for (const auto &[g, k] : hits) {
        touching.push_back(g);
        if (k == 2)
            full.push_back(g);
    }
    if (!full.empty()) {
        auto plan = remove_gates(config, full);
        if (acceptable(config, plan))
            return plan;
    }
    std::vector<std::vector<GateId>> subsets;
    const unsigned t = static_cast<unsigned>(touching.size());
    for (unsigned mask = 1; mask < (1u << t); ++mask) {
        if (std::popcount(mask) % 2 != 0)
            continue;
        std::vector<GateId> s;
        for (unsigned i = 0; i < t; ++i)
            if (mask >> i & 1u)
                s.push_back(touching[i]);
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto &a, const auto &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (const auto &s : subsets) {
        auto plan = remove_gates(config, s);
        if (acceptable(config, plan))
            return plan;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> triangle_patterns(int n) {
    std::vector<std::vector<int>> out;
    for (int a = 2; a <= n; a += 2)
        for (int b = a + 1; b <= n; b += 2)
            out.push_back({1, a, b});
    return out;
}

void require_split_matches(const StadiumConfig &config, const SectionSplit &split) {
    const auto fresh = split_at_section(config, split.section.curve, split.section.index);
    if (fresh.p != split.p || fresh.q != split.q || fresh.arc_odd != split.arc_odd)
        throw StadiumError(ErrorKind::PreconditionViolation, "split does not belong to this configuration");
}

} // namespace

std::string to_string(CaseKind kind) {
    switch (kind) {
    case CaseKind::Fig1ParityMismatch: return "Fig1ParityMismatch";
    case CaseKind::Fig2: return "Fig2";
    case CaseKind::Fig3: return "Fig3";
    }
    return "?";
}

SectionSplit split_at_section(const StadiumConfig &config, Curve curve, int index) {
    const int n = config.gates;
    if (index < 2 || index % 2 != 0 || index + 1 > n)
        throw StadiumError(ErrorKind::NotAnInteriorSection,
                           "section " + std::to_string(index) + " is not an interior section for n = " +
                               std::to_string(n));
    const BoundaryWord word = boundary_word(config);
    const int size = word.size();
    SectionSplit s;
    s.section = {curve, index};
    s.p = word.position_of({curve, index});
    s.q = word.position_of({curve, index + 1});

    std::vector<CrossingLabel> forward, backward; // p -> q and q -> p, counterclockwise
    for (int i = (s.p + 1) % size; i != s.q; i = (i + 1) % size)
        forward.push_back(word.points[i]);
    for (int i = (s.q + 1) % size; i != s.p; i = (i + 1) % size)
        backward.push_back(word.points[i]);

    const int red_forward = count_curve(forward, Curve::Bob);
    const int red_backward = count_curve(backward, Curve::Bob);
    bool forward_odd;
    if (red_forward % 2 != red_backward % 2) {
        forward_odd = red_forward % 2 == 1;
    } else {
        const CrossingLabel start{curve, 1};
        forward_odd = std::find(forward.begin(), forward.end(), start) != forward.end();
    }
    s.arc_odd = forward_odd ? forward : backward;
    s.arc_even = forward_odd ? backward : forward;
    s.r_odd = count_curve(s.arc_odd, Curve::Bob);
    s.b_odd = count_curve(s.arc_odd, Curve::Alice);
    s.r_even = count_curve(s.arc_even, Curve::Bob);
    s.b_even = count_curve(s.arc_even, Curve::Alice);
    s.e = static_cast<int>(s.arc_even.size());
    s.f = static_cast<int>(gates_of(word, s.arc_odd).size());
    return s;
}

CaseTag classify_section(const SectionSplit &split, const StadiumConfig &config) {
    CaseTag tag;
    tag.e = split.e;
    tag.f = split.f;
    if ((split.r_odd + split.b_odd) % 2 != 0) {
        tag.kind = CaseKind::Fig1ParityMismatch;
        return tag;
    }
    const BoundaryWord word = boundary_word(config);
    std::set<GateId> closed{split.p / 2, split.q / 2};
    for (const auto &l : split.arc_even)
        closed.insert(word.position_of(l) / 2);
    const bool distinct = static_cast<int>(closed.size()) == split.e + 2;
    const bool room = config.gates - (split.e + 2) >= 3;
    const bool wide = first_gates_equal(config) || split.f >= 3;
    tag.kind = distinct && room && wide ? CaseKind::Fig2 : CaseKind::Fig3;
    return tag;
}

ParityAudit parity_audit(const StadiumConfig &config) {
    ParityAudit audit;
    for (Curve c : {Curve::Bob, Curve::Alice})
        for (int k = 2; k + 1 <= config.gates; k += 2) {
            const auto s = split_at_section(config, c, k);
            ++audit.sections_checked;
            if ((s.r_odd + s.b_odd) % 2 != 0 && audit.pass) {
                audit.pass = false;
                audit.offending = s.section;
            }
        }
    return audit;
}

StadiumConfig redraw_polygon(const StadiumConfig &config, const RewritePlan &plan) {
    const BoundaryWord word = boundary_word(config);
    const std::set<CrossingLabel> removed(plan.removed.begin(), plan.removed.end());
    std::vector<Position> survivors;
    for (Position p = 0; p < word.size(); ++p)
        if (!removed.count(word.points[p]))
            survivors.push_back(p);
    const int count = static_cast<int>(survivors.size());
    if (count % 2 != 0)
        throw StadiumError(ErrorKind::PostconditionViolation, "odd number of surviving crossing points");

    StadiumConfig out;
    out.gates = count / 2;
    out.shared_endpoint = config.shared_endpoint;
    std::vector<GateId> gate_of(word.size(), -1);
    for (int i = 0; i < out.gates; ++i) {
        const Position a = survivors[(plan.pairing_offset + 2 * i) % count];
        const Position b = survivors[(plan.pairing_offset + 2 * i + 1) % count];
        if (word.points[a].curve == word.points[b].curve)
            throw StadiumError(ErrorKind::PostconditionViolation,
                               to_string(word.points[a]) + " and " + to_string(word.points[b]) +
                                   " would share a side");
        gate_of[a] = gate_of[b] = i;
        out.side_order.push_back(first_on_side(word.points[a].curve));
    }
    for (Curve c : {Curve::Bob, Curve::Alice})
        for (int k = 1; k <= config.gates; ++k) {
            const Position p = word.position_of({c, k});
            if (gate_of[p] >= 0)
                out.order(c).push_back(gate_of[p]);
        }
    try {
        return validate_config(std::move(out));
    } catch (const StadiumError &e) {
        throw StadiumError(ErrorKind::PostconditionViolation, std::string("redrawn polygon invalid: ") + e.what());
    }
}

std::optional<RewritePlan> plan_reduction(const StadiumConfig &config, const SectionSplit &split) {
    if (config.gates <= 3)
        return std::nullopt;
    const CaseTag tag = classify_section(split, config);
    switch (tag.kind) {
    case CaseKind::Fig1ParityMismatch:
        return std::nullopt;
    case CaseKind::Fig2: {
        const BoundaryWord word = boundary_word(config);
        std::vector<CrossingLabel> closed = split.arc_even;
        closed.push_back(word.points[split.p]);
        closed.push_back(word.points[split.q]);
        auto plan = remove_gates(config, gates_of(word, closed));
        if (acceptable(config, plan))
            return plan;
        return std::nullopt;
    }
    case CaseKind::Fig3:
        if (tag.e == 0)
            return std::nullopt;
        return fig3_plan(config, split);
    }
    return std::nullopt;
}

StadiumConfig apply_reduction(const StadiumConfig &config, const SectionSplit &split, const RewritePlan &plan) {
    if (config.gates == 3)
        throw StadiumError(ErrorKind::BaseCaseReached, "a triangle cannot be reduced further");
    require_split_matches(config, split);
    const CaseTag tag = classify_section(split, config);
    if (tag.kind == CaseKind::Fig1ParityMismatch)
        throw StadiumError(ErrorKind::PreconditionViolation, "parity mismatch splits admit no reduction");
    if (tag.kind == CaseKind::Fig3 && tag.e == 0)
        throw StadiumError(ErrorKind::PreconditionViolation, "Fig3 reduction needs e > 0");

    StadiumConfig out;
    if (auto problem = rewrite_problem(config, plan, out))
        throw StadiumError(ErrorKind::PostconditionViolation, *problem);
    if (tag.kind == CaseKind::Fig2 && out.gates != config.gates - (tag.e + 2))
        throw StadiumError(ErrorKind::PostconditionViolation,
                           "Fig2 step leaves " + std::to_string(out.gates) + " gates, expected " +
                               std::to_string(config.gates - (tag.e + 2)));
    return out;
}

bool all_e0(const StadiumConfig &config) {
    for (Curve c : {Curve::Bob, Curve::Alice})
        for (int k = 2; k + 1 <= config.gates; k += 2)
            if (split_at_section(config, c, k).e != 0)
                return false;
    return true;
}

StadiumConfig collapse_all_e0(const StadiumConfig &config) {
    if (!all_e0(config))
        throw StadiumError(ErrorKind::NotAllE0, "some interior section has points inside its even arc");
    const int n = config.gates;
    if (n == 3)
        return config;
    if (n % 2 == 0)
        throw StadiumError(ErrorKind::PreconditionViolation, "a triangle keeps the walk parity only for odd n");

    const bool interior_ok = interior_diagram(config).admissible();
    const auto patterns = triangle_patterns(n);
    for (const auto &bob : patterns)
        for (const auto &alice : patterns)
            for (int offset : {0, 1}) {
                RewritePlan plan;
                plan.pairing_offset = offset;
                for (int k = 1; k <= n; ++k) {
                    if (std::find(bob.begin(), bob.end(), k) == bob.end())
                        plan.removed.push_back({Curve::Bob, k});
                    if (std::find(alice.begin(), alice.end(), k) == alice.end())
                        plan.removed.push_back({Curve::Alice, k});
                }
                std::sort(plan.removed.begin(), plan.removed.end());
                StadiumConfig out;
                if (rewrite_problem(config, plan, out))
                    continue;
                if (!all_e0(out) || (interior_ok && !interior_diagram(out).admissible()))
                    continue;
                return out;
            }
    throw StadiumError(ErrorKind::PostconditionViolation, "no triangle redrawing keeps the section structure");
}

PeelResult peel_first_last(const StadiumConfig &config) {
    const int n = config.gates;
    if (!config.shared_endpoint)
        throw StadiumError(ErrorKind::PreconditionViolation, "peeling needs a shared-endpoint pair");
    if (n < 5)
        throw StadiumError(ErrorKind::PreconditionViolation, "peeling needs at least 5 gates");
    if (!first_gates_equal(config) || config.last_gate(Curve::Bob) != config.last_gate(Curve::Alice))
        throw StadiumError(ErrorKind::PreconditionViolation, "first and last gates must coincide");
    if (!realizable(config))
        throw StadiumError(ErrorKind::PreconditionViolation, "peeling needs a realizable pair");

    const GateId first = config.first_gate(Curve::Bob);
    const GateId last = config.last_gate(Curve::Bob);
    std::vector<GateId> relabel(n, -1);
    StadiumConfig out;
    out.shared_endpoint = true;
    for (GateId g = 0; g < n; ++g)
        if (g != first && g != last) {
            relabel[g] = out.gates++;
            out.side_order.push_back(config.side_order[g]);
        }
    for (Curve c : {Curve::Bob, Curve::Alice})
        for (int k = 1; k + 1 < n; ++k)
            out.order(c).push_back(relabel[config.order(c)[k]]);
    PeelResult result;
    result.config = validate_config(std::move(out));
    result.realizable_preserved = realizable(result.config);
    return result;
}

ReductionTrace reduce_to_base(const StadiumConfig &config) {
    if (config.gates % 2 == 0)
        throw StadiumError(ErrorKind::PreconditionViolation, "reduction to a triangle needs odd n");
    if (!realizable(config))
        throw StadiumError(ErrorKind::PreconditionViolation, "reduction runs on realizable configurations");

    ReductionTrace trace;
    trace.initial = config;
    StadiumConfig current = config;
    while (current.gates > 3) {
        bool advanced = false;
        for (Curve c : {Curve::Bob, Curve::Alice}) {
            for (int k = 2; k + 1 <= current.gates && !advanced; k += 2) {
                const auto split = split_at_section(current, c, k);
                const auto plan = plan_reduction(current, split);
                if (!plan)
                    continue;
                ReductionStep step;
                step.input_gates = current.gates;
                step.section = split.section;
                step.tag = classify_section(split, current);
                step.plan = *plan;
                step.result = apply_reduction(current, split, *plan);
                step.output_gates = step.result.gates;
                step.description = to_string(step.tag->kind) + " at " +
                                   to_string(CrossingLabel{c, k}) + "-" + to_string(CrossingLabel{c, k + 1}) +
                                   ", e = " + std::to_string(split.e) + ", f = " + std::to_string(split.f);
                current = step.result;
                trace.steps.push_back(std::move(step));
                advanced = true;
            }
            if (advanced)
                break;
        }
        if (advanced)
            continue;
        if (all_e0(current)) {
            try {
                ReductionStep step;
                step.input_gates = current.gates;
                step.kind = StepKind::Collapse;
                step.result = collapse_all_e0(current);
                step.output_gates = 3;
                step.description = "collapse of an all-e0 polygon";
                current = step.result;
                trace.steps.push_back(std::move(step));
                continue;
            } catch (const StadiumError &e) {
                trace.failure = ReductionFailure{current, e.what()};
                return trace;
            }
        }
        trace.failure = ReductionFailure{current, "no interior section admits a checked reduction"};
        return trace;
    }
    trace.terminal = current;
    return trace;
}

ParityCorpusAudit parity_corpus_audit(int gates, int parallel_width, int max_gates) {
    ParityCorpusAudit audit;
    audit.gates = gates;
    for (bool shared : {false, true}) {
        SearchOptions opts;
        opts.gates = gates;
        opts.shared_endpoint = shared;
        opts.parallel_width = parallel_width;
        opts.max_gates = max_gates;
        enumerate_realizable(opts, [&](const StadiumConfig &c) {
            const auto a = parity_audit(c);
            ++audit.configs;
            audit.sections += static_cast<std::uint64_t>(a.sections_checked);
            if (!a.pass) {
                ++audit.failures;
                if (audit.exceptions.size() < kMaxLostRecorded)
                    audit.exceptions.emplace_back(c, *a.offending);
            }
        });
    }
    return audit;
}

PeelAudit peel_audit(int gates, int parallel_width) {
    if (gates % 2 == 0)
        throw StadiumError(ErrorKind::EvenGateCount, "peel audit runs on odd gate counts");
    PeelAudit audit;
    audit.gates = gates;
    SearchOptions opts;
    opts.gates = gates;
    opts.shared_endpoint = true;
    opts.parallel_width = parallel_width;
    enumerate_realizable(opts, [&](const StadiumConfig &c) {
        if (!first_gates_equal(c) || c.last_gate(Curve::Bob) != c.last_gate(Curve::Alice))
            return;
        ++audit.total;
        if (peel_first_last(c).realizable_preserved)
            ++audit.preserved;
        else if (audit.lost.size() < kMaxLostRecorded)
            audit.lost.push_back(c);
    });
    return audit;
}

} // namespace stadium

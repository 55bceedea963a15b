#pragma once

// Polygon rewrites that keep both walks and redraw the polygon with fewer
// sides. A rewrite drops some crossing points and regroups the survivors, in
// their cyclic boundary order, into adjacent (Bob, Alice) pairs; each pair is
// one side of the new polygon. Every rewrite is checked after the fact against
// the realizability oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stadium/model.hpp"

namespace stadium {

struct SectionRef {
    Curve curve = Curve::Bob;
    int index = 2; // even; the section joins crossings index and index+1

    bool operator==(const SectionRef &) const = default;
};

// The boundary minus the two endpoints of an interior section, as two open
// arcs. Red counts Bob's points and black counts Alice's. The odd arc holds an
// odd number of red points; when both parities agree (even n) it is the arc
// holding the section curve's first crossing.
struct SectionSplit {
    SectionRef section;
    Position p = 0; // crossing `index`
    Position q = 0; // crossing `index + 1`
    std::vector<CrossingLabel> arc_odd;
    std::vector<CrossingLabel> arc_even;
    int r_odd = 0;
    int b_odd = 0;
    int r_even = 0;
    int b_even = 0;
    int e = 0; // crossing points strictly inside the even arc
    int f = 0; // distinct gates meeting the odd arc
};

// Throws NotAnInteriorSection unless index is even, >= 2 and index+1 <= n.
SectionSplit split_at_section(const StadiumConfig &config, Curve curve, int index);

enum class CaseKind { Fig1ParityMismatch, Fig2, Fig3 };

std::string to_string(CaseKind kind);

struct CaseTag {
    CaseKind kind = CaseKind::Fig3;
    int e = 0;
    int f = 0;
};

// Fig1ParityMismatch when the odd-red and odd-black arcs differ. Otherwise
// Fig2 when the e + 2 points of the closed even arc sit on e + 2 distinct
// gates, leave at least 3 gates, and (for distinct first gates) f >= 3;
// Fig3 for everything else.
CaseTag classify_section(const SectionSplit &split, const StadiumConfig &config);

struct ParityAudit {
    bool pass = true;
    int sections_checked = 0;
    std::optional<SectionRef> offending;
};

// Odd-red arc equals odd-black arc for every interior section of both walks.
ParityAudit parity_audit(const StadiumConfig &config);

struct RewritePlan {
    std::vector<CrossingLabel> removed;
    int pairing_offset = 0; // 0 or 1: where the regrouping of survivors starts

    bool operator==(const RewritePlan &) const = default;
};

// Applies a plan without judging it. Throws PostconditionViolation when the
// survivors do not regroup into (Bob, Alice) sides.
StadiumConfig redraw_polygon(const StadiumConfig &config, const RewritePlan &plan);

// The reduction the section's case provides, if any passes every check.
std::optional<RewritePlan> plan_reduction(const StadiumConfig &config, const SectionSplit &split);

// Checked rewrite. Throws BaseCaseReached at n = 3, PreconditionViolation for
// Fig1 splits or Fig3 splits with e = 0, PostconditionViolation when any of:
// the result fails validation, loses realizability, changes whether the first
// gates coincide, breaks n - m even / m < n / m >= 3, drops a first crossing,
// alters a walk's inside/outside alternation, or (Fig2) has m != n - (e + 2).
StadiumConfig apply_reduction(const StadiumConfig &config, const SectionSplit &split, const RewritePlan &plan);

bool all_e0(const StadiumConfig &config);

// Redraws an all-e0 polygon as a triangle, keeping both first crossings and
// whether they share a gate. Throws NotAllE0, PreconditionViolation (even n),
// or PostconditionViolation when no 3-gate redrawing keeps the structure.
StadiumConfig collapse_all_e0(const StadiumConfig &config);

struct PeelResult {
    StadiumConfig config;
    bool realizable_preserved = false;
};

// Drops the common first and last gates of a shared-endpoint pair. Throws
// PreconditionViolation unless shared, realizable, n >= 5, and both first and
// last gates agree.
PeelResult peel_first_last(const StadiumConfig &config);

struct ParityCorpusAudit {
    int gates = 0;
    std::uint64_t configs = 0; // realizable configs, shared and not
    std::uint64_t sections = 0;
    std::uint64_t failures = 0;
    std::vector<std::pair<StadiumConfig, SectionRef>> exceptions; // first few

    bool pass() const { return failures == 0 && configs > 0; }
};

// parity_audit over every realizable config with the given gate count.
// Throws BudgetExceeded above max_gates.
ParityCorpusAudit parity_corpus_audit(int gates, int parallel_width = 1, int max_gates = 6);

enum class StepKind { SectionRewrite, Collapse };

struct ReductionStep {
    int input_gates = 0;
    int output_gates = 0;
    StepKind kind = StepKind::SectionRewrite;
    std::optional<SectionRef> section;
    std::optional<CaseTag> tag;
    RewritePlan plan;
    StadiumConfig result;
    std::string description;
};

struct ReductionFailure {
    StadiumConfig stuck;
    std::string reason;
};

struct ReductionTrace {
    StadiumConfig initial;
    std::vector<ReductionStep> steps;
    std::optional<StadiumConfig> terminal;
    std::optional<ReductionFailure> failure;

    bool reached_base() const { return terminal.has_value() && terminal->gates == 3; }
};

// Repeats classify-and-apply over the interior sections (Bob's first, by
// index), falling back to collapse_all_e0, until 3 gates remain. Never
// returns a partial trace without a failure record. Throws
// PreconditionViolation unless the input is realizable with odd n.
ReductionTrace reduce_to_base(const StadiumConfig &config);

struct PeelAudit {
    int gates = 0;
    std::uint64_t total = 0;
    std::uint64_t preserved = 0;
    std::vector<StadiumConfig> lost; // first few configs whose peel is not realizable

    double rate() const { return total == 0 ? 1.0 : static_cast<double>(preserved) / static_cast<double>(total); }
};

// Peels every shared-endpoint realizable config with the given odd gate count.
PeelAudit peel_audit(int gates, int parallel_width = 1);

} // namespace stadium

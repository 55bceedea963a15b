#include "stadium/model.hpp"

#include <algorithm>

namespace stadium {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::GateCountTooSmall: return "GateCountTooSmall";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SectionOutOfRange: return "SectionOutOfRange";
    case ErrorKind::SharedEndpoint: return "SharedEndpoint";
    case ErrorKind::NotSharedEndpoint: return "NotSharedEndpoint";
    case ErrorKind::EvenGateCount: return "EvenGateCount";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotAnInteriorSection: return "NotAnInteriorSection";
    case ErrorKind::PostconditionViolation: return "PostconditionViolation";
    case ErrorKind::BaseCaseReached: return "BaseCaseReached";
    case ErrorKind::NotAllE0: return "NotAllE0";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::GraphTooLarge: return "GraphTooLarge";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::NotRealizable: return "NotRealizable";
    }
    return "Unknown";
}

std::string to_string(const CrossingLabel &label) {
    return (label.curve == Curve::Bob ? "x" : "y") + std::to_string(label.step);
}

namespace {

bool is_permutation_of_gates(const std::vector<GateId> &order, int gates) {
    if (static_cast<int>(order.size()) != gates)
        return false;
    std::vector<bool> seen(gates, false);
    for (GateId g : order) {
        if (g < 0 || g >= gates || seen[g])
            return false;
        seen[g] = true;
    }
    return true;
}

} // namespace

StadiumConfig validate_config(StadiumConfig raw) {
    if (raw.gates < 3)
        throw StadiumError(ErrorKind::GateCountTooSmall,
                           "a polygon needs at least 3 gates, got " + std::to_string(raw.gates));
    if (!is_permutation_of_gates(raw.bob_order, raw.gates))
        throw StadiumError(ErrorKind::NotAPermutation, "bob order is not a permutation of the gates");
    if (!is_permutation_of_gates(raw.alice_order, raw.gates))
        throw StadiumError(ErrorKind::NotAPermutation, "alice order is not a permutation of the gates");
    if (static_cast<int>(raw.side_order.size()) != raw.gates)
        throw StadiumError(ErrorKind::LengthMismatch,
                           "side_order has " + std::to_string(raw.side_order.size()) + " entries, expected " +
                               std::to_string(raw.gates));
    return raw;
}

BoundaryWord boundary_word(const StadiumConfig &config) {
    const int n = config.gates;
    BoundaryWord word;
    word.points.resize(2 * n);
    word.bob_position.resize(n);
    word.alice_position.resize(n);
    for (Curve c : {Curve::Bob, Curve::Alice}) {
        auto &positions = c == Curve::Bob ? word.bob_position : word.alice_position;
        const auto &order = config.order(c);
        for (int k = 0; k < n; ++k) {
            const GateId g = order[k];
            const Position p = 2 * g + (config.side_order[g] == first_on_side(c) ? 0 : 1);
            positions[k] = p;
            word.points[p] = CrossingLabel{c, k + 1};
        }
    }
    return word;
}

SectionKind section_kind(int gates, Curve /*curve*/, int k, bool /*shared*/) {
    if (k < 0 || k > gates)
        throw StadiumError(ErrorKind::SectionOutOfRange,
                           "section " + std::to_string(k) + " outside [0, " + std::to_string(gates) + "]");
    if (k == 0)
        return SectionKind::InteriorSection;
    if (k == gates)
        return gates % 2 == 1 ? SectionKind::TailExterior : SectionKind::TailInterior;
    return k % 2 == 0 ? SectionKind::InteriorSection : SectionKind::ExteriorSection;
}

RegionSections region_sections(int gates, bool shared, Region region) {
    const int n = gates;
    RegionSections out;
    const int first_k = region == Region::Interior ? 2 : 1;
    if (region == Region::Interior)
        out.chords.push_back({{Curve::Bob, 1}, {Curve::Alice, 1}, ChordKind::MergedThroughStart});
    for (Curve c : {Curve::Bob, Curve::Alice})
        for (int k = first_k; k + 1 <= n; k += 2)
            out.chords.push_back({{c, k}, {c, k + 1}, ChordKind::Plain});

    const bool tail_here = (n % 2 == 0) == (region == Region::Interior);
    if (tail_here) {
        if (shared)
            out.chords.push_back({{Curve::Bob, n}, {Curve::Alice, n}, ChordKind::MergedThroughEnd});
        else
            out.stubs = {{Curve::Bob, n}, {Curve::Alice, n}};
    }
    return out;
}

bool chords_interleave(const Chord &c1, const Chord &c2, int word_size) {
    if (c1.a == c2.a || c1.a == c2.b || c1.b == c2.a || c1.b == c2.b)
        throw StadiumError(ErrorKind::SharedEndpoint, "chords touch at a boundary position");
    // Distance along the cycle from c1.a; c2 interleaves iff exactly one of its
    // endpoints falls strictly between c1's endpoints.
    auto offset = [&](Position p) { return ((p - c1.a) % word_size + word_size) % word_size; };
    const int span = offset(c1.b);
    const bool in2a = offset(c2.a) < span;
    const bool in2b = offset(c2.b) < span;
    return in2a != in2b;
}

std::optional<std::pair<Chord, Chord>> ChordDiagram::first_crossing() const {
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (chords_interleave(chords[i], chords[j], word_size))
                return std::pair{chords[i], chords[j]};
    return std::nullopt;
}

ChordDiagram region_diagram(const StadiumConfig &config, Region region) {
    const BoundaryWord word = boundary_word(config);
    const RegionSections sections = region_sections(config.gates, config.shared_endpoint, region);
    ChordDiagram d;
    d.region = region;
    d.word_size = word.size();
    for (const auto &c : sections.chords)
        d.chords.push_back({word.position_of(c.from), word.position_of(c.to), c.kind});
    for (const auto &s : sections.stubs)
        d.free_stubs.push_back(word.position_of(s));
    return d;
}

ChordDiagram interior_diagram(const StadiumConfig &config) { return region_diagram(config, Region::Interior); }

ChordDiagram exterior_diagram(const StadiumConfig &config) { return region_diagram(config, Region::Exterior); }

RealizabilityVerdict is_realizable(const StadiumConfig &config) {
    RealizabilityVerdict v;
    v.interior = interior_diagram(config);
    v.exterior = exterior_diagram(config);
    if (auto w = v.interior.first_crossing()) {
        v.witness = w;
        v.witness_region = Region::Interior;
    } else if (auto w2 = v.exterior.first_crossing()) {
        v.witness = w2;
        v.witness_region = Region::Exterior;
    }
    v.realizable = !v.witness.has_value();
    return v;
}

bool realizable(const StadiumConfig &config) {
    const BoundaryWord word = boundary_word(config);
    const int size = word.size();
    for (Region r : {Region::Interior, Region::Exterior}) {
        const RegionSections sections = region_sections(config.gates, config.shared_endpoint, r);
        std::vector<Chord> chords;
        chords.reserve(sections.chords.size());
        for (const auto &c : sections.chords)
            chords.push_back({word.position_of(c.from), word.position_of(c.to), c.kind});
        for (std::size_t i = 0; i < chords.size(); ++i)
            for (std::size_t j = i + 1; j < chords.size(); ++j)
                if (chords_interleave(chords[i], chords[j], size))
                    return false;
    }
    return true;
}

StadiumConfig shadow_config(int gates, bool shared, bool alice_first_at_start) {
    StadiumConfig c;
    c.gates = gates;
    for (int g = 0; g < gates; ++g) {
        c.bob_order.push_back(g);
        c.alice_order.push_back(g);
        const bool alice_first = (g % 2 == 1) != alice_first_at_start;
        c.side_order.push_back(alice_first ? SideOrder::AliceFirst : SideOrder::BobFirst);
    }
    c.shared_endpoint = shared;
    return validate_config(std::move(c));
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

} // namespace stadium

#pragma once

// Combinatorial model of two walks that cross every side of an n-gon once.
//
// A configuration records, for each walk, the order in which gates (sides) are
// crossed, and for each gate which walk's crossing point comes first in the
// counterclockwise orientation of that side. The sections of each walk between
// consecutive crossings alternate between the interior and the exterior of the
// polygon, so the configuration induces one chord diagram per region on the
// cyclic boundary word of 2n crossing points. The configuration can be drawn
// with simple, mutually disjoint curves iff both diagrams are non-crossing.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stadium/error.hpp"

namespace stadium {

enum class Curve : std::uint8_t { Bob, Alice };

constexpr Curve other(Curve c) { return c == Curve::Bob ? Curve::Alice : Curve::Bob; }

// Which walk's crossing point comes first along a gate (counterclockwise).
// The numeric values define the bit used by the serialization order.
enum class SideOrder : std::uint8_t { BobFirst = 0, AliceFirst = 1 };

constexpr SideOrder flip(SideOrder s) {
    return s == SideOrder::BobFirst ? SideOrder::AliceFirst : SideOrder::BobFirst;
}

constexpr SideOrder first_on_side(Curve c) {
    return c == Curve::Bob ? SideOrder::BobFirst : SideOrder::AliceFirst;
}

// Gates are 0-based and counterclockwise; step numbers are 1-based.
using GateId = int;
using Position = int;

struct CrossingLabel {
    Curve curve = Curve::Bob;
    int step = 1;

    auto operator<=>(const CrossingLabel &) const = default;
};

// Bob's labels print as x_k, Alice's as y_k.
std::string to_string(const CrossingLabel &label);

struct StadiumConfig {
    int gates = 0;
    std::vector<GateId> bob_order;
    std::vector<GateId> alice_order;
    std::vector<SideOrder> side_order;
    bool shared_endpoint = false;

    // Member order is the serialization order used for every lexicographic
    // comparison (canonical forms, enumeration order, witness selection).
    auto operator<=>(const StadiumConfig &) const = default;

    const std::vector<GateId> &order(Curve c) const { return c == Curve::Bob ? bob_order : alice_order; }
    std::vector<GateId> &order(Curve c) { return c == Curve::Bob ? bob_order : alice_order; }

    GateId first_gate(Curve c) const { return order(c).front(); }
    GateId last_gate(Curve c) const { return order(c).back(); }
};

// Checks gate count, permutation and length constraints; no normalization.
// Throws StadiumError (GateCountTooSmall, NotAPermutation, LengthMismatch).
StadiumConfig validate_config(StadiumConfig raw);

struct BoundaryWord {
    std::vector<CrossingLabel> points;   // indexed by position, size 2n
    std::vector<Position> bob_position;  // step-1 -> position
    std::vector<Position> alice_position;

    int size() const { return static_cast<int>(points.size()); }
    Position position_of(const CrossingLabel &label) const {
        return (label.curve == Curve::Bob ? bob_position : alice_position)[label.step - 1];
    }
};

BoundaryWord boundary_word(const StadiumConfig &config);

enum class SectionKind { InteriorSection, ExteriorSection, TailInterior, TailExterior };

// Section k joins crossing k to crossing k+1; k = 0 leaves the start point,
// k = n is the tail. Throws SectionOutOfRange unless 0 <= k <= n.
SectionKind section_kind(int gates, Curve curve, int k, bool shared);

enum class Region { Interior, Exterior };

enum class ChordKind { Plain, MergedThroughStart, MergedThroughEnd };

// A chord between two crossing labels, independent of the side flags.
struct LabelChord {
    CrossingLabel from;
    CrossingLabel to;
    ChordKind kind = ChordKind::Plain;
};

// Chords and free tail stubs that a region carries for any configuration with
// the given gate count and endpoint mode. Order: merged start chord, Bob's
// sections by index, Alice's sections by index, merged end chord.
struct RegionSections {
    std::vector<LabelChord> chords;
    std::vector<CrossingLabel> stubs;
};

RegionSections region_sections(int gates, bool shared, Region region);

struct Chord {
    Position a = 0;
    Position b = 0;
    ChordKind kind = ChordKind::Plain;

    bool operator==(const Chord &) const = default;
};

struct ChordDiagram {
    Region region = Region::Interior;
    int word_size = 0;
    std::vector<Chord> chords;
    std::vector<Position> free_stubs;

    // First interleaving pair (by chord index), if any.
    std::optional<std::pair<Chord, Chord>> first_crossing() const;
    bool admissible() const { return !first_crossing().has_value(); }
};

ChordDiagram interior_diagram(const StadiumConfig &config);
ChordDiagram exterior_diagram(const StadiumConfig &config);
ChordDiagram region_diagram(const StadiumConfig &config, Region region);

// True iff the endpoints alternate around the cycle of word_size positions.
// Throws SharedEndpoint when the chords touch.
bool chords_interleave(const Chord &c1, const Chord &c2, int word_size);

struct RealizabilityVerdict {
    bool realizable = false;
    ChordDiagram interior;
    ChordDiagram exterior;
    // Set when not realizable: the offending pair and the region holding it.
    std::optional<std::pair<Chord, Chord>> witness;
    Region witness_region = Region::Interior;

    explicit operator bool() const { return realizable; }
};

RealizabilityVerdict is_realizable(const StadiumConfig &config);

// Cheaper predicate with the same answer, for corpus loops.
bool realizable(const StadiumConfig &config);

// Alice follows Bob's walk gate by gate on one side of him, so the per-gate
// order flips at every crossing. `alice_first_at_start` selects the side.
StadiumConfig shadow_config(int gates, bool shared, bool alice_first_at_start = false);

std::uint64_t factorial(int n);

} // namespace stadium

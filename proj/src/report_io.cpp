#include "stadium/report_io.hpp"

#include "stadium/config_io.hpp"

namespace stadium {

namespace {

OrderedJson header(std::string_view kind) {
    OrderedJson doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["kind"] = kind;
    return doc;
}

OrderedJson configs(const std::vector<StadiumConfig> &list) {
    auto out = OrderedJson::array();
    for (const auto &c : list)
        out.push_back(config_to_json(c));
    return out;
}

OrderedJson chord_json(const BoundaryWord &word, const Chord &c) {
    OrderedJson out;
    out["from"] = to_string(word.points[c.a]);
    out["to"] = to_string(word.points[c.b]);
    out["positions"] = {c.a, c.b};
    switch (c.kind) {
    case ChordKind::Plain: out["through"] = nullptr; break;
    case ChordKind::MergedThroughStart: out["through"] = "start"; break;
    case ChordKind::MergedThroughEnd: out["through"] = "end"; break;
    }
    return out;
}

OrderedJson diagram_json(const BoundaryWord &word, const ChordDiagram &d) {
    OrderedJson out;
    auto chords = OrderedJson::array();
    for (const auto &c : d.chords)
        chords.push_back(chord_json(word, c));
    out["chords"] = std::move(chords);
    auto stubs = OrderedJson::array();
    for (Position p : d.free_stubs)
        stubs.push_back(to_string(word.points[p]));
    out["tails"] = std::move(stubs);
    out["admissible"] = d.admissible();
    return out;
}

OrderedJson section_json(const SectionRef &s) {
    OrderedJson out;
    out["curve"] = s.curve == Curve::Bob ? "bob" : "alice";
    out["index"] = s.index;
    return out;
}

} // namespace

OrderedJson report_to_json(const Report &r) {
    OrderedJson doc = header("verification");
    doc["claim"] = to_string(r.claim);
    doc["gates"] = r.gates;
    doc["shared_endpoint"] = r.shared_endpoint;
    doc["holds"] = r.holds;
    doc["configs_scanned"] = r.configs_scanned;
    doc["realizable_count"] = r.realizable_count;
    doc["nodes_visited"] = r.nodes_visited;
    doc["cross_checked"] = r.cross_checked;
    doc["counterexamples"] = configs(r.counterexamples);
    doc["witnesses"] = configs(r.witnesses);
    return doc;
}

OrderedJson counts_to_json(int gates, bool shared, const RealizableCounts &counts) {
    OrderedJson doc = header("count");
    doc["gates"] = gates;
    doc["shared_endpoint"] = shared;
    doc["raw_candidates"] = counts.raw;
    doc["realizable"] = counts.realizable;
    if (counts.orbits)
        doc["orbits"] = *counts.orbits;
    else
        doc["orbits"] = nullptr;
    return doc;
}

OrderedJson verdict_to_json(const StadiumConfig &config, const RealizabilityVerdict &v) {
    const BoundaryWord word = boundary_word(config);
    OrderedJson doc = header("check");
    doc["config"] = config_to_json(config);
    doc["realizable"] = v.realizable;
    auto labels = OrderedJson::array();
    for (const auto &l : word.points)
        labels.push_back(to_string(l));
    doc["boundary_word"] = std::move(labels);
    doc["interior"] = diagram_json(word, v.interior);
    doc["exterior"] = diagram_json(word, v.exterior);
    if (v.witness) {
        OrderedJson w;
        w["region"] = v.witness_region == Region::Interior ? "interior" : "exterior";
        w["chords"] = {chord_json(word, v.witness->first), chord_json(word, v.witness->second)};
        doc["crossing"] = std::move(w);
    } else {
        doc["crossing"] = nullptr;
    }
    return doc;
}

OrderedJson trace_to_json(const ReductionTrace &t) {
    OrderedJson doc = header("reduction");
    doc["initial"] = config_to_json(t.initial);
    auto steps = OrderedJson::array();
    for (const auto &s : t.steps) {
        OrderedJson step;
        step["input_gates"] = s.input_gates;
        step["output_gates"] = s.output_gates;
        step["kind"] = s.kind == StepKind::Collapse ? "collapse" : "section";
        step["section"] = s.section ? section_json(*s.section) : OrderedJson(nullptr);
        if (s.tag) {
            step["case"] = to_string(s.tag->kind);
            step["e"] = s.tag->e;
            step["f"] = s.tag->f;
        } else {
            step["case"] = nullptr;
        }
        auto removed = OrderedJson::array();
        for (const auto &l : s.plan.removed)
            removed.push_back(to_string(l));
        step["removed"] = std::move(removed);
        step["pairing_offset"] = s.plan.pairing_offset;
        step["description"] = s.description;
        step["result"] = config_to_json(s.result);
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);
    doc["reached_base"] = t.reached_base();
    doc["terminal"] = t.terminal ? config_to_json(*t.terminal) : OrderedJson(nullptr);
    if (t.failure) {
        OrderedJson f;
        f["stuck"] = config_to_json(t.failure->stuck);
        f["reason"] = t.failure->reason;
        doc["failure"] = std::move(f);
    } else {
        doc["failure"] = nullptr;
    }
    return doc;
}

OrderedJson parity_to_json(const ParityCorpusAudit &a) {
    OrderedJson doc = header("parity_audit");
    doc["gates"] = a.gates;
    doc["pass"] = a.pass();
    doc["configs"] = a.configs;
    doc["sections"] = a.sections;
    doc["failures"] = a.failures;
    auto ex = OrderedJson::array();
    for (const auto &[c, s] : a.exceptions) {
        OrderedJson e;
        e["config"] = config_to_json(c);
        e["section"] = section_json(s);
        ex.push_back(std::move(e));
    }
    doc["exceptions"] = std::move(ex);
    return doc;
}

OrderedJson basecase_to_json(const BasecaseAudit &a) {
    OrderedJson doc = header("basecase_audit");
    doc["pass"] = a.holds();
    doc["candidates"] = a.candidates;
    doc["graphs"] = a.graphs;
    doc["infeasible_choices"] = a.infeasible_choices;
    doc["chords_apart"] = a.chords_apart;
    doc["without_k5"] = a.without_k5;
    doc["exceptions"] = configs(a.exceptions);
    return doc;
}

OrderedJson peel_to_json(const PeelAudit &a) {
    OrderedJson doc = header("peel_audit");
    doc["gates"] = a.gates;
    doc["total"] = a.total;
    doc["preserved"] = a.preserved;
    doc["rate"] = a.rate();
    doc["lost"] = configs(a.lost);
    return doc;
}

std::string dump_document(const OrderedJson &doc) { return doc.dump(2) + "\n"; }

} // namespace stadium

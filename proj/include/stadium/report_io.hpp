#pragma once

// JSON forms of verification results. Every top-level document carries
// schema_version; timings are left out so output is byte-identical across
// runs and worker counts.

#include <string>

#include "json.hpp"
#include "stadium/planarity.hpp"
#include "stadium/reduction.hpp"
#include "stadium/search.hpp"

namespace stadium {

constexpr int kReportSchemaVersion = 1;

using OrderedJson = nlohmann::ordered_json;

OrderedJson report_to_json(const Report &report);
OrderedJson counts_to_json(int gates, bool shared, const RealizableCounts &counts);
OrderedJson verdict_to_json(const StadiumConfig &config, const RealizabilityVerdict &verdict);
OrderedJson trace_to_json(const ReductionTrace &trace);
OrderedJson parity_to_json(const ParityCorpusAudit &audit);
OrderedJson basecase_to_json(const BasecaseAudit &audit);
OrderedJson peel_to_json(const PeelAudit &audit);

// Two-space indentation and a trailing newline.
std::string dump_document(const OrderedJson &doc);

} // namespace stadium

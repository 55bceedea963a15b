#include "stadium/config_io.hpp"

#include <array>

namespace stadium {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 5> kFields{"gates", "bob", "alice", "side_order", "shared_endpoint"};

std::string location(std::string_view text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const json &field(const json &doc, std::string_view name) {
    auto it = doc.find(std::string(name));
    if (it == doc.end())
        throw StadiumError(ErrorKind::SchemaError, "missing field '" + std::string(name) + "'");
    return *it;
}

std::vector<GateId> gate_list(const json &doc, std::string_view name) {
    const json &value = field(doc, name);
    if (!value.is_array())
        throw StadiumError(ErrorKind::SchemaError, "field '" + std::string(name) + "' must be an array");
    std::vector<GateId> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number_integer())
            throw StadiumError(ErrorKind::SchemaError,
                               "field '" + std::string(name) + "'[" + std::to_string(i) + "] must be an integer");
        const auto g = value[i].get<long long>();
        if (g < 0 || g > 1'000'000)
            throw StadiumError(ErrorKind::NotAPermutation,
                               "field '" + std::string(name) + "'[" + std::to_string(i) + "] is out of range");
        out.push_back(static_cast<GateId>(g));
    }
    return out;
}

} // namespace

StadiumConfig config_from_json(const json &doc) {
    if (!doc.is_object())
        throw StadiumError(ErrorKind::SchemaError, "a configuration must be a JSON object");
    for (const auto &[key, value] : doc.items()) {
        bool known = false;
        for (auto f : kFields)
            known = known || key == f;
        if (!known)
            throw StadiumError(ErrorKind::SchemaError, "unknown field '" + key + "'");
    }

    StadiumConfig c;
    const json &gates = field(doc, "gates");
    if (!gates.is_number_integer())
        throw StadiumError(ErrorKind::SchemaError, "field 'gates' must be an integer");
    const auto n = gates.get<long long>();
    if (n > 1'000'000)
        throw StadiumError(ErrorKind::LengthMismatch, "field 'gates' is implausibly large");
    c.gates = static_cast<int>(n);
    c.bob_order = gate_list(doc, "bob");
    c.alice_order = gate_list(doc, "alice");

    const json &sides = field(doc, "side_order");
    if (!sides.is_array())
        throw StadiumError(ErrorKind::SchemaError, "field 'side_order' must be an array");
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const json &s = sides[i];
        if (s == "bob")
            c.side_order.push_back(SideOrder::BobFirst);
        else if (s == "alice")
            c.side_order.push_back(SideOrder::AliceFirst);
        else
            throw StadiumError(ErrorKind::SchemaError,
                               "field 'side_order'[" + std::to_string(i) + "] must be \"bob\" or \"alice\"");
    }

    const json &shared = field(doc, "shared_endpoint");
    if (!shared.is_boolean())
        throw StadiumError(ErrorKind::SchemaError, "field 'shared_endpoint' must be true or false");
    c.shared_endpoint = shared.get<bool>();
    return validate_config(std::move(c));
}

StadiumConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // nlohmann reports the byte just past the offending character
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::string what = e.what();
        if (auto colon = what.find("syntax error"); colon != std::string::npos)
            what = what.substr(colon);
        throw StadiumError(ErrorKind::SyntaxError, location(text, byte) + ": " + what);
    }
    return config_from_json(doc);
}

nlohmann::ordered_json config_to_json(const StadiumConfig &config) {
    nlohmann::ordered_json doc;
    doc["gates"] = config.gates;
    doc["bob"] = config.bob_order;
    doc["alice"] = config.alice_order;
    auto sides = nlohmann::ordered_json::array();
    for (SideOrder s : config.side_order)
        sides.push_back(s == SideOrder::BobFirst ? "bob" : "alice");
    doc["side_order"] = std::move(sides);
    doc["shared_endpoint"] = config.shared_endpoint;
    return doc;
}

std::string emit_config(const StadiumConfig &config) { return config_to_json(config).dump(); }

std::vector<StadiumConfig> parse_config_stream(std::string_view text) {
    std::vector<StadiumConfig> out;
    int line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        ++line;
        const std::string_view row = text.substr(start, end - start);
        if (row.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                out.push_back(parse_config(row));
            } catch (const StadiumError &e) {
                throw StadiumError(e.kind(), "record on line " + std::to_string(line) + ": " + e.what());
            }
        }
        start = end + 1;
    }
    return out;
}

std::string emit_config_stream(const std::vector<StadiumConfig> &configs) {
    std::string out;
    for (const auto &c : configs) {
        out += emit_config(c);
        out += '\n';
    }
    return out;
}

} // namespace stadium

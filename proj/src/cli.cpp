#include "stadium/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stadium/config_io.hpp"
#include "stadium/render.hpp"
#include "stadium/report_io.hpp"

namespace stadium {

namespace {

struct Common {
    int jobs = 1;
    bool allow_large = false;
    bool timing = false;
};

void add_common(CLI::App *cmd, Common &c, bool large = true) {
    cmd->add_option("--jobs,-j", c.jobs, "worker threads")->check(CLI::Range(1, 256));
    if (large)
        cmd->add_flag("--allow-large", c.allow_large, "permit 7 gates");
    cmd->add_flag("--timing", c.timing, "print elapsed time to stderr");
}

VerifyOptions verify_options(const Common &c) {
    VerifyOptions o;
    o.parallel_width = c.jobs;
    if (c.allow_large)
        o.max_gates = 7;
    return o;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw StadiumError(ErrorKind::PreconditionViolation, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw StadiumError(ErrorKind::PreconditionViolation, "cannot write " + path);
}

class Stopwatch {
  public:
    Stopwatch(bool on, std::ostream &err, std::string what)
        : on_(on), err_(err), what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        if (!on_)
            return;
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
        err_ << what_ << ": " << ms << " ms\n";
    }

  private:
    bool on_;
    std::ostream &err_;
    std::string what_;
    std::chrono::steady_clock::time_point t0_;
};

// One document, or an array when several gate counts were requested.
void emit(std::ostream &out, const std::vector<OrderedJson> &docs) {
    if (docs.size() == 1) {
        out << dump_document(docs.front());
        return;
    }
    OrderedJson all = OrderedJson::array();
    for (const auto &d : docs)
        all.push_back(d);
    out << dump_document(all);
}

} // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Checks, counts and draws pairs of walks that cross every side of a polygon once.", "stadium"};
    app.require_subcommand(1);
    int code = kExitOk;

    // check
    std::string check_file;
    auto *check = app.add_subcommand("check", "realizability verdict with both chord diagrams");
    check->add_option("file", check_file, "configuration document")->required();

    // verify
    auto *verify = app.add_subcommand("verify", "exhaustive verification of a claim");
    verify->require_subcommand(1);
    std::vector<int> verify_gates;
    Common verify_common;
    std::string verify_claim;
    for (const char *name : {"stadium", "general", "first-last"}) {
        auto *sub = verify->add_subcommand(name, std::string("verify the ") + name + " claim");
        sub->add_option("--gates", verify_gates, "gate counts, comma separated")->required()->delimiter(',');
        add_common(sub, verify_common);
        sub->callback([&verify_claim, name] { verify_claim = name; });
    }

    // witness
    auto *witness = app.add_subcommand("witness", "search for a witness configuration");
    witness->require_subcommand(1);
    auto *distinct = witness->add_subcommand("distinct-first", "realizable pair whose first gates differ");
    int witness_gates = 0;
    std::string witness_out;
    Common witness_common;
    distinct->add_option("--gates", witness_gates)->required();
    distinct->add_option("-o,--output", witness_out, "write the witness document here");
    add_common(distinct, witness_common);

    // enumerate
    auto *enumerate = app.add_subcommand("enumerate", "stream realizable configurations as JSON lines");
    int enum_gates = 0;
    bool enum_shared = false, enum_sym = false;
    std::string enum_out;
    std::optional<std::uint64_t> enum_limit;
    Common enum_common;
    enumerate->add_option("--gates", enum_gates)->required();
    enumerate->add_flag("--shared", enum_shared, "walks share their end point");
    enumerate->add_flag("--up-to-symmetry", enum_sym, "one configuration per symmetry class");
    enumerate->add_option("--limit", enum_limit, "stop after this many");
    enumerate->add_option("-o,--output", enum_out, "write the stream here");
    add_common(enumerate, enum_common);

    // count
    auto *count = app.add_subcommand("count", "count realizable configurations");
    int count_gates = 0;
    bool count_shared = false, count_sym = false;
    Common count_common;
    count->add_option("--gates", count_gates)->required();
    count->add_flag("--shared", count_shared, "walks share their end point");
    count->add_flag("--up-to-symmetry", count_sym, "also count symmetry classes");
    add_common(count, count_common);

    // reduce
    std::string reduce_file;
    auto *reduce = app.add_subcommand("reduce", "reduce a realizable configuration to three gates");
    reduce->add_option("file", reduce_file)->required();

    // audit
    auto *audit = app.add_subcommand("audit", "corpus audits");
    audit->require_subcommand(1);
    auto *parity = audit->add_subcommand("parity", "odd-red arc equals odd-black arc on every interior section");
    std::vector<int> parity_gates;
    Common parity_common;
    parity->add_option("--gates", parity_gates)->required()->delimiter(',');
    add_common(parity, parity_common);
    auto *basecase = audit->add_subcommand("basecase", "three-gate obstruction graphs contain K5");
    Common basecase_common;
    basecase->add_flag("--timing", basecase_common.timing, "print elapsed time to stderr");
    auto *peel = audit->add_subcommand("peel", "peel every shared-endpoint realizable configuration");
    int peel_gates = 0;
    Common peel_common;
    peel->add_option("--gates", peel_gates)->required();
    add_common(peel, peel_common, false);

    // render
    std::string render_file, render_out;
    bool diagnostic = false;
    auto *render = app.add_subcommand("render", "draw a configuration as SVG");
    render->add_option("file", render_file)->required();
    render->add_option("-o,--output", render_out)->required();
    render->add_flag("--diagnostic", diagnostic, "draw non-realizable input with the crossing pair highlighted");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (check->parsed()) {
            const auto config = parse_config(read_file(check_file));
            const auto verdict = is_realizable(config);
            out << dump_document(verdict_to_json(config, verdict));
            code = verdict.realizable ? kExitOk : kExitRefuted;
        } else if (verify->parsed()) {
            std::vector<OrderedJson> docs;
            const auto opts = verify_options(verify_common);
            for (int n : verify_gates) {
                Stopwatch sw(verify_common.timing, err, "verify " + verify_claim + " " + std::to_string(n));
                Report r;
                if (verify_claim == "stadium")
                    r = verify_stadium(n, opts);
                else if (verify_claim == "general")
                    r = verify_general_order(n, opts);
                else
                    r = verify_first_last(n, opts);
                if (!r.holds)
                    code = kExitRefuted;
                docs.push_back(report_to_json(r));
            }
            emit(out, docs);
        } else if (distinct->parsed()) {
            Stopwatch sw(witness_common.timing, err, "witness");
            const Report r = distinct_first_report(witness_gates, verify_options(witness_common));
            if (r.witnesses.empty()) {
                code = kExitRefuted;
            } else if (!witness_out.empty()) {
                write_file(witness_out, emit_config(r.witnesses.front()) + "\n");
            }
            out << dump_document(report_to_json(r));
        } else if (enumerate->parsed()) {
            Stopwatch sw(enum_common.timing, err, "enumerate");
            SearchOptions opts;
            opts.gates = enum_gates;
            opts.shared_endpoint = enum_shared;
            opts.up_to_symmetry = enum_sym;
            opts.parallel_width = enum_common.jobs;
            opts.limit = enum_limit;
            if (enum_common.allow_large)
                opts.allow_large();
            std::ofstream file;
            if (!enum_out.empty()) {
                file.open(enum_out, std::ios::binary);
                if (!file)
                    throw StadiumError(ErrorKind::PreconditionViolation, "cannot write " + enum_out);
            }
            std::ostream &sink = enum_out.empty() ? out : file;
            const auto summary =
                enumerate_realizable(opts, [&](const StadiumConfig &c) { sink << emit_config(c) << '\n'; });
            if (!enum_out.empty()) {
                OrderedJson doc;
                doc["schema_version"] = kReportSchemaVersion;
                doc["kind"] = "enumeration";
                doc["gates"] = enum_gates;
                doc["shared_endpoint"] = enum_shared;
                doc["up_to_symmetry"] = enum_sym;
                doc["raw_candidates"] = summary.raw_candidates;
                doc["nodes_visited"] = summary.nodes_visited;
                doc["realizable"] = summary.realizable;
                doc["emitted"] = summary.emitted;
                out << dump_document(doc);
            }
        } else if (count->parsed()) {
            Stopwatch sw(count_common.timing, err, "count");
            const auto counts = count_realizable(count_gates, count_shared, count_sym, verify_options(count_common));
            out << dump_document(counts_to_json(count_gates, count_shared, counts));
        } else if (reduce->parsed()) {
            const auto config = parse_config(read_file(reduce_file));
            if (config.gates % 2 == 0)
                throw StadiumError(ErrorKind::EvenGateCount, "reduction to a triangle needs an odd gate count");
            if (!realizable(config)) {
                err << "configuration is not realizable\n";
                return kExitRefuted;
            }
            const auto trace = reduce_to_base(config);
            out << dump_document(trace_to_json(trace));
            code = trace.reached_base() ? kExitOk : kExitRefuted;
        } else if (parity->parsed()) {
            std::vector<OrderedJson> docs;
            for (int n : parity_gates) {
                Stopwatch sw(parity_common.timing, err, "audit parity " + std::to_string(n));
                const auto a = parity_corpus_audit(n, parity_common.jobs, parity_common.allow_large ? 7 : 6);
                if (!a.pass())
                    code = kExitRefuted;
                docs.push_back(parity_to_json(a));
            }
            emit(out, docs);
        } else if (basecase->parsed()) {
            Stopwatch sw(basecase_common.timing, err, "audit basecase");
            const auto a = basecase_audit();
            out << dump_document(basecase_to_json(a));
            code = a.holds() ? kExitOk : kExitRefuted;
        } else if (peel->parsed()) {
            Stopwatch sw(peel_common.timing, err, "audit peel");
            out << dump_document(peel_to_json(peel_audit(peel_gates, peel_common.jobs)));
        } else if (render->parsed()) {
            const auto config = parse_config(read_file(render_file));
            const auto drawing = layout_drawing(config, diagnostic);
            const auto crossings = drawing_crossings(drawing);
            write_file(render_out, to_svg(drawing));
            const bool real = realizable(config);
            if (real && !crossings.empty()) {
                err << "drawing audit failed: " << crossings.front().first << " meets " << crossings.front().second
                    << "\n";
                return kExitUsage;
            }
            code = real ? kExitOk : kExitRefuted;
        }
    } catch (const StadiumError &e) {
        err << e.what() << "\n";
        return e.kind() == ErrorKind::NotRealizable ? kExitRefuted : kExitUsage;
    }
    return code;
}

} // namespace stadium

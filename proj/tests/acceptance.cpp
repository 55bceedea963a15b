// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "json.hpp"
#include "stadium/cli.hpp"
#include "stadium/config_io.hpp"
#include "stadium/planarity.hpp"
#include "stadium/reduction.hpp"
#include "stadium/render.hpp"
#include "stadium/search.hpp"
#include "stadium/symmetry.hpp"
#include "support/arc_insertion_oracle.hpp"
#include "support/fixtures.hpp"

using namespace stadium;
using namespace stadium::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Frozen realizable counts from full unpruned scans.
constexpr std::uint64_t kN3 = 24, kN3Shared = 12, kN4 = 104;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Cli {
    int code;
    nlohmann::json doc;
};

Cli cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    nlohmann::json doc;
    if (!out.str().empty())
        doc = nlohmann::json::parse(out.str(), nullptr, false);
    return {code, doc};
}

std::vector<StadiumConfig> corpus(int n, bool shared, int width = 1) {
    SearchOptions opts;
    opts.gates = n;
    opts.shared_endpoint = shared;
    opts.parallel_width = width;
    opts.max_gates = 7;
    std::vector<StadiumConfig> out;
    enumerate_realizable(opts, [&](const StadiumConfig &c) { out.push_back(c); });
    return out;
}

bool distinct_first(const StadiumConfig &c) { return c.first_gate(Curve::Bob) != c.first_gate(Curve::Alice); }

SimpleGraph graph_from_mask(int n, unsigned mask) {
    SimpleGraph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1u)
                g.add_edge(u, v);
    return g;
}

StadiumConfig random_config(int n, bool shared, std::mt19937 &rng) {
    StadiumConfig c;
    c.gates = n;
    c.shared_endpoint = shared;
    c.bob_order.resize(n);
    c.alice_order.resize(n);
    std::iota(c.bob_order.begin(), c.bob_order.end(), 0);
    std::iota(c.alice_order.begin(), c.alice_order.end(), 0);
    std::shuffle(c.bob_order.begin(), c.bob_order.end(), rng);
    std::shuffle(c.alice_order.begin(), c.alice_order.end(), rng);
    for (int s = 0; s < n; ++s)
        c.side_order.push_back(rng() & 1 ? A : B);
    return c;
}

void stadium_n3(Outcome &o) {
    const auto t0 = Clock::now();
    const auto r = cli({"verify", "stadium", "--gates", "3"});
    const double t = seconds_since(t0);
    o.require(r.code == kExitOk, "exit code 0");
    o.require(r.doc.value("holds", false), "holds");
    o.require(r.doc.value("configs_scanned", 0) == 288, "288 candidates scanned");
    o.require(r.doc["counterexamples"].empty(), "no counterexamples");
    o.require(t < 1.0, "under 1 s");
    o.detail << "scanned " << r.doc.value("configs_scanned", 0) << ", realizable " << r.doc.value("realizable_count", 0)
             << ", counterexamples " << r.doc["counterexamples"].size() << ", " << t << " s";
}

void stadium_n5(Outcome &o) {
    auto t0 = Clock::now();
    std::uint64_t distinct = 0;
    const auto scan = unpruned_scan(5, false, [&](const StadiumConfig &c) { distinct += distinct_first(c); });
    const double unpruned = seconds_since(t0);
    t0 = Clock::now();
    const auto r = verify_stadium(5);
    const double pruned = seconds_since(t0);
    o.require(scan.nodes_visited == 460800, "unpruned scan covers 460800 candidates");
    o.require(distinct == 0, "unpruned scan finds no counterexample");
    o.require(r.holds && r.counterexamples.empty(), "pruned search finds no counterexample");
    o.require(r.configs_scanned == 460800, "pruned search covers the space");
    o.require(r.realizable_count == scan.realizable, "same realizable count");
    o.require(unpruned < 10.0, "unpruned under 10 s");
    o.require(pruned < 1.0, "pruned under 1 s");
    o.detail << "unpruned " << scan.nodes_visited << " candidates in " << unpruned << " s, pruned " << r.nodes_visited
             << " nodes in " << pruned << " s, realizable " << r.realizable_count << ", counterexamples " << distinct;
}

void stadium_n7(Outcome &o) {
    const auto t0 = Clock::now();
    const auto r = cli({"verify", "stadium", "--gates", "7", "--allow-large"});
    const double t = seconds_since(t0);
    const std::uint64_t raw = raw_candidate_count(7);
    const std::uint64_t nodes = r.doc.value("nodes_visited", std::uint64_t{0});
    o.require(r.code == kExitOk && r.doc.value("holds", false), "holds");
    o.require(r.doc["counterexamples"].empty(), "no counterexamples");
    o.require(nodes > 0 && nodes * 100 < raw, "nodes at least 100x below raw bound");
    o.require(t < 15 * 60, "under 15 min");
    o.detail << "nodes " << nodes << " vs raw " << raw << " (" << static_cast<double>(raw) / static_cast<double>(nodes)
             << "x), realizable " << r.doc.value("realizable_count", 0) << ", " << t << " s";
}

void even_witness(Outcome &o) {
    const auto path = (fs::temp_directory_path() / ("stadium_witness_" + std::to_string(::getpid()) + ".json")).string();
    const auto r = cli({"witness", "distinct-first", "--gates", "4", "-o", path});
    o.require(r.code == kExitOk, "exit code 0");
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    fs::remove(path);
    StadiumConfig w;
    try {
        w = parse_config(text.str());
    } catch (const StadiumError &e) {
        o.require(false, std::string("witness document parses: ") + e.what());
        return;
    }
    const auto reverse = reverse_walk4();
    o.require(distinct_first(w), "witness has distinct first gates");
    o.require(realizable(w) && ArcInsertionOracle::drawable(w), "witness realizable under both oracles");
    o.require(realizable(reverse), "reverse-walk config realizable");
    o.require(ArcInsertionOracle::drawable(reverse), "reverse-walk config drawable");
    o.require(w <= reverse, "witness is lexicographically least");
    o.detail << "witness " << emit_config(w) << "; reverse-walk config realizable with first gates "
             << reverse.first_gate(Curve::Bob) << " != " << reverse.first_gate(Curve::Alice);
}

void general_order(Outcome &o) {
    for (int n : {3, 4, 5}) {
        const auto r = verify_general_order(n);
        o.require(r.holds, "n = " + std::to_string(n) + " holds");
        o.detail << "n=" << n << ": " << r.realizable_count << " shared configs, " << r.counterexamples.size()
                 << " violations; ";
    }
    const auto r = cli({"verify", "general", "--gates", "3,4,5"});
    o.require(r.code == kExitOk, "command exit code 0");
}

void first_last(Outcome &o) {
    const auto r = cli({"verify", "first-last", "--gates", "3,5"});
    o.require(r.code == kExitOk, "command exit code 0");
    for (int n : {3, 5}) {
        const auto rep = verify_first_last(n);
        o.require(rep.holds, "n = " + std::to_string(n) + " holds");
        o.require(rep.cross_checked == rep.realizable_count && rep.realizable_count > 0,
                  "reversal cross-check on every shared config");
        // independent recheck of the reversal identity
        std::uint64_t bad = 0;
        for (const auto &c : corpus(n, true))
            bad += reverse_walks(c).first_gate(Curve::Bob) != c.bob_order.back() ||
                   reverse_walks(c).first_gate(Curve::Alice) != c.alice_order.back();
        o.require(bad == 0, "reversed first gate equals original last gate");
        o.detail << "n=" << n << ": " << rep.realizable_count << " configs, " << rep.cross_checked
                 << " reversal checks; ";
    }
}

void parity(Outcome &o) {
    const auto r = cli({"audit", "parity", "--gates", "3,5"});
    o.require(r.code == kExitOk, "command exit code 0");
    for (int n : {3, 5}) {
        const auto a = parity_corpus_audit(n);
        o.require(a.pass() && a.exceptions.empty(), "n = " + std::to_string(n) + " zero exceptions");
        o.detail << "n=" << n << ": " << a.configs << " configs, " << a.sections << " sections, " << a.failures
                 << " exceptions; ";
    }
}

void basecase(Outcome &o) {
    const auto t0 = Clock::now();
    const auto r = cli({"audit", "basecase"});
    const double t = seconds_since(t0);
    const auto a = basecase_audit();
    o.require(r.code == kExitOk, "command exit code 0");
    o.require(a.holds(), "every candidate interleaves and contains K5");
    o.require(a.candidates > 0 && a.graphs > 0, "non-empty candidate set");
    o.require(a.chords_apart == 0 && a.without_k5 == 0, "no exceptions");
    o.require(t < 5.0, "under 5 s");
    o.detail << a.candidates << " candidates, " << a.graphs << " graphs with verified K5, " << a.infeasible_choices
             << " infeasible slot choices, " << t << " s";
}

void planarity(Outcome &o) {
    const auto k4 = SimpleGraph::complete(4);
    const auto v4 = is_planar(k4);
    o.require(v4.planar && v4.embedding && verify_embedding(k4, *v4.embedding), "K4 planar with Euler-valid embedding");
    if (v4.embedding) {
        const auto f = count_faces(k4, *v4.embedding);
        o.require(f.faces == 4 && f.euler_holds, "K4 has 4 faces");
    }
    const std::vector<std::pair<std::string, SimpleGraph>> hard{{"K5", SimpleGraph::complete(5)},
                                                                 {"K3,3", SimpleGraph::complete_bipartite(3, 3)},
                                                                 {"Petersen", SimpleGraph::petersen()}};
    for (const auto &[name, g] : hard) {
        const auto v = is_planar(g);
        o.require(!v.planar && v.kuratowski && verify_kuratowski(g, *v.kuratowski), name + " nonplanar, certified");
        for (auto mode : {SearchMode::Pruned, SearchMode::Unpruned}) {
            const auto k = find_kuratowski(g, mode);
            o.require(k && verify_kuratowski(g, *k), name + " own search certified");
        }
    }
    long graphs = 0, disagreements = 0;
    for (int n = 1; n <= 6; ++n) {
        const unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            const auto g = graph_from_mask(n, mask);
            ++graphs;
            const auto v = is_planar(g);
            const auto pruned = find_kuratowski(g, SearchMode::Pruned);
            const auto unpruned = find_kuratowski(g, SearchMode::Unpruned);
            disagreements += v.planar == pruned.has_value();
            disagreements += pruned.has_value() != unpruned.has_value();
            disagreements += v.planar ? !verify_embedding(g, *v.embedding) : !verify_kuratowski(g, *v.kuratowski);
        }
    }
    o.require(disagreements == 0, "pruned and unpruned agree");
    o.detail << "K4 planar, K5/K3,3/Petersen certified; " << graphs << " graphs on <= 6 vertices, " << disagreements
             << " disagreements";
}

void oracle_agreement(Outcome &o) {
    long checked = 0, disagreements = 0;
    for (int n = 3; n <= 4; ++n)
        for (bool shared : {false, true})
            for_each_candidate(n, shared, [&](const StadiumConfig &c) {
                ++checked;
                disagreements += realizable(c) != ArcInsertionOracle::drawable(c);
            });
    o.require(checked == 2 * (288 + 24 * 24 * 16), "every candidate for n <= 4");
    o.require(disagreements == 0, "full agreement");
    o.detail << checked << " candidates, " << disagreements << " disagreements";
}

void symmetry(Outcome &o) {
    long exhaustive = 0, sampled = 0, mismatches = 0;
    for (int n = 3; n <= 4; ++n)
        for (bool shared : {false, true}) {
            const auto group = symmetry_group(n, shared);
            for_each_candidate(n, shared, [&](const StadiumConfig &c) {
                const bool v = realizable(c);
                for (const auto &g : group) {
                    mismatches += realizable(apply(c, g)) != v;
                    ++exhaustive;
                }
            });
        }
    std::mt19937 rng(20261015);
    for (int n : {5, 6})
        for (bool shared : {false, true}) {
            const auto group = symmetry_group(n, shared);
            // random candidates plus realizable ones, which random draws rarely hit
            std::vector<StadiumConfig> sample;
            for (int i = 0; i < 300; ++i)
                sample.push_back(random_config(n, shared, rng));
            const auto real = corpus(n, shared);
            for (int i = 0; i < 100; ++i)
                sample.push_back(real[rng() % real.size()]);
            for (const auto &c : sample) {
                const bool v = realizable(c);
                for (const auto &g : group) {
                    mismatches += realizable(apply(c, g)) != v;
                    ++sampled;
                }
            }
        }
    o.require(sampled >= 10000, "at least 10^4 sampled cases");
    o.require(mismatches == 0, "verdicts invariant");
    o.detail << exhaustive << " exhaustive cases (n <= 4), " << sampled << " sampled cases (n = 5, 6), " << mismatches
             << " mismatches";
}

void reduction(Outcome &o) {
    long traces = 0, reached = 0, silent = 0, steps = 0, fig2 = 0, bad_fig2 = 0, bad_step = 0;
    for (bool shared : {false, true})
        for (const auto &c : corpus(5, shared)) {
            const auto trace = reduce_to_base(c);
            ++traces;
            reached += trace.reached_base();
            silent += !trace.reached_base() && !trace.failure;
            StadiumConfig cur = c;
            for (const auto &s : trace.steps) {
                ++steps;
                bad_step += s.input_gates != cur.gates || !realizable(s.result) ||
                            distinct_first(s.result) != distinct_first(cur);
                if (s.tag && s.tag->kind == CaseKind::Fig2) {
                    ++fig2;
                    bad_fig2 += s.output_gates != s.input_gates - (s.tag->e + 2);
                }
                cur = s.result;
            }
            bad_step += trace.reached_base() && cur.gates != 3;
        }
    o.require(silent == 0, "no silent failures");
    o.require(reached == traces, "every trace reaches n = 3");
    o.require(bad_step == 0, "every step verified");
    o.require(bad_fig2 == 0, "Fig2 steps remove e+2 gates");
    bool peel_ok = true;
    for (int n = 5; n <= 9; n += 2) {
        const auto p = peel_first_last(shadow_config(n, true));
        peel_ok = peel_ok && p.realizable_preserved && p.config.gates == n - 2 && realizable(p.config);
    }
    o.require(peel_ok, "peel maps shadows n -> n-2 realizably for n = 5, 7, 9");
    const auto audit = peel_audit(5);
    o.require(audit.total > 0, "peel audit ran");
    o.detail << traces << " traces to n = 3 (" << steps << " steps, " << fig2 << " Fig2), silent failures " << silent
             << "; shadows peeled for n = 5, 7, 9; peel audit n = 5 preserved " << audit.preserved << "/"
             << audit.total << " (rate " << audit.rate() << ")";
}

void golden(Outcome &o) {
    struct Case {
        int n;
        bool shared;
        std::uint64_t frozen;
    };
    for (const auto &[n, shared, frozen] : {Case{3, false, kN3}, Case{3, true, kN3Shared}, Case{4, false, kN4}}) {
        std::vector<StadiumConfig> reference;
        unpruned_scan(n, shared, [&](const StadiumConfig &c) { reference.push_back(c); });
        o.require(reference.size() == frozen, "unpruned count matches frozen value");
        for (int width : {1, 2, 4}) {
            o.require(corpus(n, shared, width) == reference, "pruned list matches at width " + std::to_string(width));
            VerifyOptions opts;
            opts.parallel_width = width;
            o.require(count_realizable(n, shared, false, opts).realizable == frozen, "pruned count matches");
        }
        o.detail << "N" << n << (shared ? "s" : "") << "=" << reference.size() << " ";
    }
    o.detail << "(unpruned, pruned at widths 1/2/4 identical)";
}

void renderer(Outcome &o) {
    long drawings = 0, failed = 0, unstable = 0;
    for (int n = 3; n <= 5; ++n)
        for (bool shared : {false, true})
            for (const auto &c : corpus(n, shared)) {
                ++drawings;
                failed += !audit_drawing(layout_drawing(c));
                unstable += render_svg(c) != render_svg(c);
            }
    o.require(failed == 0, "every drawing passes the audit");
    o.require(unstable == 0, "byte-identical output");
    o.detail << drawings << " drawings, " << failed << " audit failures, " << unstable << " unstable";
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
        {"stadium theorem n=3", stadium_n3},
        {"stadium theorem n=5", stadium_n5},
        {"stadium theorem n=7", stadium_n7},
        {"even-n distinct-first witness", even_witness},
        {"general order theorem n=3,4,5", general_order},
        {"first/last corollary n=3,5", first_last},
        {"parity audit n=3,5", parity},
        {"base case K5 audit", basecase},
        {"planarity module", planarity},
        {"oracle cross-validation n<=4", oracle_agreement},
        {"symmetry invariance", symmetry},
        {"reduction engine", reduction},
        {"golden counts", golden},
        {"renderer audit and determinism", renderer},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double t = seconds_since(t0);
        failures += !o.pass;
        std::printf("%s %2zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), t,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

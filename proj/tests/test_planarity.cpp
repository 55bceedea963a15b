#include "doctest.h"

#include "stadium/planarity.hpp"
#include "support/fixtures.hpp"

using namespace stadium;
using namespace stadium::testing;

namespace {

EmbeddingCertificate k4_rotation() {
    // K4 drawn as a triangle 0,1,2 with 3 in the middle, counterclockwise
    return {{{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}}};
}

ErrorKind error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const StadiumError &e) {
        return e.kind();
    }
    FAIL("expected StadiumError");
    return ErrorKind::SyntaxError;
}

// Every labelled graph on n vertices, edges chosen by the bits of mask.
SimpleGraph graph_from_mask(int n, unsigned mask) {
    SimpleGraph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1u)
                g.add_edge(u, v);
    return g;
}

} // namespace

TEST_SUITE_BEGIN("planarity");

TEST_CASE("SimpleGraph") {
    SimpleGraph g(3);
    g.add_edge(0, 1);
    CHECK(g.has_edge(1, 0));
    CHECK(g.degree(0) == 1);
    CHECK(error_of([&] { g.add_edge(1, 0); }) == ErrorKind::PreconditionViolation);
    CHECK(error_of([&] { g.add_edge(2, 2); }) == ErrorKind::PreconditionViolation);
    CHECK(error_of([&] { g.add_edge(0, 3); }) == ErrorKind::PreconditionViolation);
    CHECK(error_of([] { SimpleGraph big(65); }) == ErrorKind::GraphTooLarge);
    CHECK_NOTHROW(SimpleGraph(64));
    CHECK(SimpleGraph::petersen().edge_count() == 15);
    for (int v = 0; v < 10; ++v)
        CHECK(SimpleGraph::petersen().degree(v) == 3);
}

TEST_CASE("verify_embedding") {
    const auto k4 = SimpleGraph::complete(4);
    const auto good = count_faces(k4, k4_rotation());
    CHECK(good.faces == 4);
    CHECK(good.euler_holds);
    CHECK(verify_embedding(k4, k4_rotation()));

    SUBCASE("swapping two incidences breaks it") {
        auto bad = k4_rotation();
        std::swap(bad.rotation[3][0], bad.rotation[3][1]);
        const auto f = count_faces(k4, bad);
        CHECK(f.faces == 2);
        CHECK_FALSE(f.euler_holds);
        CHECK_FALSE(verify_embedding(k4, bad));
    }

    SUBCASE("triangle") {
        const auto t = SimpleGraph::complete(3);
        EmbeddingCertificate cert{{{1, 2}, {2, 0}, {0, 1}}};
        CHECK(count_faces(t, cert).faces == 2);
        CHECK(verify_embedding(t, cert));
    }

    SUBCASE("isolated vertices and several components") {
        SimpleGraph g(5);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        EmbeddingCertificate cert{{{1, 2}, {2, 0}, {0, 1}, {}, {}}};
        const auto f = count_faces(g, cert);
        CHECK(f.components == 3);
        CHECK(f.faces == 4);
        CHECK(f.euler_holds);
    }

    SUBCASE("malformed") {
        auto bad = k4_rotation();
        bad.rotation[0] = {1, 3};
        CHECK(error_of([&] { verify_embedding(k4, bad); }) == ErrorKind::MalformedCertificate);
        bad.rotation[0] = {1, 1, 2};
        CHECK(error_of([&] { verify_embedding(k4, bad); }) == ErrorKind::MalformedCertificate);
        bad.rotation.pop_back();
        CHECK(error_of([&] { verify_embedding(k4, bad); }) == ErrorKind::MalformedCertificate);
    }
}

TEST_CASE("is_planar on the classic graphs") {
    const auto k4 = is_planar(SimpleGraph::complete(4));
    CHECK(k4.planar);
    REQUIRE(k4.embedding);
    CHECK(count_faces(SimpleGraph::complete(4), *k4.embedding).faces == 4);

    const auto k5g = SimpleGraph::complete(5);
    const auto k5 = is_planar(k5g);
    CHECK_FALSE(k5.planar);
    REQUIRE(k5.kuratowski);
    CHECK(k5.kuratowski->pattern == KuratowskiPattern::K5);
    CHECK(k5.kuratowski->branch.size() == 5);
    for (const auto &p : k5.kuratowski->paths)
        CHECK(p.size() == 2);
    CHECK(verify_kuratowski(k5g, *k5.kuratowski));

    const auto k33g = SimpleGraph::complete_bipartite(3, 3);
    const auto k33 = is_planar(k33g);
    CHECK_FALSE(k33.planar);
    REQUIRE(k33.kuratowski);
    CHECK(k33.kuratowski->pattern == KuratowskiPattern::K33);
    CHECK(verify_kuratowski(k33g, *k33.kuratowski));

    const auto pg = SimpleGraph::petersen();
    const auto pv = is_planar(pg);
    CHECK_FALSE(pv.planar);
    REQUIRE(pv.kuratowski);
    CHECK(pv.kuratowski->pattern == KuratowskiPattern::K33);
    CHECK(verify_kuratowski(pg, *pv.kuratowski));
}

TEST_CASE("find_kuratowski") {
    const auto k5 = find_kuratowski(SimpleGraph::complete(5));
    REQUIRE(k5);
    CHECK(k5->pattern == KuratowskiPattern::K5);
    CHECK(k5->branch == std::vector<int>{0, 1, 2, 3, 4});

    const auto petersen = find_kuratowski(SimpleGraph::petersen());
    REQUIRE(petersen);
    CHECK(petersen->pattern == KuratowskiPattern::K33);
    CHECK(verify_kuratowski(SimpleGraph::petersen(), *petersen));
    CHECK_FALSE(find_kuratowski(SimpleGraph::petersen(), SearchMode::Pruned, KuratowskiPattern::K5));

    SUBCASE("trees and planar graphs have none") {
        SimpleGraph path(8), star(9);
        for (int v = 0; v + 1 < 8; ++v)
            path.add_edge(v, v + 1);
        for (int v = 1; v < 9; ++v)
            star.add_edge(0, v);
        CHECK_FALSE(find_kuratowski(path));
        CHECK_FALSE(find_kuratowski(star));
        CHECK_FALSE(find_kuratowski(SimpleGraph::complete(4)));
        CHECK_FALSE(find_kuratowski(SimpleGraph::complete_bipartite(2, 5)));
    }

    SUBCASE("subdivided K5") {
        SimpleGraph g(7);
        const auto k5g = SimpleGraph::complete(5);
        for (const auto &[u, v] : k5g.edges())
            if (!(u == 0 && v == 1) && !(u == 2 && v == 3))
                g.add_edge(u, v);
        g.add_edge(0, 5);
        g.add_edge(5, 1);
        g.add_edge(2, 6);
        g.add_edge(6, 3);
        const auto cert = find_kuratowski(g, SearchMode::Pruned, KuratowskiPattern::K5);
        REQUIRE(cert);
        CHECK(cert->paths[0] == std::vector<int>{0, 5, 1});
    }

    SUBCASE("certificate checker rejects tampering") {
        auto cert = *k5;
        cert.paths[0] = {0, 2, 1};
        CHECK_FALSE(verify_kuratowski(SimpleGraph::complete(5), cert));
        cert = *k5;
        cert.branch[4] = 0;
        CHECK_FALSE(verify_kuratowski(SimpleGraph::complete(5), cert));
        cert = *k5;
        cert.paths.pop_back();
        CHECK(error_of([&] { verify_kuratowski(SimpleGraph::complete(5), cert); }) ==
              ErrorKind::MalformedCertificate);
    }
}

TEST_CASE("verdict agreement on every graph with at most 6 vertices") {
    long graphs = 0, nonplanar = 0, disagreements = 0;
    for (int n = 1; n <= 6; ++n) {
        const unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            const auto g = graph_from_mask(n, mask);
            ++graphs;
            const auto v = is_planar(g);
            const auto pruned = find_kuratowski(g, SearchMode::Pruned);
            const auto unpruned = find_kuratowski(g, SearchMode::Unpruned);
            nonplanar += !v.planar;
            disagreements += v.planar == pruned.has_value();
            disagreements += pruned.has_value() != unpruned.has_value();
            if (v.planar)
                disagreements += !verify_embedding(g, *v.embedding);
            else
                disagreements += !verify_kuratowski(g, *v.kuratowski);
        }
    }
    CHECK(graphs == 1 + 2 + 8 + 64 + 1024 + 32768);
    CHECK(nonplanar > 0);
    CHECK(disagreements == 0);
}

TEST_CASE("basecase_graph") {
    // first candidate in enumeration order with distinct first gates and an
    // admissible interior diagram
    std::optional<StadiumConfig> first;
    for_each_candidate(3, false, [&](const StadiumConfig &k) {
        if (!first && k.bob_order[0] != k.alice_order[0] && interior_diagram(k).admissible())
            first = k;
    });
    REQUIRE(first);
    const StadiumConfig c = *first;
    BasecaseLayout lay;
    const auto g = basecase_graph(c, std::nullopt, std::nullopt, &lay);
    CHECK(g.vertex_count() == 7);
    CHECK(g.edge_count() == 6 + 2 + 4);
    CHECK(lay.apex == 6);
    CHECK(g.has_edge(lay.x1, lay.x2));
    CHECK(g.has_edge(lay.y1, lay.y2));
    const auto cert = find_kuratowski(g, SearchMode::Pruned, KuratowskiPattern::K5);
    REQUIRE(cert);
    std::vector<int> branch = cert->branch;
    std::sort(branch.begin(), branch.end());
    std::vector<int> expected{lay.x1, lay.x2, lay.y1, lay.y2, lay.apex};
    std::sort(expected.begin(), expected.end());
    CHECK(branch == expected);
    CHECK_FALSE(is_planar(g).planar);

    CHECK(error_of([] { basecase_graph(shadow3()); }) == ErrorKind::PreconditionViolation);
    CHECK(error_of([] { basecase_graph(reverse_walk4()); }) == ErrorKind::PreconditionViolation);
    CHECK(error_of([&] { basecase_graph(c, 2); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("non-alternating placements are planar") {
    // outside the audit's domain: when the exterior chords do not interleave
    // the graph is planar, matching the chord test
    long checked = 0, mismatches = 0;
    for_each_candidate(3, false, [&](const StadiumConfig &c) {
        if (c.bob_order[0] == c.alice_order[0] || !interior_diagram(c).admissible())
            return;
        BasecaseLayout lay;
        const auto g = basecase_graph(c, std::nullopt, std::nullopt, &lay);
        const bool cross = chords_interleave({lay.x1, lay.x2}, {lay.y1, lay.y2}, 6);
        mismatches += cross == is_planar(g).planar;
        ++checked;
    });
    CHECK(checked == 24);
    CHECK(mismatches == 0);
}

TEST_CASE("basecase_audit") {
    const auto a = basecase_audit();
    CHECK(a.candidates == 24);
    CHECK(a.graphs == 24);
    CHECK(a.infeasible_choices == 72);
    CHECK(a.chords_apart == 0);
    CHECK(a.without_k5 == 0);
    CHECK(a.exceptions.empty());
    CHECK(a.holds());
}

TEST_SUITE_END();

#include "stadium/planarity.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <iterator>
#include <map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace stadium {

namespace {

int other_end(const std::pair<int, int> &e, int v) { return e.first == v ? e.second : e.first; }

std::vector<std::vector<int>> components(const SimpleGraph &g) {
    std::vector<int> comp(g.vertex_count(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] >= 0)
            continue;
        out.emplace_back();
        std::deque<int> queue{s};
        comp[s] = static_cast<int>(out.size()) - 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            out.back().push_back(v);
            for (std::uint64_t m = g.neighbors(v); m; m &= m - 1) {
                const int w = std::countr_zero(m);
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    queue.push_back(w);
                }
            }
        }
    }
    return out;
}

// Subdivision search state: vertices already claimed by branch points or path
// interiors are blocked.
class SubdivisionSearch {
  public:
    SubdivisionSearch(const SimpleGraph &g, SearchMode mode) : g_(g), mode_(mode) {}

    std::optional<KuratowskiCertificate> run(KuratowskiPattern pattern) {
        const int need = pattern == KuratowskiPattern::K5 ? 5 : 6;
        const int min_degree = pattern == KuratowskiPattern::K5 ? 4 : 3;
        std::vector<int> candidates;
        for (int v = 0; v < g_.vertex_count(); ++v)
            if (mode_ == SearchMode::Unpruned || g_.degree(v) >= min_degree)
                candidates.push_back(v);
        if (static_cast<int>(candidates.size()) < need)
            return std::nullopt;

        cert_.pattern = pattern;
        edges_ = pattern_edges(pattern);
        std::vector<int> chosen;
        // choose branch sets in lexicographic order
        std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
            if (static_cast<int>(chosen.size()) == need) {
                if (pattern == KuratowskiPattern::K5)
                    return try_branch(chosen);
                // split into sides; the smallest vertex stays on the first side
                for (int a = 1; a < 6; ++a)
                    for (int b = a + 1; b < 6; ++b) {
                        std::vector<int> branch{chosen[0], chosen[a], chosen[b]};
                        for (int i = 1; i < 6; ++i)
                            if (i != a && i != b)
                                branch.push_back(chosen[i]);
                        if (try_branch(branch))
                            return true;
                    }
                return false;
            }
            for (std::size_t i = from; i < candidates.size(); ++i) {
                chosen.push_back(candidates[i]);
                if (choose(i + 1))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        if (choose(0))
            return cert_;
        return std::nullopt;
    }

  private:
    bool try_branch(const std::vector<int> &branch) {
        cert_.branch = branch;
        cert_.paths.assign(edges_.size(), {});
        blocked_ = 0;
        for (int v : branch)
            blocked_ |= bit(v);
        return extend(0);
    }

    static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

    // Is there any path a..b through unblocked vertices?
    bool reachable(int a, int b) const {
        if (g_.has_edge(a, b))
            return true;
        std::uint64_t seen = 0;
        std::uint64_t frontier = g_.neighbors(a) & ~blocked_;
        while (frontier) {
            seen |= frontier;
            if (frontier & g_.neighbors(b))
                return true;
            std::uint64_t next = 0;
            for (std::uint64_t m = frontier; m; m &= m - 1)
                next |= g_.neighbors(std::countr_zero(m));
            frontier = next & ~blocked_ & ~seen;
        }
        return false;
    }

    bool extend(std::size_t k) {
        if (k == edges_.size())
            return true;
        if (mode_ == SearchMode::Pruned)
            for (std::size_t j = k; j < edges_.size(); ++j)
                if (!reachable(cert_.branch[edges_[j].first], cert_.branch[edges_[j].second]))
                    return false;
        const int a = cert_.branch[edges_[k].first];
        const int b = cert_.branch[edges_[k].second];
        std::vector<int> path{a};
        return walk(k, a, b, path);
    }

    bool walk(std::size_t k, int at, int target, std::vector<int> &path) {
        if (g_.has_edge(at, target)) {
            path.push_back(target);
            cert_.paths[k] = path;
            if (extend(k + 1))
                return true;
            path.pop_back();
        }
        for (std::uint64_t m = g_.neighbors(at) & ~blocked_; m; m &= m - 1) {
            const int w = std::countr_zero(m);
            blocked_ |= bit(w);
            path.push_back(w);
            const bool ok = walk(k, w, target, path);
            path.pop_back();
            blocked_ &= ~bit(w);
            if (ok)
                return true;
        }
        return false;
    }

    const SimpleGraph &g_;
    SearchMode mode_;
    std::vector<std::pair<int, int>> edges_;
    KuratowskiCertificate cert_;
    std::uint64_t blocked_ = 0;
};

// Turns the edge set of a Kuratowski subgraph into branch vertices and paths.
std::optional<KuratowskiCertificate> certificate_from_subgraph(const SimpleGraph &g,
                                                                const std::vector<std::pair<int, int>> &edges) {
    std::map<int, std::vector<int>> adj;
    for (const auto &[u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> branch;
    for (const auto &[v, nb] : adj)
        if (nb.size() >= 3)
            branch.push_back(v);
    KuratowskiCertificate cert;
    if (branch.size() == 5)
        cert.pattern = KuratowskiPattern::K5;
    else if (branch.size() == 6)
        cert.pattern = KuratowskiPattern::K33;
    else
        return std::nullopt;

    // trace every branch-to-branch path
    std::map<std::pair<int, int>, std::vector<int>> traced;
    for (int s : branch)
        for (int first : adj[s]) {
            std::vector<int> path{s, first};
            int prev = s, cur = first;
            while (adj[cur].size() == 2) {
                const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = next;
                path.push_back(cur);
            }
            if (s < cur)
                traced[{s, cur}] = path;
        }

    if (cert.pattern == KuratowskiPattern::K33) {
        // side of branch[0] = the branch vertices it is not joined to
        std::vector<int> side_a{branch[0]}, side_b;
        for (std::size_t i = 1; i < branch.size(); ++i) {
            const auto key = std::minmax(branch[0], branch[i]);
            (traced.count({key.first, key.second}) ? side_b : side_a).push_back(branch[i]);
        }
        if (side_a.size() != 3 || side_b.size() != 3)
            return std::nullopt;
        branch = side_a;
        branch.insert(branch.end(), side_b.begin(), side_b.end());
    }
    cert.branch = branch;
    for (const auto &[i, j] : pattern_edges(cert.pattern)) {
        const int a = branch[i], b = branch[j];
        auto it = traced.find({std::min(a, b), std::max(a, b)});
        if (it == traced.end())
            return std::nullopt;
        std::vector<int> path = it->second;
        if (path.front() != a)
            std::reverse(path.begin(), path.end());
        cert.paths.push_back(std::move(path));
    }
    if (!verify_kuratowski(g, cert))
        return std::nullopt;
    return cert;
}

} // namespace

SimpleGraph::SimpleGraph(int vertices) : n_(vertices) {
    if (vertices > kMaxGraphVertices)
        throw StadiumError(ErrorKind::GraphTooLarge,
                           std::to_string(vertices) + " vertices exceeds the limit of " +
                               std::to_string(kMaxGraphVertices));
    if (vertices < 0)
        throw StadiumError(ErrorKind::PreconditionViolation, "negative vertex count");
    adj_.assign(vertices, 0);
}

void SimpleGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw StadiumError(ErrorKind::PreconditionViolation, "edge endpoint out of range");
    if (u == v)
        throw StadiumError(ErrorKind::PreconditionViolation, "loop at vertex " + std::to_string(u));
    if (has_edge(u, v))
        throw StadiumError(ErrorKind::PreconditionViolation,
                           "repeated edge " + std::to_string(u) + "-" + std::to_string(v));
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
}

bool SimpleGraph::has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }

int SimpleGraph::degree(int v) const { return std::popcount(adj_[v]); }

SimpleGraph SimpleGraph::complete(int n) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

SimpleGraph SimpleGraph::complete_bipartite(int a, int b) {
    SimpleGraph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v)
            g.add_edge(u, a + v);
    return g;
}

SimpleGraph SimpleGraph::petersen() {
    SimpleGraph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);         // outer cycle
        g.add_edge(i, i + 5);               // spokes
        g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
    }
    return g;
}

FaceCount count_faces(const SimpleGraph &g, const EmbeddingCertificate &cert) {
    const int n = g.vertex_count();
    if (static_cast<int>(cert.rotation.size()) != n)
        throw StadiumError(ErrorKind::MalformedCertificate, "rotation system has the wrong number of vertices");
    // position of each neighbour in each rotation
    std::vector<std::map<int, int>> index(n);
    for (int v = 0; v < n; ++v) {
        const auto &rot = cert.rotation[v];
        std::uint64_t seen = 0;
        for (std::size_t i = 0; i < rot.size(); ++i) {
            const int w = rot[i];
            if (w < 0 || w >= n || !g.has_edge(v, w) || (seen >> w & 1u))
                throw StadiumError(ErrorKind::MalformedCertificate,
                                   "rotation at vertex " + std::to_string(v) + " is not its neighbour set");
            seen |= std::uint64_t{1} << w;
            index[v][w] = static_cast<int>(i);
        }
        if (seen != g.neighbors(v))
            throw StadiumError(ErrorKind::MalformedCertificate,
                               "rotation at vertex " + std::to_string(v) + " misses a neighbour");
    }

    // dart u->v continues as v->w, w the successor of u around v
    std::map<std::pair<int, int>, bool> visited;
    FaceCount out;
    const auto comps = components(g);
    out.components = static_cast<int>(comps.size());
    out.euler_holds = true;
    for (const auto &comp : comps) {
        int vertices = static_cast<int>(comp.size());
        int edges = 0;
        int faces = 0;
        for (int v : comp)
            edges += g.degree(v);
        edges /= 2;
        if (edges == 0) {
            faces = 1;
        } else {
            for (int u : comp)
                for (int v : cert.rotation[u]) {
                    if (visited[{u, v}])
                        continue;
                    ++faces;
                    int a = u, b = v;
                    while (!visited[{a, b}]) {
                        visited[{a, b}] = true;
                        const auto &rot = cert.rotation[b];
                        const int w = rot[(index[b][a] + 1) % rot.size()];
                        a = b;
                        b = w;
                    }
                }
        }
        out.faces += faces;
        if (vertices - edges + faces != 2)
            out.euler_holds = false;
    }
    return out;
}

bool verify_embedding(const SimpleGraph &g, const EmbeddingCertificate &cert) {
    return count_faces(g, cert).euler_holds;
}

std::vector<std::pair<int, int>> pattern_edges(KuratowskiPattern pattern) {
    std::vector<std::pair<int, int>> out;
    if (pattern == KuratowskiPattern::K5) {
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                out.emplace_back(i, j);
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 3; j < 6; ++j)
                out.emplace_back(i, j);
    }
    return out;
}

bool verify_kuratowski(const SimpleGraph &g, const KuratowskiCertificate &cert) {
    const auto edges = pattern_edges(cert.pattern);
    const std::size_t need = cert.pattern == KuratowskiPattern::K5 ? 5 : 6;
    if (cert.branch.size() != need || cert.paths.size() != edges.size())
        throw StadiumError(ErrorKind::MalformedCertificate, "wrong number of branch vertices or paths");
    auto in_range = [&](int v) { return v >= 0 && v < g.vertex_count(); };
    for (int v : cert.branch)
        if (!in_range(v))
            throw StadiumError(ErrorKind::MalformedCertificate, "branch vertex out of range");
    for (const auto &p : cert.paths)
        for (int v : p)
            if (!in_range(v))
                throw StadiumError(ErrorKind::MalformedCertificate, "path vertex out of range");

    std::uint64_t used = 0;
    for (int v : cert.branch) {
        if (used >> v & 1u)
            return false;
        used |= std::uint64_t{1} << v;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto &p = cert.paths[i];
        if (p.size() < 2 || p.front() != cert.branch[edges[i].first] || p.back() != cert.branch[edges[i].second])
            return false;
        for (std::size_t k = 0; k + 1 < p.size(); ++k)
            if (!g.has_edge(p[k], p[k + 1]))
                return false;
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            if (used >> p[k] & 1u)
                return false;
            used |= std::uint64_t{1} << p[k];
        }
    }
    return true;
}

PlanarityVerdict is_planar(const SimpleGraph &g) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                        boost::property<boost::vertex_index_t, int>,
                                        boost::property<boost::edge_index_t, int>>;
    using Edge = boost::graph_traits<Graph>::edge_descriptor;

    const int n = g.vertex_count();
    Graph bg(n);
    for (const auto &[u, v] : g.edges())
        boost::add_edge(u, v, bg);
    int k = 0;
    auto edge_index = boost::get(boost::edge_index, bg);
    for (auto [it, end] = boost::edges(bg); it != end; ++it)
        boost::put(edge_index, *it, k++);

    std::vector<std::vector<Edge>> embedding(n);
    std::vector<Edge> kuratowski;
    const bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding =
            boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg)),
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

    PlanarityVerdict verdict;
    verdict.planar = planar;
    if (planar) {
        EmbeddingCertificate cert;
        cert.rotation.resize(n);
        for (int v = 0; v < n; ++v)
            for (const Edge &e : embedding[v]) {
                const int s = static_cast<int>(boost::source(e, bg));
                const int t = static_cast<int>(boost::target(e, bg));
                cert.rotation[v].push_back(other_end({s, t}, v));
            }
        if (!verify_embedding(g, cert))
            throw StadiumError(ErrorKind::PostconditionViolation, "planar embedding fails the Euler check");
        verdict.embedding = std::move(cert);
    } else {
        std::vector<std::pair<int, int>> edges;
        for (const Edge &e : kuratowski)
            edges.emplace_back(static_cast<int>(boost::source(e, bg)), static_cast<int>(boost::target(e, bg)));
        auto cert = certificate_from_subgraph(g, edges);
        if (!cert)
            cert = find_kuratowski(g);
        if (!cert || !verify_kuratowski(g, *cert))
            throw StadiumError(ErrorKind::PostconditionViolation, "no verifiable Kuratowski subdivision");
        verdict.kuratowski = std::move(cert);
    }
    return verdict;
}

std::optional<KuratowskiCertificate> find_kuratowski(const SimpleGraph &g, SearchMode mode,
                                                     std::optional<KuratowskiPattern> only) {
    for (KuratowskiPattern p : {KuratowskiPattern::K5, KuratowskiPattern::K33}) {
        if (only && *only != p)
            continue;
        SubdivisionSearch search(g, mode);
        if (auto cert = search.run(p)) {
            if (!verify_kuratowski(g, *cert))
                throw StadiumError(ErrorKind::PostconditionViolation, "search produced an invalid subdivision");
            return cert;
        }
    }
    return std::nullopt;
}

SimpleGraph basecase_graph(const StadiumConfig &candidate, SlotChoice bob_choice, SlotChoice alice_choice,
                           BasecaseLayout *layout) {
    const StadiumConfig c = validate_config(candidate);
    if (c.gates != 3)
        throw StadiumError(ErrorKind::PreconditionViolation, "the base case has 3 gates");
    if (c.first_gate(Curve::Bob) == c.first_gate(Curve::Alice))
        throw StadiumError(ErrorKind::PreconditionViolation, "the base case needs distinct first gates");
    for (const SlotChoice &s : {bob_choice, alice_choice})
        if (s && *s != 0 && *s != 1)
            throw StadiumError(ErrorKind::PreconditionViolation, "slot choice must be 0 or 1");

    BasecaseLayout lay;
    lay.placed = c;
    const GateId gx = c.bob_order[1];
    const GateId gy = c.alice_order[1];
    if (bob_choice && alice_choice && gx == gy && *bob_choice == *alice_choice)
        throw StadiumError(ErrorKind::PreconditionViolation, "x2 and y2 cannot take the same slot");
    if (bob_choice)
        lay.placed.side_order[gx] = *bob_choice == 0 ? SideOrder::BobFirst : SideOrder::AliceFirst;
    if (alice_choice)
        lay.placed.side_order[gy] = *alice_choice == 0 ? SideOrder::AliceFirst : SideOrder::BobFirst;
    if (!interior_diagram(lay.placed).admissible())
        throw StadiumError(ErrorKind::PreconditionViolation, "interior diagram of the placement is not admissible");

    const BoundaryWord word = boundary_word(lay.placed);
    const int size = word.size();
    lay.x1 = word.position_of({Curve::Bob, 1});
    lay.x2 = word.position_of({Curve::Bob, 2});
    lay.y1 = word.position_of({Curve::Alice, 1});
    lay.y2 = word.position_of({Curve::Alice, 2});
    lay.apex = size;

    SimpleGraph g(size + 1);
    for (int p = 0; p < size; ++p)
        g.add_edge(p, (p + 1) % size);
    for (const auto &[a, b] : {std::pair{lay.x1, lay.x2}, std::pair{lay.y1, lay.y2}})
        if (!g.has_edge(a, b))
            g.add_edge(a, b);
    for (int p : {lay.x1, lay.x2, lay.y1, lay.y2})
        g.add_edge(lay.apex, p);
    if (layout)
        *layout = lay;
    return g;
}

BasecaseAudit basecase_audit() {
    constexpr std::size_t kMaxExceptions = 16;
    BasecaseAudit audit;
    StadiumConfig c;
    c.gates = 3;
    c.side_order.resize(3);
    std::vector<GateId> perm{0, 1, 2};
    std::vector<std::vector<GateId>> perms;
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    for (const auto &bob : perms)
        for (const auto &alice : perms) {
            if (bob[0] == alice[0])
                continue;
            c.bob_order = bob;
            c.alice_order = alice;
            for (int mask = 0; mask < 8; ++mask) {
                for (int s = 0; s < 3; ++s)
                    c.side_order[s] = (mask >> (2 - s) & 1) ? SideOrder::AliceFirst : SideOrder::BobFirst;
                if (!interior_diagram(c).admissible())
                    continue;
                ++audit.candidates;
                bool exception = false;

                const BoundaryWord word = boundary_word(c);
                const Chord bob_chord{word.position_of({Curve::Bob, 1}), word.position_of({Curve::Bob, 2})};
                const Chord alice_chord{word.position_of({Curve::Alice, 1}), word.position_of({Curve::Alice, 2})};
                if (!chords_interleave(bob_chord, alice_chord, word.size())) {
                    ++audit.chords_apart;
                    exception = true;
                }
                for (int bc : {0, 1})
                    for (int ac : {0, 1}) {
                        SimpleGraph g;
                        try {
                            g = basecase_graph(c, bc, ac);
                        } catch (const StadiumError &e) {
                            if (e.kind() != ErrorKind::PreconditionViolation)
                                throw;
                            ++audit.infeasible_choices;
                            continue;
                        }
                        ++audit.graphs;
                        const auto cert = find_kuratowski(g, SearchMode::Pruned, KuratowskiPattern::K5);
                        if (!cert || !verify_kuratowski(g, *cert) || is_planar(g).planar) {
                            ++audit.without_k5;
                            exception = true;
                        }
                    }
                if (exception && audit.exceptions.size() < kMaxExceptions)
                    audit.exceptions.push_back(c);
            }
        }
    return audit;
}

} // namespace stadium

#pragma once

// Planarity of small graphs with certificates that can be checked without
// trusting the test that produced them, and the obstruction graph of the
// three-gate base case.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stadium/model.hpp"

namespace stadium {

constexpr int kMaxGraphVertices = 64;

class SimpleGraph {
  public:
    // Throws GraphTooLarge above kMaxGraphVertices.
    explicit SimpleGraph(int vertices = 0);

    // Throws PreconditionViolation for loops, repeated edges, or bad indices.
    void add_edge(int u, int v);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int u, int v) const;
    int degree(int v) const;
    std::uint64_t neighbors(int v) const { return adj_[v]; }
    // Each edge once as (min, max), in insertion order.
    const std::vector<std::pair<int, int>> &edges() const { return edges_; }

    static SimpleGraph complete(int n);
    static SimpleGraph complete_bipartite(int a, int b);
    static SimpleGraph petersen();

  private:
    int n_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// Cyclic order of neighbours around each vertex.
struct EmbeddingCertificate {
    std::vector<std::vector<int>> rotation;
};

struct FaceCount {
    int components = 0;
    int faces = 0;
    bool euler_holds = false; // V - E + F = 2 on every component
};

// Traces the faces of the rotation system. Throws MalformedCertificate when
// the rotation at some vertex is not exactly its neighbour set.
FaceCount count_faces(const SimpleGraph &g, const EmbeddingCertificate &cert);

bool verify_embedding(const SimpleGraph &g, const EmbeddingCertificate &cert);

enum class KuratowskiPattern { K5, K33 };

// Branch vertices: 5 for K5; 6 for K33 with the first three on one side.
// paths[i] runs between the endpoints of pattern_edges(pattern)[i].
struct KuratowskiCertificate {
    KuratowskiPattern pattern = KuratowskiPattern::K5;
    std::vector<int> branch;
    std::vector<std::vector<int>> paths;
};

// Pattern edges as index pairs into `branch`, in certificate order.
std::vector<std::pair<int, int>> pattern_edges(KuratowskiPattern pattern);

// Structural check of a subdivision certificate. Throws MalformedCertificate
// for wrong branch/path counts or vertex indices out of range.
bool verify_kuratowski(const SimpleGraph &g, const KuratowskiCertificate &cert);

struct PlanarityVerdict {
    bool planar = false;
    std::optional<EmbeddingCertificate> embedding;
    std::optional<KuratowskiCertificate> kuratowski;
};

// Boyer-Myrvold test; the certificate of either kind is re-verified before
// returning (PostconditionViolation if it does not check out).
PlanarityVerdict is_planar(const SimpleGraph &g);

enum class SearchMode { Pruned, Unpruned };

// Backtracking search over branch vertices with disjoint path extension,
// independent of is_planar. Pruned mode filters branch candidates by degree
// and abandons a partial assignment as soon as some remaining pattern edge
// has no path left; unpruned mode tries everything.
std::optional<KuratowskiCertificate> find_kuratowski(const SimpleGraph &g, SearchMode mode = SearchMode::Pruned,
                                                     std::optional<KuratowskiPattern> only = std::nullopt);

// Slot 0 or 1 on a crossing's gate, counterclockwise.
using SlotChoice = std::optional<int>;

// Vertex indices of the base-case graph.
struct BasecaseLayout {
    StadiumConfig placed; // the candidate with the chosen slots applied
    Position x1 = 0, x2 = 0, y1 = 0, y2 = 0;
    int apex = 0;
};

// Polygon cycle through the 2n crossing points in boundary order, the
// exterior edges x1-x2 and y1-y2, and an apex joined to those four points.
// An exterior edge that coincides with a polygon edge is not added twice.
// The choices move x2 / y2 to the given slot on their gate. Throws
// PreconditionViolation unless n = 3, the first gates differ, the chosen
// slots are compatible, and the placed interior diagram is admissible.
SimpleGraph basecase_graph(const StadiumConfig &candidate, SlotChoice bob_choice = std::nullopt,
                           SlotChoice alice_choice = std::nullopt, BasecaseLayout *layout = nullptr);

struct BasecaseAudit {
    std::uint64_t candidates = 0;        // 3-gate, distinct first gates, admissible interior
    std::uint64_t graphs = 0;            // feasible (candidate, choice) pairs checked
    std::uint64_t infeasible_choices = 0;
    std::uint64_t chords_apart = 0;      // candidates whose exterior chords do not interleave
    std::uint64_t without_k5 = 0;        // graphs without a verified K5 certificate
    std::vector<StadiumConfig> exceptions;

    bool holds() const { return chords_apart == 0 && without_k5 == 0 && candidates > 0; }
};

BasecaseAudit basecase_audit();

} // namespace stadium

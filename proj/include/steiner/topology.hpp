#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace steiner {

/// Abstract tree on `terminals` labeled leaves-or-terminals (ids 0..terminals-1) and unlabeled
/// Steiner vertices (ids terminals..vertices-1).
struct TopologyGraph {
    int terminals = 0;
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
    bool is_tree() const;
};

/// Code equal for isomorphic graphs (terminal labels fixed, Steiner labels free) and distinct
/// otherwise. The tree is rooted at terminal 0 and serialized with sorted child lists; terminal
/// i prints as i+1 and Steiner vertices as 's'.
std::string canonical_code(const TopologyGraph& g);

/// Full topology: terminals are leaves, Steiner vertices have degree 3, n-2 of them.
class FullTopology {
public:
    /// Validates the full-topology invariants; throws PreconditionError otherwise.
    explicit FullTopology(TopologyGraph g);

    int n() const noexcept { return graph_.terminals; }
    const TopologyGraph& graph() const noexcept { return graph_; }
    const std::string& code() const noexcept { return code_; }

    /// Steiner vertex adjacent to terminal i (n >= 3).
    int terminal_neighbor(int terminal) const;

private:
    TopologyGraph graph_;
    std::string code_;
};

std::string canonical_code(const FullTopology& t);

/// A member of D(T): contractions of terminal-Steiner edges with pairwise distinct ends.
struct ContractedTopology {
    const FullTopology* base = nullptr;
    /// Contracted edges as (terminal, Steiner) pairs.
    std::vector<std::pair<int, int>> contracted;

    /// The abstract tree with contracted Steiner vertices merged into their terminals.
    TopologyGraph graph() const;
    std::string code() const { return canonical_code(graph()); }
};

/// Merge Steiner vertices into terminals along the given (terminal, Steiner) pairs. Steiner ids
/// are renumbered densely.
TopologyGraph contract_edges(const TopologyGraph& g, const std::vector<std::pair<int, int>>& contracted);

/// (2n-5)!! for n >= 3, 1 for n = 2.
std::size_t full_topology_count(int n);

inline constexpr int kDefaultMaxTerminals = 10;

/// Streams every full topology on n terminals, each exactly once (insertion order).
void for_each_full(int n, const std::function<void(const FullTopology&)>& visit,
                   int n_max = kDefaultMaxTerminals);

/// All full topologies on n terminals sorted by canonical code. Throws UnsupportedError above n_max.
std::vector<FullTopology> enumerate_full(int n, int n_max = kDefaultMaxTerminals);

/// Every member of D(T), T itself first.
std::vector<ContractedTopology> contract_family(const FullTopology& t);

/// True iff some terminal has degree 3 or more.
bool is_degenerate(const TopologyGraph& g);

/// The unique full T with g in D(T). Throws PreconditionError for degenerate input.
FullTopology expand_to_full(const TopologyGraph& g);

}  // namespace steiner

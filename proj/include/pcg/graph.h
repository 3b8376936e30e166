#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcg {

using Gen = int;

// Finite simple graph; an edge means the two generators commute.
class CommutationGraph {
 public:
  CommutationGraph() = default;
  // Throws ParseError on duplicate names, self-loops or unknown endpoints.
  CommutationGraph(std::vector<std::string> generators,
                   const std::vector<std::pair<std::string, std::string>>& edges);
  CommutationGraph(std::vector<std::string> generators, const std::vector<std::pair<Gen, Gen>>& edges);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generators() const { return names_; }
  const std::string& name(Gen g) const { return names_.at(g); }
  std::optional<Gen> find(std::string_view name) const;

  bool commute(Gen x, Gen y) const { return adj_[x * names_.size() + y] != 0; }
  // Sorted (i<j) list of commuting pairs.
  std::vector<std::pair<Gen, Gen>> edges() const;
  std::vector<Gen> neighbours(Gen g) const;

  bool operator==(const CommutationGraph& o) const { return names_ == o.names_ && adj_ == o.adj_; }

  // Full subgraph on the listed generators, in the given order.
  CommutationGraph induced(const std::vector<Gen>& vertices) const;
  // Appends new generators; extra_edges refer to indices of the extended graph.
  CommutationGraph extended(const std::vector<std::string>& names,
                            const std::vector<std::pair<Gen, Gen>>& extra_edges = {}) const;

  std::string to_text() const;

 private:
  std::vector<std::string> names_;
  std::vector<char> adj_;
};

// Complement graph Δ.
struct NonCommutationGraph {
  int n = 0;
  std::vector<std::vector<Gen>> adjacency;
  std::vector<std::pair<Gen, Gen>> edges() const;
};

struct CdimEstimate {
  int lower = 0;           // diam Δ, or the per-component sum when Δ is disconnected
  int lattice_height = 0;  // longest chain of closed sets
  int chosen = 0;
};

bool valid_generator_name(std::string_view s);

CommutationGraph parse_graph(std::string_view text);
NonCommutationGraph non_commutation(const CommutationGraph& g);
// Connected components of Δ, ordered by smallest vertex; each as vertex list.
std::vector<std::vector<Gen>> delta_components(const CommutationGraph& g);
std::vector<CommutationGraph> direct_decomposition(const CommutationGraph& g);
// nullopt means infinite (Δ disconnected).
std::optional<int> diameter_delta(const CommutationGraph& g);
std::vector<Gen> center_generators(const CommutationGraph& g);
CdimEstimate cdim_estimate(const CommutationGraph& g);

bool is_abelian(const CommutationGraph& g);
bool is_indecomposable(const CommutationGraph& g);

// Γ₁ × Γ₂ with every cross pair commuting. Clashing names in the second factor get a "2" suffix.
CommutationGraph direct_product(const CommutationGraph& a, const CommutationGraph& b);

}  // namespace pcg

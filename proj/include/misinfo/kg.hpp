#ifndef MISINFO_KG_HPP
#define MISINFO_KG_HPP

#include <string>
#include <vector>

#include "misinfo/graph.hpp"

namespace misinfo::kg {

struct Claim {
  int subject = 0;
  std::string predicate;
  int object = 0;
};

struct KnowledgePath {
  std::vector<int> entities;  // o_1 = subject, ..., o_n = object; simple
};

// 1 / (1 + sum of ln degree over intermediate entities).
double specificity(const KnowledgePath& path, const graph::KnowledgeGraph& kg);

// All simple paths from s to o with at most max_len edges, ordered by
// descending specificity (ties by lexicographic entity sequence) and
// truncated to max_paths.
std::vector<KnowledgePath> find_paths(const graph::KnowledgeGraph& kg, int s, int o,
                                      int max_len, int max_paths, bool directed = false);

struct PathCheck {
  double tau = 0.0;
  int n_paths = 0;
  bool unknown_entity = false;
};

// 1 if the exact triple exists; otherwise the best path specificity; 0 when
// no path connects the claim. Unresolved entities yield 0 with a warning.
PathCheck truth_value_path(const graph::KnowledgeGraph& kg, const Claim& claim, int max_len,
                           int max_paths = 10000, bool directed = false);

struct FlowPath {
  std::vector<int> entities;
  double bottleneck = 0.0;
  double spec = 0.0;
};

struct FlowResult {
  double tau = 0.0;        // sum over decomposed paths of bottleneck * specificity
  double max_flow = 0.0;
  std::vector<FlowPath> paths;
  bool unknown_entity = false;
};

struct FlowOptions {
  bool directed = false;
  double uniform_capacity = -1.0;  // < 0: degree-based capacities
};

// Min-cost max-flow from subject to object. Arc u->v has capacity
// 1/(1+ln d(v)) and cost ln d(v), except arcs into the sink (capacity 1,
// cost 0). The flow is decomposed shortest-cost-first into paths.
FlowResult knowledge_flow(const graph::KnowledgeGraph& kg, const Claim& claim,
                          const FlowOptions& options = {});

}  // namespace misinfo::kg

#endif

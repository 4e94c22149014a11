#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "graphiti/instance.hpp"
#include "graphiti/schema.hpp"

namespace graphiti {

struct EnumBounds {
    int max_nodes_per_type = 2;
    int max_edges_per_type = 2;
    int value_domain = 3;
    double time_limit_seconds = 60.0;
};

/// Streams every valid instance within the bounds, deduplicated up to
/// element-id renaming, in deterministic iterative-deepening order: profiles
/// (max nodes per type, max edges per type, value-domain size) visited
/// lexicographically, smallest first. Default keys are assigned canonically
/// (0,1,2,... per type, edges numbered in their canonical sort order);
/// non-default property values range over {0..value_domain-1}.
///
/// The callback returns false to stop; enumerate_graphs returns true iff the
/// space was exhausted.
bool enumerate_graphs(const GraphSchema& gs, const EnumBounds& b,
                      const std::function<bool(const GraphInstance&)>& fn);

/// Pull-style wrapper over enumerate_graphs.
class GraphEnumerator {
public:
    GraphEnumerator(const GraphSchema& gs, const EnumBounds& b);
    std::optional<GraphInstance> next();

private:
    std::vector<GraphInstance> buffer_;
    std::size_t pos_ = 0;
};

}  // namespace graphiti

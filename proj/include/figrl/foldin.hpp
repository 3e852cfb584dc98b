#pragma once

#include "figrl/svd.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace figrl {

struct UnseenNode {
    std::string id;
    std::vector<std::pair<NodeId, double>> links; // seen-node index, weight > 0
};

// Resolves string targets against the model, summing duplicate targets.
// Throws on unknown targets, nonpositive weights, or an empty link set.
UnseenNode make_unseen_node(const EmbeddingModel& model, std::string id,
                            std::span<const std::pair<std::string, double>> links);

// Folds one unseen node into the trained factor space without refactorizing:
// sketch its walk-matrix row with the model's projection columns, map through
// v * sigma^{-1}, scale by 1/sqrt(sum of link weights). Returns a k-vector.
Eigen::VectorXd fold_in(const EmbeddingModel& model, const UnseenNode& node);

struct RawUnseenNode {
    std::string id;
    std::vector<std::pair<std::string, double>> links;
};

struct ExtendResult {
    RowMatrix y; // (n + accepted) × k: training rows then accepted unseen rows
    std::vector<std::string> ids;
    std::size_t dropped_links = 0;    // targets that are not seen nodes
    std::vector<std::string> skipped; // unseen nodes with no surviving links
};

// Batch fold-in. Links to anything but a seen node (including other nodes of
// the batch) are dropped and counted; nodes left without links are skipped.
ExtendResult extend(const EmbeddingModel& model, std::span<const RawUnseenNode> nodes);

} // namespace figrl

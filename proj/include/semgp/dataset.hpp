#ifndef SEMGP_DATASET_HPP
#define SEMGP_DATASET_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "semgp/gp_ops.hpp"
#include "semgp/matrix.hpp"
#include "semgp/tree.hpp"

namespace semgp {

/// Binary classification data; label 1 is the minority/positive class.
struct LabeledDataset {
    Matrix features;
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return labels.size(); }
    std::size_t n_features() const { return features.cols; }
};

struct ConfusionCounts {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

    std::size_t total() const { return tp + tn + fp + fn; }
};

/// Sign classification: non-negative program output -> positive class.
inline int classify(double output) { return output >= 0.0 ? 1 : 0; }

ConfusionCounts confusion(const std::vector<double>& semantics,
                          const std::vector<std::uint8_t>& labels);

/// (TPR, TNR), both maximized; empty-class ratios score 0.
std::array<double, 2> objectives(const ConfusionCounts& c);

/// Genotype + cached training semantics + objective vector.
struct Individual {
    Tree tree;
    std::vector<double> semantics;
    std::array<double, 2> obj{0.0, 0.0}; // (tpr, tnr)
};

using IndividualPtr = std::shared_ptr<const Individual>;

/// Evaluates `tree` on the dataset and fills semantics + objectives.
IndividualPtr make_individual(Tree tree, const LabeledDataset& data, Evaluator& ev);

/// Objectives of an existing tree on another dataset (test-set re-scoring).
std::array<double, 2> score_on(const Tree& tree, const LabeledDataset& data, Evaluator& ev);

} // namespace semgp

#endif

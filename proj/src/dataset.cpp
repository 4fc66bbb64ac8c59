#include "semgp/dataset.hpp"

#include <stdexcept>

namespace semgp {

ConfusionCounts confusion(const std::vector<double>& semantics,
                          const std::vector<std::uint8_t>& labels) {
    if (semantics.size() != labels.size())
        throw std::invalid_argument("confusion: semantics/labels length mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < semantics.size(); ++i) {
        const int predicted = classify(semantics[i]);
        if (labels[i] == 1) {
            predicted == 1 ? ++c.tp : ++c.fn;
        } else {
            predicted == 0 ? ++c.tn : ++c.fp;
        }
    }
    return c;
}

std::array<double, 2> objectives(const ConfusionCounts& c) {
    const std::size_t pos = c.tp + c.fn;
    const std::size_t neg = c.tn + c.fp;
    const double tpr = pos == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(pos);
    const double tnr = neg == 0 ? 0.0 : static_cast<double>(c.tn) / static_cast<double>(neg);
    return {tpr, tnr};
}

IndividualPtr make_individual(Tree tree, const LabeledDataset& data, Evaluator& ev) {
    auto ind = std::make_shared<Individual>();
    ind->tree = std::move(tree);
    ev.evaluate(ind->tree, data.features, ind->semantics);
    ind->obj = objectives(confusion(ind->semantics, data.labels));
    return ind;
}

std::array<double, 2> score_on(const Tree& tree, const LabeledDataset& data, Evaluator& ev) {
    std::vector<double> sem;
    ev.evaluate(tree, data.features, sem);
    return objectives(confusion(sem, data.labels));
}

} // namespace semgp

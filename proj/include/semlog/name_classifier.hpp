#ifndef SEMLOG_NAME_CLASSIFIER_HPP
#define SEMLOG_NAME_CLASSIFIER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semlog/embeddings.hpp"
#include "semlog/roles.hpp"

namespace semlog {

struct ClassificationResult {
  SemanticRole role = SemanticRole::Other;
  double confidence = 0.0;
};

/// Multinomial logistic regression over name embeddings. Weight rows are
/// dimension+1 wide; the last column is the bias.
struct NameClassifier {
  std::vector<SemanticRole> classes;  // role declaration order
  std::vector<std::vector<double>> weights;
  std::uint32_t epochs = 0;
  double learning_rate = 0.0;
  double l2 = 0.0;
};

constexpr double kDefaultLearningRate = 0.1;
constexpr std::uint32_t kDefaultClassifierEpochs = 500;
constexpr double kDefaultL2 = 1e-3;

/// Mean cross-entropy plus (l2/2)·Σw² over non-bias weights.
/// `inputs` are raw feature vectors; the bias input is implicit.
double classifier_loss(const std::vector<std::vector<double>>& weights,
                       const std::vector<std::vector<double>>& inputs,
                       const std::vector<std::size_t>& targets, double l2);

std::vector<std::vector<double>> classifier_gradient(
    const std::vector<std::vector<double>>& weights,
    const std::vector<std::vector<double>>& inputs,
    const std::vector<std::size_t>& targets, double l2);

/// Full-batch gradient descent from zero weights; the convex objective
/// makes the result deterministic without any seed. Names with no
/// in-vocabulary token are skipped; the class list holds the roles that
/// remain, in declaration order.
NameClassifier train_name_classifier(
    const std::vector<std::pair<std::string, SemanticRole>>& labeled,
    const EmbeddingStore& store, double learning_rate = kDefaultLearningRate,
    std::uint32_t epochs = kDefaultClassifierEpochs, double l2 = kDefaultL2);

/// Softmax distribution over model.classes for a raw feature vector.
std::vector<double> class_distribution(const NameClassifier& model,
                                       const std::vector<double>& input);

/// Embeds the name and returns the argmax class with its confidence.
/// Names with no in-vocabulary token classify as (Other, 0.0).
ClassificationResult classify_name(const NameClassifier& model,
                                   const EmbeddingStore& store,
                                   const std::string& name);

/// Reads `name<TAB>Role` lines. Blank lines and '#' lines are skipped;
/// duplicate names and unknown roles are errors with line numbers.
std::vector<std::pair<std::string, SemanticRole>> load_labeled_names(
    const std::string& path);

void save_name_classifier(const NameClassifier& model, const std::string& path);
NameClassifier load_name_classifier(const std::string& path);

}  // namespace semlog

#endif

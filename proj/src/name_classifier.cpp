#include "semlog/name_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>

#include "binio.hpp"
#include "semlog/errors.hpp"

namespace semlog {

namespace {

// Scores one input against every weight row, bias last.
std::vector<double> raw_scores(const std::vector<std::vector<double>>& weights,
                               const std::vector<double>& input) {
  std::vector<double> scores(weights.size(), 0.0);
  for (std::size_t c = 0; c < weights.size(); ++c) {
    const auto& row = weights[c];
    double s = row.back();
    for (std::size_t j = 0; j < input.size(); ++j) s += row[j] * input[j];
    scores[c] = s;
  }
  return scores;
}

void softmax_in_place(std::vector<double>& scores) {
  double peak = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - peak);
    total += s;
  }
  for (double& s : scores) s /= total;
}

}  // namespace

double classifier_loss(const std::vector<std::vector<double>>& weights,
                       const std::vector<std::vector<double>>& inputs,
                       const std::vector<std::size_t>& targets, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto probs = raw_scores(weights, inputs[i]);
    softmax_in_place(probs);
    loss -= std::log(probs[targets[i]]);
  }
  loss /= static_cast<double>(inputs.size());
  double penalty = 0.0;
  for (const auto& row : weights)
    for (std::size_t j = 0; j + 1 < row.size(); ++j) penalty += row[j] * row[j];
  return loss + 0.5 * l2 * penalty;
}

std::vector<std::vector<double>> classifier_gradient(
    const std::vector<std::vector<double>>& weights,
    const std::vector<std::vector<double>>& inputs,
    const std::vector<std::size_t>& targets, double l2) {
  std::vector<std::vector<double>> grad(
      weights.size(), std::vector<double>(weights.front().size(), 0.0));
  const double scale = 1.0 / static_cast<double>(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto probs = raw_scores(weights, inputs[i]);
    softmax_in_place(probs);
    for (std::size_t c = 0; c < weights.size(); ++c) {
      double err = (probs[c] - (c == targets[i] ? 1.0 : 0.0)) * scale;
      auto& row = grad[c];
      for (std::size_t j = 0; j < inputs[i].size(); ++j)
        row[j] += err * inputs[i][j];
      row.back() += err;
    }
  }
  for (std::size_t c = 0; c < weights.size(); ++c)
    for (std::size_t j = 0; j + 1 < weights[c].size(); ++j)
      grad[c][j] += l2 * weights[c][j];
  return grad;
}

NameClassifier train_name_classifier(
    const std::vector<std::pair<std::string, SemanticRole>>& labeled,
    const EmbeddingStore& store, double learning_rate, std::uint32_t epochs,
    double l2) {
  std::vector<std::vector<double>> inputs;
  std::vector<SemanticRole> roles;
  for (const auto& [name, role] : labeled) {
    auto [vec, covered] = embed_name(store, name);
    if (!covered) continue;
    inputs.push_back(std::move(vec));
    roles.push_back(role);
  }

  NameClassifier model;
  for (SemanticRole r : all_roles())
    if (std::find(roles.begin(), roles.end(), r) != roles.end())
      model.classes.push_back(r);
  if (model.classes.size() < 2)
    throw InvalidArgument(
        "name classifier needs at least two distinct roles with embeddable "
        "names");

  std::vector<std::size_t> targets(roles.size());
  for (std::size_t i = 0; i < roles.size(); ++i)
    targets[i] = static_cast<std::size_t>(
        std::find(model.classes.begin(), model.classes.end(), roles[i]) -
        model.classes.begin());

  model.weights.assign(model.classes.size(),
                       std::vector<double>(store.dimension + 1, 0.0));
  model.epochs = epochs;
  model.learning_rate = learning_rate;
  model.l2 = l2;
  for (std::uint32_t e = 0; e < epochs; ++e) {
    auto grad = classifier_gradient(model.weights, inputs, targets, l2);
    for (std::size_t c = 0; c < model.weights.size(); ++c)
      for (std::size_t j = 0; j < model.weights[c].size(); ++j)
        model.weights[c][j] -= learning_rate * grad[c][j];
  }
  return model;
}

std::vector<double> class_distribution(const NameClassifier& model,
                                       const std::vector<double>& input) {
  auto probs = raw_scores(model.weights, input);
  softmax_in_place(probs);
  return probs;
}

ClassificationResult classify_name(const NameClassifier& model,
                                   const EmbeddingStore& store,
                                   const std::string& name) {
  auto [vec, covered] = embed_name(store, name);
  if (!covered) return {SemanticRole::Other, 0.0};
  auto probs = class_distribution(model, vec);
  std::size_t best = 0;
  for (std::size_t c = 1; c < probs.size(); ++c)
    if (probs[c] > probs[best]) best = c;
  return {model.classes[best], probs[best]};
}

std::vector<std::pair<std::string, SemanticRole>> load_labeled_names(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labeled names '" + path + "'");
  std::vector<std::pair<std::string, SemanticRole>> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(path + ": expected name<TAB>Role", lineno);
    std::string name = line.substr(0, tab);
    std::string role_text = line.substr(tab + 1);
    auto role = parse_role(role_text);
    if (!role)
      throw FormatError(path + ": unknown role '" + role_text + "'", lineno);
    if (!seen.insert(name).second)
      throw FormatError(path + ": duplicate name '" + name + "'", lineno);
    out.emplace_back(std::move(name), *role);
  }
  return out;
}

namespace {
constexpr char kMagic[4] = {'S', 'L', 'N', 'C'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void save_name_classifier(const NameClassifier& model,
                          const std::string& path) {
  std::string out;
  out.append(kMagic, 4);
  binio::put_u32(out, kVersion);
  binio::put_u32(out, model.epochs);
  binio::put_f64(out, model.learning_rate);
  binio::put_f64(out, model.l2);
  binio::put_u32(out, std::uint32_t(model.classes.size()));
  for (SemanticRole r : model.classes)
    binio::put_str(out, std::string(role_name(r)));
  binio::put_u64(out,
                 model.weights.empty() ? 0 : model.weights.front().size());
  for (const auto& row : model.weights)
    for (double w : row) binio::put_f64(out, w);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(out.data(), std::streamsize(out.size()));
  if (!f) throw IoError("write failure on '" + path + "'");
}

NameClassifier load_name_classifier(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string buf = ss.str();
  binio::Reader r{buf, path};

  r.need(4);
  if (buf.compare(0, 4, kMagic, 4) != 0)
    throw FormatError(path + ": not a name classifier file");
  r.pos = 4;
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(path + ": unsupported model version " +
                      std::to_string(version));

  NameClassifier model;
  model.epochs = r.u32();
  model.learning_rate = r.f64();
  model.l2 = r.f64();
  std::uint32_t nclasses = r.u32();
  for (std::uint32_t i = 0; i < nclasses; ++i) {
    std::string name = r.str();
    auto role = parse_role(name);
    if (!role) throw FormatError(path + ": unknown class '" + name + "'");
    model.classes.push_back(*role);
  }
  std::uint64_t width = r.u64();
  model.weights.assign(nclasses, std::vector<double>(std::size_t(width)));
  for (auto& row : model.weights)
    for (double& w : row) w = r.f64();
  if (r.pos != buf.size())
    throw FormatError(path + ": trailing bytes in model file");
  return model;
}

}  // namespace semlog

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semlog/errors.hpp"
#include "semlog/pipeline.hpp"

namespace {

/// One optional per config field so "flag given" is distinguishable from
/// "default"; flags beat the config file.
struct SharedFlags {
  std::optional<std::string> config;
  std::optional<double> tau;
  std::optional<std::string> policy;
  std::optional<std::uint64_t> seed_tagger;
  std::optional<std::uint64_t> seed_sample;
  std::optional<std::uint32_t> tagger_epochs;
  std::optional<double> learning_rate;
  std::optional<std::uint32_t> classifier_epochs;
  std::optional<double> l2;
  std::optional<std::size_t> max_contexts;
  std::optional<std::size_t> domain_sample;
  std::optional<std::size_t> augment_actors;
  std::optional<std::size_t> augment_statuses;
  std::optional<std::string> pos_lexicon;
  std::optional<std::string> corpus;
  std::optional<std::string> embeddings;
  std::optional<std::string> labeled_names;
  std::optional<std::string> actor_lexicon;
  std::optional<std::string> lifecycle_lexicon;
  std::optional<std::string> gazetteer;
  std::optional<std::string> tagger_model;
  std::optional<std::string> name_model;
};

void add_shared(CLI::App* sub, SharedFlags& f) {
  sub->add_option("--config", f.config, "key=value config file");
  sub->add_option("--tau", f.tau, "name-classifier confidence threshold")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--policy", f.policy,
                  "rendering of repeated roles: list or indexed")
      ->check(CLI::IsMember({"list", "indexed"}));
  sub->add_option("--seed-tagger", f.seed_tagger, "tagger training seed");
  sub->add_option("--seed-sample", f.seed_sample, "domain sampling seed");
  sub->add_option("--tagger-epochs", f.tagger_epochs,
                  "perceptron training epochs");
  sub->add_option("--learning-rate", f.learning_rate,
                  "name-classifier learning rate");
  sub->add_option("--classifier-epochs", f.classifier_epochs,
                  "name-classifier training epochs");
  sub->add_option("--l2", f.l2, "name-classifier L2 penalty");
  sub->add_option("--max-contexts", f.max_contexts,
                  "context templates used for insertion voting");
  sub->add_option("--domain-sample", f.domain_sample,
                  "values sampled per attribute domain");
  sub->add_option("--augment-actors", f.augment_actors,
                  "synthetic actor-suffixed training samples");
  sub->add_option("--augment-statuses", f.augment_statuses,
                  "synthetic status-suffixed training samples");
  sub->add_option("--pos-lexicon", f.pos_lexicon, "word<TAB>TAG lexicon");
  sub->add_option("--corpus", f.corpus, "token<TAB>LABEL training corpus");
  sub->add_option("--embeddings", f.embeddings, "word embedding text file");
  sub->add_option("--labeled-names", f.labeled_names,
                  "name<TAB>Role training file");
  sub->add_option("--actor-lexicon", f.actor_lexicon,
                  "actor phrases, one per line");
  sub->add_option("--lifecycle-lexicon", f.lifecycle_lexicon,
                  "phrase<TAB>status-role lexicon");
  sub->add_option("--gazetteer", f.gazetteer, "person names, one per line");
  sub->add_option("--tagger-model", f.tagger_model,
                  "pretrained tagger model file");
  sub->add_option("--name-model", f.name_model,
                  "pretrained name-classifier model file");
}

semlog::PipelineConfig resolve(const SharedFlags& f) {
  semlog::PipelineConfig cfg =
      f.config ? semlog::load_config(*f.config) : semlog::default_config();
  if (f.tau) cfg.tau = *f.tau;
  if (f.policy)
    cfg.policy = *f.policy == "list"
                     ? semlog::MultiValuePolicy::SingleListAttribute
                     : semlog::MultiValuePolicy::IndexedAttributes;
  if (f.seed_tagger) cfg.seed_tagger = *f.seed_tagger;
  if (f.seed_sample) cfg.seed_sample = *f.seed_sample;
  if (f.tagger_epochs) cfg.tagger_epochs = *f.tagger_epochs;
  if (f.learning_rate) cfg.learning_rate = *f.learning_rate;
  if (f.classifier_epochs) cfg.classifier_epochs = *f.classifier_epochs;
  if (f.l2) cfg.l2 = *f.l2;
  if (f.max_contexts) cfg.max_contexts = *f.max_contexts;
  if (f.domain_sample) cfg.domain_sample = *f.domain_sample;
  if (f.augment_actors) cfg.augment_actors = *f.augment_actors;
  if (f.augment_statuses) cfg.augment_statuses = *f.augment_statuses;
  if (f.pos_lexicon) cfg.pos_lexicon = *f.pos_lexicon;
  if (f.corpus) cfg.corpus = *f.corpus;
  if (f.embeddings) cfg.embeddings = *f.embeddings;
  if (f.labeled_names) cfg.labeled_names = *f.labeled_names;
  if (f.actor_lexicon) cfg.actor_lexicon = *f.actor_lexicon;
  if (f.lifecycle_lexicon) cfg.lifecycle_lexicon = *f.lifecycle_lexicon;
  if (f.gazetteer) cfg.gazetteer = *f.gazetteer;
  if (f.tagger_model) cfg.tagger_model = *f.tagger_model;
  if (f.name_model) cfg.name_model = *f.name_model;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic process information extraction for XES event logs"};
  app.require_subcommand(1);
  SharedFlags flags;

  std::string log_path, corpus_path, names_path, out_path, report_path;
  std::string mode, object;
  std::vector<std::string> values;
  double fraction = 1.0;

  CLI::App* categorize =
      app.add_subcommand("categorize", "partition a log's event attributes");
  categorize->add_option("log", log_path, "XES file")->required();
  add_shared(categorize, flags);

  CLI::App* train_tagger =
      app.add_subcommand("train-tagger", "train the sequence labeler");
  train_tagger->add_option("corpus_file", corpus_path, "token<TAB>LABEL corpus")
      ->required();
  train_tagger->add_option("--out", out_path, "model file to write")
      ->required();
  add_shared(train_tagger, flags);

  CLI::App* tag =
      app.add_subcommand("tag", "tag attribute values with semantic roles");
  tag->add_option("value", values, "attribute values")->required();
  add_shared(tag, flags);

  CLI::App* train_classifier = app.add_subcommand(
      "train-classifier", "train the attribute-name classifier");
  train_classifier->add_option("names", names_path, "name<TAB>Role file")
      ->required();
  train_classifier->add_option("--out", out_path, "model file to write")
      ->required();
  add_shared(train_classifier, flags);

  CLI::App* annotate = app.add_subcommand(
      "annotate", "extract semantic roles and write the augmented log");
  annotate->add_option("log", log_path, "XES file")->required();
  annotate->add_option("--out", out_path, "augmented XES file to write")
      ->required();
  annotate->add_option("--report", report_path,
                       "decision sidecar path (default <out>.decisions.jsonl)");
  add_shared(annotate, flags);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "leave-one-out cross-validation on a gold file");
  evaluate->add_option("gold", names_path, "sectioned gold standard file")
      ->required();
  evaluate->add_option("--out", report_path, "JSON report to write");
  add_shared(evaluate, flags);

  CLI::App* analyze =
      app.add_subcommand("analyze", "event-class refinement or object DFG");
  analyze->add_option("log", log_path, "augmented XES file")->required();
  analyze->add_option("mode", mode, "refine or dfg")
      ->required()
      ->check(CLI::IsMember({"refine", "dfg"}));
  analyze->add_option("--object", object, "business object to project on");
  analyze->add_option("--fraction", fraction,
                      "fraction of internal DFG edges to keep")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--out", out_path, "output file (DOT or text)");
  add_shared(analyze, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (categorize->parsed()) {
      semlog::cmd_categorize(log_path, resolve(flags), std::cout);
    } else if (train_tagger->parsed()) {
      semlog::cmd_train_tagger(corpus_path, out_path, resolve(flags), std::cout);
    } else if (tag->parsed()) {
      semlog::cmd_tag(values, resolve(flags), std::cout);
    } else if (train_classifier->parsed()) {
      semlog::cmd_train_classifier(names_path, out_path, resolve(flags), std::cout);
    } else if (annotate->parsed()) {
      std::string sidecar =
          report_path.empty() ? out_path + ".decisions.jsonl" : report_path;
      semlog::cmd_annotate(log_path, out_path, sidecar, resolve(flags), std::cout);
    } else if (evaluate->parsed()) {
      semlog::cmd_evaluate(names_path, report_path, resolve(flags), std::cout);
    } else if (analyze->parsed()) {
      if (mode == "refine") {
        semlog::cmd_analyze_refine(log_path, out_path, std::cout);
      } else {
        if (object.empty()) {
          std::cerr << "analyze dfg requires --object\n";
          return 1;
        }
        semlog::cmd_analyze_dfg(log_path, object, fraction, out_path, std::cout);
      }
    }
    return 0;
  } catch (const semlog::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}

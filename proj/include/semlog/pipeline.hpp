#ifndef SEMLOG_PIPELINE_HPP
#define SEMLOG_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semlog/augment.hpp"

namespace semlog {

/// Everything a pipeline run depends on. Defaults point at the bundled
/// data files; a flat key=value config file and command-line flags of the
/// same names override them, flags last.
struct PipelineConfig {
  double tau = 0.8;
  MultiValuePolicy policy = MultiValuePolicy::SingleListAttribute;
  std::uint64_t seed_tagger = 1;
  std::uint64_t seed_sample = 1;
  std::uint32_t tagger_epochs = 15;
  double learning_rate = 0.1;
  std::uint32_t classifier_epochs = 500;
  double l2 = 1e-3;
  std::size_t max_contexts = 5;
  std::size_t domain_sample = 20;
  std::size_t augment_actors = 30;
  std::size_t augment_statuses = 30;
  std::string pos_lexicon;
  std::string corpus;
  std::string embeddings;
  std::string labeled_names;
  std::string actor_lexicon;
  std::string lifecycle_lexicon;
  std::string gazetteer;
  std::string tagger_model;  // when set, loaded instead of training
  std::string name_model;    // when set, loaded instead of training
};

/// Defaults with all file paths pointing at the bundled data directory.
PipelineConfig default_config();

/// Applies one key=value pair. Keys are the CLI flag names (tau, policy,
/// seed-tagger, ...). Unknown keys and unparsable values throw
/// FormatError; relative paths are taken as given.
void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value);

/// Reads a flat key=value file ('#' comments, blank lines skipped) on top
/// of the defaults. Relative path values resolve against the config
/// file's directory.
PipelineConfig load_config(const std::string& path);

// Subcommand bodies. All of them throw Error subclasses on failure; the
// CLI maps those to exit codes. Progress and reports go to `out`.

void cmd_categorize(const std::string& log_path, const PipelineConfig& cfg,
                    std::ostream& out);

void cmd_train_tagger(const std::string& corpus_path,
                      const std::string& model_path, const PipelineConfig& cfg,
                      std::ostream& out);

void cmd_tag(const std::vector<std::string>& values, const PipelineConfig& cfg,
             std::ostream& out);

void cmd_train_classifier(const std::string& names_path,
                          const std::string& model_path,
                          const PipelineConfig& cfg, std::ostream& out);

/// Full pipeline: reads the log, partitions its attributes, tags textual
/// values, classifies the rest by name (with insertion voting for
/// noun-only domains), consolidates Boolean status groups, and writes the
/// augmented log plus a JSONL sidecar with one decision record per
/// attribute (path `out_path + ".decisions.jsonl"` unless overridden).
void cmd_annotate(const std::string& log_path, const std::string& out_path,
                  const std::string& sidecar_path, const PipelineConfig& cfg,
                  std::ostream& out);

/// Leave-one-out cross-validation over a gold file; optionally writes a
/// JSON report next to the rendered tables.
void cmd_evaluate(const std::string& gold_path, const std::string& report_path,
                  const PipelineConfig& cfg, std::ostream& out);

void cmd_analyze_refine(const std::string& log_path,
                        const std::string& out_path, std::ostream& out);

void cmd_analyze_dfg(const std::string& log_path, const std::string& object,
                     double fraction, const std::string& out_path,
                     std::ostream& out);

}  // namespace semlog

#endif

#include "semlog/tagger.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "binio.hpp"
#include "semlog/errors.hpp"
#include "semlog/rng.hpp"
#include "semlog/tokenize.hpp"
#include "semlog/value.hpp"

namespace semlog {

std::vector<std::string> extract_features(
    const std::vector<Token>& tokens, std::size_t index,
    const std::unordered_set<std::string>& actor_words,
    const std::unordered_set<std::string>& lifecycle_words) {
  const std::string& w = tokens[index].text;
  const std::string prev =
      index > 0 ? tokens[index - 1].text : std::string("<S>");
  const std::string next = index + 1 < tokens.size()
                               ? tokens[index + 1].text
                               : std::string("</S>");
  auto head = [&](std::size_t n) { return w.substr(0, std::min(n, w.size())); };
  auto tail = [&](std::size_t n) {
    return w.substr(w.size() - std::min(n, w.size()));
  };

  std::vector<std::string> f;
  f.reserve(14);
  f.push_back("w=" + w);
  f.push_back("prev=" + prev);
  f.push_back("next=" + next);
  f.push_back("pos=" + std::string(pos_name(tokens[index].pos)));
  f.push_back("prevpos=" + (index > 0
                                ? std::string(pos_name(tokens[index - 1].pos))
                                : std::string("<S>")));
  f.push_back("nextpos=" + (index + 1 < tokens.size()
                                ? std::string(pos_name(tokens[index + 1].pos))
                                : std::string("</S>")));
  f.push_back("pre2=" + head(2));
  f.push_back("pre3=" + head(3));
  f.push_back("suf2=" + tail(2));
  f.push_back("suf3=" + tail(3));
  f.push_back(index == 0 ? "bucket=first"
                         : (index + 1 == tokens.size() ? "bucket=last"
                                                       : "bucket=middle"));
  f.push_back("bi=" + prev + "_" + w);
  f.push_back(actor_words.count(w) ? "inactor=1" : "inactor=0");
  f.push_back(lifecycle_words.count(w) ? "inlife=1" : "inlife=0");
  return f;
}

std::unordered_set<std::string> phrase_word_set(
    const std::vector<std::string>& phrases) {
  std::unordered_set<std::string> words;
  for (const auto& p : phrases)
    for (auto& w : tokenize(p)) words.insert(std::move(w));
  return words;
}

std::vector<std::vector<double>> emission_scores(
    const TaggerModel& model, const std::vector<Token>& tokens) {
  std::vector<std::vector<double>> scores(
      tokens.size(), std::vector<double>(kNumBioLabels, 0.0));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& f : extract_features(tokens, i, model.actor_words,
                                          model.lifecycle_words)) {
      auto it = model.feature_weights.find(f);
      if (it == model.feature_weights.end()) continue;
      for (int l = 0; l < kNumBioLabels; ++l)
        scores[i][std::size_t(l)] += it->second[std::size_t(l)];
    }
  }
  return scores;
}

namespace {

std::vector<int> viterbi_on_emissions(
    const TaggerModel& model, const std::vector<std::vector<double>>& emit) {
  const std::size_t n = emit.size();
  const int L = kNumBioLabels;
  std::vector<std::vector<double>> best(n, std::vector<double>(L));
  std::vector<std::vector<int>> back(n, std::vector<int>(L, -1));
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(L, false));

  for (int l = 0; l < L; ++l) {
    if (!bio_transition_valid(-1, l)) continue;
    best[0][l] = model.transition(-1, l) + emit[0][std::size_t(l)];
    ok[0][l] = true;
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (int l = 0; l < L; ++l) {
      bool found = false;
      double top = 0;
      int arg = -1;
      for (int p = 0; p < L; ++p) {
        if (!ok[i - 1][p] || !bio_transition_valid(p, l)) continue;
        double s = best[i - 1][p] + model.transition(p, l);
        if (!found || s > top) {
          found = true;
          top = s;
          arg = p;
        }
      }
      if (!found) continue;
      best[i][l] = top + emit[i][std::size_t(l)];
      back[i][l] = arg;
      ok[i][l] = true;
    }
  }

  int last = -1;
  for (int l = 0; l < L; ++l) {
    if (!ok[n - 1][l]) continue;
    if (last < 0 || best[n - 1][l] > best[n - 1][last]) last = l;
  }
  std::vector<int> labels(n);
  for (std::size_t i = n; i-- > 0;) {
    labels[i] = last;
    last = back[i][last];
  }
  return labels;
}

}  // namespace

std::vector<int> viterbi_decode(const TaggerModel& model,
                                const std::vector<Token>& tokens) {
  if (tokens.empty()) return {};
  return viterbi_on_emissions(model, emission_scores(model, tokens));
}

std::vector<TaggedChunk> tag_tokens(const TaggerModel& model,
                                    const std::vector<Token>& tokens) {
  std::vector<std::string> texts;
  texts.reserve(tokens.size());
  for (const auto& t : tokens) texts.push_back(t.text);
  return labels_to_chunks(texts, viterbi_decode(model, tokens));
}

std::vector<TaggedChunk> tag_value(const TaggerModel& model,
                                   const PosTagger& pos,
                                   const std::string& value) {
  return tag_tokens(model, pos.tag(tokenize(value)));
}

bool detect_noun_only(const std::map<std::string, TaggedValue>& taggings) {
  if (taggings.empty()) return false;
  for (const auto& [value, tagged] : taggings) {
    for (const auto& chunk : tagged.chunks)
      if (chunk.role != SemanticRole::Other &&
          chunk.role != SemanticRole::ObjectName)
        return false;
    for (const auto& token : tagged.tokens)
      if (token.pos != PosTag::Noun && token.pos != PosTag::Propn)
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------

namespace {

struct Accum {
  std::vector<double> w;
  std::vector<double> u;  // sum of t*delta for averaging
  Accum() : w(kNumBioLabels, 0.0), u(kNumBioLabels, 0.0) {}
};

}  // namespace

TaggerModel train_tagger(
    const std::vector<TrainingSample>& samples, std::uint32_t epochs,
    std::uint64_t seed, const PosTagger& pos,
    const std::unordered_set<std::string>& actor_words,
    const std::unordered_set<std::string>& lifecycle_words) {
  if (samples.empty()) throw InvalidArgument("training corpus is empty");

  const int L = kNumBioLabels;
  TaggerModel model;
  model.transitions.assign(std::size_t(L + 1) * L, 0.0);
  model.actor_words = actor_words;
  model.lifecycle_words = lifecycle_words;
  model.epochs = epochs;
  model.seed = seed;
  model.corpus_fp = corpus_fingerprint(samples);
  if (epochs == 0) return model;

  std::vector<std::vector<Token>> token_cache(samples.size());
  std::vector<std::vector<std::vector<std::string>>> feature_cache(
      samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    token_cache[s] = pos.tag(samples[s].tokens);
    feature_cache[s].resize(samples[s].tokens.size());
    for (std::size_t i = 0; i < samples[s].tokens.size(); ++i)
      feature_cache[s][i] =
          extract_features(token_cache[s], i, actor_words, lifecycle_words);
  }

  std::unordered_map<std::string, Accum> feats;
  std::vector<double> trans(std::size_t(L + 1) * L, 0.0);
  std::vector<double> trans_u(std::size_t(L + 1) * L, 0.0);

  auto trans_idx = [L](int prev, int next) {
    return std::size_t(prev < 0 ? L : prev) * std::size_t(L) +
           std::size_t(next);
  };

  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 gen(seed);
  double t = 1.0;

  TaggerModel work = model;  // current (non-averaged) weights for decoding

  for (std::uint32_t epoch = 0; epoch < epochs; ++epoch) {
    seeded_shuffle(order, gen);
    for (std::size_t s : order) {
      const TrainingSample& sample = samples[s];
      // emissions under current weights
      std::vector<std::vector<double>> emit(
          sample.tokens.size(), std::vector<double>(L, 0.0));
      for (std::size_t i = 0; i < sample.tokens.size(); ++i) {
        for (const auto& f : feature_cache[s][i]) {
          auto it = feats.find(f);
          if (it == feats.end()) continue;
          for (int l = 0; l < L; ++l)
            emit[i][std::size_t(l)] += it->second.w[std::size_t(l)];
        }
      }
      work.transitions = trans;
      std::vector<int> pred = viterbi_on_emissions(work, emit);

      if (pred != sample.labels) {
        for (std::size_t i = 0; i < sample.tokens.size(); ++i) {
          int g = sample.labels[i];
          int p = pred[i];
          if (g != p) {
            for (const auto& f : feature_cache[s][i]) {
              Accum& a = feats[f];
              a.w[std::size_t(g)] += 1.0;
              a.u[std::size_t(g)] += t;
              a.w[std::size_t(p)] -= 1.0;
              a.u[std::size_t(p)] -= t;
            }
          }
          int gprev = i == 0 ? -1 : sample.labels[i - 1];
          int pprev = i == 0 ? -1 : pred[i - 1];
          if (g != p || gprev != pprev) {
            trans[trans_idx(gprev, g)] += 1.0;
            trans_u[trans_idx(gprev, g)] += t;
            trans[trans_idx(pprev, p)] -= 1.0;
            trans_u[trans_idx(pprev, p)] -= t;
          }
        }
      }
      t += 1.0;
    }
  }

  // averaged weights: mean over all T sample visits of the weight value
  // after each visit, computed from the update timestamps
  const double T = t - 1.0;
  for (auto& [f, a] : feats) {
    std::vector<double> avg(std::size_t(L), 0.0);
    bool nonzero = false;
    for (int l = 0; l < L; ++l) {
      avg[std::size_t(l)] =
          ((T + 1.0) * a.w[std::size_t(l)] - a.u[std::size_t(l)]) / T;
      if (avg[std::size_t(l)] != 0.0) nonzero = true;
    }
    if (nonzero) model.feature_weights.emplace(f, std::move(avg));
  }
  for (std::size_t i = 0; i < trans.size(); ++i)
    model.transitions[i] = ((T + 1.0) * trans[i] - trans_u[i]) / T;
  return model;
}

// ---------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'S', 'L', 'T', 'G'};
constexpr std::uint32_t kVersion = 1;

using binio::put_f64;
using binio::put_str;
using binio::put_u32;
using binio::put_u64;

template <typename Set>
std::vector<std::string> sorted(const Set& s) {
  std::vector<std::string> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

void save_tagger_model(const TaggerModel& model, const std::string& path) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, model.epochs);
  put_u64(out, model.seed);
  put_u64(out, model.corpus_fp);

  put_u32(out, kNumBioLabels);
  for (int l = 0; l < kNumBioLabels; ++l) put_str(out, bio_label_name(l));

  for (double w : model.transitions) put_f64(out, w);

  std::vector<std::string> features;
  features.reserve(model.feature_weights.size());
  for (const auto& [f, w] : model.feature_weights) features.push_back(f);
  std::sort(features.begin(), features.end());
  put_u64(out, features.size());
  for (const auto& f : features) {
    put_str(out, f);
    for (double w : model.feature_weights.at(f)) put_f64(out, w);
  }

  auto actor = sorted(model.actor_words);
  put_u64(out, actor.size());
  for (const auto& w : actor) put_str(out, w);
  auto life = sorted(model.lifecycle_words);
  put_u64(out, life.size());
  for (const auto& w : life) put_str(out, w);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(out.data(), std::streamsize(out.size()));
  if (!f) throw IoError("write failure on '" + path + "'");
}

TaggerModel load_tagger_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string buf = ss.str();
  binio::Reader r{buf, path};

  r.need(4);
  if (buf.compare(0, 4, kMagic, 4) != 0)
    throw FormatError(path + ": not a tagger model file");
  r.pos = 4;
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(path + ": unsupported model version " +
                      std::to_string(version));

  TaggerModel model;
  model.epochs = r.u32();
  model.seed = r.u64();
  model.corpus_fp = r.u64();

  std::uint32_t nlabels = r.u32();
  if (nlabels != kNumBioLabels)
    throw FormatError(path + ": model has " + std::to_string(nlabels) +
                      " labels, expected " + std::to_string(kNumBioLabels));
  for (int l = 0; l < kNumBioLabels; ++l) {
    std::string name = r.str();
    if (name != bio_label_name(l))
      throw FormatError(path + ": unexpected label '" + name + "'");
  }

  model.transitions.resize(std::size_t(kNumBioLabels + 1) * kNumBioLabels);
  for (double& w : model.transitions) w = r.f64();

  std::uint64_t nfeatures = r.u64();
  model.feature_weights.reserve(std::size_t(nfeatures));
  for (std::uint64_t i = 0; i < nfeatures; ++i) {
    std::string f = r.str();
    std::vector<double> w(kNumBioLabels);
    for (double& x : w) x = r.f64();
    model.feature_weights.emplace(std::move(f), std::move(w));
  }

  std::uint64_t nactor = r.u64();
  for (std::uint64_t i = 0; i < nactor; ++i) model.actor_words.insert(r.str());
  std::uint64_t nlife = r.u64();
  for (std::uint64_t i = 0; i < nlife; ++i)
    model.lifecycle_words.insert(r.str());

  if (r.pos != buf.size())
    throw FormatError(path + ": trailing bytes in model file");
  return model;
}

std::string dump_tagger_model(const TaggerModel& model) {
  std::ostringstream out;
  out << "tagger model\n";
  out << "epochs " << model.epochs << "\n";
  out << "seed " << model.seed << "\n";
  out << "corpus_fp " << model.corpus_fp << "\n";
  out << "labels " << kNumBioLabels;
  for (int l = 0; l < kNumBioLabels; ++l) out << " " << bio_label_name(l);
  out << "\n";

  out << "transitions\n";
  for (int p = -1; p < kNumBioLabels; ++p) {
    out << (p < 0 ? "<BOS>" : bio_label_name(p));
    for (int l = 0; l < kNumBioLabels; ++l) {
      double w = model.transition(p, l);
      if (w != 0.0) out << " " << bio_label_name(l) << ":" << render_double(w);
    }
    out << "\n";
  }

  std::vector<std::string> features;
  features.reserve(model.feature_weights.size());
  for (const auto& [f, w] : model.feature_weights) features.push_back(f);
  std::sort(features.begin(), features.end());
  out << "features " << features.size() << "\n";
  for (const auto& f : features) {
    out << f;
    const auto& w = model.feature_weights.at(f);
    for (int l = 0; l < kNumBioLabels; ++l)
      if (w[std::size_t(l)] != 0.0)
        out << " " << bio_label_name(l) << ":" << render_double(w[std::size_t(l)]);
    out << "\n";
  }

  out << "actor_words";
  for (const auto& w : sorted(model.actor_words)) out << " " << w;
  out << "\nlifecycle_words";
  for (const auto& w : sorted(model.lifecycle_words)) out << " " << w;
  out << "\n";
  return out.str();
}

}  // namespace semlog

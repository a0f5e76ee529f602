/*
 * Copyright 2026 The sentrep Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// sentrep command-line tool: training, encoding, evaluation, nearest
// neighbours and corpus utilities.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 numeric failure.

#include <sys/resource.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sentrep/sentrep.hpp"

namespace {

using namespace sentrep;
using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 13;
  std::size_t workers = 1;
  bool deterministic = false;
  std::string command_line;

  std::size_t effective_workers() const { return deterministic ? 1 : workers; }
};

struct CorpusOptions {
  std::string corpus;
  std::string out;
  std::string report;
  std::string vocab_out;
  std::size_t min_count = 1;
  std::size_t max_vocab = 200000;
  std::size_t epochs = 1;
  double lr0 = 0;  // 0 = model default
  double lr_min = 1e-4;
  std::size_t report_every = 10000;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& o) {
  cmd->add_option("--corpus", o.corpus, "Corpus file (one sentence per line, blank line = document break)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output model file")->required();
  cmd->add_option("--report", o.report, "Write the training report as JSON");
  cmd->add_option("--vocab-out", o.vocab_out, "Also write the vocabulary (token<TAB>count)");
  cmd->add_option("--min-count", o.min_count, "Minimum token frequency")->capture_default_str();
  cmd->add_option("--max-vocab", o.max_vocab, "Maximum vocabulary size")->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "Training passes")->capture_default_str();
  cmd->add_option("--lr", o.lr0, "Initial learning rate (default depends on model)");
  cmd->add_option("--lr-min", o.lr_min, "Learning-rate floor")->capture_default_str();
  cmd->add_option("--report-every", o.report_every, "Examples per loss window in the report")->capture_default_str();
}

TrainConfig base_config(const GlobalOptions& g, const CorpusOptions& o, double default_lr) {
  TrainConfig c;
  c.seed = g.seed;
  c.workers = g.effective_workers();
  c.epochs = o.epochs;
  c.lr0 = o.lr0 > 0 ? o.lr0 : default_lr;
  c.lr_min = o.lr_min;
  c.min_count = o.min_count;
  c.max_vocab = o.max_vocab;
  c.report_every = o.report_every;
  return c;
}

Vocabulary vocab_for(const CorpusOptions& o) {
  auto in = open_input(o.corpus);
  auto vocab = build_vocab(in, o.min_count, o.max_vocab);
  if (!o.vocab_out.empty()) {
    std::ofstream vo(o.vocab_out);
    vocab.write(vo);
  }
  return vocab;
}

Corpus corpus_for(const CorpusOptions& o, const Vocabulary& vocab) {
  auto in = open_input(o.corpus);
  return read_corpus(in, vocab);
}

void finish_training(const GlobalOptions& g, const CorpusOptions& o, const AnyModel& model, const json& config,
                     const TrainingReport& report, double wall) {
  RunManifest manifest;
  manifest.command_line = g.command_line;
  manifest.config = config;
  manifest.corpus_checksum = file_checksum(o.corpus);
  manifest.seed = g.seed;
  manifest.wall_seconds = wall;
  save_with_manifest(o.out, model, manifest);
  // The JSON report leaves out wall time so deterministic runs are byte-identical.
  json r = {{"model", to_string(kind_of(model))},
            {"examples", report.examples},
            {"skipped", report.skipped},
            {"window_loss", report.window_loss},
            {"first_decile_loss", report.first_decile_loss},
            {"last_decile_loss", report.last_decile_loss}};
  if (!o.report.empty()) {
    std::ofstream ro(o.report);
    if (!ro) throw DataError("cannot write " + o.report);
    ro << r.dump(2) << '\n';
  }
  std::cerr << to_string(kind_of(model)) << ": " << report.examples << " examples, " << report.skipped
            << " skipped, first-decile loss " << report.first_decile_loss << ", last-decile loss "
            << report.last_decile_loss << ", " << wall << " s\n";
}

std::string model_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::vector<Encoder> load_encoders(const std::vector<std::string>& paths) {
  std::vector<Encoder> out;
  for (const auto& p : paths) out.push_back(make_encoder(std::make_shared<const AnyModel>(load_model(p)), model_name(p)));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

std::vector<std::string> read_lines_file(const std::string& path) {
  auto in = open_input(path);
  return read_lines(in);
}

double peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return static_cast<double>(u.ru_maxrss) / 1024.0;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Train and evaluate distributed sentence representations"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOptions g;
  g.command_line = join_args(argc, argv);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", g.deterministic, "Single worker, bit-reproducible");
  app.set_config("--config", "", "key=value configuration file");

  // ------------------------------------------------------------------ train
  auto* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->require_subcommand(1);
  train_cmd->fallthrough();

  CorpusOptions fs_opt;
  std::size_t fs_dim = 100;
  bool fs_ae = false;
  int fs_neg = kAutoNegativeSamples;
  double fs_subsample = 0.0;
  auto* fs = train_cmd->add_subcommand("fastsent", "FastSent (sum of word vectors predicting adjacent sentences)");
  add_corpus_options(fs, fs_opt);
  fs->add_option("--dim", fs_dim, "Embedding dimension")->capture_default_str();
  fs->add_flag("--ae", fs_ae, "Also predict the sentence's own words");
  fs->add_option("--negative", fs_neg, "Negative samples (0 = exact softmax, -1 = auto)")->capture_default_str();
  fs->add_option("--subsample", fs_subsample, "Frequent-word subsampling threshold (0 = off)")->capture_default_str();
  fs->callback([&] {
    Stopwatch clock;
    auto cfg = base_config(g, fs_opt, 0.025);
    cfg.dim = fs_dim;
    cfg.negative_samples = fs_neg;
    cfg.subsample = fs_subsample;
    auto vocab = vocab_for(fs_opt);
    const auto corpus = corpus_for(fs_opt, vocab);
    auto model = FastSentModel<float>::create(std::move(vocab), cfg, fs_ae);
    const auto report = train(model, corpus);
    finish_training(g, fs_opt, AnyModel(std::move(model)), {{"train", cfg}, {"autoencode", fs_ae}}, report, clock.seconds());
  });

  CorpusOptions sd_opt;
  SdaeConfig sd_cfg;
  std::string frozen_embs;
  bool sd_shuffle = false;
  auto* sd = train_cmd->add_subcommand("sdae", "Sequential (denoising) autoencoder");
  add_corpus_options(sd, sd_opt);
  sd->add_option("--po", sd_cfg.noise.p_delete, "Word deletion probability")->capture_default_str();
  sd->add_option("--px", sd_cfg.noise.p_swap, "Bigram swap probability")->capture_default_str();
  sd->add_option("--dw", sd_cfg.word_dim, "Word embedding dimension")->capture_default_str();
  sd->add_option("--dh", sd_cfg.hidden_dim, "LSTM hidden dimension (sentence vector size)")->capture_default_str();
  sd->add_option("--clip", sd_cfg.clip_norm, "Global gradient-norm clip")->capture_default_str();
  sd->add_option("--frozen-embs", frozen_embs, "Fixed pre-trained embeddings (text format)")->check(CLI::ExistingFile);
  sd->add_flag("--shuffle", sd_shuffle, "Shuffle sentences (seeded) before training");
  sd->callback([&] {
    Stopwatch clock;
    sd_cfg.train = base_config(g, sd_opt, 0.1);
    sd_cfg.train.dim = sd_cfg.hidden_dim;
    auto vocab = vocab_for(sd_opt);
    auto sentences = sentence_ids(corpus_for(sd_opt, vocab));
    if (sd_shuffle) {
      Rng rng(g.seed);
      rng.shuffle(sentences.begin(), sentences.end());
    }
    std::optional<TextEmbeddings> pre;
    if (!frozen_embs.empty()) {
      auto in = open_input(frozen_embs);
      pre = read_text_embeddings(in);
    }
    auto model = Seq2SeqModel<float>::create(std::move(vocab), sd_cfg, pre ? &*pre : nullptr);
    const auto report = train(model, sentences);
    json cfg = {{"sdae", model.cfg}, {"frozen_embeddings", model.frozen_embeddings}};
    finish_training(g, sd_opt, AnyModel(std::move(model)), cfg, report, clock.seconds());
  });

  for (auto mode : {EmbeddingMode::cbow, EmbeddingMode::skipgram}) {
    struct W2vState {
      CorpusOptions opt;
      std::size_t dim = 500, window = 5;
      int negative = 5;
      double subsample = 0.0;
    };
    auto state = std::make_shared<W2vState>();
    auto* cmd = train_cmd->add_subcommand(to_string(mode), mode == EmbeddingMode::cbow
                                                           ? "CBOW word embeddings composed by addition"
                                                           : "SkipGram word embeddings composed by addition");
    add_corpus_options(cmd, state->opt);
    cmd->add_option("--dim", state->dim, "Embedding dimension")->capture_default_str();
    cmd->add_option("--window", state->window, "Context window")->capture_default_str();
    cmd->add_option("--negative", state->negative, "Negative samples")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--subsample", state->subsample, "Frequent-word subsampling threshold (0 = off)")
        ->capture_default_str();
    cmd->callback([&g, state, mode] {
      Stopwatch clock;
      auto cfg = base_config(g, state->opt, 0.025);
      cfg.dim = state->dim;
      cfg.window = state->window;
      cfg.negative_samples = state->negative;
      cfg.subsample = state->subsample;
      auto vocab = vocab_for(state->opt);
      const auto sentences = sentence_ids(corpus_for(state->opt, vocab));
      auto model = WordEmbeddingModel<float>::create(std::move(vocab), cfg, mode);
      const auto report = train(model, sentences);
      finish_training(g, state->opt, AnyModel(std::move(model)), {{"train", cfg}}, report, clock.seconds());
    });
  }

  std::string tf_corpus, tf_out;
  std::size_t tf_features = kDefaultTfidfFeatures;
  auto* tf = train_cmd->add_subcommand("tfidf", "TFIDF bag-of-words baseline");
  tf->add_option("--corpus", tf_corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  tf->add_option("--out", tf_out, "Output model file")->required();
  tf->add_option("--max-features", tf_features, "Number of feature words")->capture_default_str();
  tf->callback([&] {
    Stopwatch clock;
    auto model = tfidf_fit_file(tf_corpus, tf_features);
    RunManifest manifest;
    manifest.command_line = g.command_line;
    manifest.config = {{"max_features", tf_features}, {"n_sentences", model.n_sentences}};
    manifest.corpus_checksum = file_checksum(tf_corpus);
    manifest.seed = g.seed;
    manifest.wall_seconds = clock.seconds();
    std::cerr << "tfidf: " << model.size() << " features over " << model.n_sentences << " sentences\n";
    save_with_manifest(tf_out, AnyModel(std::move(model)), manifest);
  });

  // ----------------------------------------------------------------- encode
  std::string enc_model, enc_in, enc_out;
  auto* enc = app.add_subcommand("encode", "Encode a sentence file to binary vectors");
  enc->add_option("--model", enc_model)->required()->check(CLI::ExistingFile);
  enc->add_option("--in", enc_in, "Sentences, one per line")->required()->check(CLI::ExistingFile);
  enc->add_option("--out", enc_out, "Vector file")->required();
  enc->callback([&] {
    const auto encoder = load_encoders({enc_model}).front();
    const auto reps = encode_batch(encoder, read_lines_file(enc_in), g.effective_workers());
    std::ofstream out(enc_out, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + enc_out);
    write_vectors(out, reps);
    std::size_t empty = 0;
    for (const auto& r : reps) empty += is_zero(r);
    std::cerr << "encoded " << reps.size() << " sentences (" << empty << " with no known words)\n";
  });

  // --------------------------------------------------------------- eval-sim
  std::vector<std::string> sim_models;
  std::string sim_pairs, sim_validation, sim_out;
  auto* sim = app.add_subcommand("eval-sim", "Relatedness: cosine vs gold ratings (Spearman/Pearson)");
  sim->add_option("--model", sim_models, "Model file(s)")->required()->check(CLI::ExistingFile);
  auto* pairs_opt = sim->add_option("--pairs", sim_pairs, "Pair file s1<TAB>s2<TAB>gold")->check(CLI::ExistingFile);
  auto* val_opt =
      sim->add_option("--validation", sim_validation, "Held-out tuning pairs (only this file is read)")->check(CLI::ExistingFile);
  pairs_opt->excludes(val_opt);
  sim->add_option("--out", sim_out, "CSV report (default stdout)");
  sim->callback([&] {
    if (sim_pairs.empty() && sim_validation.empty()) throw CLI::RequiredError("--pairs or --validation");
    const bool validation = !sim_validation.empty();
    const auto& path = validation ? sim_validation : sim_pairs;
    auto in = open_input(path);
    const auto pairs = read_pairs(in);
    std::ostringstream os;
    os << "model,set,pairs,spearman,pearson\n";
    for (const auto& e : load_encoders(sim_models)) {
      const auto r = relatedness_eval(e, pairs);
      for (const auto& w : r.warnings) std::cerr << "warning: " << e.name() << ": " << w << '\n';
      os << e.name() << ',' << (validation ? "validation" : model_name(path)) << ',' << r.pairs << ','
         << fixed(r.spearman, 6) << ',' << fixed(r.pearson, 6) << '\n';
    }
    write_text(sim_out, os.str());
  });

  // --------------------------------------------------------------- eval-clf
  std::vector<std::string> clf_models;
  std::string clf_data, clf_test, clf_out;
  ClassificationOptions clf_opt;
  auto* clf = app.add_subcommand("eval-clf", "Supervised: logistic regression on frozen representations");
  clf->add_option("--model", clf_models, "Model file(s)")->required()->check(CLI::ExistingFile);
  clf->add_option("--data", clf_data, "label<TAB>sentence or label<TAB>s1<TAB>s2 (train part if --test given)")
      ->required()
      ->check(CLI::ExistingFile);
  clf->add_option("--test", clf_test, "Predefined test split")->check(CLI::ExistingFile);
  clf->add_option("--folds", clf_opt.folds, "Cross-validation folds")->capture_default_str();
  clf->add_option("--inner-folds", clf_opt.inner_folds, "Inner folds for l2 selection")->capture_default_str();
  clf->add_option("--out", clf_out, "CSV report (default stdout)");
  clf->callback([&] {
    clf_opt.seed = g.seed;
    auto in = open_input(clf_data);
    auto ds = read_classification(in);
    if (!clf_test.empty()) {
      auto tin = open_input(clf_test);
      ds = with_split(std::move(ds), read_classification(tin));
    }
    std::ostringstream os;
    os << "model,dataset,accuracy,f1\n";
    for (const auto& e : load_encoders(clf_models)) {
      const auto r = classification_eval(e, ds, clf_opt, g.effective_workers());
      os << e.name() << ',' << model_name(clf_data) << ',' << fixed(r.accuracy, 6) << ','
         << (r.f1 ? fixed(*r.f1, 6) : std::string()) << '\n';
    }
    write_text(clf_out, os.str());
  });

  // ---------------------------------------------------------------- battery
  std::vector<std::string> bat_models, bat_expect;
  std::string bat_dir, bat_out;
  auto* bat = app.add_subcommand("battery", "Run every benchmark in a directory; model x benchmark CSV");
  bat->add_option("--model", bat_models, "Model file(s)")->required()->check(CLI::ExistingFile);
  bat->add_option("--data", bat_dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  bat->add_option("--expect", bat_expect, "Benchmarks that must be present (warn if missing)")->delimiter(',');
  bat->add_option("--out", bat_out, "CSV report (default stdout)");
  bat->callback([&] {
    ClassificationOptions opt;
    opt.seed = g.seed;
    const auto report = run_battery(load_encoders(bat_models), bat_dir, bat_expect, opt, g.effective_workers());
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    write_text(bat_out, report.to_csv());
  });

  // ------------------------------------------------------------ consistency
  std::string cons_scores, cons_out;
  auto* cons = app.add_subcommand("consistency", "Cronbach's alpha over a model x benchmark score table");
  cons->add_option("--scores", cons_scores, "Score-matrix CSV")->required()->check(CLI::ExistingFile);
  cons->add_option("--out", cons_out, "CSV report (default stdout)");
  cons->callback([&] {
    auto in = open_input(cons_scores);
    const auto sm = read_score_matrix(in);
    const auto r = consistency(sm);
    std::ostringstream os;
    os << "scope,alpha\n";
    os << "supervised," << fixed(r.supervised, 4) << '\n';
    os << "unsupervised," << fixed(r.unsupervised, 4) << '\n';
    os << "combined," << fixed(r.combined, 4) << '\n';
    for (std::size_t j = 0; j < sm.benchmarks.size(); ++j)
      os << "without " << sm.benchmarks[j] << ',' << fixed(r.leave_one_out[j], 4) << '\n';
    write_text(cons_out, os.str());
  });

  // --------------------------------------------------------------------- nn
  std::string nn_model, nn_index, nn_query_text;
  std::size_t nn_k = 5;
  auto* nn = app.add_subcommand("nn", "Nearest-neighbour REPL: reads queries from standard input");
  nn->add_option("--model", nn_model)->required()->check(CLI::ExistingFile);
  nn->add_option("--index", nn_index, "Sentences to search, one per line")->required()->check(CLI::ExistingFile);
  nn->add_option("-k", nn_k, "Neighbours per query")->capture_default_str()->check(CLI::PositiveNumber);
  nn->add_option("--query", nn_query_text, "Answer one query and exit");
  nn->callback([&] {
    const auto encoder = load_encoders({nn_model}).front();
    const auto index = NnIndex::build(encoder, read_lines_file(nn_index), g.effective_workers());
    std::cerr << "indexed " << index.size() << " sentences (" << index.excluded() << " excluded: no known words)\n";
    auto answer = [&](const std::string& q) {
      try {
        for (const auto& n : nn_query(index, q, encoder, nn_k))
          std::cout << fixed(n.cosine, 4) << '\t' << n.sentence << '\n';
      } catch (const DataError& e) {
        std::cout << "error: " << e.what() << '\n';
      }
      std::cout.flush();
    };
    if (!nn_query_text.empty()) {
      answer(nn_query_text);
      return;
    }
    std::string line;
    while (true) {
      std::cerr << "> " << std::flush;
      if (!std::getline(std::cin, line)) break;
      if (is_blank(line)) continue;
      answer(line);
    }
  });

  // ---------------------------------------------------------------- corrupt
  NoiseParams noise;
  auto* cor = app.add_subcommand("corrupt", "Apply the deletion/swap noise to sentences on standard input");
  cor->add_option("--po", noise.p_delete, "Word deletion probability")->capture_default_str();
  cor->add_option("--px", noise.p_swap, "Bigram swap probability")->capture_default_str();
  cor->callback([&] {
    noise.validate();
    Rng rng(g.seed);
    std::string line;
    while (std::getline(std::cin, line)) {
      strip_cr(line);
      std::istringstream ls(line);
      std::vector<std::string> tokens{std::istream_iterator<std::string>(ls), {}};
      const auto out = corrupt(tokens, noise, rng);
      for (std::size_t i = 0; i < out.size(); ++i) std::cout << (i ? " " : "") << out[i];
      std::cout << '\n';
    }
  });

  // ----------------------------------------------------------- bench-encode
  std::string be_model, be_in, be_out;
  auto* be = app.add_subcommand("bench-encode", "Time batch encoding of a sentence file");
  be->add_option("--model", be_model)->required()->check(CLI::ExistingFile);
  be->add_option("--in", be_in)->required()->check(CLI::ExistingFile);
  be->add_option("--out", be_out, "Also write the vectors");
  be->callback([&] {
    const auto encoder = load_encoders({be_model}).front();
    const auto lines = read_lines_file(be_in);
    Stopwatch clock;
    const auto reps = encode_batch(encoder, lines, g.effective_workers());
    const double secs = clock.seconds();
    if (!be_out.empty()) {
      std::ofstream out(be_out, std::ios::binary | std::ios::trunc);
      write_vectors(out, reps);
    }
    json r = {{"vectors", reps.size()},
              {"seconds", secs},
              {"sentences_per_second", secs > 0 ? static_cast<double>(reps.size()) / secs : 0.0},
              {"peak_rss_mb", peak_rss_mb()}};
    std::cout << r.dump(2) << '\n';
  });

  // ------------------------------------------------------------ export-text
  std::string ex_model, ex_out;
  auto* ex = app.add_subcommand("export-text", "Write word vectors in the text embedding format");
  ex->add_option("--model", ex_model)->required()->check(CLI::ExistingFile);
  ex->add_option("--out", ex_out, "Output file (default stdout)");
  ex->callback([&] {
    const auto model = load_model(ex_model);
    std::ostringstream os;
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, FastSentModel<float>>) {
            write_text_embeddings(os, m.vocab, m.source);
          } else if constexpr (std::is_same_v<M, WordEmbeddingModel<float>>) {
            write_text_embeddings(os, m.vocab, m.input);
          } else if constexpr (std::is_same_v<M, Seq2SeqModel<float>>) {
            write_text_embeddings(os, m.vocab, m.params.embeddings);  // BOS row is not exported
          } else {
            throw DataError("tfidf models have no dense word vectors");
          }
        },
        model);
    write_text(ex_out, os.str());
  });

  // ------------------------------------------------------------------ vocab
  CorpusOptions vo_opt;
  auto* vo = app.add_subcommand("vocab", "Build a vocabulary file (token<TAB>count)");
  vo->add_option("--corpus", vo_opt.corpus)->required()->check(CLI::ExistingFile);
  vo->add_option("--out", vo_opt.vocab_out, "Output file")->required();
  vo->add_option("--min-count", vo_opt.min_count)->capture_default_str();
  vo->add_option("--max-vocab", vo_opt.max_vocab)->capture_default_str();
  vo->callback([&] { vocab_for(vo_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sentrep::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const sentrep::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

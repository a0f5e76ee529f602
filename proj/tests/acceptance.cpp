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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <cstdio>
#include <iostream>

#include "sentrep/sentrep.hpp"
#include "test_util.hpp"

namespace {

using namespace sentrep;
namespace fs = std::filesystem;
using Ids = std::vector<Vocabulary::Id>;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int digits = 4) { return fixed(v, digits); }

// ---------------------------------------------------------------- 1

Outcome consistency_fixture() {
  std::ifstream in(std::string(SENTREP_DATA_DIR) + "/published_scores.csv");
  const auto m = read_score_matrix(in);
  const auto r = consistency(m);
  const bool ok = std::abs(r.supervised - 0.90) <= 0.05 && std::abs(r.unsupervised - 0.93) <= 0.05 &&
                  std::abs(r.combined - 0.81) <= 0.05;
  return {ok, "supervised " + fmt(r.supervised) + " unsupervised " + fmt(r.unsupervised) + " combined " +
                  fmt(r.combined)};
}

// ---------------------------------------------------------------- 2

Outcome noise_statistics() {
  Ids sentence(20);
  for (std::size_t i = 0; i < 20; ++i) sentence[i] = static_cast<Vocabulary::Id>(i);
  const NoiseParams noise{0.1, 0.1};
  Rng rng(2024);
  const std::size_t n = 10000;
  double len_sum = 0, len_sq = 0, dev_sum = 0, dev_sq = 0;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t swaps = 0;
    const auto out = corrupt(sentence, noise, rng, &swaps);
    const double m = static_cast<double>(out.size());
    len_sum += m;
    len_sq += m * m;
    // Swaps happen independently on floor(m/2) disjoint pairs.
    const double dev = static_cast<double>(swaps) - std::floor(m / 2) * noise.p_swap;
    dev_sum += dev;
    dev_sq += dev * dev;
  }
  const double nn = static_cast<double>(n);
  const double len_mean = len_sum / nn;
  const double len_se = std::sqrt((len_sq / nn - len_mean * len_mean) / nn);
  const double dev_mean = dev_sum / nn;
  const double dev_se = std::sqrt((dev_sq / nn - dev_mean * dev_mean) / nn);
  // Binomial(20, 0.9) has sd sqrt(1.8); use the exact value for the length test.
  const double len_sigma = std::sqrt(20 * 0.1 * 0.9 / nn);
  bool identity = true;
  Rng irng(7);
  for (int t = 0; t < 1000; ++t) {
    const auto s = testutil::random_ids(irng, irng.below(30), 500);
    identity = identity && corrupt(s, NoiseParams{0, 0}, irng) == s;
  }
  const bool ok = std::abs(len_mean - 18.0) <= 3 * len_sigma && std::abs(dev_mean) <= 3 * dev_se && identity;
  return {ok, "length mean " + fmt(len_mean) + " (3 sigma " + fmt(3 * len_sigma) + ", sample se " + fmt(len_se) +
                  "), swap excess " + fmt(dev_mean) + " (3 sigma " + fmt(3 * dev_se) + "), identity " +
                  (identity ? "exact" : "broken")};
}

// ---------------------------------------------------------------- 3

double fastsent_fd(bool ae, std::uint64_t seed) {
  const std::size_t V = 20, d = 4;
  TrainConfig cfg;
  cfg.dim = d;
  auto m = FastSentModel<double>::create(testutil::numbered_vocab(V), cfg, ae);
  Rng rng(seed);
  for (auto& v : m.source.values()) v = rng.uniform(-0.5, 0.5);
  for (auto& v : m.target.values()) v = rng.uniform(-0.5, 0.5);
  const auto a = testutil::make_ids_sentence(testutil::random_ids(rng, 1 + rng.below(5), V));
  const auto b = testutil::make_ids_sentence(testutil::random_ids(rng, 1 + rng.below(5), V));
  const auto c = testutil::make_ids_sentence(testutil::random_ids(rng, 1 + rng.below(5), V));
  const SentenceTriple t{&a, &b, &c};
  FastSentGradients<double> g;
  example_loss(m, t, &g);
  auto loss = [&] { return *example_loss(m, t); };
  return std::max(
      testutil::relative_error(testutil::dense_rows(g.source, V, d), testutil::numeric_gradient(m.source.values(), loss)),
      testutil::relative_error(testutil::dense_rows(g.target, V, d), testutil::numeric_gradient(m.target.values(), loss)));
}

double sdae_fd(std::uint64_t seed) {
  const std::size_t V = 12;
  SdaeConfig cfg;
  cfg.word_dim = 4;
  cfg.hidden_dim = 6;
  auto m = Seq2SeqModel<double>::create(testutil::numbered_vocab(V), cfg);
  Rng rng(seed);
  for (auto* b : m.params.blocks())
    for (auto& v : b->values()) v = rng.uniform(-0.6, 0.6);
  const auto tgt = testutil::random_ids(rng, 2 + rng.below(3), V);
  const auto src = corrupt(tgt, NoiseParams{0.1, 0.3}, rng);
  auto grads = m.params.zeros_like();
  reconstruction_loss(m, std::span<const Vocabulary::Id>(src), std::span<const Vocabulary::Id>(tgt), &grads);
  auto loss = [&] {
    return reconstruction_loss(m, std::span<const Vocabulary::Id>(src), std::span<const Vocabulary::Id>(tgt));
  };
  double worst = 0;
  auto pb = m.params.blocks();
  auto gb = grads.blocks();
  for (std::size_t b = 0; b < pb.size(); ++b)
    worst = std::max(worst, testutil::relative_error(testutil::to_vector(gb[b]->values()),
                                                     testutil::numeric_gradient(pb[b]->values(), loss)));
  return worst;
}

double cbow_fd(std::uint64_t seed) {
  const std::size_t V = 15, d = 4;
  TrainConfig cfg;
  cfg.dim = d;
  auto m = WordEmbeddingModel<double>::create(testutil::numbered_vocab(V), cfg, EmbeddingMode::cbow);
  Rng rng(seed);
  for (auto& v : m.input.values()) v = rng.uniform(-0.8, 0.8);
  for (auto& v : m.output.values()) v = rng.uniform(-0.8, 0.8);
  const auto ctx = testutil::random_ids(rng, 1 + rng.below(6), V);
  const auto center = static_cast<Vocabulary::Id>(rng.below(V));
  std::vector<std::uint32_t> neg;
  NegativeSampler(m.vocab.counts()).draw(rng, 5, center, neg);
  WordEmbeddingGradients<double> g;
  cbow_example_loss(m, std::span<const Vocabulary::Id>(ctx), center, std::span<const std::uint32_t>(neg), &g);
  auto loss = [&] {
    return cbow_example_loss(m, std::span<const Vocabulary::Id>(ctx), center, std::span<const std::uint32_t>(neg));
  };
  return std::max(
      testutil::relative_error(testutil::dense_rows(g.input, V, d), testutil::numeric_gradient(m.input.values(), loss)),
      testutil::relative_error(testutil::dense_rows(g.output, V, d), testutil::numeric_gradient(m.output.values(), loss)));
}

Outcome gradient_fidelity() {
  double fs = 0, fsae = 0, sd = 0, cb = 0;
  const std::uint64_t instances = 25;
  for (std::uint64_t s = 1; s <= instances; ++s) {
    fs = std::max(fs, fastsent_fd(false, s));
    fsae = std::max(fsae, fastsent_fd(true, s + 100));
    sd = std::max(sd, sdae_fd(s + 200));
    cb = std::max(cb, cbow_fd(s + 300));
  }
  const bool ok = std::max({fs, fsae, sd, cb}) < 1e-4;
  return {ok, std::to_string(instances) + " instances each; worst relative error fastsent " + fmt(fs * 1e9, 2) +
                  "e-9, fastsent+ae " + fmt(fsae * 1e9, 2) + "e-9, sdae " + fmt(sd * 1e9, 2) + "e-9, cbow " +
                  fmt(cb * 1e9, 2) + "e-9"};
}

// ---------------------------------------------------------------- 4

Outcome planted_structure() {
  const auto planted = testutil::planted_topics(2000, 5, 1000, 41);
  std::istringstream vin(planted.text);
  const auto vocab = build_vocab(vin, 1, 100000);
  std::istringstream cin(planted.text);
  const auto corpus = read_corpus(cin, vocab);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 13;
  auto fs = FastSentModel<float>::create(vocab, cfg, false);
  train(fs, corpus);
  std::vector<std::vector<float>> vecs;
  for (const auto& s : planted.sentences) vecs.push_back(encode(fs, s).values);
  const double margin = testutil::topic_margin(vecs, planted.topic, 2000);

  // Sentence-shuffled copy for the SDAE.
  auto ids = sentence_ids(corpus);
  Rng rng(5);
  rng.shuffle(ids.begin(), ids.end());
  SdaeConfig sc;
  sc.word_dim = 32;
  sc.hidden_dim = 32;
  sc.train.seed = 13;
  auto sd = Seq2SeqModel<float>::create(vocab, sc);
  std::string sdae_note = "sdae on shuffled sentences trained";
  bool sdae_ok = true;
  try {
    const auto rep = train(sd, ids);
    sdae_ok = rep.examples == ids.size() && sd.params.out_w.all_finite();
    sdae_note += " (" + std::to_string(rep.examples) + " examples, loss " + fmt(rep.first_decile_loss, 2) + " -> " +
                 fmt(rep.last_decile_loss, 2) + ")";
  } catch (const std::exception& e) {
    sdae_ok = false;
    sdae_note = std::string("sdae failed: ") + e.what();
  }
  return {margin >= 0.2 && sdae_ok, "fastsent topic margin " + fmt(margin) + "; " + sdae_note};
}

// ---------------------------------------------------------------- 5

Outcome sae_memorization() {
  const std::size_t V = 100;
  Rng rng(11);
  std::vector<Ids> data;
  for (int i = 0; i < 50; ++i) data.push_back(testutil::random_ids(rng, 3 + rng.below(5), V));
  SdaeConfig cfg;
  cfg.word_dim = 32;
  cfg.hidden_dim = 64;
  cfg.noise = {0, 0};
  cfg.train.epochs = 60;
  cfg.train.lr0 = 0.5;
  cfg.train.seed = 13;
  auto m = Seq2SeqModel<float>::create(testutil::numbered_vocab(V), cfg);
  train(m, data);
  std::size_t right = 0, total = 0;
  for (const auto& s : data) {
    const auto out = greedy_decode(m, std::span<const Vocabulary::Id>(s), s.size() + 5);
    for (std::size_t i = 0; i < s.size(); ++i) right += i < out.size() && out[i] == s[i];
    total += s.size();
  }
  const double acc = static_cast<double>(right) / static_cast<double>(total);
  return {acc > 0.9, "token reconstruction " + fmt(100 * acc, 2) + "% over " + std::to_string(total) + " tokens"};
}

// ---------------------------------------------------------------- 6

Outcome evaluation_oracles() {
  Rng rng(99);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.below(60);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse grid so ties show up.
      x[i] = t % 3 == 0 ? static_cast<double>(rng.below(6)) : rng.uniform(-2, 2);
      y[i] = 0.5 * x[i] + rng.uniform(-1, 1);
    }
    worst = std::max(worst, std::abs(pearson(x, y) - testutil::brute_pearson(x, y)));
    worst = std::max(worst, std::abs(spearman(x, y) - testutil::brute_spearman(x, y)));
  }
  const std::size_t n = 1000, d = 10;
  Matrix<double> x(n, d);
  std::vector<std::size_t> sep(n), noise(n);
  std::vector<double> w(d);
  for (auto& v : w) v = rng.uniform(-1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * (x(i, j) = rng.uniform(-1, 1));
    sep[i] = s > 0;
    noise[i] = rng.below(2);
  }
  ClassificationOptions opt;
  opt.seed = 13;
  const double a_sep = cross_validate(x, sep, opt).accuracy;
  const double a_rand = cross_validate(x, noise, opt).accuracy;
  const double sigma = std::sqrt(0.25 / static_cast<double>(n));
  const bool ok = worst <= 1e-12 && a_sep >= 0.99 && std::abs(a_rand - 0.5) <= 3 * sigma;
  return {ok, "max correlation gap " + fixed(worst * 1e15, 2) + "e-15, separable accuracy " + fmt(a_sep) +
                  ", random-label accuracy " + fmt(a_rand) + " (0.5 +/- " + fmt(3 * sigma) + ")"};
}

// ---------------------------------------------------------------- 7

Outcome encoding_throughput() {
  const auto planted = testutil::planted_topics(20000, 5, 1000, 77, 12);
  std::istringstream vin(planted.text);
  const auto vocab = build_vocab(vin, 1, 100000);
  TrainConfig cfg;
  auto fs = std::make_shared<const AnyModel>(FastSentModel<float>::create(vocab, cfg, false));
  SdaeConfig sc;
  auto sd = std::make_shared<const AnyModel>(Seq2SeqModel<float>::create(vocab, sc));
  const auto time_it = [&](const std::shared_ptr<const AnyModel>& m) {
    const auto enc = make_encoder(m, "m");
    Stopwatch sw;
    const auto reps = encode_batch(enc, planted.sentences, 1);
    const double s = sw.seconds();
    return reps.size() == planted.sentences.size() ? s : -1.0;
  };
  const double t_fs = time_it(fs), t_sd = time_it(sd);
  const double ratio = t_sd / t_fs;
  return {t_fs > 0 && t_sd > 0 && ratio >= 4.0, std::to_string(planted.sentences.size()) + " sentences: fastsent " +
                                                    fmt(t_fs, 3) + "s, sdae " + fmt(t_sd, 3) + "s, ratio " +
                                                    fmt(ratio, 1) + "x"};
}

// ---------------------------------------------------------------- 8

int sh(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Outcome determinism() {
  const auto dir = testutil::scratch_dir("acceptance_det");
  const std::string cli = SENTREP_CLI;
  const auto planted = testutil::planted_topics(60, 5, 200, 3);
  const auto corpus = (dir / "corpus.txt").string();
  testutil::write_file(corpus, planted.text);
  std::string pairs, clf;
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    pairs += planted.sentences[rng.below(300)] + "\t" + planted.sentences[rng.below(300)] + "\t" +
             std::to_string(rng.below(5)) + "\n";
    const auto k = rng.below(300);
    clf += std::to_string(planted.topic[k]) + "\t" + planted.sentences[k] + "\n";
  }
  const auto bench = dir / "bench";
  fs::create_directories(bench);
  testutil::write_file(bench / "rel.pairs.tsv", pairs);
  testutil::write_file(bench / "topic.clf.tsv", clf);

  const std::string flags = " --deterministic --seed 13";
  const std::vector<std::pair<std::string, std::string>> trainers{
      {"fastsent", "--dim 16 --epochs 2"}, {"fastsent_ae", "--dim 16 --ae"},
      {"sdae", "--dw 8 --dh 12"},          {"cbow", "--dim 16"},
      {"skipgram", "--dim 16"},            {"tfidf", ""}};
  std::vector<std::string> mismatched;
  // Each run writes into its own directory under the same file names, since
  // model names in reports come from file stems.
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("run" + std::to_string(run));
    fs::create_directories(out);
    for (const auto& [name, opts] : trainers) {
      const std::string kind = name == "fastsent_ae" ? "fastsent" : name;
      const std::string report = kind == "tfidf" ? "" : " --report " + (out / (name + ".json")).string();
      if (sh(cli + flags + " train " + kind + " --corpus " + corpus + " " + opts + " --out " +
             (out / (name + ".srt")).string() + report + " >/dev/null 2>&1") != 0)
        mismatched.push_back("train " + name + " failed");
    }
    const std::string models = " --model " + (out / "fastsent.srt").string() + " --model " +
                               (out / "sdae.srt").string() + " --model " + (out / "tfidf.srt").string();
    const std::vector<std::string> evals{
        "eval-sim" + models + " --pairs " + (bench / "rel.pairs.tsv").string() + " --out " + (out / "sim.csv").string(),
        "eval-clf" + models + " --data " + (bench / "topic.clf.tsv").string() + " --out " + (out / "clf.csv").string(),
        "battery" + models + " --data " + bench.string() + " --out " + (out / "battery.csv").string(),
        "consistency --scores " + std::string(SENTREP_DATA_DIR) + "/published_scores.csv --out " +
            (out / "cons.csv").string()};
    for (const auto& e : evals)
      if (sh(cli + flags + " " + e + " >/dev/null 2>&1") != 0) mismatched.push_back(e.substr(0, e.find(' ')) + " failed");
  }
  std::vector<std::string> files;
  for (const auto& [name, opts] : trainers) {
    files.push_back(name + ".srt");
    if (name != "tfidf") files.push_back(name + ".json");
  }
  for (const char* e : {"sim.csv", "clf.csv", "battery.csv", "cons.csv"}) files.push_back(e);
  std::size_t compared = 0;
  for (const auto& f : files) {
    ++compared;
    const auto a = dir / "run0" / f, b = dir / "run1" / f;
    if (!fs::exists(a) || !fs::exists(b) || testutil::slurp(a) != testutil::slurp(b)) mismatched.push_back(f);
  }
  fs::remove_all(dir);
  std::string detail = std::to_string(compared) + " output pairs compared";
  for (const auto& m : mismatched) detail += "; differs: " + m;
  return {mismatched.empty(), detail};
}

// ---------------------------------------------------------------- 9

Outcome serialization() {
  TrainConfig cfg;
  cfg.dim = 6;
  cfg.seed = 3;
  const auto planted = testutil::planted_topics(10, 4, 60, 9);
  std::istringstream vin(planted.text);
  const auto vocab = build_vocab(vin, 1, 1000);
  std::istringstream cin(planted.text);
  const auto corpus = read_corpus(cin, vocab);
  std::vector<AnyModel> models;
  auto fs_m = FastSentModel<float>::create(vocab, cfg, true);
  train(fs_m, corpus);
  models.emplace_back(fs_m);
  SdaeConfig sc;
  sc.word_dim = 4;
  sc.hidden_dim = 5;
  auto sd = Seq2SeqModel<float>::create(vocab, sc);
  train(sd, sentence_ids(corpus));
  models.emplace_back(sd);
  std::vector<Ids> sents = sentence_ids(corpus);
  for (auto mode : {EmbeddingMode::cbow, EmbeddingMode::skipgram}) {
    auto w = WordEmbeddingModel<float>::create(vocab, cfg, mode);
    train(w, sents);
    models.emplace_back(w);
  }
  std::vector<std::vector<std::string>> docs;
  for (const auto& s : planted.sentences) docs.push_back(tokenize(s));
  models.emplace_back(tfidf_fit(docs));

  const auto dir = testutil::scratch_dir("acceptance_ser");
  std::size_t exact = 0, rejected = 0, checks = 0;
  for (const auto& m : models) {
    const auto path = (dir / "m.srt").string();
    save_model(path, m);
    const auto bytes = testutil::slurp(path);
    const auto back = load_model(path);
    bool same = serialize_model(back) == bytes && kind_of(back) == kind_of(m);
    const auto e1 = make_encoder(std::make_shared<const AnyModel>(m), "a");
    const auto e2 = make_encoder(std::make_shared<const AnyModel>(back), "b");
    for (std::size_t i = 0; i < 5; ++i) same = same && e1(planted.sentences[i]) == e2(planted.sentences[i]);
    exact += same;

    auto expect = [&](std::string bad, auto tag) {
      using E = decltype(tag);
      ++checks;
      try {
        deserialize_model(bad);
      } catch (const E&) {
        ++rejected;
      } catch (...) {
      }
    };
    std::string b = bytes;
    b[0] = 'X';
    expect(b, BadMagicError{});
    b = bytes;
    b[5] = static_cast<char>(b[5] + 1);
    expect(b, VersionError(0));
    expect(bytes.substr(0, bytes.size() / 2), TruncatedError{});
    expect(bytes.substr(0, bytes.size() - 1), TruncatedError{});
    b = bytes;
    b[bytes.size() - 8] = static_cast<char>(b[bytes.size() - 8] ^ 0x10);
    expect(b, ChecksumError{});
  }
  fs::remove_all(dir);
  return {exact == models.size() && rejected == checks,
          std::to_string(exact) + "/" + std::to_string(models.size()) + " kinds round-trip bit-exactly, " +
              std::to_string(rejected) + "/" + std::to_string(checks) + " corrupted files rejected with the right error"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "consistency fixture", 1, consistency_fixture},
      {2, "noise statistics", 5, noise_statistics},
      {3, "gradient fidelity", 120, gradient_fidelity},
      {4, "planted structure", 300, planted_structure},
      {5, "sae memorization", 600, sae_memorization},
      {6, "evaluation oracles", 60, evaluation_oracles},
      {7, "encoding throughput", 600, encoding_throughput},
      {8, "determinism", 600, determinism},
      {9, "serialization", 60, serialization},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Stopwatch sw;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = sw.seconds();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " AC" << c.id << " " << c.name << ": " << o.detail << " ["
              << fixed(secs, 2) << "s of " << c.budget_seconds << "s" << (in_time ? "" : ", over budget") << "]"
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

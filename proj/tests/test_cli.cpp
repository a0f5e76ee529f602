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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>

#include "sentrep/sentrep.hpp"
#include "test_util.hpp"

namespace {

using namespace sentrep;
namespace fs = std::filesystem;

// ------------------------------------------------------------ nn index

std::shared_ptr<const AnyModel> small_fastsent(const std::string& text, std::size_t dim = 8) {
  std::istringstream vin(text);
  TrainConfig cfg;
  cfg.dim = dim;
  return std::make_shared<const AnyModel>(FastSentModel<float>::create(build_vocab(vin, 1, 1000), cfg, false));
}

TEST(NnIndexTest, SelfIsNearest) {
  const auto planted = testutil::planted_topics(10, 5, 80, 2);
  const auto enc = make_encoder(small_fastsent(planted.text), "fs");
  const auto idx = NnIndex::build(enc, planted.sentences);
  EXPECT_EQ(idx.size(), planted.sentences.size());
  for (std::size_t i = 0; i < 10; ++i) {
    const auto r = nn_query(idx, planted.sentences[i * 3], enc, 3);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].sentence, planted.sentences[i * 3]);
    EXPECT_NEAR(r[0].cosine, 1.0, 1e-6);
    EXPECT_GE(r[0].cosine, r[1].cosine);
    EXPECT_GE(r[1].cosine, r[2].cosine);
  }
}

TEST(NnIndexTest, KLargerThanIndexAndErrors) {
  const std::string text = "a b\nb c\nc d\n";
  const auto enc = make_encoder(small_fastsent(text), "fs");
  const auto idx = NnIndex::build(enc, {"a b", "zzz", "c d"});
  EXPECT_EQ(idx.size(), 2u);
  EXPECT_EQ(idx.excluded(), 1u);
  const auto all = nn_query(idx, "b c", enc, 50);
  EXPECT_EQ(all.size(), 2u);
  try {
    nn_query(idx, "qqq", enc, 1);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "query not encodable");
  }
  const auto empty = NnIndex::build(enc, {"zzz"});
  try {
    nn_query(empty, "a", enc, 1);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "nn index is empty");
  }
}

TEST(NnIndexTest, PermutedQueriesAgreeForBagOfWords) {
  const auto planted = testutil::planted_topics(10, 5, 80, 3);
  const auto enc = make_encoder(small_fastsent(planted.text), "fs");
  const auto idx = NnIndex::build(enc, planted.sentences, 3);
  Rng rng(1);
  for (std::size_t i = 0; i < 10; ++i) {
    auto toks = tokenize(planted.sentences[i]);
    rng.shuffle(toks.begin(), toks.end());
    std::string perm;
    for (const auto& t : toks) perm += t + " ";
    const auto a = nn_query(idx, planted.sentences[i], enc, 5), b = nn_query(idx, perm, enc, 5);
    for (std::size_t r = 0; r < 5; ++r) {
      EXPECT_EQ(a[r].index, b[r].index);
      EXPECT_EQ(a[r].cosine, b[r].cosine);
    }
  }
}

TEST(NnIndexTest, TiesBrokenByIndexRegardlessOfBuildOrder) {
  const std::string text = "a b\nc d\n";
  const auto enc = make_encoder(small_fastsent(text), "fs");
  const std::vector<std::string> s1{"a b", "c", "b a", "a b"};
  const auto idx = NnIndex::build(enc, s1);
  const auto r = nn_query(idx, "a b", enc, 3);
  EXPECT_EQ(r[0].index, 0u);
  EXPECT_EQ(r[1].index, 2u);
  EXPECT_EQ(r[2].index, 3u);
  // Reversed build order: same neighbour set; ties still follow index order.
  const std::vector<std::string> s2(s1.rbegin(), s1.rend());
  const auto r2 = nn_query(NnIndex::build(enc, s2), "a b", enc, 3);
  EXPECT_EQ(r2[0].index, 0u);
  EXPECT_EQ(r2[1].index, 1u);
  EXPECT_EQ(r2[2].index, 3u);
}

TEST(NnIndexTest, SparseTfidfIndex) {
  const std::vector<std::vector<std::string>> docs{{"red", "apple"}, {"green", "apple"}, {"blue", "sky"}};
  const auto model = std::make_shared<const AnyModel>(tfidf_fit(docs));
  const auto enc = make_encoder(model, "tfidf");
  const auto idx = NnIndex::build(enc, {"red apple", "green apple", "blue sky"});
  const auto r = nn_query(idx, "red", enc, 1);
  EXPECT_EQ(r[0].sentence, "red apple");
}

// ------------------------------------------------------------ encoding

TEST(EncodeBatch, OrderPreservedAndBinaryLayout) {
  const auto planted = testutil::planted_topics(20, 5, 60, 4);
  const auto enc = make_encoder(small_fastsent(planted.text, 5), "fs");
  const auto serial = encode_batch(enc, planted.sentences, 1);
  EXPECT_EQ(encode_batch(enc, planted.sentences, 4), serial);
  std::stringstream io;
  write_vectors(io, serial);
  EXPECT_EQ(io.str().size(), 8 + serial.size() * 5 * 4);
  const auto back = read_dense_vectors(io);
  ASSERT_EQ(back.rows(), serial.size());
  for (std::size_t i = 0; i < back.rows(); ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(back(i, j), std::get<std::vector<float>>(serial[i])[j]);
}

// ------------------------------------------------------------ battery

void write_benchmarks(const fs::path& dir) {
  std::string pairs;
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const double g = rng.uniform(0, 1);
    pairs += "ref\tg " + std::to_string(g) + "\t" + std::to_string(g) + "\n";
  }
  testutil::write_file(dir / "toy.pairs.tsv", pairs);
  std::string clf;
  for (int i = 0; i < 40; ++i) clf += std::to_string(i % 2) + "\tref\tg 0." + std::to_string(i % 2 ? 9 : 1) + std::to_string(i) + "\n";
  testutil::write_file(dir / "para.clf.tsv", clf);
}

Encoder angle_oracle() {
  return Encoder("oracle", [](const std::string& s) -> Representation {
    if (s == "ref") return std::vector<float>{1.0f, 0.0f};
    const double t = std::acos(std::stod(s.substr(2)));
    return std::vector<float>{static_cast<float>(std::cos(t)), static_cast<float>(std::sin(t))};
  });
}

TEST(Battery, ReportLayoutAndWarnings) {
  const auto dir = testutil::scratch_dir("battery");
  write_benchmarks(dir);
  const Encoder other("other", [](const std::string& s) -> Representation {
    return std::vector<float>{1.0f, static_cast<float>(s.size())};
  });
  ClassificationOptions o;
  o.folds = 4;
  o.inner_folds = 2;
  const auto r = run_battery({angle_oracle(), other}, dir, {"toy", "SICK"}, o);
  EXPECT_EQ(r.columns, (std::vector<std::string>{"para", "toy"}));
  ASSERT_EQ(r.cells.size(), 2u);
  EXPECT_EQ(r.cells[0][1], "1.0000/1.0000");
  EXPECT_NE(r.cells[0][0].find('/'), std::string::npos);  // binary pair task reports F1 too
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("SICK"), std::string::npos);
  EXPECT_EQ(run_battery({angle_oracle(), other}, dir, {}, o).to_csv(), r.to_csv());
  EXPECT_EQ(r.to_csv().substr(0, r.to_csv().find('\n')), "model,para,toy");
  fs::remove_all(dir);
}

// --------------------------------------------------------------- cli

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string(SENTREP_CLI) + " " + args + " 2>/dev/null";
  if (!stdin_text.empty()) {
    const auto in = fs::temp_directory_path() / ("sentrep_stdin_" + std::to_string(::getpid()));
    testutil::write_file(in, stdin_text);
    cmd += " < " + in.string();
  }
  Run r{0, {}};
  FILE* p = ::popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = testutil::scratch_dir("cli");
    corpus = (dir / "corpus.txt").string();
    testutil::write_file(corpus, testutil::planted_topics(30, 5, 60, 6).text);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string at(const std::string& f) const { return (dir / f).string(); }
  fs::path dir;
  std::string corpus;
};

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("no-such-command").code, 1);
  EXPECT_EQ(run("train fastsent --corpus " + corpus).code, 1);  // --out missing
  EXPECT_EQ(run("--help").code, 0);
  testutil::write_file(at("junk.srt"), "not a model");
  EXPECT_EQ(run("encode --model " + at("junk.srt") + " --in " + corpus + " --out " + at("v")).code, 2);
  testutil::write_file(at("flat.csv"), "model,A,B\ncohort,supervised,supervised\nm1,1,1\nm2,1,1\n");
  EXPECT_EQ(run("consistency --scores " + at("flat.csv")).code, 3);
  testutil::write_file(at("empty.txt"), "\n\n");
  EXPECT_EQ(run("train tfidf --corpus " + at("empty.txt") + " --out " + at("t.srt")).code, 2);
}

TEST_F(Cli, TrainWritesModelAndManifest) {
  const auto r = run("--seed 5 train fastsent --corpus " + corpus + " --dim 6 --ae --out " + at("fs.srt") +
                     " --report " + at("fs.json") + " --vocab-out " + at("vocab.tsv"));
  ASSERT_EQ(r.code, 0);
  const auto model = load_model(at("fs.srt"));
  const auto& fs_model = std::get<FastSentModel<float>>(model);
  EXPECT_TRUE(fs_model.autoencode);
  EXPECT_EQ(fs_model.dim(), 6u);
  EXPECT_EQ(fs_model.cfg.seed, 5u);
  const auto manifest = nlohmann::json::parse(testutil::slurp(at("fs.srt.manifest.json")));
  EXPECT_EQ(manifest.at("seed"), 5);
  EXPECT_EQ(manifest.at("corpus_crc32"), file_checksum(corpus));
  EXPECT_EQ(manifest.at("version"), kVersion);
  EXPECT_NE(manifest.at("command_line").get<std::string>().find("--dim 6"), std::string::npos);
  const auto report = nlohmann::json::parse(testutil::slurp(at("fs.json")));
  EXPECT_EQ(report.at("examples"), 90);
  std::ifstream vin(at("vocab.tsv"));
  EXPECT_EQ(Vocabulary::read(vin), fs_model.vocab);
}

TEST_F(Cli, GlobalFlagsAfterSubcommandAndConfigFile) {
  ASSERT_EQ(run("train fastsent --corpus " + corpus + " --dim 4 --seed 9 --out " + at("a.srt")).code, 0);
  EXPECT_EQ(std::get<FastSentModel<float>>(load_model(at("a.srt"))).cfg.seed, 9u);
  testutil::write_file(at("run.conf"), "seed=21\n");
  ASSERT_EQ(run("--config " + at("run.conf") + " train fastsent --corpus " + corpus + " --dim 4 --out " + at("b.srt")).code, 0);
  EXPECT_EQ(std::get<FastSentModel<float>>(load_model(at("b.srt"))).cfg.seed, 21u);
}

TEST_F(Cli, EveryModelKindEncodes) {
  ASSERT_EQ(run("train sdae --corpus " + corpus + " --dw 4 --dh 6 --out " + at("sd.srt")).code, 0);
  ASSERT_EQ(run("train cbow --corpus " + corpus + " --dim 4 --out " + at("cb.srt")).code, 0);
  ASSERT_EQ(run("train skipgram --corpus " + corpus + " --dim 4 --out " + at("sg.srt")).code, 0);
  ASSERT_EQ(run("train tfidf --corpus " + corpus + " --out " + at("tf.srt")).code, 0);
  testutil::write_file(at("s.txt"), "t0w1 t0w2 f1\nnothing known\nt1w3 f2\n");
  for (const char* m : {"sd.srt", "cb.srt", "sg.srt", "tf.srt"}) {
    SCOPED_TRACE(m);
    EXPECT_TRUE(fs::exists(at(std::string(m) + ".manifest.json")));
    ASSERT_EQ(run("encode --model " + at(m) + " --in " + at("s.txt") + " --out " + at("v.bin")).code, 0);
    const auto bytes = testutil::slurp(at("v.bin"));
    ASSERT_GE(bytes.size(), 8u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 3u);  // vector count
  }
  EXPECT_EQ(std::get<Seq2SeqModel<float>>(load_model(at("sd.srt"))).hidden_dim(), 6u);
}

TEST_F(Cli, CorruptFilter) {
  const std::string text = "a b c d\ne f g h i\n";
  EXPECT_EQ(run("corrupt --po 0 --px 0", text).out, text);
  EXPECT_EQ(run("corrupt --po 0 --px 1", text).out, "b a d c\nf e h g i\n");
  const auto a = run("corrupt --po 0.3 --px 0.3 --seed 4", text), b = run("corrupt --po 0.3 --px 0.3 --seed 4", text);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("corrupt --po 2", text).code, 2);
}

TEST_F(Cli, NnOneShotAndRepl) {
  ASSERT_EQ(run("train fastsent --corpus " + corpus + " --dim 6 --out " + at("fs.srt")).code, 0);
  testutil::write_file(at("idx.txt"), "t0w1 t0w2\nt1w5 t1w6\nt0w1 t0w3\n");
  const auto one = run("nn --model " + at("fs.srt") + " --index " + at("idx.txt") + " -k 1 --query 't0w2 t0w1'");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, "1.0000\tt0w1 t0w2\n");
  const auto repl = run("nn --model " + at("fs.srt") + " --index " + at("idx.txt") + " -k 2", "t0w1 t0w2\nqqq\n");
  ASSERT_EQ(repl.code, 0);
  EXPECT_NE(repl.out.find("error: query not encodable"), std::string::npos);
  EXPECT_EQ(std::count(repl.out.begin(), repl.out.end(), '\n'), 3);
}

TEST_F(Cli, BenchEncodeCountsVectors) {
  ASSERT_EQ(run("train fastsent --corpus " + corpus + " --dim 6 --out " + at("fs.srt")).code, 0);
  std::string lines;
  for (int i = 0; i < 1000; ++i) lines += "t0w" + std::to_string(i % 20) + " f1\n";
  testutil::write_file(at("k.txt"), lines);
  const auto r = run("bench-encode --model " + at("fs.srt") + " --in " + at("k.txt") + " --out " + at("k.bin"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("vectors"), 1000);
  EXPECT_GT(j.at("peak_rss_mb").get<double>(), 0.0);
  EXPECT_EQ(testutil::slurp(at("k.bin")).size(), 8u + 1000u * 6u * 4u);
}

TEST_F(Cli, ExportTextAndFrozenEmbeddings) {
  ASSERT_EQ(run("train cbow --corpus " + corpus + " --dim 5 --out " + at("cb.srt")).code, 0);
  ASSERT_EQ(run("export-text --model " + at("cb.srt") + " --out " + at("e.txt")).code, 0);
  std::ifstream in(at("e.txt"));
  const auto emb = read_text_embeddings(in);
  EXPECT_EQ(emb.dim, 5u);
  ASSERT_EQ(run("train sdae --corpus " + corpus + " --dh 4 --frozen-embs " + at("e.txt") + " --out " + at("sd.srt")).code, 0);
  const auto sd = std::get<Seq2SeqModel<float>>(load_model(at("sd.srt")));
  EXPECT_TRUE(sd.frozen_embeddings);
  const auto cb = std::get<WordEmbeddingModel<float>>(load_model(at("cb.srt")));
  const auto id = *sd.vocab.find("f1");
  const auto cid = *cb.vocab.find("f1");
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(sd.params.embeddings(id, j), cb.input(cid, j));
  EXPECT_EQ(run("export-text --model " + at("cb.srt") + " --out " + at("x.txt")).code, 0);
  ASSERT_EQ(run("train tfidf --corpus " + corpus + " --out " + at("tf.srt")).code, 0);
  EXPECT_EQ(run("export-text --model " + at("tf.srt")).code, 2);
}

TEST_F(Cli, EvalCommands) {
  ASSERT_EQ(run("train fastsent --corpus " + corpus + " --dim 6 --out " + at("fs.srt")).code, 0);
  ASSERT_EQ(run("train tfidf --corpus " + corpus + " --out " + at("tf.srt")).code, 0);
  std::string pairs, clf;
  for (int i = 0; i < 20; ++i) {
    pairs += "t0w" + std::to_string(i) + " f1\tt" + std::to_string(i % 2) + "w" + std::to_string(i + 1) + "\t" +
             std::to_string(i % 5) + "\n";
    clf += std::to_string(i % 2) + "\tt" + std::to_string(i % 2) + "w" + std::to_string(i) + " t" +
           std::to_string(i % 2) + "w" + std::to_string(i + 3) + "\n";
  }
  testutil::write_file(at("sick.pairs.tsv"), pairs);
  testutil::write_file(at("trial.tsv"), pairs);
  testutil::write_file(at("topic.clf.tsv"), clf);
  const auto sim = run("eval-sim --model " + at("fs.srt") + " --model " + at("tf.srt") + " --pairs " + at("sick.pairs.tsv"));
  ASSERT_EQ(sim.code, 0);
  EXPECT_EQ(sim.out.substr(0, sim.out.find('\n')), "model,set,pairs,spearman,pearson");
  EXPECT_EQ(std::count(sim.out.begin(), sim.out.end(), '\n'), 3);
  const auto val = run("eval-sim --model " + at("fs.srt") + " --validation " + at("trial.tsv"));
  EXPECT_NE(val.out.find(",validation,"), std::string::npos);
  EXPECT_EQ(run("eval-sim --model " + at("fs.srt") + " --validation " + at("trial.tsv") + " --pairs " + at("trial.tsv")).code, 1);
  const auto clf_run = run("eval-clf --model " + at("fs.srt") + " --data " + at("topic.clf.tsv") + " --folds 4");
  ASSERT_EQ(clf_run.code, 0);
  EXPECT_EQ(clf_run.out.substr(0, clf_run.out.find('\n')), "model,dataset,accuracy,f1");
  const auto bat = run("battery --model " + at("fs.srt") + " --data " + dir.string() + " --expect SICK,sick");
  ASSERT_EQ(bat.code, 0);
  EXPECT_EQ(bat.out.substr(0, bat.out.find('\n')), "model,sick,topic");
  const auto cons = run("consistency --scores " + std::string(SENTREP_DATA_DIR) + "/published_scores.csv");
  ASSERT_EQ(cons.code, 0);
  EXPECT_NE(cons.out.find("combined,0.8000"), std::string::npos);
}

}  // namespace

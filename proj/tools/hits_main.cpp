// hits: topic sampling and cross-topic authorship-verification benchmark.
//
//   hits synth    --kind style|geometry --out corpus.jsonl
//   hits encode   --corpus corpus.jsonl --out embeddings.tsv
//   hits sample   --corpus corpus.jsonl --m 10 --out-dir run/
//   hits split    ...
//   hits evaluate ...
//   hits report   ...
//   hits run      (all stages)
//
// Exit codes: 0 ok, 1 usage/config, 2 data integrity, 3 computation.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hits/error.hpp"
#include "hits/pipeline.hpp"
#include "hits/synthetic.hpp"

namespace {

using hits::RunConfig;

struct Flags {
  RunConfig run;
  std::string embeddings;
  std::string method = "both";
  std::vector<std::string> models = {"char-ngram", "ppm", "topic-fit"};
  std::size_t max_pairs_per_author = 10;
  bool no_cross_topic = false;
  bool no_shortcut = false;
  std::string output_dir;
  std::size_t workers = 0;
  std::string out;

  std::string synth_kind = "style";
  std::uint64_t synth_seed = 0;
  std::string synth_embeddings_out;
};

void add_run_options(CLI::App* app, Flags& f, bool with_pipeline) {
  app->add_option("--corpus", f.run.corpus_path, "Corpus file (hits-corpus JSONL)");
  app->add_option("--embeddings", f.embeddings, "Document embeddings; the built-in encoder is used when omitted");
  app->add_option("--dim", f.run.encoder_dim, "Built-in encoder dimension")->capture_default_str();
  app->add_flag("--sublinear-tf", f.run.encoder.sublinear_tf, "Built-in encoder: 1 + ln(tf)");
  app->add_flag("--signed-hash", f.run.encoder.signed_hash, "Built-in encoder: random sign per hashed token");
  app->add_option("--hash-seed", f.run.encoder.hash_seed, "Built-in encoder hash seed")->capture_default_str();
  if (!with_pipeline) return;
  app->add_option("--m", f.run.topic_count, "Number of topics to sample");
  app->add_option("--method", f.method, "hits, hits-grouping, random or both")->capture_default_str();
  app->add_option("--seeds", f.run.random_seeds, "Random-sampling seeds")->delimiter(',')->capture_default_str();
  app->add_option("--k", f.run.split.fold_count, "Number of folds")->capture_default_str();
  app->add_option("--pair-seed", f.run.split.pair_seed, "Pair generation seed")->capture_default_str();
  app->add_option("--positive-fraction", f.run.split.positive_fraction, "Share of same-author pairs")
      ->capture_default_str();
  app->add_option("--max-pairs-per-author", f.max_pairs_per_author, "Positive pairs per author (0 = unlimited)")
      ->capture_default_str();
  app->add_flag("--no-cross-topic-preference", f.no_cross_topic, "Do not prefer cross-topic positive pairs");
  app->add_option("--models", f.models, "Verifiers to evaluate")->delimiter(',')->capture_default_str();
  app->add_option("--ngram-n", f.run.verifier.char_ngram.n, "Character n-gram order")->capture_default_str();
  app->add_option("--vocab-size", f.run.verifier.char_ngram.vocab_size, "Character n-gram vocabulary size")
      ->capture_default_str();
  app->add_option("--ppm-order", f.run.verifier.ppm.order, "PPM context order")->capture_default_str();
  app->add_option("--stoplist-size", f.run.verifier.topic_fit.stoplist_size, "Topic-fit masked word types")
      ->capture_default_str();
  app->add_option("--seed", f.run.seed, "Global seed for model calibration")->capture_default_str();
  app->add_option("--workers", f.workers, "Worker threads for evaluation (env HITS_WORKERS)");
  app->add_option("--out-dir", f.output_dir, "Output directory (env HITS_OUTPUT_DIR)");
  app->add_flag("--no-shortcut", f.no_shortcut, "Skip the topic shortcut test in reports");
}

RunConfig finalize(Flags& f) {
  RunConfig c = f.run;
  if (!f.embeddings.empty()) c.embeddings_path = f.embeddings;
  if (f.method == "both") {
    c.include_hits = true;
  } else if (f.method == "hits" || f.method == "hits-cutting" || f.method == "hits-grouping") {
    c.include_hits = true;
    c.hits_grouping = f.method == "hits-grouping";
    c.random_seeds.clear();
  } else if (f.method == "random") {
    c.include_hits = false;
  } else {
    throw hits::ConfigError("unknown --method \"" + f.method + "\"");
  }
  c.split.max_pairs_per_author =
      f.max_pairs_per_author == 0 ? std::nullopt : std::optional<std::size_t>(f.max_pairs_per_author);
  c.split.prefer_cross_topic_positives = !f.no_cross_topic;
  c.models.clear();
  for (const auto& m : f.models) c.models.push_back(hits::parse_verifier_kind(m));
  c.shortcut_test = !f.no_shortcut;

  if (!f.output_dir.empty()) {
    c.output_dir = f.output_dir;
  } else if (const char* env = std::getenv("HITS_OUTPUT_DIR"); env && *env) {
    c.output_dir = env;
  }
  if (f.workers != 0) {
    c.workers = f.workers;
  } else if (const char* env = std::getenv("HITS_WORKERS"); env && *env) {
    try {
      c.workers = std::stoul(env);
    } catch (const std::exception&) {
      throw hits::ConfigError(std::string("HITS_WORKERS is not a number: ") + env);
    }
    if (c.workers == 0) throw hits::ConfigError("HITS_WORKERS must be >= 1");
  }
  return c;
}

int run_synth(const Flags& f) {
  if (f.out.empty()) throw hits::ConfigError("synth needs --out");
  if (f.synth_kind == "style") {
    hits::save_corpus(hits::synth_style_corpus(f.synth_seed), f.out);
  } else if (f.synth_kind == "geometry") {
    const auto g = hits::synth_geometry_corpus(f.synth_seed);
    hits::save_corpus(g.corpus, f.out);
    if (!f.synth_embeddings_out.empty()) {
      hits::io::write_file(f.synth_embeddings_out, hits::serialize_embeddings(g.embeddings));
    }
  } else {
    throw hits::ConfigError("unknown synth kind \"" + f.synth_kind + "\" (expected style or geometry)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneity-informed topic sampling for cross-topic authorship verification"};
  app.require_subcommand(1);
  Flags f;

  auto* encode = app.add_subcommand("encode", "Write document embeddings");
  add_run_options(encode, f, false);
  encode->add_option("--out", f.out, "Embeddings output path")->required();

  std::vector<std::pair<std::string, CLI::App*>> stages;
  for (const char* name : {"sample", "split", "evaluate", "report", "run"}) {
    auto* sub = app.add_subcommand(name, std::string("Pipeline stage: ") + name);
    add_run_options(sub, f, true);
    stages.emplace_back(name, sub);
  }

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--kind", f.synth_kind, "style or geometry")->capture_default_str();
  synth->add_option("--seed", f.synth_seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", f.out, "Corpus output path")->required();
  synth->add_option("--embeddings-out", f.synth_embeddings_out, "Geometry embeddings output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(hits::ExitCode::kUsage);
  }

  try {
    if (synth->parsed()) return run_synth(f);
    RunConfig c = finalize(f);
    if (encode->parsed()) {
      if (c.corpus_path.empty()) throw hits::ConfigError("encode needs --corpus");
      hits::stage_encode(c, f.out);
      return 0;
    }
    for (const auto& [name, sub] : stages) {
      if (!sub->parsed()) continue;
      if (name == "sample") hits::stage_sample(c);
      if (name == "split") hits::stage_split(c);
      if (name == "evaluate") hits::stage_evaluate(c);
      if (name == "report") hits::stage_report(c);
      if (name == "run") {
        hits::run_all(c);
      } else {
        hits::write_manifest(c);
      }
    }
    return 0;
  } catch (const hits::Error& e) {
    std::cerr << "hits: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "hits: internal error: " << e.what() << "\n";
    return static_cast<int>(hits::ExitCode::kComputation);
  }
}

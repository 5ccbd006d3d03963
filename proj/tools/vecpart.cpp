// vecpart command line: batch pipelines over edge-list graphs. Every
// subcommand is deterministic for a fixed --seed, whatever --threads says;
// all stage randomness is fanned out from --seed by component name.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vecpart/vecpart.hpp"

namespace {

using namespace vecpart;

FeatureMatrix random_features(std::size_t n, std::uint32_t dim, std::uint64_t feature_seed) {
  FeatureMatrix f(n, dim);
  Rng rng(feature_seed);
  for (double& v : f.values) v = rng.next_double();
  return f;
}

struct EmbedSourceFlags {
  std::string features_path;
  std::uint32_t random_dim = 0;
  std::string embeddings_path;  // only wired up where precomputed input makes sense

  void add_feature_flags(CLI::App* cmd) {
    cmd->add_option("--features", features_path, "Feature matrix TSV, one row per vertex");
    cmd->add_option("--random-features", random_dim, "Generate uniform random features of this dimension");
  }

  void add_embedding_flag(CLI::App* cmd) {
    cmd->add_option("--embeddings", embeddings_path, "Precomputed embeddings TSV, one row per vertex");
  }

  // Returns features (owned) or throws a usage error.
  FeatureMatrix load_features(const Graph& graph, std::uint64_t feature_seed,
                              const std::string& cmd_name) const {
    const bool have_file = !features_path.empty();
    const bool have_random = random_dim > 0;
    if (have_file == have_random) {
      throw std::runtime_error(cmd_name + ": exactly one of --features / --random-features is required");
    }
    if (have_file) return load_matrix_tsv(features_path, graph.n);
    return random_features(graph.n, random_dim, feature_seed);
  }

  // Fills exactly one of the two stores and points the pipeline input at it.
  PipelineInput resolve(const Graph& graph, std::uint64_t feature_seed, const std::string& cmd_name,
                        FeatureMatrix& feature_store, EmbeddingMatrix& embedding_store) const {
    PipelineInput input;
    if (!embeddings_path.empty()) {
      if (!features_path.empty() || random_dim > 0) {
        throw std::runtime_error(cmd_name + ": --embeddings excludes --features/--random-features");
      }
      embedding_store = load_embeddings(embeddings_path, graph.n);
      input.embeddings = &embedding_store;
    } else {
      feature_store = load_features(graph, feature_seed, cmd_name);
      input.features = &feature_store;
    }
    return input;
  }
};

void write_report(const Graph& graph, const PartitionAssignment& assignment, const NodeSplit& split,
                  const Ordering* ordering, const std::string& path, std::size_t threads) {
  const MetricsReport report = metrics_report(graph, assignment, split, ordering, threads);
  detail::write_file(path, to_json(report));
}

int run(int argc, char** argv) {
  CLI::App app{"vecpart: embedding-driven graph partitioning and reordering"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --threads appear after the subcommand too
  std::size_t threads = default_thread_count();
  app.add_option("--threads", threads, "Worker thread cap (results are identical for any value)")
      ->capture_default_str();

  // --- sbm ---------------------------------------------------------------
  auto* sbm_cmd = app.add_subcommand("sbm", "Generate a stochastic block model fixture");
  std::vector<std::uint32_t> blocks;
  double p_in = 0.0, p_out = 0.0;
  std::uint64_t sbm_seed = 0;
  std::string out_prefix;
  sbm_cmd->add_option("--blocks", blocks, "Comma-separated block sizes")->required()->delimiter(',');
  sbm_cmd->add_option("--p-in", p_in, "Intra-block edge probability")->required();
  sbm_cmd->add_option("--p-out", p_out, "Inter-block edge probability")->required();
  sbm_cmd->add_option("--seed", sbm_seed, "Generator seed")->capture_default_str();
  sbm_cmd->add_option("--out-prefix", out_prefix, "Writes <prefix>.edges, <prefix>.features.tsv, <prefix>.split")
      ->required();
  sbm_cmd->callback([&] {
    const SbmResult result = sbm_generate(blocks, p_in, p_out, sbm_seed);
    save_edge_list(result.graph, out_prefix + ".edges");
    save_matrix_tsv(result.features, out_prefix + ".features.tsv");
    save_split(result.split, out_prefix + ".split");
  });

  // --- embed ---------------------------------------------------------------
  auto* embed_cmd = app.add_subcommand("embed", "Compute node embeddings with an untrained encoder");
  std::string embed_graph, embed_out, embed_save_weights, embed_load_weights;
  EmbedSourceFlags embed_src;
  std::uint32_t embed_layers = 2, embed_hidden = 64;
  std::uint64_t embed_seed = 0;
  embed_cmd->add_option("--graph", embed_graph, "Edge-list file")->required();
  embed_src.add_feature_flags(embed_cmd);
  embed_cmd->add_option("--layers", embed_layers, "Message-passing layers")->capture_default_str();
  embed_cmd->add_option("--hidden", embed_hidden, "Hidden dimension")->capture_default_str();
  embed_cmd->add_option("--seed", embed_seed, "Root seed")->capture_default_str();
  embed_cmd->add_option("--out", embed_out, "Output embeddings TSV")->required();
  embed_cmd->add_option("--save-weights", embed_save_weights, "Snapshot encoder weights to this file");
  embed_cmd->add_option("--load-weights", embed_load_weights,
                        "Reuse a weight snapshot instead of initializing (inductive re-embedding)");
  embed_cmd->callback([&] {
    const Graph graph = load_edge_list(embed_graph);
    const PipelineSeeds seeds = pipeline_seeds(embed_seed);
    const FeatureMatrix features = embed_src.load_features(graph, seeds.features, "embed");
    const EncoderWeights weights =
        embed_load_weights.empty()
            ? init_weights(static_cast<std::uint32_t>(features.cols), embed_hidden, embed_layers, seeds.encoder)
            : load_weights(embed_load_weights);
    const EmbeddingMatrix emb = forward_embed(graph, features, weights, threads);
    save_matrix_tsv(emb, embed_out);
    if (!embed_save_weights.empty()) save_weights(weights, embed_save_weights);
  });

  // --- partition -----------------------------------------------------------
  auto* part_cmd = app.add_subcommand("partition", "Embed, cluster and balance into k partitions");
  std::string part_graph, part_split, part_out, part_report;
  EmbedSourceFlags part_src;
  std::uint32_t part_k = 0;
  PipelineConfig part_cfg;
  bool no_balance = false;
  std::uint64_t part_seed = 0;
  part_cmd->add_option("--graph", part_graph, "Edge-list file")->required();
  part_src.add_feature_flags(part_cmd);
  part_src.add_embedding_flag(part_cmd);
  part_cmd->add_option("--k", part_k, "Number of partitions")->required();
  part_cmd->add_option("--layers", part_cfg.encoder.num_layers, "Message-passing layers")->capture_default_str();
  part_cmd->add_option("--hidden", part_cfg.encoder.hidden_dim, "Hidden dimension")->capture_default_str();
  part_cmd->add_option("--beta-train", part_cfg.balance.beta_train, "Train imbalance factor")
      ->capture_default_str();
  part_cmd->add_option("--beta-val", part_cfg.balance.beta_val, "Val imbalance factor")->capture_default_str();
  part_cmd->add_option("--beta-rest", part_cfg.balance.beta_rest, "Rest imbalance factor")
      ->capture_default_str();
  part_cmd->add_option("--split", part_split, "Node split file (default: all rest)");
  part_cmd->add_flag("--no-balance", no_balance, "Skip the migration step");
  part_cmd->add_option("--seed", part_seed, "Root seed")->capture_default_str();
  part_cmd->add_option("--out", part_out, "Output assignment file")->required();
  part_cmd->add_option("--report", part_report, "Write a metrics JSON report here");
  part_cmd->callback([&] {
    const Graph graph = load_edge_list(part_graph);
    const PipelineSeeds seeds = pipeline_seeds(part_seed);
    const NodeSplit split = part_split.empty() ? NodeSplit::all_rest(graph.n) : load_split(part_split, graph.n);
    part_cfg.rebalance = !no_balance;
    FeatureMatrix features;
    EmbeddingMatrix embeddings;
    const PipelineInput input = part_src.resolve(graph, seeds.features, "partition", features, embeddings);
    const PartitionAssignment assignment =
        embedding_partition(graph, input, part_k, split, part_cfg, part_seed, threads);
    save_assignment(assignment, part_out);
    if (!part_report.empty()) write_report(graph, assignment, split, nullptr, part_report, threads);
  });

  // --- baseline ------------------------------------------------------------
  auto* base_cmd = app.add_subcommand("baseline", "Random or LDG streaming baseline partitioning");
  std::string base_graph, base_method = "random", base_out, base_report, base_split;
  std::uint32_t base_k = 0;
  double slack = 1.05;
  std::uint64_t base_seed = 0;
  base_cmd->add_option("--graph", base_graph, "Edge-list file")->required();
  base_cmd->add_option("--k", base_k, "Number of partitions")->required();
  base_cmd->add_option("--method", base_method, "random | ldg")->capture_default_str();
  base_cmd->add_option("--slack", slack, "LDG capacity slack")->capture_default_str();
  base_cmd->add_option("--split", base_split, "Node split file for the report (default: all rest)");
  base_cmd->add_option("--seed", base_seed, "Root seed")->capture_default_str();
  base_cmd->add_option("--out", base_out, "Output assignment file")->required();
  base_cmd->add_option("--report", base_report, "Write a metrics JSON report here");
  base_cmd->callback([&] {
    const Graph graph = load_edge_list(base_graph);
    PartitionAssignment assignment;
    if (base_method == "random") {
      assignment = random_partition(graph.n, base_k, derive_seed(base_seed, "random"));
    } else if (base_method == "ldg") {
      assignment = ldg_partition(graph, base_k, slack, derive_seed(base_seed, "ldg"));
    } else {
      throw std::runtime_error("baseline: unknown --method '" + base_method + "' (use random or ldg)");
    }
    save_assignment(assignment, base_out);
    if (!base_report.empty()) {
      const NodeSplit split =
          base_split.empty() ? NodeSplit::all_rest(graph.n) : load_split(base_split, graph.n);
      write_report(graph, assignment, split, nullptr, base_report, threads);
    }
  });

  // --- reorder ---------------------------------------------------------------
  auto* reorder_cmd = app.add_subcommand("reorder", "Relabel vertex ids so partitions are contiguous");
  std::string ro_graph, ro_assignment, ro_split, ro_out_ordering, ro_out_graph, ro_report;
  EmbedSourceFlags ro_src;
  std::uint32_t ro_k = 0;
  PipelineConfig ro_cfg;
  bool unbalanced = false;
  std::uint64_t ro_seed = 0;
  reorder_cmd->add_option("--graph", ro_graph, "Edge-list file")->required();
  reorder_cmd->add_option("--assignment", ro_assignment, "Existing assignment file to reorder by");
  ro_src.add_feature_flags(reorder_cmd);
  ro_src.add_embedding_flag(reorder_cmd);
  reorder_cmd->add_option("--k", ro_k, "Number of clusters (pipeline mode)");
  reorder_cmd->add_flag("--unbalanced", unbalanced, "Skip the balancing step (better locality)");
  reorder_cmd->add_option("--layers", ro_cfg.encoder.num_layers, "Message-passing layers")->capture_default_str();
  reorder_cmd->add_option("--hidden", ro_cfg.encoder.hidden_dim, "Hidden dimension")->capture_default_str();
  reorder_cmd->add_option("--split", ro_split, "Node split file (default: all rest)");
  reorder_cmd->add_option("--seed", ro_seed, "Root seed")->capture_default_str();
  reorder_cmd->add_option("--out-ordering", ro_out_ordering, "Output ordering file")->required();
  reorder_cmd->add_option("--out-graph", ro_out_graph, "Write the relabeled edge list here");
  reorder_cmd->add_option("--report", ro_report, "Write a metrics JSON report (includes avg_bandwidth)");
  reorder_cmd->callback([&] {
    const Graph graph = load_edge_list(ro_graph);
    const NodeSplit split = ro_split.empty() ? NodeSplit::all_rest(graph.n) : load_split(ro_split, graph.n);
    PartitionAssignment assignment;
    if (!ro_assignment.empty()) {
      assignment = load_assignment(ro_assignment, graph.n);
    } else {
      if (ro_k == 0) throw std::runtime_error("reorder: --k is required unless --assignment is given");
      const PipelineSeeds seeds = pipeline_seeds(ro_seed);
      ro_cfg.rebalance = !unbalanced;
      FeatureMatrix features;
      EmbeddingMatrix embeddings;
      const PipelineInput input = ro_src.resolve(graph, seeds.features, "reorder", features, embeddings);
      assignment = embedding_partition(graph, input, ro_k, split, ro_cfg, ro_seed, threads);
    }
    const Ordering ordering = ordering_from_partition(assignment);
    save_ordering(ordering, ro_out_ordering);
    if (!ro_out_graph.empty()) {
      const RelabeledData relabeled = apply_ordering(graph, FeatureMatrix{}, NodeSplit{}, ordering);
      save_edge_list(relabeled.graph, ro_out_graph);
    }
    if (!ro_report.empty()) write_report(graph, assignment, split, &ordering, ro_report, threads);
  });

  // --- metrics ---------------------------------------------------------------
  auto* metrics_cmd = app.add_subcommand("metrics", "Evaluate an assignment (and optional ordering)");
  std::string m_graph, m_assignment, m_split, m_ordering, m_out;
  metrics_cmd->add_option("--graph", m_graph, "Edge-list file")->required();
  metrics_cmd->add_option("--assignment", m_assignment, "Assignment file (ours or an external tool's)")
      ->required();
  metrics_cmd->add_option("--split", m_split, "Node split file (default: all rest)");
  metrics_cmd->add_option("--ordering", m_ordering, "Ordering file; adds avg_bandwidth");
  metrics_cmd->add_option("--out", m_out, "Report path (default: stdout)");
  metrics_cmd->callback([&] {
    const Graph graph = load_edge_list(m_graph);
    const PartitionAssignment assignment = load_assignment(m_assignment, graph.n);
    const NodeSplit split = m_split.empty() ? NodeSplit::all_rest(graph.n) : load_split(m_split, graph.n);
    std::optional<Ordering> ordering;
    if (!m_ordering.empty()) ordering = load_ordering(m_ordering, graph.n);
    const MetricsReport report =
        metrics_report(graph, assignment, split, ordering ? &*ordering : nullptr, threads);
    if (m_out.empty()) {
      std::cout << to_json(report);
    } else {
      detail::write_file(m_out, to_json(report));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "vecpart: " << e.what() << "\n";
    return 1;
  }
}

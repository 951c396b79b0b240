#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "s2al/complexity.hpp"
#include "s2al/engine.hpp"
#include "s2al/errors.hpp"
#include "s2al/experiments.hpp"
#include "s2al/generators.hpp"
#include "s2al/graph.hpp"
#include "s2al/ingest.hpp"
#include "s2al/io.hpp"
#include "s2al/oracle.hpp"
#include "s2al/rng.hpp"

namespace {

using namespace s2al;

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw input_error("cannot parse number: " + cell);
    }
  }
  return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> values;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      values.push_back(std::stoll(cell));
    } catch (const std::exception&) {
      throw input_error("cannot parse integer: " + cell);
    }
  }
  return values;
}

GeometricTruth parse_truth(const std::string& box_csv, double gamma) {
  if (!(gamma >= 0.0)) throw input_error("gamma must be nonnegative");
  if (gamma >= 0.5) throw infeasible_error("noise rate 0.5 leaves no signal");
  std::vector<double> values = parse_double_list(box_csv);
  if (values.empty() || values.size() % 2 != 0) {
    throw input_error("--box needs an even list: a1,b1,a2,b2,...");
  }
  GeometricTruth truth;
  for (std::size_t i = 0; i < values.size(); i += 2) {
    truth.box.emplace_back(values[i], values[i + 1]);
  }
  truth.margin = 0.5 - gamma;
  validate(truth);
  return truth;
}

std::optional<std::int64_t> parse_auto_count(const std::string& text, const char* flag) {
  if (text == "auto") return std::nullopt;
  try {
    return std::stoll(text);
  } catch (const std::exception&) {
    throw input_error(std::string(flag) + " must be a number or 'auto'");
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open " + path + " for writing");
  out << content;
}

Labeling load_total_labels(const std::string& path, int n) {
  Labeling f = read_labels_file(path, n);
  if (!f.total()) throw input_error("label file must assign every vertex: " + path);
  return f;
}

// gen ---------------------------------------------------------------------

void add_gen(CLI::App& app) {
  CLI::App* gen = app.add_subcommand("gen", "Generate a graph family instance");
  gen->require_subcommand(1);

  {
    struct Args {
      int rows = 15, cols = 15, split = -1;
      std::string out_graph, out_labels;
    };
    auto a = std::make_shared<Args>();
    CLI::App* c = gen->add_subcommand("grid", "4-neighbor grid, optional column split labels");
    c->add_option("--rows", a->rows, "grid rows")->required();
    c->add_option("--cols", a->cols, "grid columns")->required();
    c->add_option("--split", a->split, "columns left of this index are labeled +1");
    c->add_option("--out-graph", a->out_graph, "edge list output path")->required();
    c->add_option("--out-labels", a->out_labels, "label output path (needs --split)");
    c->callback([a] {
      Graph g = grid_graph(a->rows, a->cols);
      write_edge_list_file(g, a->out_graph);
      if (!a->out_labels.empty()) {
        if (a->split < 0) throw input_error("--out-labels needs --split");
        write_labels_file(half_split_labeling(a->rows, a->cols, a->split), a->out_labels);
      }
    });
  }
  {
    struct Args {
      int side = 15, core = 7;
      double dither = 0.3;
      std::uint64_t seed = 0;
      std::string out_graph, out_labels;
    };
    auto a = std::make_shared<Args>();
    CLI::App* c = gen->add_subcommand("dithered", "grid with a dithered square core labeling");
    c->add_option("--side", a->side, "grid side")->required();
    c->add_option("--core", a->core, "core square side")->required();
    c->add_option("--dither", a->dither, "ring flip probability");
    c->add_option("--seed", a->seed, "generator seed");
    c->add_option("--out-graph", a->out_graph)->required();
    c->add_option("--out-labels", a->out_labels)->required();
    c->callback([a] {
      auto [g, f] = dithered_core(a->side, a->core, a->dither, a->seed);
      write_edge_list_file(g, a->out_graph);
      write_labels_file(f, a->out_labels);
    });
  }
  {
    struct Args {
      int width = 15, dim = 2;
      double gamma = 0.25;
      std::string box, out_graph, out_labels;
    };
    auto a = std::make_shared<Args>();
    CLI::App* c = gen->add_subcommand("lattice", "w^d lattice, optional box-region labels");
    c->add_option("--width", a->width, "vertices per axis")->required();
    c->add_option("--dim", a->dim, "dimension")->required();
    c->add_option("--box", a->box, "positive region a1,b1,a2,b2,...");
    c->add_option("--gamma", a->gamma, "flip probability for the implied margin");
    c->add_option("--out-graph", a->out_graph)->required();
    c->add_option("--out-labels", a->out_labels, "cell-majority labels (needs --box)");
    c->callback([a] {
      LatticeGraph lg = lattice_graph(a->width, a->dim);
      write_edge_list_file(lg.graph, a->out_graph);
      if (!a->out_labels.empty()) {
        if (a->box.empty()) throw input_error("--out-labels needs --box");
        GeometricTruth truth = parse_truth(a->box, a->gamma);
        if (truth.dim() != a->dim) throw input_error("--box does not match --dim");
        write_labels_file(lattice_truth_labeling(lg.geometry, truth), a->out_labels);
      }
    });
  }
  {
    struct Args {
      ChainFamilySpec spec;
      std::string out_graph;
    };
    auto a = std::make_shared<Args>();
    CLI::App* c = gen->add_subcommand("chain", "blocks of hub pairs joined by disjoint paths");
    c->add_option("--paths", a->spec.paths, "paths per block")->required();
    c->add_option("--kappa", a->spec.kappa, "odd clusteredness target")->required();
    c->add_option("--blocks", a->spec.blocks, "number of blocks")->required();
    c->add_option("--n", a->spec.n, "total vertices")->required();
    c->add_option("--out-graph", a->out_graph)->required();
    c->callback([a] { write_edge_list_file(chain_family_graph(a->spec), a->out_graph); });
  }
}

// ingest ------------------------------------------------------------------

void add_ingest(CLI::App& app) {
  struct Args {
    std::string features;
    bool class_column = false;
    int knn = 0;
    double threshold = -1.0;
    bool largest = false;
    std::string out_graph, out_labels, out_ids;
  };
  auto a = std::make_shared<Args>();
  CLI::App* c = app.add_subcommand("ingest", "Build a graph from a CSV feature file");
  c->add_option("--features", a->features, "CSV path")->required();
  c->add_flag("--class-column", a->class_column, "last column is an integer class");
  auto* knn_opt = c->add_option("--knn", a->knn, "symmetrized k-nearest-neighbor graph");
  auto* thr_opt = c->add_option("--threshold", a->threshold, "distance threshold graph");
  knn_opt->excludes(thr_opt);
  c->add_flag("--largest-component", a->largest, "keep only the largest component");
  c->add_option("--out-graph", a->out_graph)->required();
  c->add_option("--out-labels", a->out_labels, "labels from the class column");
  c->add_option("--out-ids", a->out_ids, "original row index per vertex, one per line");
  c->callback([a, knn_opt, thr_opt] {
    if (knn_opt->count() == 0 && thr_opt->count() == 0) {
      throw input_error("ingest needs --knn or --threshold");
    }
    FeatureMatrix fm = read_features_csv_file(a->features, a->class_column);
    Graph g = knn_opt->count() ? knn_graph(fm, a->knn) : threshold_graph(fm, a->threshold);
    Labeling labels;
    if (!a->out_labels.empty()) {
      if (!a->class_column) throw input_error("--out-labels needs --class-column");
      labels = class_labels(fm);
    }
    std::vector<int> ids(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) ids[v] = v;
    if (a->largest) {
      ExtractedComponent ec = largest_component(g);
      if (!a->out_labels.empty()) labels = subset_labels(labels, ec.original_ids);
      g = std::move(ec.graph);
      ids = std::move(ec.original_ids);
    }
    write_edge_list_file(g, a->out_graph);
    if (!a->out_labels.empty()) write_labels_file(labels, a->out_labels);
    if (!a->out_ids.empty()) {
      std::ostringstream ss;
      for (int v : ids) ss << v << '\n';
      write_text_file(a->out_ids, ss.str());
    }
  });
}

// analyze -----------------------------------------------------------------

void add_analyze(CLI::App& app) {
  struct Args {
    std::string graph, labels, out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* c = app.add_subcommand("analyze", "Cut structure summary of a labeled graph");
  c->add_option("--graph", a->graph, "edge list path")->required();
  c->add_option("--labels", a->labels, "total label file")->required();
  c->add_option("--out", a->out, "also write the JSON here");
  c->callback([a] {
    Graph g = read_edge_list_file(a->graph);
    Labeling f = load_total_labels(a->labels, g.vertex_count());
    std::string json = summary_to_json(summarize(g, f));
    std::cout << json << '\n';
    if (!a->out.empty()) write_text_file(a->out, json + "\n");
  });
}

// run ---------------------------------------------------------------------

struct OracleArgs {
  double gamma = 0.0;
  double epsilon = 0.05;
  std::string budget = "auto";
  std::string repetitions = "auto";
  std::string algorithm = "s2";
  std::uint64_t seed = 0;
};

void add_oracle_options(CLI::App* c, OracleArgs& o) {
  c->add_option("--algorithm", o.algorithm, "s2 | random | bisect");
  c->add_option("--gamma", o.gamma, "oracle flip probability");
  c->add_option("--epsilon", o.epsilon, "failure budget for auto settings");
  c->add_option("--budget", o.budget, "logical query budget, or 'auto'");
  c->add_option("--repetitions", o.repetitions, "raw queries per vertex, or 'auto'");
  c->add_option("--seed", o.seed, "base seed");
}

void add_run(CLI::App& app) {
  struct Args {
    std::string graph, labels, out, summary;
    OracleArgs oracle;
    int boundary_known = 0;
    double holdout_fraction = 0.0;
    double holdout_max_error = 0.0;
  };
  auto a = std::make_shared<Args>();
  CLI::App* c = app.add_subcommand("run", "One engine run against a labeled instance");
  c->add_option("--graph", a->graph)->required();
  c->add_option("--labels", a->labels, "ground truth the oracle answers from")->required();
  add_oracle_options(c, a->oracle);
  auto* bk = c->add_option("--boundary-known", a->boundary_known,
                           "stop once this many boundary vertices are observed");
  auto* hf = c->add_option("--holdout-fraction", a->holdout_fraction,
                           "stop by validating on a held-out label fraction");
  c->add_option("--holdout-max-error", a->holdout_max_error,
                "holdout disagreement rate that permits stopping");
  bk->excludes(hf);
  c->add_option("--out", a->out, "write the query log here");
  c->add_option("--summary", a->summary, "also write the JSON summary here");
  c->callback([a, bk, hf] {
    Graph g = read_edge_list_file(a->graph);
    int n = g.vertex_count();
    Labeling truth = load_total_labels(a->labels, n);

    RunOptions opt;
    opt.seed = split_seed(a->oracle.seed, 0);
    opt.ground_truth = &truth;
    std::optional<std::int64_t> reps = parse_auto_count(a->oracle.repetitions, "--repetitions");
    opt.repetitions = reps ? *reps
                           : (a->oracle.gamma == 0.0
                                  ? 1
                                  : repetitions_needed(a->oracle.gamma, n, a->oracle.epsilon));

    std::optional<std::int64_t> budget = parse_auto_count(a->oracle.budget, "--budget");
    nlohmann::json summary;
    if (bk->count()) {
      opt.stop = StoppingRule::boundary_known(a->boundary_known);
      summary["budget"] = nullptr;
    } else if (hf->count()) {
      opt.stop = StoppingRule::holdout(a->holdout_fraction, a->holdout_max_error);
      summary["budget"] = nullptr;
    } else {
      int resolved;
      if (budget) {
        resolved = static_cast<int>(*budget);
      } else {
        ComplexitySummary s = summarize(g, truth);
        std::int64_t bound = budget_bound(n, s.m, s.kappa_star.value_or(1),
                                          static_cast<std::int64_t>(s.boundary_size),
                                          s.beta.value(), a->oracle.epsilon);
        resolved = static_cast<int>(std::min<std::int64_t>(bound, n));
      }
      opt.stop = StoppingRule::budget(resolved);
      summary["budget"] = resolved;
    }

    NoisyOracle oracle(truth, a->oracle.gamma, split_seed(a->oracle.seed, 1));
    Algorithm alg = parse_algorithm(a->oracle.algorithm);
    RunResult res;
    switch (alg) {
      case Algorithm::s2: res = s2_run(g, oracle, opt); break;
      case Algorithm::random: res = random_run(g, oracle, opt); break;
      case Algorithm::bisect: res = bisect_run(g, oracle, opt); break;
    }

    summary["queries_used"] = res.queries_used;
    summary["raw_queries"] = res.raw_queries;
    summary["cut_recovered"] = *res.cut_recovered;
    summary["found_cuts"] = res.found_cuts.size();
    std::string text = summary.dump(2);
    std::cout << text << '\n';
    if (!a->summary.empty()) write_text_file(a->summary, text + "\n");
    if (!a->out.empty()) {
      std::ofstream log_out(a->out);
      if (!log_out) throw input_error("cannot open " + a->out + " for writing");
      write_run_log(res.log, log_out);
    }
  });
}

// bench -------------------------------------------------------------------

void add_bench(CLI::App& app) {
  struct Args {
    std::string graph, labels, out, summary;
    OracleArgs oracle;
    int trials = 10;
  };
  auto a = std::make_shared<Args>();
  CLI::App* c = app.add_subcommand("bench", "Seeded trial sweep with boundary-coverage cost");
  c->add_option("--graph", a->graph)->required();
  c->add_option("--labels", a->labels)->required();
  add_oracle_options(c, a->oracle);
  c->add_option("--trials", a->trials, "independent trials");
  c->add_option("--out", a->out, "CSV output path")->required();
  c->add_option("--summary", a->summary, "also write the JSON summary here");
  c->callback([a] {
    Graph g = read_edge_list_file(a->graph);
    Labeling truth = load_total_labels(a->labels, g.vertex_count());
    BenchConfig config;
    config.algorithm = parse_algorithm(a->oracle.algorithm);
    config.gamma = a->oracle.gamma;
    config.epsilon = a->oracle.epsilon;
    auto budget = parse_auto_count(a->oracle.budget, "--budget");
    if (budget) config.budget = static_cast<int>(*budget);
    config.repetitions = parse_auto_count(a->oracle.repetitions, "--repetitions");
    config.trials = a->trials;
    config.base_seed = a->oracle.seed;

    BenchReport report = bench(g, truth, config);
    std::ofstream csv(a->out);
    if (!csv) throw input_error("cannot open " + a->out + " for writing");
    write_bench_csv(report, csv);
    std::string json = bench_summary_json(report);
    std::cout << json << '\n';
    if (!a->summary.empty()) write_text_file(a->summary, json + "\n");
  });
}

// nonparam ----------------------------------------------------------------

void add_nonparam(CLI::App& app) {
  struct Args {
    std::string box = "0,0.5,0,1";
    double gamma = 0.25;
    std::string budgets;
    int trials = 1;
    std::uint64_t seed = 0;
    double c1 = 0.0;
    int k = 2;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* c = app.add_subcommand(
      "nonparam", "Excess-risk curve for box regions on lattices sized to a budget");
  c->add_option("--box", a->box, "positive region a1,b1,a2,b2,...");
  c->add_option("--gamma", a->gamma, "flip probability (margin is 0.5 - gamma)");
  c->add_option("--budgets", a->budgets, "comma-separated sample budgets")->required();
  c->add_option("--trials", a->trials, "trials averaged per budget");
  c->add_option("--seed", a->seed, "base seed");
  c->add_option("--c1", a->c1, "boundary cell constant (default from the box)");
  c->add_option("--k", a->k, "component count in the budget formula");
  c->add_option("--out", a->out, "CSV output path")->required();
  c->callback([a] {
    NonparamConfig config;
    config.truth = parse_truth(a->box, a->gamma);
    config.budgets = parse_int_list(a->budgets);
    config.trials = a->trials;
    config.base_seed = a->seed;
    if (a->c1 > 0.0) config.c1 = a->c1;
    config.k = a->k;
    std::vector<RiskPoint> points = nonparam_experiment(config);
    std::ofstream csv(a->out);
    if (!csv) throw input_error("cannot open " + a->out + " for writing");
    write_risk_csv(points, csv);
  });
}

// count -------------------------------------------------------------------

void add_count(CLI::App& app) {
  CLI::App* count = app.add_subcommand("count", "Exhaustive labeling-family counts");
  count->require_subcommand(1);
  {
    struct Args {
      int r = 2, max_cut = 2;
    };
    auto a = std::make_shared<Args>();
    CLI::App* c = count->add_subcommand("grid-cuts",
                                        "two-component corner labelings of the r x r grid");
    c->add_option("--r", a->r, "grid side, at most 4")->required();
    c->add_option("--max-cut", a->max_cut, "cut size limit")->required();
    c->callback([a] { std::cout << count_grid_cuts(a->r, a->max_cut) << '\n'; });
  }
  {
    struct Args {
      int paths = 1, kappa = 3, blocks = 1, m = 1;
    };
    auto a = std::make_shared<Args>();
    CLI::App* c = count->add_subcommand("chain-family",
                                        "closed-form chain labeling count and its bound");
    c->add_option("--paths", a->paths)->required();
    c->add_option("--kappa", a->kappa)->required();
    c->add_option("--blocks", a->blocks)->required();
    c->add_option("--m", a->m, "blocks carrying cuts")->required();
    c->callback([a] {
      ChainCount cc = chain_family_count(a->paths, a->kappa, a->blocks, a->m);
      nlohmann::json j;
      j["exact"] = cc.exact;
      j["log2_exact"] = cc.log2_exact;
      j["lower_bound"] = cc.lower_bound;
      std::cout << j.dump(2) << '\n';
    });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest-shortest-path graph active learning toolkit"};
  app.require_subcommand(1);
  add_gen(app);
  add_ingest(app);
  add_analyze(app);
  add_run(app);
  add_bench(app);
  add_nonparam(app);
  add_count(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

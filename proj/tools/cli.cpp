#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "motifae/errors.hpp"
#include "motifae/graph.hpp"
#include "motifae/proximity.hpp"
#include "motifae/rng.hpp"
#include "motifae/split.hpp"

namespace motifae::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSampleStage = 20;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw UsageError(fmt::format("{}: '{}' is not a valid number", key, value));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError(fmt::format("{}: '{}' is not a boolean", key, value));
}

std::vector<std::size_t> parse_sizes(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  value = trim(value);
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(parse_number<std::size_t>(key, item));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

template <class T, class Fn>
std::string join(const std::vector<T>& items, Fn&& fn) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += fn(item);
  }
  return out;
}

std::string_view transform_name(InputTransform t) {
  switch (t) {
    case InputTransform::Saturate: return "saturate";
    case InputTransform::Binary:   return "binary";
    case InputTransform::Raw:      return "raw";
  }
  return "?";
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << contents;
}

void echo_config(const RunConfig& cfg, std::string_view command) {
  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / fmt::format("{}.config.txt", command),
             fmt::format("# motifae {}\n{}", command, cfg.to_text()));
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = {
      "input",         "out-dir",        "seed",          "motif-type",     "motif-types",
      "union-types",   "motif-map",      "max-motifs",    "hide-fraction",  "dim",
      "hidden",        "alpha",          "beta",          "gamma",          "lambda",
      "batch-size",    "learning-rate",  "iters",         "input-transform", "row-scaling",
      "ks",            "baselines",      "weak-ties",     "weak-tie-threshold", "embeddings",
      "split-dir",     "dump-instances", "dump-proximity", "dump-scores"};
  return k;
}

bool RunConfig::is_flag(std::string_view key) {
  return key == "weak-ties" || key == "dump-instances" || key == "dump-proximity" ||
         key == "dump-scores";
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const std::string value(trim(raw));
  try {
    if (key == "input") input = value;
    else if (key == "out-dir") out_dir = value;
    else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
    else if (key == "motif-type") motif_type = parse_motif_type(value);
    else if (key == "motif-types") motif_types = parse_motif_types(value);
    else if (key == "union-types") union_types = parse_motif_types(value);
    else if (key == "motif-map") {
      MotifCatalog::with_overrides(value);
      motif_map = value;
    }
    else if (key == "max-motifs") max_motifs = parse_number<std::size_t>(key, value);
    else if (key == "hide-fraction") hide_fraction = parse_number<double>(key, value);
    else if (key == "dim") train.embed_dim = parse_number<std::size_t>(key, value);
    else if (key == "hidden") train.hidden_dims = parse_sizes(key, value);
    else if (key == "alpha") train.loss.alpha = parse_number<double>(key, value);
    else if (key == "beta") train.loss.beta = parse_number<double>(key, value);
    else if (key == "gamma") train.loss.gamma = parse_number<double>(key, value);
    else if (key == "lambda") train.loss.lambda = parse_number<double>(key, value);
    else if (key == "batch-size") train.batch_size = parse_number<std::size_t>(key, value);
    else if (key == "learning-rate") train.learning_rate = parse_number<double>(key, value);
    else if (key == "iters") train.max_iters = parse_number<std::size_t>(key, value);
    else if (key == "input-transform") {
      if (value == "saturate") train.transform = InputTransform::Saturate;
      else if (value == "binary") train.transform = InputTransform::Binary;
      else if (value == "raw") train.transform = InputTransform::Raw;
      else throw UsageError(fmt::format("input-transform: unknown value '{}'", value));
    }
    else if (key == "row-scaling") {
      if (value == "none") train.scaling = RowScaling::None;
      else if (value == "row") train.scaling = RowScaling::RowSum;
      else throw UsageError(fmt::format("row-scaling: unknown value '{}'", value));
    }
    else if (key == "ks") ks = parse_sizes(key, value);
    else if (key == "baselines") baselines = parse_baselines(value);
    else if (key == "weak-ties") weak_ties = parse_bool(key, value);
    else if (key == "weak-tie-threshold") weak_tie_threshold = parse_number<std::size_t>(key, value);
    else if (key == "embeddings") embeddings = value;
    else if (key == "split-dir") split_dir = value;
    else if (key == "dump-instances") dump_instances = parse_bool(key, value);
    else if (key == "dump-proximity") dump_proximity = parse_bool(key, value);
    else if (key == "dump-scores") dump_scores = parse_bool(key, value);
    else throw UsageError(fmt::format("unknown setting '{}'", key));
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{}: {}", key, e.what()));
  }
}

std::string RunConfig::get(std::string_view key) const {
  const auto codes = [](const std::vector<MotifType>& v) {
    return join(v, [](MotifType t) { return std::string(motif_code(t)); });
  };
  const auto sizes = [](const std::vector<std::size_t>& v) {
    return join(v, [](std::size_t x) { return std::to_string(x); });
  };
  const auto boolean = [](bool b) { return std::string(b ? "true" : "false"); };
  if (key == "input") return input;
  if (key == "out-dir") return out_dir;
  if (key == "seed") return std::to_string(seed);
  if (key == "motif-type") return std::string(motif_code(motif_type));
  if (key == "motif-types") return codes(motif_types);
  if (key == "union-types") return codes(union_types);
  if (key == "motif-map") return motif_map;
  if (key == "max-motifs") return std::to_string(max_motifs);
  if (key == "hide-fraction") return fmt::format("{}", hide_fraction);
  if (key == "dim") return std::to_string(train.embed_dim);
  if (key == "hidden") return sizes(train.hidden_dims);
  if (key == "alpha") return fmt::format("{}", train.loss.alpha);
  if (key == "beta") return fmt::format("{}", train.loss.beta);
  if (key == "gamma") return fmt::format("{}", train.loss.gamma);
  if (key == "lambda") return fmt::format("{}", train.loss.lambda);
  if (key == "batch-size") return std::to_string(train.batch_size);
  if (key == "learning-rate") return fmt::format("{}", train.learning_rate);
  if (key == "iters") return std::to_string(train.max_iters);
  if (key == "input-transform") return std::string(transform_name(train.transform));
  if (key == "row-scaling") return train.scaling == RowScaling::RowSum ? "row" : "none";
  if (key == "ks") return sizes(ks);
  if (key == "baselines") {
    return join(baselines, [](Baseline b) { return std::string(baseline_name(b)); });
  }
  if (key == "weak-ties") return boolean(weak_ties);
  if (key == "weak-tie-threshold") return std::to_string(weak_tie_threshold);
  if (key == "embeddings") return embeddings;
  if (key == "split-dir") return split_dir;
  if (key == "dump-instances") return boolean(dump_instances);
  if (key == "dump-proximity") return boolean(dump_proximity);
  if (key == "dump-scores") return boolean(dump_scores);
  throw UsageError(fmt::format("unknown setting '{}'", key));
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& key : keys()) out += fmt::format("{} = {}\n", key, get(key));
  return out;
}

MotifCatalog RunConfig::catalog() const {
  return motif_map.empty() ? MotifCatalog() : MotifCatalog::with_overrides(motif_map);
}

std::string RunConfig::embeddings_path() const {
  return embeddings.empty() ? (fs::path(out_dir) / "embeddings.txt").string() : embeddings;
}

std::string RunConfig::split_path() const { return split_dir.empty() ? out_dir : split_dir; }

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw UsageError(fmt::format("config line {}: expected key = value", line_no));
      }
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open config file '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    apply_config_text(cfg, buf.str());
  } catch (const UsageError& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
}

namespace {

ParsedGraph load_graph(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  return read_edge_list_file(cfg.input);
}

std::vector<MotifInstance> select_instances(const Graph& g, const RunConfig& cfg,
                                            const MotifCatalog& catalog) {
  std::vector<MotifType> types = cfg.union_types;
  if (types.empty()) types.push_back(cfg.motif_type);
  std::vector<MotifInstance> out;
  for (MotifType t : types) {
    std::vector<MotifInstance> found =
        cfg.max_motifs > 0
            ? sample_instances(g, t, cfg.max_motifs, derive_seed(cfg.seed, kSampleStage + index_of(t)),
                               catalog)
            : collect_instances(g, t, catalog);
    if (found.empty()) {
      throw DataError(fmt::format("the training graph contains no {} instances", motif_code(t)));
    }
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::vector<MetricsReport> evaluate_run(const RunConfig& cfg, std::ostream& log) {
  const ParsedGraph parsed = load_graph(cfg);
  const EvalSplit split = read_split(cfg.split_path(), parsed.graph, parsed.report);
  if (split.positives.empty() || split.negatives.empty()) {
    throw DataError(fmt::format("split in '{}' has no positive or no negative pairs",
                                cfg.split_path()));
  }
  std::ifstream emb_in(cfg.embeddings_path());
  if (!emb_in) throw DataError(fmt::format("cannot open embeddings '{}'", cfg.embeddings_path()));
  Embeddings emb;
  try {
    emb = read_embeddings(emb_in, parsed.report);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", cfg.embeddings_path(), e.what()));
  }

  EvalOptions opts;
  const std::size_t total = split.positives.size() + split.negatives.size();
  for (std::size_t k : cfg.ks) {
    if (k >= 1 && k <= total) {
      opts.ks.push_back(k);
    } else {
      log << fmt::format("warning: precision@{} skipped, the split has {} pairs\n", k, total);
    }
  }
  opts.weak_ties = cfg.weak_ties;
  opts.weak_tie_threshold = cfg.weak_tie_threshold;
  opts.seed = cfg.seed;

  std::vector<Scorer> scorers;
  scorers.push_back(embedding_scorer(emb));
  for (Baseline b : cfg.baselines) scorers.push_back(baseline_scorer(split.train_graph, b));

  std::vector<MetricsReport> reports;
  for (const Scorer& s : scorers) {
    reports.push_back(evaluate(s, split, opts));
    if (cfg.dump_scores) {
      fs::create_directories(cfg.out_dir);
      std::string dump = "u,v,score,label\n";
      for (const auto& ex : score_pairs(s, split.positives, split.negatives)) {
        dump += fmt::format("{},{},{:.17g},{}\n", parsed.report.original_ids[ex.pair.u],
                            parsed.report.original_ids[ex.pair.v], ex.score, ex.positive ? 1 : 0);
      }
      write_file(fs::path(cfg.out_dir) / fmt::format("scores_{}.csv", s.name), dump);
    }
  }
  return reports;
}

}  // namespace

void cmd_census(const RunConfig& cfg, std::ostream& out) {
  const ParsedGraph parsed = load_graph(cfg);
  const MotifCatalog catalog = cfg.catalog();
  const Census c = census(parsed.graph, catalog);

  std::string csv = "motif_type,total_count,avg_participation\n";
  for (MotifType t : kAllMotifTypes) {
    csv += fmt::format("{},{},{:.6f}\n", motif_code(t), c.count(t), c.avg_participation(t));
  }
  echo_config(cfg, "census");
  write_file(fs::path(cfg.out_dir) / "census.csv", csv);
  if (cfg.dump_instances) {
    std::ostringstream dump;
    for (int order : {3, 4}) {
      const auto inst = enumerate_instances(parsed.graph, order, catalog);
      write_instances(dump, inst, parsed.report.original_ids);
    }
    write_file(fs::path(cfg.out_dir) / "instances.txt", dump.str());
  }
  out << csv;
}

void cmd_train(const RunConfig& cfg, std::ostream& out) {
  cfg.train.validate();
  const ParsedGraph parsed = load_graph(cfg);
  const Graph& original = parsed.graph;

  EvalSplit split;
  if (cfg.hide_fraction > 0.0) {
    split = make_split(original, cfg.hide_fraction, cfg.seed);
    if (split.shortfall > 0) {
      out << fmt::format("warning: {} edges could not be hidden without isolating a vertex\n",
                         split.shortfall);
    }
  } else {
    split.train_graph = original;
  }

  const MotifCatalog catalog = cfg.catalog();
  const std::vector<MotifInstance> instances = select_instances(split.train_graph, cfg, catalog);
  const CoOccurrence c = CoOccurrence::build(instances, original.num_vertices());

  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  const TrainResult result = train(c, instances, tc);

  echo_config(cfg, "train");
  const fs::path dir(cfg.out_dir);
  if (cfg.hide_fraction > 0.0) write_split(cfg.out_dir, split, parsed.report.original_ids);
  {
    std::ostringstream emb;
    write_embeddings(emb, result.embeddings, parsed.report.original_ids);
    write_file(dir / "embeddings.txt", emb.str());
  }
  {
    std::ostringstream loss;
    write_loss_history(loss, result.history);
    write_file(dir / "loss.csv", loss.str());
  }
  if (cfg.dump_proximity) {
    std::ostringstream prox;
    write_coordinates(prox, c, parsed.report.original_ids);
    write_file(dir / "proximity.txt", prox.str());
  }

  out << fmt::format("vertices {} edges {} train edges {} hidden {}\n", original.num_vertices(),
                     original.num_edges(), split.train_graph.num_edges(), split.positives.size());
  out << fmt::format("motif instances {} motif-less vertices {}\n", instances.size(),
                     result.uncovered_vertices);
  if (!result.history.empty()) {
    out << fmt::format("loss first {:.6g} last {:.6g}\n", result.history.front().total,
                       result.history.back().total);
  }
}

namespace {

std::vector<MetricsReport> evaluate_and_write(const RunConfig& cfg, std::ostream& out) {
  const std::vector<MetricsReport> reports = evaluate_run(cfg, out);
  echo_config(cfg, "evaluate");
  std::string csv = metrics_csv_header(cfg.ks, cfg.weak_ties) + "\n";
  for (const auto& r : reports) csv += metrics_csv_row(r, cfg.ks, cfg.weak_ties, r.method) + "\n";
  write_file(fs::path(cfg.out_dir) / "metrics.json", metrics_json(reports));
  write_file(fs::path(cfg.out_dir) / "metrics.csv", csv);
  out << csv;
  return reports;
}

}  // namespace

void cmd_evaluate(const RunConfig& cfg, std::ostream& out) { evaluate_and_write(cfg, out); }

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.motif_types.empty()) throw UsageError("sweep needs at least one motif type");
  echo_config(cfg, "sweep");
  std::string csv = metrics_csv_header(cfg.ks, cfg.weak_ties, "motif_type") + "\n";
  for (MotifType t : cfg.motif_types) {
    RunConfig sub = cfg;
    sub.motif_type = t;
    sub.union_types.clear();
    sub.out_dir = (fs::path(cfg.out_dir) / motif_code(t)).string();
    sub.embeddings.clear();
    sub.split_dir.clear();
    std::ostringstream log;
    cmd_train(sub, log);
    const auto reports = evaluate_and_write(sub, log);
    csv += metrics_csv_row(reports.front(), cfg.ks, cfg.weak_ties, motif_code(t)) + "\n";
  }
  write_file(fs::path(cfg.out_dir) / "sweep.csv", csv);
  out << csv;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motif-based autoencoder embeddings for link prediction", "motifae"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app = nullptr;
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Command> commands;
  const std::vector<std::pair<std::string, std::string>> names = {
      {"census", "count every 3- and 4-node motif type"},
      {"train", "hide edges, enumerate motifs, train embeddings"},
      {"evaluate", "score a split with the embeddings and baselines"},
      {"sweep", "train and evaluate once per motif type"}};
  for (const auto& [name, help] : names) {
    Command& cmd = commands[name];
    cmd.app = app.add_subcommand(name, help);
    cmd.app->add_option("--config", cmd.config_path, "flat key = value config file");
    for (const auto& key : RunConfig::keys()) {
      if (RunConfig::is_flag(key)) {
        cmd.options[key] = cmd.app->add_flag("--" + key, cmd.flags[key]);
      } else {
        cmd.options[key] = cmd.app->add_option("--" + key, cmd.values[key]);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    for (auto& [name, cmd] : commands) {
      if (!cmd.app->parsed()) continue;
      RunConfig cfg;
      if (!cmd.config_path.empty()) apply_config_file(cfg, cmd.config_path);
      for (const auto& key : RunConfig::keys()) {
        if (cmd.options[key]->count() == 0) continue;
        cfg.set(key, RunConfig::is_flag(key) ? (cmd.flags[key] ? "true" : "false") : cmd.values[key]);
      }
      if (name == "census") cmd_census(cfg, out);
      else if (name == "train") cmd_train(cfg, out);
      else if (name == "evaluate") cmd_evaluate(cfg, out);
      else cmd_sweep(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("motifae");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace motifae::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "motifae/linkpred.hpp"
#include "motifae/motif.hpp"
#include "motifae/trainer.hpp"

namespace motifae::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kDivergence = 3,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved settings for one command. Keys are the long flag names
/// without the leading dashes; config files use the same keys as flat
/// `key = value` lines.
struct RunConfig {
  std::string input;
  std::string out_dir = "motifae_out";
  std::uint64_t seed = 1;

  MotifType motif_type = MotifType::M31;
  std::vector<MotifType> motif_types{kAllMotifTypes.begin(), kAllMotifTypes.end()};
  std::vector<MotifType> union_types;
  std::string motif_map;
  std::size_t max_motifs = 0;

  double hide_fraction = 0.2;

  TrainConfig train;

  std::vector<std::size_t> ks{10, 50};
  std::vector<Baseline> baselines{Baseline::CommonNeighbors, Baseline::Jaccard,
                                  Baseline::AdamicAdar};
  bool weak_ties = false;
  std::size_t weak_tie_threshold = 3;

  std::string embeddings;  // empty: <out-dir>/embeddings.txt
  std::string split_dir;   // empty: <out-dir>
  bool dump_instances = false;
  bool dump_proximity = false;
  bool dump_scores = false;

  /// Names of every settable key, in output order.
  static const std::vector<std::string>& keys();
  static bool is_flag(std::string_view key);

  /// Parses `value` into the field named `key`. Throws UsageError.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;

  /// `key = value` lines for every key.
  std::string to_text() const;

  MotifCatalog catalog() const;
  std::string embeddings_path() const;
  std::string split_path() const;
};

/// Applies `key = value` lines to `cfg`. Blank lines and lines starting
/// with '#' are skipped. Throws UsageError on unknown keys or bad values.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

void cmd_census(const RunConfig& cfg, std::ostream& out);
void cmd_train(const RunConfig& cfg, std::ostream& out);
void cmd_evaluate(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);

/// Parses arguments, dispatches a subcommand and maps failures to exit
/// codes: 1 usage, 2 data, 3 numerical divergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motifae::cli

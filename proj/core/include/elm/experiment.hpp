#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elm/backprop.hpp"
#include "elm/dataset.hpp"
#include "elm/shapers.hpp"
#include "elm/train.hpp"

namespace elm {

enum class DatasetKind { Mnist, NorbSmall };

// Report/CLI names: mnist, norb-small.
DatasetKind dataset_from_string(std::string_view name);
std::string to_string(DatasetKind kind);

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::Mnist;
  std::filesystem::path data_dir;
  Method method = Method::Random;
  std::vector<Index> m_list;  // strictly increasing
  int repeats = 10;
  double c = 1e-6;
  Activation activation = Activation::Logistic;
  ShapeConfig shaping;
  std::optional<BpConfig> bp;
  std::optional<int> augment_shift;
  std::uint64_t seed = 1;
  std::int64_t memory_budget_mb = 0;  // 0 = library default

  // Throws ConfigError when repeats or m_list is unusable.
  void validate() const;
};

struct TrainTestPair {
  LabeledDataset train;
  LabeledDataset test;
};

// Loads cfg.dataset from cfg.data_dir by the canonical file names (the four
// mnist idx files, or the four smallnorb .mat files) and, for NORB, runs the
// preprocessing pipeline.
TrainTestPair load_experiment_data(const ExperimentConfig& cfg);

struct RunRecord {
  Method method = Method::Random;
  Index m = 0;
  std::uint64_t seed = 0;
  double test_error_pct = 0.0;
  double train_error_pct = 0.0;
  double train_seconds = 0.0;
  std::vector<double> bp_trace;  // per-iteration training error, empty without bp
};

struct EnsembleMean {
  Method method = Method::Random;
  Index m = 0;
  int repeats = 0;
  double test_error_pct = 0.0;
  double train_error_pct = 0.0;
  double train_seconds = 0.0;
};

struct RunReport {
  std::vector<RunRecord> records;  // m_list order, repeats inside
  std::vector<EnsembleMean> means;
};

// Seed for one member network. Depends only on its own coordinates, so
// growing the repeat count never changes earlier members.
std::uint64_t member_seed(std::uint64_t master, Method method, Index m, int repeat);

// Per-(method, M) arithmetic means, grouped in first-appearance order.
std::vector<EnsembleMean> aggregate_means(const std::vector<RunRecord>& records);

using RecordSink = std::function<void(const RunRecord&)>;

// Trains cfg.repeats networks for every M in cfg.m_list, measures train and
// test error, and aggregates means. Each finished record is handed to `sink`
// immediately, so callers keep partial results when a later member throws.
// Training wall-clock covers shaping through the output solve (plus bp when
// configured) and excludes data loading and evaluation. bp fine-tuning and
// error measurement use the stored training set; translation augmentation
// applies to the closed-form stage only.
RunReport run(const ExperimentConfig& cfg, const TrainTestPair& data,
              const RecordSink& sink = {});

// Same execution; the name matches the CLI verb for multi-M configs.
RunReport sweep(const ExperimentConfig& cfg, const TrainTestPair& data,
                const RecordSink& sink = {});

}  // namespace elm

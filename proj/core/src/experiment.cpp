#include "elm/experiment.hpp"

#include <chrono>
#include <string>
#include <utility>

#include "elm/errors.hpp"
#include "elm/idx_io.hpp"
#include "elm/norb_io.hpp"
#include "elm/norb_preprocess.hpp"
#include "elm/rng.hpp"

namespace elm {

namespace {

constexpr const char* kNorbTrainStem = "smallnorb-5x46789x9x18x6x2x96x96-training";
constexpr const char* kNorbTestStem = "smallnorb-5x01235x9x18x6x2x96x96-testing";

}  // namespace

DatasetKind dataset_from_string(std::string_view name) {
  if (name == "mnist") return DatasetKind::Mnist;
  if (name == "norb-small") return DatasetKind::NorbSmall;
  throw ConfigError("unknown dataset '" + std::string(name) +
                    "' (expected mnist or norb-small)");
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Mnist: return "mnist";
    case DatasetKind::NorbSmall: return "norb-small";
  }
  throw ConfigError("invalid dataset value");
}

void ExperimentConfig::validate() const {
  if (repeats < 1)
    throw ConfigError("repeats must be at least 1, got " + std::to_string(repeats));
  if (m_list.empty()) throw ConfigError("no hidden layer sizes given");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw ConfigError("hidden layer sizes must be strictly increasing, got " +
                        std::to_string(m_list[i - 1]) + " then " +
                        std::to_string(m_list[i]));
  if (augment_shift && *augment_shift < 1)
    throw ConfigError("augment shift must be at least 1");
}

TrainTestPair load_experiment_data(const ExperimentConfig& cfg) {
  TrainTestPair data;
  if (cfg.dataset == DatasetKind::Mnist) {
    data.train = load_idx_dataset(cfg.data_dir / "train-images-idx3-ubyte",
                                  cfg.data_dir / "train-labels-idx1-ubyte", 10);
    data.test = load_idx_dataset(cfg.data_dir / "t10k-images-idx3-ubyte",
                                 cfg.data_dir / "t10k-labels-idx1-ubyte", 10);
    return data;
  }
  data.train = preprocess_norb(
      load_norb_small(cfg.data_dir / (std::string(kNorbTrainStem) + "-dat.mat"),
                      cfg.data_dir / (std::string(kNorbTrainStem) + "-cat.mat")));
  data.test = preprocess_norb(
      load_norb_small(cfg.data_dir / (std::string(kNorbTestStem) + "-dat.mat"),
                      cfg.data_dir / (std::string(kNorbTestStem) + "-cat.mat")));
  return data;
}

std::uint64_t member_seed(std::uint64_t master, Method method, Index m, int repeat) {
  std::uint64_t t = master;
  std::uint64_t h = splitmix64(t);
  t = h ^ (static_cast<std::uint64_t>(method) + 1);
  h = splitmix64(t);
  t = h ^ static_cast<std::uint64_t>(m);
  h = splitmix64(t);
  t = h ^ static_cast<std::uint64_t>(repeat);
  return splitmix64(t);
}

std::vector<EnsembleMean> aggregate_means(const std::vector<RunRecord>& records) {
  std::vector<EnsembleMean> means;
  for (const RunRecord& r : records) {
    EnsembleMean* slot = nullptr;
    for (EnsembleMean& m : means)
      if (m.method == r.method && m.m == r.m) slot = &m;
    if (!slot) {
      means.push_back({r.method, r.m, 0, 0.0, 0.0, 0.0});
      slot = &means.back();
    }
    slot->repeats += 1;
    slot->test_error_pct += r.test_error_pct;
    slot->train_error_pct += r.train_error_pct;
    slot->train_seconds += r.train_seconds;
  }
  for (EnsembleMean& m : means) {
    m.test_error_pct /= m.repeats;
    m.train_error_pct /= m.repeats;
    m.train_seconds /= m.repeats;
  }
  return means;
}

RunReport run(const ExperimentConfig& cfg, const TrainTestPair& data,
              const RecordSink& sink) {
  cfg.validate();
  TrainOptions opts;
  opts.activation = cfg.activation;
  opts.shaping = cfg.shaping;
  opts.memory_budget_mb = cfg.memory_budget_mb;

  RunReport report;
  for (Index m : cfg.m_list) {
    for (int rep = 0; rep < cfg.repeats; ++rep) {
      RunRecord rec;
      rec.method = cfg.method;
      rec.m = m;
      rec.seed = member_seed(cfg.seed, cfg.method, m, rep);

      TrainResult tr;
      if (cfg.augment_shift) {
        TranslateSource source(data.train, *cfg.augment_shift);
        tr = train(data.train, source, cfg.method, m, cfg.c, rec.seed, opts);
      } else {
        tr = train(data.train, cfg.method, m, cfg.c, rec.seed, opts);
      }
      rec.train_seconds = tr.train_seconds;
      ElmModel model = std::move(tr.model);

      if (cfg.bp) {
        const auto t0 = std::chrono::steady_clock::now();
        FinetuneResult ft = finetune(std::move(model), data.train, cfg.c, *cfg.bp);
        rec.train_seconds +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        model = std::move(ft.model);
        rec.bp_trace = std::move(ft.train_error_trace);
      }

      rec.train_error_pct =
          error_rate(predict(model, data.train.x), data.train.labels);
      rec.test_error_pct = error_rate(predict(model, data.test.x), data.test.labels);

      report.records.push_back(rec);
      if (sink) sink(report.records.back());
    }
  }
  report.means = aggregate_means(report.records);
  return report;
}

RunReport sweep(const ExperimentConfig& cfg, const TrainTestPair& data,
                const RecordSink& sink) {
  return run(cfg, data, sink);
}

}  // namespace elm

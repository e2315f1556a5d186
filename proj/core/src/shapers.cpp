#include "elm/shapers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elm/errors.hpp"
#include "elm/rng.hpp"

namespace elm {

namespace {

constexpr int kZeroRowRetries = 100;

double row_norm(const DenseMatrix& w, Index i) {
  double acc = 0.0;
  for (Index j = 0; j < w.cols(); ++j) acc += w(i, j) * w(i, j);
  return std::sqrt(acc);
}

// Scales every row to norm alpha; difference rows (pair_sum present) also get
// bias_i = alpha * (sum_i . w_i) / |w_i|^2, matching the constrained-difference
// normalization before the alpha pass.
InputWeights finalize(RawShape&& raw, double alpha) {
  InputWeights out;
  const Index m = raw.w.rows();
  const bool difference_rows = raw.pair_sum.size() > 0;
  if (difference_rows) out.bias.resize(static_cast<std::size_t>(m));

  for (Index i = 0; i < m; ++i) {
    const double norm = row_norm(raw.w, i);
    if (norm == 0.0)
      throw DataError("hidden unit " + std::to_string(i) + " has an all-zero row");
    if (difference_rows) {
      double dot = 0.0;
      for (Index j = 0; j < raw.w.cols(); ++j) dot += raw.pair_sum(i, j) * raw.w(i, j);
      out.bias[static_cast<std::size_t>(i)] = alpha * dot / (norm * norm);
    }
    const double f = alpha / norm;
    for (Index j = 0; j < raw.w.cols(); ++j) raw.w(i, j) *= f;
  }
  out.w = std::move(raw.w);
  out.scale = alpha;
  return out;
}

RawShape raw_random(Index m, Index l, Rng& rng) {
  RawShape raw;
  raw.w = DenseMatrix(m, l);
  for (Index i = 0; i < raw.w.size(); ++i) raw.w.data()[i] = rng.sign();
  return raw;
}

// Largest-remainder split of m units across class counts; every class with
// samples ends up with at least one unit.
std::vector<Index> proportional_blocks(const std::vector<Index>& counts, Index m) {
  const Index n = static_cast<Index>(counts.size());
  const Index total = std::accumulate(counts.begin(), counts.end(), Index{0});
  std::vector<Index> sizes(static_cast<std::size_t>(n));
  std::vector<std::pair<double, Index>> rema;
  Index assigned = 0;
  for (Index c = 0; c < n; ++c) {
    const double quota =
        static_cast<double>(m) * static_cast<double>(counts[static_cast<std::size_t>(c)]) /
        static_cast<double>(total);
    sizes[static_cast<std::size_t>(c)] = static_cast<Index>(std::floor(quota));
    assigned += sizes[static_cast<std::size_t>(c)];
    rema.emplace_back(quota - std::floor(quota), c);
  }
  std::stable_sort(rema.begin(), rema.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (Index i = 0; assigned < m; ++i, ++assigned)
    ++sizes[static_cast<std::size_t>(rema[static_cast<std::size_t>(i % n)].second)];

  for (Index c = 0; c < n; ++c) {
    while (sizes[static_cast<std::size_t>(c)] == 0) {
      const auto biggest = std::max_element(sizes.begin(), sizes.end());
      --*biggest;
      ++sizes[static_cast<std::size_t>(c)];
    }
  }
  return sizes;
}

RawShape raw_ciw(const LabeledDataset& train, Index m, Rng& rng) {
  const int n = train.n_classes;
  if (m < n)
    throw ConfigError("CIW needs at least one hidden unit per class: M=" +
                      std::to_string(m) + " < " + std::to_string(n));
  std::vector<Index> counts(static_cast<std::size_t>(n), 0);
  for (int lab : train.labels) ++counts[static_cast<std::size_t>(lab)];
  for (int c = 0; c < n; ++c)
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw DataError("class " + std::to_string(c) + " has no training samples");

  const LabeledDataset std_data = standardize(train).data;
  const Index l = std_data.dim();
  const std::vector<Index> sizes = proportional_blocks(counts, m);

  RawShape raw;
  raw.w = DenseMatrix(m, l);
  Index row0 = 0;
  for (int c = 0; c < n; ++c) {
    const Index kc = counts[static_cast<std::size_t>(c)];
    const Index mc = sizes[static_cast<std::size_t>(c)];

    // class samples as rows of a K_c x L matrix, then block = R * samples
    DenseMatrix samples(kc, l);
    Index s = 0;
    for (Index j = 0; j < std_data.count(); ++j)
      if (train.labels[static_cast<std::size_t>(j)] == c) {
        for (Index i = 0; i < l; ++i) samples(s, i) = std_data.x(i, j);
        ++s;
      }

    DenseMatrix signs(mc, kc);
    for (Index i = 0; i < signs.size(); ++i) signs.data()[i] = rng.sign();
    DenseMatrix block = matmul(signs, samples);

    for (Index i = 0; i < mc; ++i) {
      int attempt = 0;
      while (row_norm(block, i) == 0.0) {
        if (++attempt > kZeroRowRetries)
          throw ConfigError("CIW row stayed zero after " +
                            std::to_string(kZeroRowRetries) + " redraws");
        for (Index k = 0; k < kc; ++k) signs(i, k) = rng.sign();
        for (Index j = 0; j < l; ++j) {
          double acc = 0.0;
          for (Index k = 0; k < kc; ++k) acc += signs(i, k) * samples(k, j);
          block(i, j) = acc;
        }
      }
      for (Index j = 0; j < l; ++j) raw.w(row0 + i, j) = block(i, j);
    }
    row0 += mc;
  }
  return raw;
}

RawShape raw_celm(const LabeledDataset& train, Index m, const CelmConfig& cfg,
                  Rng& rng, std::vector<std::pair<Index, Index>>* pairs_out) {
  if (cfg.epsilon && *cfg.epsilon <= 0.0)
    throw ConfigError("epsilon must be positive");
  std::set<int> classes(train.labels.begin(), train.labels.end());
  if (classes.size() < 2)
    throw DataError("difference shaping needs samples from at least two classes");

  const Index k = train.count();
  const Index l = train.dim();
  RawShape raw;
  raw.w = DenseMatrix(m, l);
  raw.pair_sum = DenseMatrix(m, l);
  if (pairs_out) pairs_out->clear();

  std::set<std::pair<Index, Index>> used;
  const Index max_attempts = 100 * m;
  Index attempts = 0;
  for (Index i = 0; i < m;) {
    if (attempts++ >= max_attempts)
      throw ConfigError(
          "could not draw " + std::to_string(m) + " usable sample pairs in " +
          std::to_string(max_attempts) + " attempts" +
          (cfg.epsilon ? " (epsilon=" + std::to_string(*cfg.epsilon) + " too small)"
                       : ""));
    const Index a = static_cast<Index>(rng.below(static_cast<std::uint64_t>(k)));
    const Index b = static_cast<Index>(rng.below(static_cast<std::uint64_t>(k)));
    if (train.labels[static_cast<std::size_t>(a)] ==
        train.labels[static_cast<std::size_t>(b)])
      continue;
    if (used.count({a, b})) continue;

    double norm2 = 0.0;
    for (Index j = 0; j < l; ++j) {
      const double d = train.x(j, a) - train.x(j, b);
      norm2 += d * d;
    }
    if (norm2 == 0.0) continue;
    if (cfg.epsilon && std::sqrt(norm2) >= *cfg.epsilon) continue;

    for (Index j = 0; j < l; ++j) {
      raw.w(i, j) = train.x(j, a) - train.x(j, b);
      raw.pair_sum(i, j) = train.x(j, a) + train.x(j, b);
    }
    used.insert({a, b});
    if (pairs_out) pairs_out->emplace_back(a, b);
    ++i;
  }
  return raw;
}

void check_mask_config(const RfMaskConfig& cfg) {
  if (cfg.side < 1 || cfg.channels < 1 || cfg.q < 1)
    throw ConfigError("mask config needs side, channels and q of at least 1");
  if (2 * cfg.border >= cfg.side)
    throw ConfigError("border " + std::to_string(cfg.border) +
                      " leaves no room on a side of " + std::to_string(cfg.side));
  const Index span = cfg.side - 2 * cfg.border;
  if (span * span < cfg.q)
    throw ConfigError("q=" + std::to_string(cfg.q) +
                      " exceeds the largest mask area " + std::to_string(span * span) +
                      " inside the border");
}

std::vector<double> draw_mask_row(Rng& rng, const RfMaskConfig& cfg) {
  const int lo = cfg.border;
  const std::uint64_t span = static_cast<std::uint64_t>(cfg.side - 2 * cfg.border);
  int r1, c1, r2, c2;
  for (;;) {
    r1 = lo + static_cast<int>(rng.below(span));
    c1 = lo + static_cast<int>(rng.below(span));
    r2 = lo + static_cast<int>(rng.below(span));
    c2 = lo + static_cast<int>(rng.below(span));
    if (r1 == r2 && c1 == c2) continue;
    const Index h = std::abs(r1 - r2) + 1;
    const Index w = std::abs(c1 - c2) + 1;
    if (h * w < cfg.q) continue;
    break;
  }
  const Index pixels = static_cast<Index>(cfg.side) * cfg.side;
  std::vector<double> row(static_cast<std::size_t>(pixels * cfg.channels), 0.0);
  for (int ch = 0; ch < cfg.channels; ++ch)
    for (int r = std::min(r1, r2); r <= std::max(r1, r2); ++r)
      for (int c = std::min(c1, c2); c <= std::max(c1, c2); ++c)
        row[static_cast<std::size_t>(ch * pixels + r * cfg.side + c)] = 1.0;
  return row;
}

DenseMatrix rf_masks_into(Index m, const RfMaskConfig& cfg, Rng& rng) {
  check_mask_config(cfg);
  const Index l = static_cast<Index>(cfg.side) * cfg.side * cfg.channels;
  DenseMatrix masks(m, l);
  for (Index i = 0; i < m; ++i) {
    const std::vector<double> row = draw_mask_row(rng, cfg);
    for (Index j = 0; j < l; ++j) masks(i, j) = row[static_cast<std::size_t>(j)];
  }
  return masks;
}

RfMaskConfig resolve_mask_config(const RfMaskConfig& cfg, const LabeledDataset& train) {
  RfMaskConfig r = cfg;
  if (r.side == 0) {
    if (train.geometry.height != train.geometry.width)
      throw DataError("receptive-field masks need square images");
    r.side = train.geometry.height;
    r.channels = train.geometry.channels;
  }
  return r;
}

}  // namespace

Method method_from_string(std::string_view name) {
  if (name == "random") return Method::Random;
  if (name == "ciw") return Method::Ciw;
  if (name == "c") return Method::C;
  if (name == "rf") return Method::Rf;
  if (name == "rf-ciw") return Method::RfCiw;
  if (name == "rf-c") return Method::RfC;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected random, ciw, c, rf, rf-ciw or rf-c)");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Random: return "random";
    case Method::Ciw: return "ciw";
    case Method::C: return "c";
    case Method::Rf: return "rf";
    case Method::RfCiw: return "rf-ciw";
    case Method::RfC: return "rf-c";
  }
  throw ConfigError("invalid method value");
}

bool method_uses_mask(Method method) {
  return method == Method::Rf || method == Method::RfCiw || method == Method::RfC;
}

InputWeights random_bipolar(Index m, Index l, std::uint64_t seed, double alpha) {
  if (m < 1 || l < 1) throw ConfigError("weight matrix needs M, L of at least 1");
  Rng rng(seed);
  return finalize(raw_random(m, l, rng), alpha);
}

InputWeights ciw_weights(const LabeledDataset& train, Index m, std::uint64_t seed,
                         double alpha) {
  if (m < 1) throw ConfigError("M must be at least 1");
  train.validate();
  Rng rng(seed);
  return finalize(raw_ciw(train, m, rng), alpha);
}

InputWeights celm_weights_biases(const LabeledDataset& train, Index m,
                                 const CelmConfig& cfg, std::uint64_t seed,
                                 double alpha,
                                 std::vector<std::pair<Index, Index>>* pairs_out) {
  if (m < 1) throw ConfigError("M must be at least 1");
  train.validate();
  Rng rng(seed);
  return finalize(raw_celm(train, m, cfg, rng, pairs_out), alpha);
}

DenseMatrix rf_masks(Index m, const RfMaskConfig& cfg, std::uint64_t seed) {
  if (m < 1) throw ConfigError("M must be at least 1");
  Rng rng(seed);
  return rf_masks_into(m, cfg, rng);
}

InputWeights compose_shaped_weights(const RawShape& base, DenseMatrix mask,
                                    double alpha,
                                    const std::function<std::vector<double>()>& redraw) {
  const Index m = base.w.rows(), l = base.w.cols();
  if (mask.rows() != m || mask.cols() != l)
    throw ShapeError("mask " + std::to_string(mask.rows()) + "x" +
                     std::to_string(mask.cols()) + " does not fit weights " +
                     std::to_string(m) + "x" + std::to_string(l));
  if (!base.bias.empty() && base.pair_sum.size() == 0)
    throw ConfigError("cannot recompute biases without the pair sums");

  RawShape masked;
  masked.w = DenseMatrix(m, l);
  masked.pair_sum = base.pair_sum;
  for (Index i = 0; i < m; ++i) {
    auto apply = [&] {
      double norm2 = 0.0;
      for (Index j = 0; j < l; ++j) {
        masked.w(i, j) = mask(i, j) * base.w(i, j);
        norm2 += masked.w(i, j) * masked.w(i, j);
      }
      return norm2;
    };
    int attempt = 0;
    while (apply() == 0.0) {
      if (++attempt > kZeroRowRetries)
        throw ConfigError("mask left hidden unit " + std::to_string(i) +
                          " all zero after " + std::to_string(kZeroRowRetries) +
                          " redraws");
      const std::vector<double> fresh = redraw();
      if (static_cast<Index>(fresh.size()) != l)
        throw ShapeError("redrawn mask row has wrong length");
      for (Index j = 0; j < l; ++j) mask(i, j) = fresh[static_cast<std::size_t>(j)];
    }
  }

  InputWeights out = finalize(std::move(masked), alpha);
  out.mask = std::move(mask);
  return out;
}

InputWeights shape(Method method, const LabeledDataset& train, Index m,
                   const ShapeConfig& cfg, std::uint64_t seed) {
  switch (method) {
    case Method::Random:
      return random_bipolar(m, train.dim(), seed, cfg.alpha);
    case Method::Ciw:
      return ciw_weights(train, m, seed, cfg.alpha);
    case Method::C:
      return celm_weights_biases(train, m, cfg.celm, seed, cfg.alpha);
    case Method::Rf:
    case Method::RfCiw:
    case Method::RfC:
      break;
  }

  if (m < 1) throw ConfigError("M must be at least 1");
  train.validate();
  const RfMaskConfig rf = resolve_mask_config(cfg.rf, train);
  std::uint64_t t = seed;
  const std::uint64_t mask_seed = splitmix64(t);
  Rng base_rng(seed);
  Rng mask_rng(mask_seed);

  RawShape raw;
  switch (method) {
    case Method::Rf: raw = raw_random(m, train.dim(), base_rng); break;
    case Method::RfCiw: raw = raw_ciw(train, m, base_rng); break;
    case Method::RfC: raw = raw_celm(train, m, cfg.celm, base_rng, nullptr); break;
    default: break;
  }
  DenseMatrix masks = rf_masks_into(m, rf, mask_rng);
  return compose_shaped_weights(raw, std::move(masks), cfg.alpha,
                                [&] { return draw_mask_row(mask_rng, rf); });
}

}  // namespace elm

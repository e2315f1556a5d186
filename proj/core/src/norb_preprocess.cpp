#include "elm/norb_preprocess.hpp"

#include <cmath>
#include <vector>

#include "elm/errors.hpp"

namespace elm {

namespace imageproc {

namespace {

int reflect(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -1 - i;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// Normalized 1-D half of the separable sigma-4 kernel; the 2-D kernel is the
// outer product, so row and column passes compose to the full filter.
const double* gaussian_taps() {
  static const std::vector<double> taps = [] {
    std::vector<double> t(9);
    double sum = 0.0;
    for (int i = 0; i < 9; ++i) {
      const double d = i - 4;
      t[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * 16.0));
      sum += t[static_cast<std::size_t>(i)];
    }
    for (double& v : t) v /= sum;
    return t;
  }();
  return taps.data();
}

}  // namespace

std::vector<double> gaussian_lowpass_9x9(const std::vector<double>& image, int side) {
  if (static_cast<int>(image.size()) != side * side)
    throw ShapeError("image size does not match side length");
  const double* k = gaussian_taps();

  std::vector<double> rows(image.size());
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      double acc = 0.0;
      for (int j = 0; j < 9; ++j)
        acc += k[j] * image[static_cast<std::size_t>(r) * side + reflect(c + j - 4, side)];
      rows[static_cast<std::size_t>(r) * side + c] = acc;
    }

  std::vector<double> out(image.size());
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      double acc = 0.0;
      for (int i = 0; i < 9; ++i)
        acc += k[i] * rows[static_cast<std::size_t>(reflect(r + i - 4, side)) * side + c];
      out[static_cast<std::size_t>(r) * side + c] = acc;
    }
  return out;
}

std::vector<double> bilinear_resample(const std::vector<double>& image, int side,
                                      int out_side) {
  if (static_cast<int>(image.size()) != side * side)
    throw ShapeError("image size does not match side length");
  const double scale = static_cast<double>(side) / out_side;
  std::vector<double> out(static_cast<std::size_t>(out_side) * out_side);
  auto clamp = [side](int i) { return i < 0 ? 0 : (i >= side ? side - 1 : i); };
  for (int r = 0; r < out_side; ++r) {
    const double rr = (r + 0.5) * scale - 0.5;
    const int r0 = static_cast<int>(std::floor(rr));
    const double fr = rr - r0;
    for (int c = 0; c < out_side; ++c) {
      const double cc = (c + 0.5) * scale - 0.5;
      const int c0 = static_cast<int>(std::floor(cc));
      const double fc = cc - c0;
      const double v00 = image[static_cast<std::size_t>(clamp(r0)) * side + clamp(c0)];
      const double v01 = image[static_cast<std::size_t>(clamp(r0)) * side + clamp(c0 + 1)];
      const double v10 = image[static_cast<std::size_t>(clamp(r0 + 1)) * side + clamp(c0)];
      const double v11 = image[static_cast<std::size_t>(clamp(r0 + 1)) * side + clamp(c0 + 1)];
      out[static_cast<std::size_t>(r) * out_side + c] =
          (1.0 - fr) * ((1.0 - fc) * v00 + fc * v01) +
          fr * ((1.0 - fc) * v10 + fc * v11);
    }
  }
  return out;
}

void contrast_normalize(std::vector<double>& image) {
  if (image.empty()) return;
  double mean = 0.0;
  for (double v : image) mean += v;
  mean /= static_cast<double>(image.size());
  double var = 0.0;
  for (double v : image) {
    const double d = v - mean;
    var += d * d;
  }
  const double stddev = std::sqrt(var / static_cast<double>(image.size()));
  if (stddev <= 1e-12) {
    for (double& v : image) v = 0.0;
    return;
  }
  for (double& v : image) v = (v - mean) / stddev;
}

}  // namespace imageproc

LabeledDataset preprocess_norb(const LabeledDataset& ds) {
  if (!(ds.geometry == Geometry{96, 96, 2}))
    throw DataError("preprocess_norb expects 96x96 stereo input");
  ds.validate();

  constexpr int kIn = 96, kOut = 13;
  constexpr Index kInPixels = kIn * kIn, kOutPixels = kOut * kOut;

  LabeledDataset out;
  out.geometry = Geometry{kOut, kOut, 2};
  out.n_classes = ds.n_classes;
  out.labels = ds.labels;
  out.x = DenseMatrix(2 * kOutPixels, ds.count());

  std::vector<double> channel(static_cast<std::size_t>(kInPixels));
  for (Index j = 0; j < ds.count(); ++j)
    for (int c = 0; c < 2; ++c) {
      for (Index i = 0; i < kInPixels; ++i)
        channel[static_cast<std::size_t>(i)] = ds.x(c * kInPixels + i, j);
      auto filtered = imageproc::gaussian_lowpass_9x9(channel, kIn);
      auto small = imageproc::bilinear_resample(filtered, kIn, kOut);
      imageproc::contrast_normalize(small);
      for (Index i = 0; i < kOutPixels; ++i)
        out.x(c * kOutPixels + i, j) = small[static_cast<std::size_t>(i)];
    }
  return out;
}

}  // namespace elm

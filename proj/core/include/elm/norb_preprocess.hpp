#pragma once

#include "elm/dataset.hpp"

namespace elm {

// NORB preprocessing pipeline: per channel, lowpass with a 9x9 Gaussian
// kernel (sigma 4, normalized to sum 1, symmetric boundary), bilinear
// resample to 13x13, then per-channel-per-sample contrast normalization
// (subtract mean, divide by stddev; a zero-variance channel is left at
// zero after mean subtraction). (96,96,2) -> (13,13,2), L = 338.
LabeledDataset preprocess_norb(const LabeledDataset& ds);

// Exposed pieces of the pipeline (same routines the preprocessing uses),
// operating on one side x side channel image stored row-major.
namespace imageproc {

// 9x9 Gaussian, sigma 4, symmetric (mirrored, edge included) padding.
std::vector<double> gaussian_lowpass_9x9(const std::vector<double>& image, int side);

// Bilinear resample side -> out_side on a pixel-center-aligned uniform grid.
std::vector<double> bilinear_resample(const std::vector<double>& image, int side,
                                      int out_side);

// x <- (x - mean(x)) / stddev(x); all-equal input becomes all zeros.
void contrast_normalize(std::vector<double>& image);

}  // namespace imageproc

}  // namespace elm

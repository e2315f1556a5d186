#pragma once

#include <filesystem>
#include <vector>

#include "elm/dataset.hpp"
#include "elm/dense_matrix.hpp"

namespace elm {

// IDX container (the MNIST file format): big-endian, magic bytes
// [0, 0, dtype, ndims], dtype 0x08 = unsigned byte, then ndims 32-bit sizes,
// then the raw payload.

// 3-D image file -> L x K matrix (one image per column, pixel values scaled
// to [0,1] by division by 255) plus the image geometry.
struct IdxImages {
  DenseMatrix x;  // L x K
  Geometry geometry;
};
IdxImages load_idx_images(const std::filesystem::path& path);

// 1-D label file -> integer array.
std::vector<int> load_idx_labels(const std::filesystem::path& path);

// Writers for the same layouts (byte payload; values must be integers in
// [0, 255] after multiplying by 255). Round-trips bit-identically through
// load_idx_images / load_idx_labels.
void save_idx_images(const std::filesystem::path& path, const DenseMatrix& x,
                     const Geometry& geometry);
void save_idx_labels(const std::filesystem::path& path, const std::vector<int>& labels);

// Convenience: images + labels -> LabeledDataset with n_classes inferred
// as max(label)+1 unless given.
LabeledDataset load_idx_dataset(const std::filesystem::path& images,
                                const std::filesystem::path& labels,
                                int n_classes = 0);

}  // namespace elm

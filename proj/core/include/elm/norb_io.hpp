#pragma once

#include <filesystem>

#include "elm/dataset.hpp"

namespace elm {

// NORB-small binary-matrix pair: `data_path` holds the stereo images
// (little-endian magic 0x1E3D4C55, byte payload, dims K x 2 x 96 x 96) and
// `cat_path` the category labels (magic 0x1E3D4C54, int32, dims K).
// Pixel values are scaled to [0,1]; columns are stereo pairs flattened
// channel-major (channel 0 image then channel 1).
LabeledDataset load_norb_small(const std::filesystem::path& data_path,
                               const std::filesystem::path& cat_path);

}  // namespace elm

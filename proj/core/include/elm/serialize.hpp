#pragma once

#include <cstdint>
#include <filesystem>

#include "elm/model.hpp"
#include "elm/shapers.hpp"

namespace elm {

// A model plus the provenance needed to regenerate it.
struct ModelFile {
  ElmModel model;
  Method method = Method::Random;
  std::uint64_t seed = 0;
};

// On-disk container, version 1. Everything is little-endian; doubles are raw
// IEEE-754 bits, so a round trip is bit-identical.
//
//   offset  size  field
//   0       8     magic "ELMMODEL"
//   8       4     u32 version (1)
//   12      4     u32 method tag (0 random, 1 ciw, 2 c, 3 rf, 4 rf-ciw, 5 rf-c)
//   16      4     u32 activation tag (0 logistic, 1 relu, 2 abs, 3 quadratic)
//   20      4     u32 class count N
//   24      8     u64 shaping seed
//   32      8     f64 alpha
//   40      8     u64 hidden unit count M
//   48      8     u64 input dimension L
//   56      8     u64 bias count (M, or 0 when the method has no bias)
//   64      8     u64 mask entry count (0 when the method has no mask)
//   72      -     M*L f64: W_in, row-major
//           -     bias f64s
//           -     N*M f64: W_out, row-major
//           -     mask entries, u64 flat indices (row*L + col), ascending
//
// Nothing follows the mask list; a longer or shorter file is an error.
void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace elm

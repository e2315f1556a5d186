#include "elm/norb_io.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "elm/errors.hpp"

namespace elm {

namespace {

constexpr std::uint32_t kByteMagic = 0x1E3D4C55;
constexpr std::uint32_t kInt32Magic = 0x1E3D4C54;

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t le32(const std::vector<unsigned char>& b, std::size_t o) {
  return std::uint32_t{b[o]} | (std::uint32_t{b[o + 1]} << 8) |
         (std::uint32_t{b[o + 2]} << 16) | (std::uint32_t{b[o + 3]} << 24);
}

struct NorbHeader {
  std::vector<std::int64_t> dims;
  std::size_t payload_offset = 0;
};

// Binary-matrix header: magic, ndim, then max(ndim, 3) little-endian dims.
NorbHeader parse_header(const std::vector<unsigned char>& bytes,
                        const std::filesystem::path& path, std::uint32_t want_magic,
                        std::uint32_t want_ndim) {
  const std::string name = path.string();
  if (bytes.size() < 8) throw FormatError(name + ": too short for a matrix header");
  if (le32(bytes, 0) != want_magic)
    throw FormatError(name + ": wrong matrix magic 0x" +
                      std::to_string(le32(bytes, 0)));
  const std::uint32_t ndim = le32(bytes, 4);
  if (ndim != want_ndim)
    throw FormatError(name + ": expected " + std::to_string(want_ndim) +
                      " dims, file declares " + std::to_string(ndim));
  const std::uint32_t stored = ndim < 3 ? 3 : ndim;
  if (bytes.size() < 8 + 4 * static_cast<std::size_t>(stored))
    throw FormatError(name + ": truncated dimension table");

  NorbHeader h;
  h.payload_offset = 8 + 4 * static_cast<std::size_t>(stored);
  for (std::uint32_t d = 0; d < ndim; ++d)
    h.dims.push_back(le32(bytes, 8 + 4 * static_cast<std::size_t>(d)));
  return h;
}

}  // namespace

LabeledDataset load_norb_small(const std::filesystem::path& data_path,
                               const std::filesystem::path& cat_path) {
  const auto data = read_file(data_path);
  const NorbHeader dh = parse_header(data, data_path, kByteMagic, 4);
  if (dh.dims[1] != 2 || dh.dims[2] != 96 || dh.dims[3] != 96)
    throw FormatError(data_path.string() + ": expected dims Kx2x96x96, found " +
                      std::to_string(dh.dims[0]) + "x" + std::to_string(dh.dims[1]) +
                      "x" + std::to_string(dh.dims[2]) + "x" +
                      std::to_string(dh.dims[3]));
  const Index k = dh.dims[0];
  const Index l = 2 * 96 * 96;
  if (data.size() != dh.payload_offset + static_cast<std::size_t>(k * l))
    throw FormatError(data_path.string() + ": truncated payload, have " +
                      std::to_string(data.size() - dh.payload_offset) + " of " +
                      std::to_string(k * l) + " bytes");

  const auto cat = read_file(cat_path);
  const NorbHeader ch = parse_header(cat, cat_path, kInt32Magic, 1);
  if (ch.dims[0] != k)
    throw FormatError(cat_path.string() + ": holds " + std::to_string(ch.dims[0]) +
                      " labels for " + std::to_string(k) + " images");
  if (cat.size() != ch.payload_offset + 4 * static_cast<std::size_t>(k))
    throw FormatError(cat_path.string() + ": truncated payload");

  LabeledDataset ds;
  ds.geometry = Geometry{96, 96, 2};
  ds.n_classes = 5;
  ds.x = DenseMatrix(l, k);
  const unsigned char* p = data.data() + dh.payload_offset;
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < l; ++i)
      ds.x(i, j) = static_cast<double>(p[j * l + i]) / 255.0;

  ds.labels.resize(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const std::int32_t lab =
        static_cast<std::int32_t>(le32(cat, ch.payload_offset + 4 * static_cast<std::size_t>(j)));
    if (lab < 0 || lab >= 5)
      throw DataError(cat_path.string() + ": label " + std::to_string(lab) +
                      " at index " + std::to_string(j) + " outside [0, 5)");
    ds.labels[static_cast<std::size_t>(j)] = lab;
  }
  ds.validate();
  return ds;
}

}  // namespace elm

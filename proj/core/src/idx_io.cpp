#include "elm/idx_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "elm/errors.hpp"

namespace elm {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  return bytes;
}

struct IdxHeader {
  std::vector<std::int64_t> dims;
  std::size_t payload_offset = 0;
};

IdxHeader parse_idx_header(const std::vector<unsigned char>& bytes,
                           const std::filesystem::path& path, int want_ndims) {
  const std::string name = path.string();
  if (bytes.size() < 4)
    throw FormatError(name + ": file too short for an IDX magic at offset 0");
  if (bytes[0] != 0 || bytes[1] != 0)
    throw FormatError(name + ": bad IDX magic at offset 0");
  if (bytes[2] != 0x08)
    throw FormatError(name + ": unsupported IDX dtype 0x" +
                      std::to_string(bytes[2]) + " at offset 2 (only unsigned byte)");
  const int ndims = bytes[3];
  if (ndims != want_ndims)
    throw FormatError(name + ": expected " + std::to_string(want_ndims) +
                      " dimensions, found " + std::to_string(ndims) + " at offset 3");
  const std::size_t header = 4 + 4 * static_cast<std::size_t>(ndims);
  if (bytes.size() < header)
    throw FormatError(name + ": truncated dimension table at offset " +
                      std::to_string(bytes.size()));

  IdxHeader h;
  h.payload_offset = header;
  std::int64_t total = 1;
  for (int d = 0; d < ndims; ++d) {
    const std::size_t o = 4 + 4 * static_cast<std::size_t>(d);
    const std::int64_t v = (std::int64_t{bytes[o]} << 24) |
                           (std::int64_t{bytes[o + 1]} << 16) |
                           (std::int64_t{bytes[o + 2]} << 8) | bytes[o + 3];
    h.dims.push_back(v);
    total *= v;
  }
  if (static_cast<std::int64_t>(bytes.size() - header) != total)
    throw FormatError(name + ": truncated payload at offset " +
                      std::to_string(bytes.size()) + ", expected " +
                      std::to_string(header + static_cast<std::size_t>(total)) +
                      " bytes");
  return h;
}

void push_be32(std::vector<unsigned char>& v, std::uint32_t x) {
  v.push_back(static_cast<unsigned char>(x >> 24));
  v.push_back(static_cast<unsigned char>(x >> 16));
  v.push_back(static_cast<unsigned char>(x >> 8));
  v.push_back(static_cast<unsigned char>(x));
}

void write_file(const std::filesystem::path& path,
                const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace

IdxImages load_idx_images(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  const IdxHeader h = parse_idx_header(bytes, path, 3);
  const Index k = h.dims[0], rows = h.dims[1], cols = h.dims[2];
  const Index l = rows * cols;

  IdxImages out;
  out.geometry = Geometry{static_cast<int>(rows), static_cast<int>(cols), 1};
  out.x = DenseMatrix(l, k);
  const unsigned char* p = bytes.data() + h.payload_offset;
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < l; ++i)
      out.x(i, j) = static_cast<double>(p[j * l + i]) / 255.0;
  return out;
}

std::vector<int> load_idx_labels(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  const IdxHeader h = parse_idx_header(bytes, path, 1);
  std::vector<int> labels(static_cast<std::size_t>(h.dims[0]));
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] = bytes[h.payload_offset + i];
  return labels;
}

void save_idx_images(const std::filesystem::path& path, const DenseMatrix& x,
                     const Geometry& geometry) {
  if (geometry.channels != 1 || geometry.input_dim() != x.rows())
    throw ShapeError("geometry does not match matrix rows");
  std::vector<unsigned char> bytes{0, 0, 0x08, 3};
  push_be32(bytes, static_cast<std::uint32_t>(x.cols()));
  push_be32(bytes, static_cast<std::uint32_t>(geometry.height));
  push_be32(bytes, static_cast<std::uint32_t>(geometry.width));
  const Index l = x.rows();
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < l; ++i) {
      const double scaled = x(i, j) * 255.0;
      const double rounded = std::round(scaled);
      if (std::fabs(scaled - rounded) > 1e-6 || rounded < 0.0 || rounded > 255.0)
        throw DataError("pixel (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") = " + std::to_string(x(i, j)) +
                        " is not a byte value over 255");
      bytes.push_back(static_cast<unsigned char>(rounded));
    }
  write_file(path, bytes);
}

void save_idx_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::vector<unsigned char> bytes{0, 0, 0x08, 1};
  push_be32(bytes, static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) {
    if (l < 0 || l > 255) throw DataError("label " + std::to_string(l) + " not a byte");
    bytes.push_back(static_cast<unsigned char>(l));
  }
  write_file(path, bytes);
}

LabeledDataset load_idx_dataset(const std::filesystem::path& images,
                                const std::filesystem::path& labels, int n_classes) {
  IdxImages imgs = load_idx_images(images);
  std::vector<int> labs = load_idx_labels(labels);
  if (static_cast<Index>(labs.size()) != imgs.x.cols())
    throw DataError(images.string() + " holds " + std::to_string(imgs.x.cols()) +
                    " images but " + labels.string() + " holds " +
                    std::to_string(labs.size()) + " labels");
  LabeledDataset ds;
  ds.x = std::move(imgs.x);
  ds.labels = std::move(labs);
  ds.geometry = imgs.geometry;
  ds.n_classes = n_classes > 0
                     ? n_classes
                     : 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
  ds.validate();
  return ds;
}

}  // namespace elm

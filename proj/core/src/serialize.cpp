#include "elm/serialize.hpp"

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "elm/errors.hpp"

namespace elm {

namespace {

constexpr char kMagic[8] = {'E', 'L', 'M', 'M', 'O', 'D', 'E', 'L'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw DataError("cannot open " + path.string() + " for writing");
  }

  void bytes(const void* p, std::size_t n) {
    out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  void u32(std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void check(const std::filesystem::path& path) {
    out_.flush();
    if (!out_) throw DataError("write failed for " + path.string());
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  Reader(const std::filesystem::path& path) : name_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + name_);
    buf_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void bytes(void* p, std::size_t n) {
    if (pos_ + n > buf_.size())
      throw FormatError(name_ + ": truncated at offset " + std::to_string(pos_) +
                        " (need " + std::to_string(n) + " more bytes)");
    std::memcpy(p, buf_.data() + pos_, n);
    pos_ += n;
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::size_t pos() const { return pos_; }
  std::size_t size() const { return buf_.size(); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

std::uint32_t method_tag(Method m) { return static_cast<std::uint32_t>(m); }

Method method_from_tag(std::uint32_t tag, const std::string& name) {
  if (tag > 5) throw FormatError(name + ": unknown method tag " + std::to_string(tag));
  return static_cast<Method>(tag);
}

Activation activation_from_tag(std::uint32_t tag, const std::string& name) {
  if (tag > 3)
    throw FormatError(name + ": unknown activation tag " + std::to_string(tag));
  return static_cast<Activation>(tag);
}

}  // namespace

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  const ElmModel& m = file.model;
  const Index units = m.input.w.rows();
  const Index dim = m.input.w.cols();
  if (m.w_out.rows() != m.n_classes || m.w_out.cols() != units)
    throw ShapeError("w_out is " + std::to_string(m.w_out.rows()) + "x" +
                     std::to_string(m.w_out.cols()) + ", expected " +
                     std::to_string(m.n_classes) + "x" + std::to_string(units));
  if (m.input.has_mask() &&
      (m.input.mask.rows() != units || m.input.mask.cols() != dim))
    throw ShapeError("mask does not match the input weight shape");

  std::uint64_t mask_entries = 0;
  if (m.input.has_mask())
    for (Index i = 0; i < m.input.mask.size(); ++i)
      if (m.input.mask.data()[i] != 0.0) ++mask_entries;

  Writer w(path);
  w.bytes(kMagic, 8);
  w.u32(kVersion);
  w.u32(method_tag(file.method));
  w.u32(static_cast<std::uint32_t>(m.activation));
  w.u32(static_cast<std::uint32_t>(m.n_classes));
  w.u64(file.seed);
  w.f64(m.input.scale);
  w.u64(static_cast<std::uint64_t>(units));
  w.u64(static_cast<std::uint64_t>(dim));
  w.u64(static_cast<std::uint64_t>(m.input.bias.size()));
  w.u64(mask_entries);
  for (Index i = 0; i < m.input.w.size(); ++i) w.f64(m.input.w.data()[i]);
  for (double b : m.input.bias) w.f64(b);
  for (Index i = 0; i < m.w_out.size(); ++i) w.f64(m.w_out.data()[i]);
  if (m.input.has_mask())
    for (Index i = 0; i < m.input.mask.size(); ++i)
      if (m.input.mask.data()[i] != 0.0) w.u64(static_cast<std::uint64_t>(i));
  w.check(path);
}

ModelFile load_model(const std::filesystem::path& path) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw FormatError(r.name() + ": bad magic, not a model file");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(r.name() + ": unsupported version " + std::to_string(version));

  ModelFile file;
  file.method = method_from_tag(r.u32(), r.name());
  file.model.activation = activation_from_tag(r.u32(), r.name());
  file.model.n_classes = static_cast<int>(r.u32());
  file.seed = r.u64();
  file.model.input.scale = r.f64();
  const std::uint64_t units = r.u64();
  const std::uint64_t dim = r.u64();
  const std::uint64_t bias_count = r.u64();
  const std::uint64_t mask_entries = r.u64();
  if (bias_count != 0 && bias_count != units)
    throw FormatError(r.name() + ": bias count " + std::to_string(bias_count) +
                      " does not match " + std::to_string(units) + " hidden units");
  const std::uint64_t cells = units * dim;
  if (mask_entries > cells)
    throw FormatError(r.name() + ": mask entry count " +
                      std::to_string(mask_entries) + " exceeds " +
                      std::to_string(cells) + " cells");

  file.model.input.w =
      DenseMatrix(static_cast<Index>(units), static_cast<Index>(dim));
  for (Index i = 0; i < file.model.input.w.size(); ++i)
    file.model.input.w.data()[i] = r.f64();
  file.model.input.bias.resize(bias_count);
  for (std::uint64_t i = 0; i < bias_count; ++i) file.model.input.bias[i] = r.f64();
  file.model.w_out = DenseMatrix(file.model.n_classes, static_cast<Index>(units));
  for (Index i = 0; i < file.model.w_out.size(); ++i)
    file.model.w_out.data()[i] = r.f64();
  if (mask_entries > 0) {
    file.model.input.mask =
        DenseMatrix(static_cast<Index>(units), static_cast<Index>(dim));
    for (std::uint64_t i = 0; i < mask_entries; ++i) {
      const std::uint64_t at = r.u64();
      if (at >= cells)
        throw FormatError(r.name() + ": mask index " + std::to_string(at) +
                          " out of range at offset " + std::to_string(r.pos() - 8));
      file.model.input.mask.data()[at] = 1.0;
    }
  }
  if (r.pos() != r.size())
    throw FormatError(r.name() + ": " + std::to_string(r.size() - r.pos()) +
                      " unexpected trailing bytes");
  return file;
}

}  // namespace elm

#include "sparsekit/dictionary_io.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace sparsekit {

namespace {

void append_u16(std::string& out, std::uint16_t v) {
  out.push_back(char(v & 0xff));
  out.push_back(char((v >> 8) & 0xff));
}

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(char((v >> (8 * i)) & 0xff));
  }
}

void append_f64(std::string& out, double v) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    out.push_back(char((bits >> (8 * i)) & 0xff));
  }
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

  void need(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw TruncationError(data_.size(), what);
    }
  }

  void read_bytes(void* dst, std::size_t n, const char* what) {
    need(n, what);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }

  std::uint16_t read_u16(const char* what) {
    need(2, what);
    std::uint16_t v = 0;
    for (int i = 1; i >= 0; --i) {
      v = std::uint16_t((v << 8) | std::uint8_t(data_[pos_ + std::size_t(i)]));
    }
    pos_ += 2;
    return v;
  }

  std::uint32_t read_u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
      v = (v << 8) | std::uint8_t(data_[pos_ + std::size_t(i)]);
    }
    pos_ += 4;
    return v;
  }

  double read_f64(const char* what) {
    need(8, what);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) {
      bits = (bits << 8) | std::uint8_t(data_[pos_ + std::size_t(i)]);
    }
    pos_ += 8;
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::string read_string(std::size_t n, const char* what) {
    need(n, what);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_dictionary(const Dictionary& dict,
                     const std::filesystem::path& path) {
  dict.grid.validate();
  if (dict.per_patch.size() != std::size_t(dict.grid.patch_count())) {
    throw InvalidArgumentError("save_dictionary: patch matrix count " +
                               std::to_string(dict.per_patch.size()) +
                               " does not match the grid");
  }
  if (dict.column_labels.empty()) {
    throw InvalidArgumentError("save_dictionary: dictionary has no columns");
  }

  // Label table in mask (sorted) order.
  std::map<std::string, std::uint32_t> label_index;
  for (const ClassMask& mask : dict.masks) {
    label_index.emplace(mask.label, std::uint32_t(label_index.size()));
  }
  for (const std::string& label : dict.column_labels) {
    if (!label_index.contains(label)) {
      throw InvalidArgumentError("save_dictionary: column label '" + label +
                                 "' missing from the class masks");
    }
  }

  std::string out;
  out.append(kDictionaryMagic, sizeof(kDictionaryMagic));
  append_u16(out, kDictionaryFormatVersion);
  append_u32(out, std::uint32_t(dict.grid.width));
  append_u32(out, std::uint32_t(dict.grid.height));
  append_u32(out, std::uint32_t(dict.grid.x_n));
  append_u32(out, std::uint32_t(dict.grid.y_n));
  append_u32(out, std::uint32_t(dict.n_train()));
  append_u32(out, std::uint32_t(label_index.size()));
  for (const auto& [label, idx] : label_index) {
    (void)idx;
    append_u32(out, std::uint32_t(label.size()));
    out.append(label);
  }
  for (const std::string& label : dict.column_labels) {
    append_u32(out, label_index.at(label));
  }
  const Index patch_len = dict.grid.patch_len();
  for (const Mat& mat : dict.per_patch) {
    if (mat.rows() != patch_len || mat.cols() != dict.n_train()) {
      throw InvalidArgumentError(
          "save_dictionary: patch matrix shape mismatch");
    }
    for (Index c = 0; c < mat.cols(); ++c) {
      for (Index r = 0; r < mat.rows(); ++r) {
        append_f64(out, mat(r, c));
      }
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  file.write(out.data(), std::streamsize(out.size()));
  if (!file) {
    throw IoError("failed writing " + path.string());
  }
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path.string());
  }
  Reader reader(std::string((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>()));

  char magic[4] = {};
  reader.read_bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kDictionaryMagic, sizeof(magic)) != 0) {
    throw FormatError(path.string() + " is not a dictionary file (bad magic)");
  }
  const std::uint16_t version = reader.read_u16("format version");
  if (version != kDictionaryFormatVersion) {
    throw VersionError(version, kDictionaryFormatVersion);
  }

  GridSpec grid;
  grid.width = int(reader.read_u32("width"));
  grid.height = int(reader.read_u32("height"));
  grid.x_n = int(reader.read_u32("x_n"));
  grid.y_n = int(reader.read_u32("y_n"));
  const std::uint32_t n_train = reader.read_u32("n_train");
  const std::uint32_t n_classes = reader.read_u32("n_classes");
  try {
    grid.validate();
  } catch (const InvalidArgumentError& e) {
    throw FormatError(path.string() + ": invalid grid header: " + e.what());
  }
  if (n_train == 0 || n_classes == 0 || n_classes > n_train) {
    throw FormatError(path.string() + ": inconsistent column/class counts");
  }

  std::vector<std::string> label_table;
  label_table.reserve(n_classes);
  for (std::uint32_t i = 0; i < n_classes; ++i) {
    const std::uint32_t len = reader.read_u32("label length");
    if (len > 4096) {
      throw FormatError(path.string() + ": label length " +
                        std::to_string(len) + " is implausible");
    }
    label_table.push_back(reader.read_string(len, "label bytes"));
    if (i > 0 && !(label_table[i - 1] < label_table[i])) {
      throw FormatError(path.string() + ": label table is not sorted/unique");
    }
  }

  Dictionary dict;
  dict.grid = grid;
  dict.column_labels.reserve(n_train);
  for (std::uint32_t j = 0; j < n_train; ++j) {
    const std::uint32_t idx = reader.read_u32("column label index");
    if (idx >= n_classes) {
      throw FormatError(path.string() + ": column " + std::to_string(j) +
                        " references label " + std::to_string(idx) +
                        " outside the label table");
    }
    dict.column_labels.push_back(label_table[idx]);
  }

  const Index patch_len = grid.patch_len();
  dict.per_patch.reserve(std::size_t(grid.patch_count()));
  for (int p = 0; p < grid.patch_count(); ++p) {
    Mat mat(patch_len, Index(n_train));
    for (Index c = 0; c < mat.cols(); ++c) {
      for (Index r = 0; r < mat.rows(); ++r) {
        mat(r, c) = reader.read_f64("matrix value");
      }
    }
    dict.per_patch.push_back(std::move(mat));
  }
  if (reader.remaining() != 0) {
    throw FormatError(path.string() + ": " +
                      std::to_string(reader.remaining()) +
                      " trailing bytes after the last patch matrix");
  }

  dict.masks = build_class_masks(dict.column_labels, Index(n_train));
  if (dict.masks.size() != n_classes) {
    throw FormatError(path.string() +
                      ": column labels do not use every table entry");
  }
  return dict;
}

}  // namespace sparsekit

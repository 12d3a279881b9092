#include "vortibc/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vortibc {

namespace {

constexpr char kMagic[4] = {'V', 'B', 'F', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_f64(std::string& out, double x) {
  std::uint64_t v;
  std::memcpy(&v, &x, sizeof v);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  std::uint64_t raw(int bytes) {
    if (pos_ + bytes > s_.size()) throw Error(ErrorCode::IOError, "truncated VBF1 data");
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_++])) << (8 * b);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  double f64() {
    const std::uint64_t v = raw(8);
    double x;
    std::memcpy(&x, &v, sizeof x);
    return x;
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

std::size_t payload_size(const VbfArray& a) {
  std::size_t n = a.components;
  for (std::uint32_t d : a.dims) n *= d;
  return n;
}

void check_shape(const VbfArray& a, const GridPtr& g, std::uint32_t components) {
  if (a.dims.size() != 2 || a.dims[0] != static_cast<std::uint32_t>(g->n1) ||
      a.dims[1] != static_cast<std::uint32_t>(g->n2) || a.components != components)
    throw Error(ErrorCode::IOError, "VBF1 array does not match the grid");
}

}  // namespace

std::string encode_vbf(const VbfArray& a) {
  if (a.data.size() != payload_size(a)) throw Error(ErrorCode::IOError, "VBF1 payload size does not match its shape");
  std::string out(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(a.dims.size()));
  for (std::uint32_t d : a.dims) put_u32(out, d);
  put_u32(out, a.components);
  for (double x : a.data) put_f64(out, x);
  return out;
}

VbfArray decode_vbf(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw Error(ErrorCode::IOError, "missing VBF1 magic");
  Reader r(bytes);
  r.raw(4);
  VbfArray a;
  const std::uint32_t rank = r.u32();
  if (rank > 8) throw Error(ErrorCode::IOError, "VBF1 rank out of range");
  for (std::uint32_t k = 0; k < rank; ++k) a.dims.push_back(r.u32());
  a.components = r.u32();
  const std::size_t n = payload_size(a);
  if (n * 8 > bytes.size()) throw Error(ErrorCode::IOError, "truncated VBF1 data");
  a.data.resize(n);
  for (double& x : a.data) x = r.f64();
  if (!r.done()) throw Error(ErrorCode::IOError, "trailing bytes after VBF1 payload");
  return a;
}

VbfArray to_vbf(const ScalarField& f) {
  return {{static_cast<std::uint32_t>(f.grid->n1), static_cast<std::uint32_t>(f.grid->n2)}, 1, f.v};
}

VbfArray to_vbf(const VectorField& f) {
  VbfArray a{{static_cast<std::uint32_t>(f.grid->n1), static_cast<std::uint32_t>(f.grid->n2)}, 2, {}};
  a.data.reserve(2 * f.size());
  for (int k = 0; k < f.size(); ++k) {
    a.data.push_back(f.x[k]);
    a.data.push_back(f.y[k]);
  }
  return a;
}

ScalarField scalar_from_vbf(const VbfArray& a, const GridPtr& g) {
  check_shape(a, g, 1);
  ScalarField f(g);
  f.v = a.data;
  return f;
}

VectorField vector_from_vbf(const VbfArray& a, const GridPtr& g) {
  check_shape(a, g, 2);
  VectorField f(g);
  for (int k = 0; k < f.size(); ++k) {
    f.x[k] = a.data[2 * k];
    f.y[k] = a.data[2 * k + 1];
  }
  return f;
}

void write_vbf(const std::string& path, const VbfArray& a) { write_file_atomic(path, encode_vbf(a)); }

VbfArray read_vbf(const std::string& path) { return decode_vbf(read_file(path)); }

std::string format_csv(const DiagnosticsRecord& r) {
  std::string out;
  for (std::size_t c = 0; c < r.columns.size(); ++c) out += (c ? "," : "") + r.columns[c];
  out += "\n";
  char buf[32];
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      if (c) out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

void write_csv(const std::string& path, const DiagnosticsRecord& r) { write_file_atomic(path, format_csv(r)); }

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IOError, "cannot write '" + tmp.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error(ErrorCode::IOError, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IOError, "cannot rename onto '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IOError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace vortibc

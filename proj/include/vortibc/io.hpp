#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortibc/diagnostics.hpp"
#include "vortibc/field.hpp"

namespace vortibc {

// VBF1 checkpoint: bytes "VBF1", then little-endian u32 rank, u32 dims[rank],
// u32 components, f64 payload in row-major order with the last dimension
// fastest and the component innermost.  Fields are rank 2 with dims n1, n2,
// which matches the node order k = i * n2 + j.
struct VbfArray {
  std::vector<std::uint32_t> dims;
  std::uint32_t components = 1;
  std::vector<double> data;

  bool operator==(const VbfArray&) const = default;
};

std::string encode_vbf(const VbfArray& a);
VbfArray decode_vbf(const std::string& bytes);
VbfArray to_vbf(const ScalarField& f);
VbfArray to_vbf(const VectorField& f);
// The array must match the grid's n1 x n2 and carry one or two components.
ScalarField scalar_from_vbf(const VbfArray& a, const GridPtr& g);
VectorField vector_from_vbf(const VbfArray& a, const GridPtr& g);

void write_vbf(const std::string& path, const VbfArray& a);
VbfArray read_vbf(const std::string& path);

// Header row, then one row per record row, doubles as %.17g.
std::string format_csv(const DiagnosticsRecord& r);
void write_csv(const std::string& path, const DiagnosticsRecord& r);

// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace vortibc

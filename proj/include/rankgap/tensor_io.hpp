#pragma once

#include <iosfwd>
#include <string>

#include "rankgap/tensor.hpp"

namespace rankgap::io {

enum class TensorLayout { kDense, kSparse };

// Dense documents:  {"shape": [...], "entries": ["p/q", ...]}  (row-major)
// Sparse documents: {"shape": [...], "nonzeros": [{"index": [...], "value": "p/q"}, ...]}
std::string write_tensor(const DenseTensor& t,
                         TensorLayout layout = TensorLayout::kDense);
DenseTensor read_tensor(const std::string& text,
                        const SizeBudget& budget = {});

void save_tensor(const std::string& path, const DenseTensor& t,
                 TensorLayout layout = TensorLayout::kDense);
DenseTensor load_tensor(const std::string& path,
                        const SizeBudget& budget = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace rankgap::io

#pragma once

#include <cstdint>
#include <vector>

#include "condenser/simd/kernels.hpp"

namespace condenser::fem {

struct Triplet {
  std::int32_t row, col;
  double value;
};

// Compressed sparse row matrix; duplicate entries are summed on assembly.
struct CsrMatrix {
  std::int32_t rows = 0;
  std::vector<std::int32_t> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> val;

  static CsrMatrix from_triplets(std::int32_t rows, std::vector<Triplet> triplets);

  simd::CsrView view() const { return {row_ptr, col, val}; }
  std::vector<double> diagonal() const;
  std::size_t nonzeros() const noexcept { return val.size(); }
};

}  // namespace condenser::fem

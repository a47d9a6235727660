#include "condenser/fem/sparse.hpp"

#include <algorithm>

namespace condenser::fem {

CsrMatrix CsrMatrix::from_triplets(std::int32_t rows, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.rows = rows;
  m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (std::size_t i = 0; i < triplets.size();) {
    const Triplet& t = triplets[i];
    double v = 0.0;
    std::size_t j = i;
    for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j) v += triplets[j].value;
    m.col.push_back(t.col);
    m.val.push_back(v);
    ++m.row_ptr[static_cast<std::size_t>(t.row) + 1];
    i = j;
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(rows), 0.0);
  for (std::int32_t r = 0; r < rows; ++r)
    for (std::int32_t k = row_ptr[static_cast<std::size_t>(r)]; k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
      if (col[static_cast<std::size_t>(k)] == r) d[static_cast<std::size_t>(r)] += val[static_cast<std::size_t>(k)];
  return d;
}

}  // namespace condenser::fem

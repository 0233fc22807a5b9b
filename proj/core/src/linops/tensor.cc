#include "refgame/linops/tensor.h"

#include <numeric>

#include "refgame/common.h"

namespace refgame::linops {
namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Stride of each factor in the flat index (first factor most significant).
std::vector<std::size_t> strides(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

// Flat offsets of every multi-index over the factor subset `which`.
std::vector<std::size_t> subset_offsets(std::span<const std::size_t> dims,
                                        const std::vector<std::size_t>& which) {
  const auto st = strides(dims);
  std::vector<std::size_t> offsets{0};
  for (std::size_t w : which) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[w]);
    for (std::size_t base : offsets) {
      for (std::size_t d = 0; d < dims[w]; ++d) next.push_back(base + d * st[w]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i1 = 0; i1 < da; ++i1) {
    for (std::size_t j1 = 0; j1 < da; ++j1) {
      const Complex x = a(i1, j1);
      if (x == Complex(0.0)) continue;
      for (std::size_t i2 = 0; i2 < db; ++i2) {
        for (std::size_t j2 = 0; j2 < db; ++j2) out(i1 * db + i2, j1 * db + j2) = x * b(i2, j2);
      }
    }
  }
  return out;
}

Vector tensor(std::span<const Complex> a, std::span<const Complex> b) {
  Vector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            const std::set<std::size_t>& traced) {
  if (product(dims) != m.dim()) throw InputError("partial trace: dims do not match matrix");
  std::vector<std::size_t> kept;
  std::vector<std::size_t> gone;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (traced.count(i)) {
      gone.push_back(i);
    } else {
      kept.push_back(i);
    }
  }
  for (std::size_t t : traced) {
    if (t >= dims.size()) throw InputError("partial trace: factor index out of range");
  }
  const auto koff = subset_offsets(dims, kept);
  const auto toff = subset_offsets(dims, gone);
  ComplexMatrix out(koff.size());
  for (std::size_t r = 0; r < koff.size(); ++r) {
    for (std::size_t c = 0; c < koff.size(); ++c) {
      Complex s = 0.0;
      for (std::size_t t : toff) s += m(koff[r] + t, koff[c] + t);
      out(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                            const std::set<std::string>& traced_ids) {
  std::set<std::size_t> traced;
  for (const auto& id : traced_ids) traced.insert(layout.index_of(id));
  const auto dims = layout.dims();
  return partial_trace(m, dims, traced);
}

ComplexMatrix permute_factors(const ComplexMatrix& m, std::span<const std::size_t> dims,
                              std::span<const std::size_t> order) {
  if (product(dims) != m.dim()) throw InputError("permute: dims do not match matrix");
  if (order.size() != dims.size()) throw InputError("permute: order has wrong length");
  // new_dims[k] = dims[order[k]]; an old flat index maps to the new one by
  // relocating each digit.
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  const auto old_st = strides(dims);
  const auto new_st = strides(new_dims);
  const std::size_t n = m.dim();
  std::vector<std::size_t> map(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t out = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t digit = (idx / old_st[order[k]]) % dims[order[k]];
      out += digit * new_st[k];
    }
    map[idx] = out;
  }
  ComplexMatrix result(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) result(map[r], map[c]) = m(r, c);
  }
  return result;
}

ComplexMatrix embed_with_identity(const ComplexMatrix& kept, std::span<const std::size_t> dims,
                                  std::size_t position) {
  if (position >= dims.size()) throw InputError("embed: position out of range");
  std::vector<std::size_t> keep_idx;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i != position) keep_idx.push_back(i);
  }
  const auto koff = subset_offsets(dims, keep_idx);
  if (koff.size() != kept.dim()) throw InputError("embed: kept matrix has wrong dimension");
  const auto st = strides(dims);
  ComplexMatrix out(product(dims));
  for (std::size_t r = 0; r < koff.size(); ++r) {
    for (std::size_t c = 0; c < koff.size(); ++c) {
      const Complex x = kept(r, c);
      for (std::size_t e = 0; e < dims[position]; ++e) {
        out(koff[r] + e * st[position], koff[c] + e * st[position]) = x;
      }
    }
  }
  return out;
}

}  // namespace refgame::linops

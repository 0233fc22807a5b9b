#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "refgame/linops/layout.h"
#include "refgame/linops/matrix.h"

namespace refgame::linops {

// Kronecker product; `a` is the more significant factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
Vector tensor(std::span<const Complex> a, std::span<const Complex> b);

// Trace out the factors at positions `traced` of a matrix on the product space
// with factor dimensions `dims`. Kept factors stay in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            const std::set<std::size_t>& traced);

// Layout-addressed partial trace. Throws InputError on unknown ids.
ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                            const std::set<std::string>& traced_ids);

// Reorder tensor factors: factor k of the result is factor order[k] of `m`.
ComplexMatrix permute_factors(const ComplexMatrix& m, std::span<const std::size_t> dims,
                              std::span<const std::size_t> order);

// Inverse of the partial trace adjoint: the operator equal to `kept` on every
// factor except `position`, and the identity on factor `position`.
ComplexMatrix embed_with_identity(const ComplexMatrix& kept, std::span<const std::size_t> dims,
                                  std::size_t position);

}  // namespace refgame::linops

#include "refgame/linops/eigen.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "refgame/common.h"

namespace refgame::linops {
namespace {

constexpr double kHermitianTol = 1e-10;
// Eigenvalues closer than this (relative to the spectral scale) share an eigenspace.
constexpr double kDegenerateTol = 1e-9;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

// Zero a(p,q) with the unitary J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on (p,q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.dim();
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ph_conj = std::conj(phase);  // e^{-i phi}

  // A <- A J
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * ph_conj * akq;
    a(k, q) = s * akp + c * ph_conj * akq;
  }
  // A <- J^dagger A
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  // V <- V J
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * ph_conj * vkq;
    v(k, q) = s * vkp + c * ph_conj * vkq;
  }
}

EigenPair extremal_pair(const ComplexMatrix& h, bool top) {
  const EigenDecomposition eig = hermitian_eigen(h);
  const std::size_t n = h.dim();
  const double target = top ? eig.values.back() : eig.values.front();
  double scale = 1.0;
  for (double x : eig.values) scale = std::max(scale, std::abs(x));

  // Project the start vector onto the extremal eigenspace.
  const Complex start = 1.0 / std::sqrt(static_cast<double>(n));
  Vector proj(n, 0.0);
  std::size_t fallback = top ? n - 1 : 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(eig.values[j] - target) > kDegenerateTol * scale) continue;
    Complex coeff = 0.0;
    for (std::size_t r = 0; r < n; ++r) coeff += std::conj(eig.vectors(r, j)) * start;
    for (std::size_t r = 0; r < n; ++r) proj[r] += coeff * eig.vectors(r, j);
  }
  double nrm = norm(proj);
  EigenPair out;
  out.value = target;
  if (nrm > 1e-6) {
    for (auto& x : proj) x /= nrm;
    out.vector = std::move(proj);
  } else {
    out.vector = eig.column(fallback);
  }
  return out;
}

}  // namespace

Vector EigenDecomposition::column(std::size_t j) const {
  Vector out(vectors.dim());
  for (std::size_t r = 0; r < vectors.dim(); ++r) out[r] = vectors(r, j);
  return out;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& h, const EigenOptions& opts) {
  if (h.empty()) throw InputError("eigendecomposition of an empty matrix");
  if (!h.is_hermitian(kHermitianTol)) throw InputError("matrix is not Hermitian");
  const std::size_t n = h.dim();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double stop = opts.tolerance * std::max(scale, 1e-300);
  const int max_sweeps = opts.max_sweeps_per_dim * static_cast<int>(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) > 1e-300) jacobi_rotate(a, v, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

EigenPair top_eigpair(const ComplexMatrix& h) { return extremal_pair(h, true); }
EigenPair bottom_eigpair(const ComplexMatrix& h) { return extremal_pair(h, false); }

double max_eigenvalue(const ComplexMatrix& h) { return hermitian_eigen(h).values.back(); }
double min_eigenvalue(const ComplexMatrix& h) { return hermitian_eigen(h).values.front(); }

ComplexMatrix apply_spectral(const EigenDecomposition& eig,
                             const std::function<double(double)>& f) {
  const std::size_t n = eig.vectors.dim();
  std::vector<double> fv(n);
  for (std::size_t j = 0; j < n; ++j) fv[j] = f(eig.values[j]);
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (fv[j] != 0.0) s += eig.vectors(r, j) * fv[j] * std::conj(eig.vectors(c, j));
      }
      out(r, c) = s;
      out(c, r) = std::conj(s);
    }
    out(r, r) = out(r, r).real();
  }
  return out;
}

ComplexMatrix project_psd(const ComplexMatrix& h) {
  return apply_spectral(hermitian_eigen(h), [](double x) { return x > 0.0 ? x : 0.0; });
}

ComplexMatrix gibbs_state(const ComplexMatrix& h) {
  const EigenDecomposition eig = hermitian_eigen(h);
  const double top = eig.values.back();
  double z = 0.0;
  for (double x : eig.values) z += std::exp(x - top);
  return apply_spectral(eig, [&](double x) { return std::exp(x - top) / z; });
}

std::optional<HpdInverse> hpd_inverse(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  // Lower-triangular L with A = L L^dagger.
  ComplexMatrix l(n);
  double log_det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    log_det += 2.0 * std::log(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  // L^{-1} by forward substitution, then A^{-1} = L^{-dagger} L^{-1}.
  ComplexMatrix linv(n);
  for (std::size_t c = 0; c < n; ++c) {
    linv(c, c) = 1.0 / l(c, c).real();
    for (std::size_t r = c + 1; r < n; ++r) {
      Complex s = 0.0;
      for (std::size_t k = c; k < r; ++k) s -= l(r, k) * linv(k, c);
      linv(r, c) = s / l(r, r).real();
    }
  }
  HpdInverse out;
  out.inverse = ComplexMatrix(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t k = std::max(r, c); k < n; ++k) s += std::conj(linv(k, r)) * linv(k, c);
      out.inverse(r, c) = s;
      out.inverse(c, r) = std::conj(s);
    }
    out.inverse(r, r) = out.inverse(r, r).real();
  }
  out.log_det = log_det;
  return out;
}

}  // namespace refgame::linops

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "dds/barrier.hpp"
#include "dds/error.hpp"

namespace dds {

Domain::Domain(std::vector<BarrierAtom> atoms, Index dimension)
    : atoms_{std::move(atoms)}, dimension_{dimension} {
  std::vector<int> hits(static_cast<std::size_t>(std::max<Index>(dimension, 0)), 0);
  for (const auto& atom : atoms_) {
    validate_atom(atom);
    for (Index c : atom.coords) {
      if (c < 0 || c >= dimension_) {
        throw Error{ErrorCode::atom_coverage,
                    "atom coordinate " + std::to_string(c + 1) +
                        " is outside 1.." + std::to_string(dimension_)};
      }
      ++hits[static_cast<std::size_t>(c)];
    }
    theta_ += atom.theta();
  }
  for (Index i = 0; i < dimension_; ++i) {
    const int h = hits[static_cast<std::size_t>(i)];
    if (h == 0) {
      throw Error{ErrorCode::atom_coverage,
                  "coordinate " + std::to_string(i + 1) + " is not covered by any atom"};
    }
    if (h > 1) {
      throw Error{ErrorCode::atom_coverage,
                  "coordinate " + std::to_string(i + 1) + " is claimed by " +
                      std::to_string(h) + " atoms"};
    }
  }
}

Vector Domain::gather(const BarrierAtom& atom, const Vector& z) const {
  Vector local(atom.size());
  for (Index k = 0; k < atom.size(); ++k) local(k) = z(atom.coords[k]);
  return local;
}

double Domain::value(const Vector& z, Side side) const {
  double total = 0.0;
  for (const auto& atom : atoms_) total += atom_value(atom, gather(atom, z), side);
  return total;
}

Vector Domain::gradient(const Vector& z, Side side) const {
  Vector g(dimension_);
  for (const auto& atom : atoms_) {
    const Vector local = atom_gradient(atom, gather(atom, z), side);
    for (Index k = 0; k < atom.size(); ++k) g(atom.coords[k]) = local(k);
  }
  return g;
}

Matrix Domain::hessian(const Vector& z, Side side) const {
  Matrix h = Matrix::Zero(dimension_, dimension_);
  for (const auto& atom : atoms_) {
    const Matrix local = atom_hessian(atom, gather(atom, z), side);
    for (Index i = 0; i < atom.size(); ++i) {
      for (Index j = 0; j < atom.size(); ++j) {
        h(atom.coords[i], atom.coords[j]) = local(i, j);
      }
    }
  }
  return h;
}

ExtendedReal Domain::support(const Vector& y) const {
  ExtendedReal total = 0.0;
  for (const auto& atom : atoms_) total += atom_support(atom, gather(atom, y));
  return total;
}

double Domain::interior_margin(const Vector& z, Side side) const {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& atom : atoms_) {
    margin = std::min(margin, atom_interior_margin(atom, gather(atom, z), side));
  }
  // NaN coordinates never count as interior.
  if (std::isnan(margin)) return -std::numeric_limits<double>::infinity();
  return margin;
}

double Domain::max_step(const Vector& z, const Vector& dz, Side side) const {
  double step = std::numeric_limits<double>::infinity();
  for (const auto& atom : atoms_) {
    step = std::min(step, atom_max_step(atom, gather(atom, z), gather(atom, dz), side));
  }
  return step;
}

Vector Domain::default_point() const {
  Vector z(dimension_);
  for (const auto& atom : atoms_) {
    const Vector local = atom_default_point(atom);
    for (Index k = 0; k < atom.size(); ++k) z(atom.coords[k]) = local(k);
  }
  return z;
}

double Domain::inverse_hessian_norm(const Vector& z, const Vector& v, Side side) const {
  double sq = 0.0;
  for (const auto& atom : atoms_) {
    const Matrix h = atom_hessian(atom, gather(atom, z), side);
    const Eigen::LLT<Matrix> llt(h);
    if (llt.info() != Eigen::Success) {
      throw Error{ErrorCode::factorization_failure,
                  "barrier Hessian block is not numerically positive-definite"};
    }
    const Vector local = gather(atom, v);
    sq += local.dot(llt.solve(local));
  }
  return std::sqrt(std::max(0.0, sq));
}

double Domain::hessian_norm(const Vector& z, const Vector& v, Side side) const {
  double sq = 0.0;
  for (const auto& atom : atoms_) {
    const Vector local = gather(atom, v);
    sq += local.dot(atom_hessian(atom, gather(atom, z), side) * local);
  }
  return std::sqrt(std::max(0.0, sq));
}

}  // namespace dds

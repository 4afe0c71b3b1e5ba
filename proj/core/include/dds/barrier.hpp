#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dds/extended_real.hpp"

namespace dds {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class AtomKind { halfline_lower, halfline_upper, box, soc };

/// Which function of a conjugate pair is evaluated: the barrier Φ on int D,
/// or its Legendre-Fenchel conjugate Φ* on int D*.
enum class Side { primal, conjugate };

std::string_view to_string(AtomKind kind) noexcept;

/**
 * One factor of the domain D.
 *
 * A point z of the image space belongs to the atom iff z[coords] + offset
 * lies in the canonical set of the kind:
 *   halfline_lower  {w >= l}           Φ = -ln(w - l)               ϑ = 1
 *   halfline_upper  {w <= u}           Φ = -ln(u - w)               ϑ = 1
 *   box             {l <= w <= u}      Φ = -ln(w - l) - ln(u - w)   ϑ = 2
 *   soc             {w0 >= |w_1..|}    Φ = -ln(w0² - |w_1..|²)      ϑ = 2
 *
 * Adding a new atom kind means extending the switch statements in
 * barrier.cpp; nothing outside that file inspects the kind.
 */
struct BarrierAtom {
  AtomKind kind = AtomKind::halfline_lower;
  std::vector<Index> coords;
  Vector offset;
  double lower = 0.0;
  double upper = 0.0;

  Index size() const { return static_cast<Index>(coords.size()); }
  double theta() const;

  static BarrierAtom halfline_lower(std::vector<Index> coords, double l,
                                    Vector offset = {});
  static BarrierAtom halfline_upper(std::vector<Index> coords, double u,
                                    Vector offset = {});
  static BarrierAtom box(std::vector<Index> coords, double l, double u,
                         Vector offset = {});
  static BarrierAtom soc(std::vector<Index> coords, Vector offset = {});
};

/// Throws Error{bad_atom} when the atom violates its per-kind invariants.
void validate_atom(const BarrierAtom& atom);

// Atom-local evaluators. `u` has the atom's length. All throw
// Error{domain_violation} when `u` is not strictly interior to the domain of
// the requested side.
double atom_value(const BarrierAtom& atom, const Vector& u, Side side);
Vector atom_gradient(const BarrierAtom& atom, const Vector& u, Side side);
Matrix atom_hessian(const BarrierAtom& atom, const Vector& u, Side side);

/// δ*(y | atom set) = sup { <y, z> : z + offset in canonical set }.
ExtendedReal atom_support(const BarrierAtom& atom, const Vector& y);

/**
 * Smallest slack of `u` with respect to the closed domain of `side`.
 *
 * Positive iff strictly interior. Returns +inf when the domain is the whole
 * space (the conjugate side of a box).
 */
double atom_interior_margin(const BarrierAtom& atom, const Vector& u, Side side);

/// Supremum of α >= 0 such that u + α du stays strictly interior; +inf if
/// the ray never leaves. Requires `u` interior.
double atom_max_step(const BarrierAtom& atom, const Vector& u, const Vector& du,
                     Side side);

/// Canonical interior point of the atom's primal set, in z coordinates.
Vector atom_default_point(const BarrierAtom& atom);

enum class NormMode { direct, inverse };

/// Hessian of Φ or Φ* at a point; symmetric positive-definite.
struct LocalMetric {
  Matrix matrix;
  Side side = Side::primal;
};

/**
 * ‖v‖_H = sqrt(vᵀHv) (direct) or ‖v‖*_H = sqrt(vᵀH⁻¹v) (inverse, one
 * Cholesky solve). Throws Error{factorization_failure} if H is not
 * numerically positive-definite.
 */
double local_norm(const LocalMetric& metric, const Vector& v, NormMode mode);

/**
 * The product domain D = D_1 x ... x D_k with barrier Φ = Σ Φ_i.
 *
 * Evaluators take full m-vectors and scatter/gather through each atom's
 * coordinate list. Hessians are block diagonal up to a permutation.
 */
class Domain {
 public:
  Domain() = default;
  /// Validates each atom and that the coordinate lists partition {0..m-1}.
  Domain(std::vector<BarrierAtom> atoms, Index dimension);

  Index dimension() const { return dimension_; }
  double theta() const { return theta_; }
  std::span<const BarrierAtom> atoms() const { return atoms_; }

  double value(const Vector& z, Side side) const;
  Vector gradient(const Vector& z, Side side) const;
  Matrix hessian(const Vector& z, Side side) const;

  ExtendedReal support(const Vector& y) const;
  double interior_margin(const Vector& z, Side side) const;
  bool is_interior(const Vector& z, Side side) const {
    return interior_margin(z, side) > 0.0;
  }
  double max_step(const Vector& z, const Vector& dz, Side side) const;
  Vector default_point() const;

  /// Inverse-Hessian norm of v at z, solved one atom block at a time.
  double inverse_hessian_norm(const Vector& z, const Vector& v, Side side) const;
  /// Hessian norm of v at z.
  double hessian_norm(const Vector& z, const Vector& v, Side side) const;

  Vector gather(const BarrierAtom& atom, const Vector& z) const;

 private:
  std::vector<BarrierAtom> atoms_;
  Index dimension_ = 0;
  double theta_ = 0.0;
};

}  // namespace dds

#include "dds/barrier.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "dds/error.hpp"

namespace dds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void throw_domain(const BarrierAtom& atom, Side side) {
  throw Error{ErrorCode::domain_violation,
              std::string{"point is not strictly interior to the "} +
                  (side == Side::primal ? "primal" : "conjugate") +
                  " domain of a " + std::string{to_string(atom.kind)} +
                  " atom"};
}

Vector shifted(const BarrierAtom& atom, const Vector& u) {
  return u + atom.offset;
}

// Split w = (w0, w̄) helpers for the second-order cone.
double soc_head(const Vector& w) { return w(0); }
double soc_tail_norm(const Vector& w) { return w.tail(w.size() - 1).norm(); }

// wᵀJw with J = diag(1, -1, ..., -1).
double lorentz_square(const Vector& w) {
  const double head = w(0);
  const double tail = w.tail(w.size() - 1).squaredNorm();
  return head * head - tail;
}

Vector reflect(const Vector& w) {
  Vector r = -w;
  r(0) = w(0);
  return r;
}

// Hessian of -ln(vᵀJv) at v, with q = vᵀJv.
Matrix log_lorentz_hessian(const Vector& v, double q) {
  const Index k = v.size();
  Matrix h = Matrix::Zero(k, k);
  h(0, 0) = -2.0 / q;
  for (Index i = 1; i < k; ++i) h(i, i) = 2.0 / q;
  const Vector jv = reflect(v);
  h.noalias() += (4.0 / (q * q)) * jv * jv.transpose();
  return h;
}

// Smallest positive root of a α² + 2 b α + c with c > 0; +inf if none.
double first_positive_root(double a, double b, double c) {
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  if (std::abs(a) <= 1e-15 * scale) {
    return b < 0.0 ? -c / (2.0 * b) : kInf;
  }
  const double disc = b * b - a * c;
  if (disc < 0.0) return kInf;
  const double q = -(b + std::copysign(std::sqrt(disc), b));
  double best = kInf;
  if (q != 0.0) {
    const double r1 = q / a;
    const double r2 = c / q;
    if (r1 > 0.0) best = std::min(best, r1);
    if (r2 > 0.0) best = std::min(best, r2);
  } else {
    const double r = -b / a;
    if (r > 0.0) best = r;
  }
  return best;
}

// Largest step keeping v + α dv inside the open second-order cone.
double soc_max_step(const Vector& v, const Vector& dv) {
  const double a = lorentz_square(dv);
  const double b = dv(0) * v(0) - dv.tail(dv.size() - 1).dot(v.tail(v.size() - 1));
  const double c = lorentz_square(v);
  return first_positive_root(a, b, c);
}

double linear_max_step(double slack, double dslack) {
  return dslack < 0.0 ? -slack / dslack : kInf;
}

// Closed-form maximiser of y·w + ln(w - l) + ln(u - w): returns the slacks
// (a, b) = (w* - l, u - w*), both computed without cancellation.
std::pair<double, double> box_conjugate_slacks(double y, double l, double u) {
  const double width = u - l;
  const double r = std::sqrt(y * y * width * width + 4.0);
  const double a = 2.0 * width / (2.0 - y * width + r);
  const double b = 2.0 * width / (2.0 + y * width + r);
  return {a, b};
}

}  // namespace

std::string_view to_string(AtomKind kind) noexcept {
  switch (kind) {
    case AtomKind::halfline_lower:
      return "halfline_lower";
    case AtomKind::halfline_upper:
      return "halfline_upper";
    case AtomKind::box:
      return "box";
    case AtomKind::soc:
      return "soc";
  }
  return "unknown";
}

double BarrierAtom::theta() const {
  switch (kind) {
    case AtomKind::halfline_lower:
    case AtomKind::halfline_upper:
      return 1.0;
    case AtomKind::box:
    case AtomKind::soc:
      return 2.0;
  }
  return 0.0;
}

BarrierAtom BarrierAtom::halfline_lower(std::vector<Index> coords, double l,
                                        Vector offset) {
  BarrierAtom atom{AtomKind::halfline_lower, std::move(coords), std::move(offset),
                   l, 0.0};
  if (atom.offset.size() == 0) atom.offset = Vector::Zero(atom.size());
  return atom;
}

BarrierAtom BarrierAtom::halfline_upper(std::vector<Index> coords, double u,
                                        Vector offset) {
  BarrierAtom atom{AtomKind::halfline_upper, std::move(coords), std::move(offset),
                   0.0, u};
  if (atom.offset.size() == 0) atom.offset = Vector::Zero(atom.size());
  return atom;
}

BarrierAtom BarrierAtom::box(std::vector<Index> coords, double l, double u,
                             Vector offset) {
  BarrierAtom atom{AtomKind::box, std::move(coords), std::move(offset), l, u};
  if (atom.offset.size() == 0) atom.offset = Vector::Zero(atom.size());
  return atom;
}

BarrierAtom BarrierAtom::soc(std::vector<Index> coords, Vector offset) {
  BarrierAtom atom{AtomKind::soc, std::move(coords), std::move(offset), 0.0, 0.0};
  if (atom.offset.size() == 0) atom.offset = Vector::Zero(atom.size());
  return atom;
}

void validate_atom(const BarrierAtom& atom) {
  auto fail = [&](const std::string& why) {
    throw Error{ErrorCode::bad_atom,
                std::string{to_string(atom.kind)} + " atom: " + why};
  };
  if (atom.coords.empty()) fail("empty coordinate list");
  if (atom.offset.size() != atom.size()) {
    fail("offset length " + std::to_string(atom.offset.size()) +
         " does not match coordinate count " + std::to_string(atom.size()));
  }
  if (!atom.offset.allFinite()) fail("offset is not finite");
  switch (atom.kind) {
    case AtomKind::halfline_lower:
    case AtomKind::halfline_upper:
      if (atom.size() != 1) fail("halfline atoms are one-dimensional");
      if (!std::isfinite(atom.lower) || !std::isfinite(atom.upper)) {
        fail("bound is not finite");
      }
      break;
    case AtomKind::box:
      if (atom.size() != 1) fail("box atoms are one-dimensional");
      if (!std::isfinite(atom.lower) || !std::isfinite(atom.upper)) {
        fail("bound is not finite");
      }
      if (!(atom.lower < atom.upper)) fail("requires lower < upper");
      break;
    case AtomKind::soc:
      if (atom.size() < 2) fail("requires at least two coordinates");
      break;
  }
}

double atom_interior_margin(const BarrierAtom& atom, const Vector& u, Side side) {
  if (side == Side::primal) {
    const Vector w = shifted(atom, u);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        return w(0) - atom.lower;
      case AtomKind::halfline_upper:
        return atom.upper - w(0);
      case AtomKind::box:
        return std::min(w(0) - atom.lower, atom.upper - w(0));
      case AtomKind::soc:
        return soc_head(w) - soc_tail_norm(w);
    }
  } else {
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        return -u(0);
      case AtomKind::halfline_upper:
        return u(0);
      case AtomKind::box:
        return kInf;
      case AtomKind::soc:
        return -soc_head(u) - soc_tail_norm(u);
    }
  }
  return -kInf;
}

double atom_value(const BarrierAtom& atom, const Vector& u, Side side) {
  if (!(atom_interior_margin(atom, u, side) > 0.0)) throw_domain(atom, side);
  if (side == Side::primal) {
    const Vector w = shifted(atom, u);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        return -std::log(w(0) - atom.lower);
      case AtomKind::halfline_upper:
        return -std::log(atom.upper - w(0));
      case AtomKind::box:
        return -std::log(w(0) - atom.lower) - std::log(atom.upper - w(0));
      case AtomKind::soc:
        return -std::log(lorentz_square(w));
    }
  } else {
    const double y0 = u(0);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        return -1.0 - std::log(-y0) + y0 * (atom.lower - atom.offset(0));
      case AtomKind::halfline_upper:
        return -1.0 - std::log(y0) + y0 * (atom.upper - atom.offset(0));
      case AtomKind::box: {
        const auto [a, b] = box_conjugate_slacks(y0, atom.lower, atom.upper);
        const double z = atom.lower + a - atom.offset(0);
        return y0 * z + std::log(a) + std::log(b);
      }
      case AtomKind::soc:
        return -2.0 + std::log(4.0) - std::log(lorentz_square(u)) -
               u.dot(atom.offset);
    }
  }
  return 0.0;
}

Vector atom_gradient(const BarrierAtom& atom, const Vector& u, Side side) {
  if (!(atom_interior_margin(atom, u, side) > 0.0)) throw_domain(atom, side);
  Vector g(u.size());
  if (side == Side::primal) {
    const Vector w = shifted(atom, u);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        g(0) = -1.0 / (w(0) - atom.lower);
        break;
      case AtomKind::halfline_upper:
        g(0) = 1.0 / (atom.upper - w(0));
        break;
      case AtomKind::box:
        g(0) = -1.0 / (w(0) - atom.lower) + 1.0 / (atom.upper - w(0));
        break;
      case AtomKind::soc:
        g = (-2.0 / lorentz_square(w)) * reflect(w);
        break;
    }
  } else {
    const double y0 = u(0);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        g(0) = -1.0 / y0 + atom.lower - atom.offset(0);
        break;
      case AtomKind::halfline_upper:
        g(0) = -1.0 / y0 + atom.upper - atom.offset(0);
        break;
      case AtomKind::box: {
        const auto [a, b] = box_conjugate_slacks(y0, atom.lower, atom.upper);
        (void)b;
        g(0) = atom.lower + a - atom.offset(0);
        break;
      }
      case AtomKind::soc:
        g = (-2.0 / lorentz_square(u)) * reflect(u) - atom.offset;
        break;
    }
  }
  return g;
}

Matrix atom_hessian(const BarrierAtom& atom, const Vector& u, Side side) {
  if (!(atom_interior_margin(atom, u, side) > 0.0)) throw_domain(atom, side);
  Matrix h(u.size(), u.size());
  if (side == Side::primal) {
    const Vector w = shifted(atom, u);
    switch (atom.kind) {
      case AtomKind::halfline_lower: {
        const double s = w(0) - atom.lower;
        h(0, 0) = 1.0 / (s * s);
        break;
      }
      case AtomKind::halfline_upper: {
        const double s = atom.upper - w(0);
        h(0, 0) = 1.0 / (s * s);
        break;
      }
      case AtomKind::box: {
        const double a = w(0) - atom.lower;
        const double b = atom.upper - w(0);
        h(0, 0) = 1.0 / (a * a) + 1.0 / (b * b);
        break;
      }
      case AtomKind::soc:
        h = log_lorentz_hessian(w, lorentz_square(w));
        break;
    }
  } else {
    const double y0 = u(0);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
      case AtomKind::halfline_upper:
        h(0, 0) = 1.0 / (y0 * y0);
        break;
      case AtomKind::box: {
        const auto [a, b] = box_conjugate_slacks(y0, atom.lower, atom.upper);
        const double a2 = a * a;
        const double b2 = b * b;
        h(0, 0) = a2 * b2 / (a2 + b2);
        break;
      }
      case AtomKind::soc:
        h = log_lorentz_hessian(u, lorentz_square(u));
        break;
    }
  }
  return h;
}

ExtendedReal atom_support(const BarrierAtom& atom, const Vector& y) {
  switch (atom.kind) {
    case AtomKind::halfline_lower:
      if (y(0) > 0.0) return ExtendedReal::infinity();
      return y(0) * (atom.lower - atom.offset(0));
    case AtomKind::halfline_upper:
      if (y(0) < 0.0) return ExtendedReal::infinity();
      return y(0) * (atom.upper - atom.offset(0));
    case AtomKind::box:
      return std::max(y(0) * (atom.lower - atom.offset(0)),
                      y(0) * (atom.upper - atom.offset(0)));
    case AtomKind::soc:
      if (-soc_head(y) < soc_tail_norm(y)) return ExtendedReal::infinity();
      return -y.dot(atom.offset);
  }
  return ExtendedReal::infinity();
}

double atom_max_step(const BarrierAtom& atom, const Vector& u, const Vector& du,
                     Side side) {
  if (side == Side::primal) {
    const Vector w = shifted(atom, u);
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        return linear_max_step(w(0) - atom.lower, du(0));
      case AtomKind::halfline_upper:
        return linear_max_step(atom.upper - w(0), -du(0));
      case AtomKind::box:
        return std::min(linear_max_step(w(0) - atom.lower, du(0)),
                        linear_max_step(atom.upper - w(0), -du(0)));
      case AtomKind::soc:
        return soc_max_step(w, du);
    }
  } else {
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        return linear_max_step(-u(0), -du(0));
      case AtomKind::halfline_upper:
        return linear_max_step(u(0), du(0));
      case AtomKind::box:
        return kInf;
      case AtomKind::soc:
        return soc_max_step(-u, -du);
    }
  }
  return 0.0;
}

Vector atom_default_point(const BarrierAtom& atom) {
  Vector w = Vector::Zero(atom.size());
  switch (atom.kind) {
    case AtomKind::halfline_lower:
      w(0) = atom.lower + 1.0;
      break;
    case AtomKind::halfline_upper:
      w(0) = atom.upper - 1.0;
      break;
    case AtomKind::box:
      w(0) = 0.5 * (atom.lower + atom.upper);
      break;
    case AtomKind::soc:
      w(0) = 2.0;
      break;
  }
  return w - atom.offset;
}

double local_norm(const LocalMetric& metric, const Vector& v, NormMode mode) {
  const Eigen::LLT<Matrix> llt(metric.matrix);
  if (llt.info() != Eigen::Success) {
    throw Error{ErrorCode::factorization_failure,
                "local metric is not numerically positive-definite"};
  }
  if (mode == NormMode::direct) {
    return std::sqrt(std::max(0.0, v.dot(metric.matrix * v)));
  }
  return std::sqrt(std::max(0.0, v.dot(llt.solve(v))));
}

}  // namespace dds

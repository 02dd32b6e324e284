#include "trilocc/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace trilocc {

namespace {

const PartySignature& shared_signature(const std::vector<MultipartiteState>& states) {
  if (states.empty()) throw PreconditionError("need at least one state");
  for (const MultipartiteState& s : states) {
    if (s.signature != states.front().signature)
      throw DimensionError("states do not share one signature");
  }
  return states.front().signature;
}

void require_two_qubit(const PartySignature& sig, const char* what) {
  if (sig.dims != std::vector<int>{2, 2})
    throw DimensionError(std::string(what) + " is only defined for the [2, 2] signature");
}

// 2x2 matricization M(i, j) = amps(2 i + j) of a two-qubit vector.
Eigen::Matrix2cd matricize(const cvec& amps) {
  Eigen::Matrix2cd m;
  m << amps(0), amps(1), amps(2), amps(3);
  return m;
}

// Distance between projective points (t, 1) and (s, 1) on the Riemann
// sphere; bounded by 1 and insensitive to the magnitude of the roots.
double chordal(cplx t, cplx s) {
  return std::abs(t - s) /
         std::sqrt((1.0 + std::norm(t)) * (1.0 + std::norm(s)));
}

}  // namespace

cmat gram(const std::vector<MultipartiteState>& states) {
  shared_signature(states);
  const int k = static_cast<int>(states.size());
  cmat g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) g(i, j) = inner(states[i], states[j]);
  }
  return g;
}

bool linearly_independent(const std::vector<MultipartiteState>& states, double tol) {
  const cmat g = gram(states);
  Eigen::SelfAdjointEigenSolver<cmat> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol;
}

std::vector<MultipartiteState> orthogonal_complement(
    const std::vector<MultipartiteState>& states, double tol) {
  const PartySignature& sig = shared_signature(states);
  const long dim = sig.total_dim();
  const long k = static_cast<long>(states.size());
  if (k > dim || !linearly_independent(states, tol))
    throw PreconditionError("orthogonal complement of linearly dependent states");

  cmat a(dim, k);
  for (long c = 0; c < k; ++c) a.col(c) = states[c].amps;
  Eigen::JacobiSVD<cmat> svd(a, Eigen::ComputeFullU);
  std::vector<MultipartiteState> basis;
  basis.reserve(dim - k);
  for (long c = k; c < dim; ++c)
    basis.push_back(MultipartiteState{sig, svd.matrixU().col(c)});
  return basis;
}

std::vector<cvec> nullspace_two_rows(const cvec& r1, const cvec& r2) {
  if (r1.size() != r2.size()) throw DimensionError("rows must have equal length");
  const long d = r1.size();
  if (d < 2) throw DimensionError("rows must have length at least 2");
  cmat rows(2, d);
  rows.row(0) = r1.transpose();
  rows.row(1) = r2.transpose();
  Eigen::JacobiSVD<cmat> svd(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double thresh = std::max(1e-12, 1e-10 * sv(0));
  long rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thresh) ++rank;
  }
  std::vector<cvec> basis;
  basis.reserve(d - rank);
  for (long c = rank; c < d; ++c) basis.push_back(svd.matrixV().col(c));
  return basis;
}

ProductState dominant_product_factor(const MultipartiteState& s) {
  require_two_qubit(s.signature, "dominant_product_factor");
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(matricize(s.amps),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  // amps(2i+j) ~ u(i) * conj(v(j)) for the leading Schmidt pair.
  cvec a = svd.matrixU().col(0);
  cvec b = svd.matrixV().col(0).conjugate();
  return make_product_state(s.signature, {std::move(a), std::move(b)});
}

PlaneProductResult product_states_in_plane(const MultipartiteState& u,
                                           const MultipartiteState& v) {
  require_two_qubit(u.signature, "product_states_in_plane");
  require_two_qubit(v.signature, "product_states_in_plane");
  if (std::abs(u.amps.norm() - 1.0) > k_eps_norm || std::abs(v.amps.norm() - 1.0) > k_eps_norm ||
      std::abs(u.amps.dot(v.amps)) > k_eps_zero)
    throw PreconditionError("plane basis must be an orthonormal pair");

  const Eigen::Matrix2cd mu = matricize(u.amps);
  const Eigen::Matrix2cd mv = matricize(v.amps);
  // det(mu + t mv) = c2 t^2 + c1 t + c0; its roots mark the product members.
  const cplx c0 = mu.determinant();
  const cplx c2 = mv.determinant();
  const cplx c1 = mu(0, 0) * mv(1, 1) + mv(0, 0) * mu(1, 1) -
                  mu(0, 1) * mv(1, 0) - mv(0, 1) * mu(1, 0);
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), 1.0});
  const double eps = k_eps_quad * scale;

  PlaneProductResult res;
  res.plane_u = u;
  res.plane_v = v;
  if (std::abs(c0) <= eps && std::abs(c1) <= eps && std::abs(c2) <= eps) {
    res.kind = PlaneProductResult::Kind::all_product;
    return res;
  }

  res.kind = PlaneProductResult::Kind::discrete;
  std::vector<cplx> roots;
  if (std::abs(c2) <= eps) {
    // Degree dropped: one root at infinity, plus -c0/c1 when linear.
    res.root_at_infinity = true;
    if (std::abs(c1) > eps) roots.push_back(-c0 / c1);
  } else {
    const cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    // Citardauq-style split keeps both roots accurate when they differ
    // wildly in magnitude.
    const cplx q = (std::abs(c1 + disc) >= std::abs(c1 - disc)) ? -0.5 * (c1 + disc)
                                                                : -0.5 * (c1 - disc);
    cplx t1, t2;
    if (std::abs(q) > 0.0) {
      t1 = q / c2;
      t2 = c0 / q;
    } else {
      t1 = t2 = 0.0;  // c1 = 0 and c0 c2 = 0 here, so 0 is a double root
    }
    for (cplx t : {t1, t2}) {
      if (std::abs(t) > k_root_infinity) {
        res.root_at_infinity = true;
      } else {
        roots.push_back(t);
      }
    }
  }

  for (cplx t : roots) {
    bool fresh = true;
    for (cplx seen : res.finite_roots) {
      if (chordal(t, seen) <= k_eps_root) {
        fresh = false;
        break;
      }
    }
    if (fresh) res.finite_roots.push_back(t);
  }

  for (cplx t : res.finite_roots) {
    const MultipartiteState member = make_state(u.signature, u.amps + t * v.amps);
    res.members.push_back(dominant_product_factor(member));
  }
  if (res.root_at_infinity) res.members.push_back(dominant_product_factor(v));
  return res;
}

}  // namespace trilocc

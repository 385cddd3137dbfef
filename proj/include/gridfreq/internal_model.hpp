#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gridfreq {

/// Configuration of the per-area adaptive internal model.
///
/// The model assumes the unknown power variation is a constant plus
/// `num_sinusoids` sinusoids, realized by a companion-form oscillator bank of
/// dimension 2*num_sinusoids + 1.
struct IMConfig {
  int num_sinusoids = 3;    ///< s, number of modeled sinusoids
  Eigen::VectorXd r;        ///< stabilizing row R, length 2s+1, last entry 1
  double g_gain = 1.0;      ///< gain on the last entry of the injection vector
  double k_alpha = 10.0;    ///< adaptation gain for the frequency coefficients
  double alpha_cap = 1e6;   ///< divergence guard on |alpha_hat|

  int dim() const { return 2 * num_sinusoids + 1; }
};

/// Per-area adaptive compensator state.
struct InternalModelState {
  double eta = 0.0;            ///< imbalance estimator
  Eigen::VectorXd zeta;        ///< oscillator-bank state, length 2s+1
  Eigen::VectorXd alpha_hat;   ///< frequency-coefficient estimate, length s
};

inline InternalModelState make_im_state(const IMConfig& cfg) {
  InternalModelState st;
  st.zeta = Eigen::VectorXd::Zero(cfg.dim());
  st.alpha_hat = Eigen::VectorXd::Zero(cfg.num_sinusoids);
  return st;
}

/// Companion matrix A(alpha): a (2s+1)-dimensional shift block with the
/// coefficient row (0, a1, 0, a2, ..., as, 0) at the bottom. Its
/// characteristic polynomial is tau * prod(tau^2 + a_l^2) when alpha comes
/// from a frequency set.
inline Eigen::MatrixXd companion_matrix(const Eigen::VectorXd& alpha) {
  const Eigen::Index s = alpha.size();
  if (s < 1) throw std::invalid_argument("companion_matrix: empty coefficient vector");
  const Eigen::Index dim = 2 * s + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  a.block(0, 1, dim - 1, dim - 1).setIdentity();
  for (Eigen::Index m = 0; m < s; ++m) {
    a(dim - 1, 2 * m + 1) = alpha[m];
  }
  return a;
}

/// Binomial coefficients of (tau+1)^(2s): the stabilizing row whose
/// polynomial has every root at -1. Last entry is 1 by construction.
inline Eigen::VectorXd default_r_vector(int num_sinusoids) {
  if (num_sinusoids < 1) {
    throw std::invalid_argument("default_r_vector: need at least one sinusoid");
  }
  const int n = 2 * num_sinusoids;
  Eigen::VectorXd r(n + 1);
  double c = 1.0;
  for (int k = 0; k <= n; ++k) {
    r[k] = c;
    c = c * (n - k) / (k + 1);
  }
  return r;
}

/// Output row of the internal model: R * (I + A(alpha)).
inline Eigen::VectorXd a_tilde(const Eigen::VectorXd& alpha, const Eigen::VectorXd& r) {
  const Eigen::Index dim = 2 * alpha.size() + 1;
  if (r.size() != dim) {
    throw std::invalid_argument("a_tilde: R length " + std::to_string(r.size()) +
                                " does not match dimension " + std::to_string(dim));
  }
  const Eigen::MatrixXd ipa =
      Eigen::MatrixXd::Identity(dim, dim) + companion_matrix(alpha);
  Eigen::VectorXd row(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) acc += r[i] * ipa(i, k);
    row[k] = acc;
  }
  return row;
}

/// Injection vector G = (0, ..., 0, 1, g_gain)^T of length 2s+1.
inline Eigen::VectorXd g_vector(int num_sinusoids, double g_gain) {
  if (num_sinusoids < 1) {
    throw std::invalid_argument("g_vector: need at least one sinusoid");
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * num_sinusoids + 1);
  g[g.size() - 2] = 1.0;
  g[g.size() - 1] = g_gain;
  return g;
}

/// Regressor selector: the even-position components (zeta_2, zeta_4, ...,
/// zeta_{2s}) that multiply the frequency coefficients in the companion row.
inline Eigen::VectorXd regressor(const Eigen::VectorXd& zeta) {
  if (zeta.size() < 3 || zeta.size() % 2 == 0) {
    throw std::invalid_argument("regressor: state length must be odd and >= 3");
  }
  const Eigen::Index s = (zeta.size() - 1) / 2;
  Eigen::VectorXd lam(s);
  for (Eigen::Index m = 0; m < s; ++m) lam[m] = zeta[2 * m + 1];
  return lam;
}

struct IMDerivatives {
  Eigen::VectorXd zeta_rate;
  Eigen::VectorXd alpha_hat_rate;
};

/// Adaptation dynamics driven by the estimator residual e = eta + R*zeta:
///   d zeta / dt      = A(alpha_hat) * zeta - G * e
///   d alpha_hat / dt = -k_alpha * regressor(zeta) * e
inline IMDerivatives im_derivatives(const InternalModelState& st, const IMConfig& cfg) {
  const Eigen::Index dim = cfg.dim();
  if (st.zeta.size() != dim || st.alpha_hat.size() != cfg.num_sinusoids ||
      cfg.r.size() != dim) {
    throw std::invalid_argument("im_derivatives: state/config dimension mismatch");
  }
  const double e = st.eta + cfg.r.dot(st.zeta);

  IMDerivatives d;
  d.zeta_rate.resize(dim);
  for (Eigen::Index i = 0; i + 1 < dim; ++i) d.zeta_rate[i] = st.zeta[i + 1];
  double last = 0.0;
  for (Eigen::Index m = 0; m < cfg.num_sinusoids; ++m) {
    last += st.alpha_hat[m] * st.zeta[2 * m + 1];
  }
  d.zeta_rate[dim - 1] = last;
  d.zeta_rate[dim - 2] -= e;
  d.zeta_rate[dim - 1] -= cfg.g_gain * e;

  d.alpha_hat_rate = -cfg.k_alpha * e * regressor(st.zeta);

  if (!d.zeta_rate.allFinite() || !d.alpha_hat_rate.allFinite()) {
    throw std::runtime_error("im_derivatives: non-finite result");
  }
  return d;
}

/// Current estimate of the tracked variation: a_tilde(alpha_hat) . zeta, MW.
inline double im_output(const InternalModelState& st, const IMConfig& cfg) {
  return a_tilde(st.alpha_hat, cfg.r).dot(st.zeta);
}

}  // namespace gridfreq

#include "mhvg/dgp.hpp"

#include <cmath>
#include <stdexcept>

#include "mhvg/common.hpp"

namespace mhvg {

namespace {

// 2x2 noise covariance; correlated draws use the lower Cholesky factor.
struct NoiseCov {
  double var1, cov, var2;
};

constexpr NoiseCov kIdentityCov{1.0, 0.0, 1.0};
constexpr NoiseCov kWeakCov{1.0, 0.1, 1.5};
constexpr NoiseCov kStrongCov{1.0, 0.86, 1.5};

// Draws eps ~ N(0, cov) as L * z with z two independent standard normals.
class NoiseSource {
 public:
  NoiseSource(const NoiseCov& cov, std::uint64_t seed)
      : rng_(seed),
        l11_(std::sqrt(cov.var1)),
        l21_(cov.cov / std::sqrt(cov.var1)),
        l22_(std::sqrt(cov.var2 - cov.cov * cov.cov / cov.var1)) {}

  void draw(double& e1, double& e2) {
    const double z1 = rng_.normal();
    const double z2 = rng_.normal();
    e1 = l11_ * z1;
    e2 = l21_ * z1 + l22_ * z2;
  }

 private:
  GaussianRng rng_;
  double l11_, l21_, l22_;
};

MultiSeries white_noise(const NoiseCov& cov, std::int64_t length,
                        std::uint64_t seed) {
  NoiseSource noise(cov, seed);
  std::vector<double> y1(length), y2(length);
  for (std::int64_t t = 0; t < length; ++t) noise.draw(y1[t], y2[t]);
  return MultiSeries({std::move(y1), std::move(y2)});
}

// VAR(1): Y_t = phi + Phi * Y_{t-1} + eps_t, started at the stationary
// mean (I - Phi)^{-1} phi and run burn_in extra steps that are discarded.
MultiSeries var1(const double phi[2], const double Phi[4],
                 const NoiseCov& cov, std::int64_t length,
                 std::int64_t burn_in, std::uint64_t seed) {
  const double a = 1.0 - Phi[0];
  const double b = -Phi[1];
  const double c = -Phi[2];
  const double d = 1.0 - Phi[3];
  const double det = a * d - b * c;
  double prev1 = (d * phi[0] - b * phi[1]) / det;
  double prev2 = (-c * phi[0] + a * phi[1]) / det;

  NoiseSource noise(cov, seed);
  std::vector<double> y1(length), y2(length);
  for (std::int64_t t = 0; t < burn_in + length; ++t) {
    double e1 = 0, e2 = 0;
    noise.draw(e1, e2);
    const double cur1 = phi[0] + Phi[0] * prev1 + Phi[1] * prev2 + e1;
    const double cur2 = phi[1] + Phi[2] * prev1 + Phi[3] * prev2 + e2;
    if (t >= burn_in) {
      y1[t - burn_in] = cur1;
      y2[t - burn_in] = cur2;
    }
    prev1 = cur1;
    prev2 = cur2;
  }
  return MultiSeries({std::move(y1), std::move(y2)});
}

// Diagonal bivariate conditionally heteroscedastic model driven by
// correlated innovations. The variance recursion keeps the smoothing term
// contemporaneous,
//   sigma_{i,t} = omega_i + alpha_i * Y_{i,t-1}^2 + beta_i * sigma_{i,t},
// which resolves to sigma_{i,t} = (omega_i + alpha_i * Y_{i,t-1}^2) / (1 - beta_i),
// with observations Y_{i,t} = sqrt(sigma_{i,t}) * eps_{i,t}, eps_t ~ N(0, cov).
// The effective news impact alpha / (1 - beta) is large, so the series shows
// the pronounced heavy-tailed volatility bursts these benchmarks rely on,
// while the unconditional variance solves to the usual fixed point:
// E[sigma_i] = omega_i / (1 - beta_i - alpha_i * Var(eps_i)). The recursion
// starts at omega / (1 - alpha - beta); burn-in discards any initial effect
// (the state at t depends on the previous observation only).
MultiSeries garch11(const double omega[2], const double alpha[2],
                    const double beta[2], const NoiseCov& cov,
                    std::int64_t length, std::int64_t burn_in,
                    std::uint64_t seed) {
  double s1 = omega[0] / (1.0 - alpha[0] - beta[0]);
  double s2 = omega[1] / (1.0 - alpha[1] - beta[1]);

  NoiseSource noise(cov, seed);
  std::vector<double> y1(length), y2(length);
  double prev_y1 = 0, prev_y2 = 0;
  for (std::int64_t t = 0; t < burn_in + length; ++t) {
    if (t > 0) {
      s1 = (omega[0] + alpha[0] * prev_y1 * prev_y1) / (1.0 - beta[0]);
      s2 = (omega[1] + alpha[1] * prev_y2 * prev_y2) / (1.0 - beta[1]);
    }
    double e1 = 0, e2 = 0;
    noise.draw(e1, e2);
    const double cur1 = std::sqrt(s1) * e1;
    const double cur2 = std::sqrt(s2) * e2;
    if (t >= burn_in) {
      y1[t - burn_in] = cur1;
      y2[t - burn_in] = cur2;
    }
    prev_y1 = cur1;
    prev_y2 = cur2;
  }
  return MultiSeries({std::move(y1), std::move(y2)});
}

}  // namespace

const char* to_string(DgpKind kind) {
  switch (kind) {
    case DgpKind::iBWN: return "iBWN";
    case DgpKind::cBWN: return "cBWN";
    case DgpKind::wVAR: return "wVAR";
    case DgpKind::sVAR: return "sVAR";
    case DgpKind::wGARCH: return "wGARCH";
    case DgpKind::sGARCH: return "sGARCH";
  }
  return "?";
}

std::optional<DgpKind> dgp_from_string(std::string_view name) {
  for (DgpKind kind : all_dgp_kinds()) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

const std::vector<DgpKind>& all_dgp_kinds() {
  static const std::vector<DgpKind> kinds = {
      DgpKind::iBWN, DgpKind::cBWN,   DgpKind::wVAR,
      DgpKind::sVAR, DgpKind::wGARCH, DgpKind::sGARCH};
  return kinds;
}

MultiSeries generate(const DgpSpec& spec) {
  if (spec.length < 2) {
    throw std::invalid_argument("generate: length must be >= 2");
  }
  if (spec.burn_in < 0) {
    throw std::invalid_argument("generate: burn_in must be >= 0");
  }

  // Model parameters of the six benchmark processes.
  static constexpr double kWvarPhi[2] = {2.5, 0.5};
  static constexpr double kWvarMat[4] = {0.20, 0.10, 0.02, 0.10};
  static constexpr double kSvarPhi[2] = {0.0, 0.0};
  static constexpr double kSvarMat[4] = {0.70, 0.02, 0.30, 0.80};
  static constexpr double kGarchOmega[2] = {0.05, 0.02};
  static constexpr double kGarchAlpha[2] = {0.10, 0.05};
  static constexpr double kGarchBeta[2] = {0.85, 0.88};

  switch (spec.kind) {
    case DgpKind::iBWN:
      return white_noise(kIdentityCov, spec.length, spec.seed);
    case DgpKind::cBWN:
      return white_noise(kStrongCov, spec.length, spec.seed);
    case DgpKind::wVAR:
      return var1(kWvarPhi, kWvarMat, kWeakCov, spec.length, spec.burn_in,
                  spec.seed);
    case DgpKind::sVAR:
      return var1(kSvarPhi, kSvarMat, kStrongCov, spec.length, spec.burn_in,
                  spec.seed);
    case DgpKind::wGARCH:
      return garch11(kGarchOmega, kGarchAlpha, kGarchBeta, kWeakCov,
                     spec.length, spec.burn_in, spec.seed);
    case DgpKind::sGARCH:
      return garch11(kGarchOmega, kGarchAlpha, kGarchBeta, kStrongCov,
                     spec.length, spec.burn_in, spec.seed);
  }
  throw std::invalid_argument("generate: unknown model kind");
}

}  // namespace mhvg

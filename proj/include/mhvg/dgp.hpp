#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mhvg/series.hpp"

namespace mhvg {

/// The six bivariate benchmark generators: independent / correlated white
/// noise, weak / strong VAR(1), and weak / strong diagonal GARCH(1,1) with
/// correlated innovations. "Weak" and "strong" refer to the amount of
/// cross-correlation between the two components.
enum class DgpKind { iBWN, cBWN, wVAR, sVAR, wGARCH, sGARCH };

const char* to_string(DgpKind kind);
std::optional<DgpKind> dgp_from_string(std::string_view name);
const std::vector<DgpKind>& all_dgp_kinds();

/// Everything needed to reproduce one synthetic instance. Equal specs
/// always generate bit-identical output.
struct DgpSpec {
  DgpKind kind = DgpKind::iBWN;
  std::int64_t length = 0;     ///< samples returned; must be >= 2
  std::uint64_t seed = 0;      ///< PRNG seed
  std::int64_t burn_in = 500;  ///< discarded leading samples (recursive
                               ///< kinds only; white noise has no memory)
};

/// Draws one instance of the process described by `spec`.
/// Recursions start at fixed initial states (VAR at the stationary mean,
/// GARCH at omega / (1 - alpha - beta)), then run burn_in extra steps that
/// are discarded. Correlated innovations come from the lower Cholesky
/// factor of the noise covariance applied to independent normals.
MultiSeries generate(const DgpSpec& spec);

}  // namespace mhvg

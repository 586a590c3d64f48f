#pragma once

namespace peb {

/// Speed of light in vacuum [m/s].
inline constexpr double kSpeedOfLight = 299792458.0;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Near-field guard radius [m]: the far-field radar equation is not valid
/// closer than this, so link evaluation refuses shorter ranges.
inline constexpr double kNearFieldRadiusM = 1.0;

/// Condition-number limit beyond which a matrix is treated as singular.
inline constexpr double kConditionLimit = 1e12;

/// |cos θ_R| below this is treated as exact endfire when evaluating the
/// closed-form angle bounds: within ~a picoradian of ±90° the bound exceeds
/// any physical scale and is reported as +inf rather than a meaningless
/// astronomically large number.
inline constexpr double kEndfireCosLimit = 1e-12;

}  // namespace peb

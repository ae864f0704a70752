#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nafd {

/// MR pairs conjugate precoding with conjugate combining; ZF pairs the
/// pseudo-inverse precoder with the pseudo-inverse combiner.
enum class Scheme { kMR, kZF };

/// DL detection with beamforming-trained estimates or with prior means only.
enum class CsiMode { kEstimated, kStatistical };

/// UL detection with or without cross-link interference cancellation.
enum class IcMode { kWith, kWithout };

inline std::string_view to_string(Scheme s) { return s == Scheme::kMR ? "mr" : "zf"; }
inline std::string_view to_string(CsiMode c) {
  return c == CsiMode::kEstimated ? "estimated" : "statistical";
}
inline std::string_view to_string(IcMode i) { return i == IcMode::kWith ? "on" : "off"; }

inline Scheme parse_scheme(std::string_view s) {
  if (s == "mr" || s == "MR") return Scheme::kMR;
  if (s == "zf" || s == "ZF") return Scheme::kZF;
  throw std::invalid_argument("unknown scheme '" + std::string(s) + "' (expected mr|zf)");
}
inline CsiMode parse_csi(std::string_view s) {
  if (s == "estimated") return CsiMode::kEstimated;
  if (s == "statistical") return CsiMode::kStatistical;
  throw std::invalid_argument("unknown csi mode '" + std::string(s) +
                              "' (expected estimated|statistical)");
}
inline IcMode parse_ic(std::string_view s) {
  if (s == "on" || s == "with") return IcMode::kWith;
  if (s == "off" || s == "without") return IcMode::kWithout;
  throw std::invalid_argument("unknown ic mode '" + std::string(s) + "' (expected on|off)");
}

}  // namespace nafd

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace hg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;

  std::string hex() const {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
  }
};

namespace colors {
inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kRed{220, 30, 30};
inline constexpr Rgb kBrightRed{255, 40, 40};
inline constexpr Rgb kYellow{245, 220, 40};
inline constexpr Rgb kGreen{40, 190, 60};
inline constexpr Rgb kBlue{40, 80, 230};
inline constexpr Rgb kCyan{40, 210, 220};
inline constexpr Rgb kGold{255, 200, 40};
inline constexpr Rgb kSilver{190, 195, 205};
inline constexpr Rgb kPurple{150, 60, 200};
inline constexpr Rgb kGray{128, 128, 128};
inline constexpr Rgb kDarkGray{60, 60, 66};
inline constexpr Rgb kBrown{130, 90, 50};
inline constexpr Rgb kOrange{240, 140, 30};
}  // namespace colors

}  // namespace hg

#pragma once

// D x D value grid over F_3: the pixel in column a, row b shows the value of
// e_k on any vector where 1 appears a times and 2 appears b times. Rendered
// as a binary portable pixmap with 0 -> blue, 1 -> red, 2 -> green.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "symsum/errors.hpp"
#include "symsum/field.hpp"
#include "symsum/lambda.hpp"

namespace symsum {

struct GridImage {
  std::uint64_t D = 0;
  std::uint32_t k = 0;
  std::vector<std::uint8_t> rgb;       // 3 * D * D bytes, rows are b = 0..D-1
  std::vector<std::uint64_t> counts;   // occurrences of each value 0, 1, 2
};

inline constexpr std::array<std::array<std::uint8_t, 3>, 3> kGridPalette{{
    {0, 0, 255},  // 0: blue
    {255, 0, 0},  // 1: red
    {0, 255, 0},  // 2: green
}};

inline GridImage grid_render(const Field& f, std::uint32_t k) {
  if (f.q() != 3)
    throw Error(errc::unsupported_field,
                "the two-axis grid needs exactly two nonzero elements (q = 3)");
  const std::uint64_t D = period_D(f.p(), k);
  if (D > 2187) throw Error(errc::too_large, "grid side exceeds 2187 pixels");
  GridImage img;
  img.D = D;
  img.k = k;
  img.rgb.resize(3 * D * D);
  img.counts.assign(3, 0);
  for (std::uint64_t b = 0; b < D; ++b) {
    for (std::uint64_t a = 0; a < D; ++a) {
      std::uint32_t val = lambda_value(f, k, MultiplicityVector::full_units(f, {a, b})).index;
      img.counts[val] += 1;
      std::size_t off = 3 * (b * D + a);
      img.rgb[off] = kGridPalette[val][0];
      img.rgb[off + 1] = kGridPalette[val][1];
      img.rgb[off + 2] = kGridPalette[val][2];
    }
  }
  return img;
}

inline std::string ppm_bytes(const GridImage& img) {
  std::string out = "P6\n" + std::to_string(img.D) + " " + std::to_string(img.D) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

}  // namespace symsum

/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

/// One bit per byte, values 0/1.
using BitVec = std::vector<std::uint8_t>;

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline unsigned log2_exact(std::size_t x)
{
	unsigned n = 0;
	while ((std::size_t{1} << n) < x)
		++n;
	return n;
}

/// In-place x <- x * F^{(x)n} over GF(2), natural order.
inline void polar_transform_inplace(std::span<std::uint8_t> x)
{
	for (std::size_t h = 1; h < x.size(); h <<= 1)
		for (std::size_t b = 0; b < x.size(); b += 2 * h)
			for (std::size_t i = b; i < b + h; ++i)
				x[i] ^= x[i + h];
}

std::string to_string(std::span<const std::uint8_t> bits);
BitVec bits_from_string(std::string_view s);

} // namespace polar

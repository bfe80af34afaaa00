#pragma once

#include <span>
#include <vector>

namespace lagidx {

/// (d phi)(x_1, ..., x_k) = sum_j (-1)^(k-j) phi(x_1, ..., omit x_j, ..., x_k),
/// with j running from 1. `phi` receives a span of the k-1 remaining arguments.
template <class T, class Phi>
long coboundary(std::span<const T> args, Phi&& phi) {
  const std::size_t k = args.size();
  long total = 0;
  std::vector<T> rest;
  rest.reserve(k > 0 ? k - 1 : 0);
  for (std::size_t j = 1; j <= k; ++j) {
    rest.clear();
    for (std::size_t i = 1; i <= k; ++i) {
      if (i != j) rest.push_back(args[i - 1]);
    }
    const long sign = ((k - j) % 2 == 0) ? 1 : -1;
    total += sign * static_cast<long>(phi(std::span<const T>(rest)));
  }
  return total;
}

}  // namespace lagidx

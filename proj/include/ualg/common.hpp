#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ualg {

// Elements of a finite universe {0..n-1}.
using Element = int;

// Domain error (bad input, contract violation at the library boundary).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource bound was exceeded.  Results are inconclusive,
// never partial.
struct BudgetError : Error {
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Global resource limits.  Read by constructions and searches; set them
// before kicking off concurrent work.
struct Limits {
  std::size_t max_universe = 1'000'000;     // largest universe we will build
  std::size_t con_max_universe = 64;        // largest universe for con()
  std::size_t term_budget = 2'000'000;      // candidate terms per enumeration
  std::size_t candidate_budget = 2'000'000; // transformer candidates per search
  std::size_t assignment_budget = 2'000'000; // assignments per equation check
};

inline Limits& limits() {
  static Limits instance;
  return instance;
}

// Row-major tuple codec: code(a_1..a_k) = sum a_i * base^(k-i).
inline std::size_t encode_tuple(std::span<const Element> tuple, int base) {
  std::size_t code = 0;
  for (Element a : tuple) {
    code = code * static_cast<std::size_t>(base) + static_cast<std::size_t>(a);
  }
  return code;
}

inline std::vector<Element> decode_tuple(std::size_t code, int base, int len) {
  std::vector<Element> tuple(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] =
        static_cast<Element>(code % static_cast<std::size_t>(base));
    code /= static_cast<std::size_t>(base);
  }
  return tuple;
}

// base^exp with an overflow/limit check; throws BudgetError beyond bound.
inline std::size_t checked_power(std::size_t base, int exp, std::size_t bound,
                                 const char* what) {
  std::size_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > bound / base) {
      throw BudgetError(std::string(what) + ": size exceeds configured bound (" +
                        std::to_string(bound) + ")");
    }
    result *= base;
  }
  return result;
}

}  // namespace ualg

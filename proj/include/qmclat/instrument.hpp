#pragma once

#include <cstdint>

namespace qmclat::ops {

// Floating-point operation counters for the construction-cost measurements.
// Disabled by default; hot loops report the number of adds/mults they
// actually executed when the flag is on.
struct Counters {
  std::uint64_t adds = 0;
  std::uint64_t mults = 0;
  std::uint64_t total() const { return adds + mults; }
};

namespace detail {
inline thread_local Counters counters;
inline thread_local bool enabled = false;
}  // namespace detail

inline void enable(bool on) { detail::enabled = on; }
inline bool enabled() { return detail::enabled; }
inline void reset() { detail::counters = Counters{}; }
inline Counters counters() { return detail::counters; }

inline void add(std::uint64_t n) {
  if (detail::enabled) detail::counters.adds += n;
}
inline void mul(std::uint64_t n) {
  if (detail::enabled) detail::counters.mults += n;
}
// complex multiply = 4 mults + 2 adds, complex add = 2 adds
inline void cmul(std::uint64_t n) {
  if (detail::enabled) {
    detail::counters.mults += 4 * n;
    detail::counters.adds += 2 * n;
  }
}
inline void cadd(std::uint64_t n) {
  if (detail::enabled) detail::counters.adds += 2 * n;
}

}  // namespace qmclat::ops

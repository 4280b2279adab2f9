// SPDX-License-Identifier: MIT
/// \file kernels.cpp
/// \brief Runtime backend selection for the dense kernels.

#include "scalekit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace scalekit::kernels {

#if defined(SCALEKIT_HAVE_AVX2_SOURCES)
const Backend* avx2_backend_impl();  // defined in kernels_avx2.cpp
#endif

const Backend* avx2_backend() {
#if defined(SCALEKIT_HAVE_AVX2_SOURCES) && (defined(__x86_64__) || defined(_M_X64))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_backend_impl();
#endif
  return nullptr;
}

namespace {

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
  if (const char* env = std::getenv("SCALEKIT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
    if (std::strcmp(env, "avx2") == 0) {
      if (const Backend* b = avx2_backend()) return b;
      // Requested ISA not available: fall through to auto selection.
    }
  }
  if (const Backend* b = avx2_backend()) return b;
  return &scalar_backend();
}

}  // namespace

const Backend& active() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (!b) {
    b = pick_default();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

bool select(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active.store(&scalar_backend(), std::memory_order_release);
    return true;
  }
  if (std::strcmp(name, "avx2") == 0) {
    if (const Backend* b = avx2_backend()) {
      g_active.store(b, std::memory_order_release);
      return true;
    }
    return false;
  }
  if (std::strcmp(name, "auto") == 0) {
    g_active.store(pick_default(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace scalekit::kernels

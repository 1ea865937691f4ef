// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "chkpt/kernels/split_min.hpp"

namespace chkpt::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(CHKPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("CHKPT_KERNEL"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::scalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa select_isa(Isa isa) {
  const Isa chosen = (isa == Isa::avx2 && detected_isa() != Isa::avx2) ? Isa::scalar : isa;
  active().store(chosen, std::memory_order_relaxed);
  return chosen;
}

SplitMin split_min(std::span<const std::int32_t> head, std::span<const std::int32_t> tail,
                   std::int32_t total, std::int32_t lo, std::int32_t hi, TieBreak tie) {
#if defined(CHKPT_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return split_min_avx2(head, tail, total, lo, hi, tie);
#endif
  return split_min_scalar(head, tail, total, lo, hi, tie);
}

}  // namespace chkpt::kernels

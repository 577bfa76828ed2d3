#include "meanbound/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace meanbound::kernels {

const Ops& active() {
  static const Ops* selected = [] {
    const Ops* simd = avx2_or_null();
    if (const char* force = std::getenv("MEANBOUND_KERNEL")) {
      if (std::strcmp(force, "scalar") == 0) return &scalar();
      if (std::strcmp(force, "avx2") == 0 && simd) return simd;
    }
    return simd ? simd : &scalar();
  }();
  return *selected;
}

}  // namespace meanbound::kernels

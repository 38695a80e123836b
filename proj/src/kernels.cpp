#include "cardbin/kernels.hpp"

#include <cstdlib>

namespace cardbin::kernels {

#if defined(__x86_64__) || defined(__i386__)
#define CARDBIN_X86 1
#else
#define CARDBIN_X86 0
#endif

bool avx2_available() {
#if CARDBIN_X86
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

#if !CARDBIN_X86
const Table& avx2() { return scalar(); }
#endif

const Table* find(std::string_view name) {
    if (name == "scalar") return &scalar();
    if (name == "avx2" && avx2_available()) return &avx2();
    return nullptr;
}

const Table& active() {
    static const Table* chosen = [] {
        if (const char* env = std::getenv("CARDBIN_KERNELS")) {
            if (const Table* t = find(env)) return t;
        }
        return avx2_available() ? &avx2() : &scalar();
    }();
    return *chosen;
}

} // namespace cardbin::kernels

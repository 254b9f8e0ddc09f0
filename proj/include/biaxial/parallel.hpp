#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace biaxial {

// Width of data-parallel map passes, capped by BIAXIAL_THREADS.
// Reductions stay serial with a fixed order, so results do not depend
// on the width.
inline unsigned parallel_width() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (hw > 8) hw = 8;
    if (const char* env = std::getenv("BIAXIAL_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

// Runs body(begin, end) over disjoint bands of [0, n).
template <typename Body>
void parallel_for(std::size_t n, Body body) {
    unsigned width = parallel_width();
    if (width <= 1 || n < 2048) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(width);
    std::size_t chunk = (n + width - 1) / width;
    for (unsigned t = 0; t < width; ++t) {
        std::size_t begin = static_cast<std::size_t>(t) * chunk;
        if (begin >= n) break;
        std::size_t end = begin + chunk < n ? begin + chunk : n;
        threads.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : threads) th.join();
}

}  // namespace biaxial

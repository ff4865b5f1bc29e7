#include "ddce/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ddce {

namespace {

std::atomic<int> g_threads{1};

int env_threads() {
    const char* s = std::getenv("DDCE_THREADS");
    if (!s || !*s) return 0;
    int n = std::atoi(s);
    return n > 0 ? n : 0;
}

} // namespace

void set_thread_count(int n) { g_threads = std::max(1, n); }

int thread_count() {
    int env = env_threads();
    return env > 0 ? env : g_threads.load();
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int nt = std::min(thread_count(), n);
    if (nt <= 1 || n < 64) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    int err_index = n;
    std::mutex err_mutex;
    auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace ddce

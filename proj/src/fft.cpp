// fft.cpp — FFTW-backed complex transforms with a mutex-guarded plan cache.
#include "meyerdens/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace meyerdens::fft {

namespace {

std::mutex plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

// Plans are created once per (size, direction) with FFTW_UNALIGNED so they can
// be re-executed on any caller buffer; fftw_execute_dft on distinct arrays is
// thread-safe, only planning needs the lock.
fftw_plan plan_for(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    const auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fft: planning failed");
    plan_cache.emplace(key, plan);
    return plan;
}

void execute(std::complex<double>* data, std::size_t n, int sign) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: length must be a power of two");
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(n, sign), ptr, ptr);
}

} // namespace

void forward(std::complex<double>* data, std::size_t n) {
    execute(data, n, FFTW_FORWARD);
}

void inverse(std::complex<double>* data, std::size_t n) {
    execute(data, n, FFTW_BACKWARD);
}

void forward(std::vector<std::complex<double>>& data) {
    forward(data.data(), data.size());
}

void inverse(std::vector<std::complex<double>>& data) {
    inverse(data.data(), data.size());
}

} // namespace meyerdens::fft

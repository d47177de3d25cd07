#include "zq/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace zq {

namespace {

// exact division of integer polynomials (little-endian), remainder known zero
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        Int f = num[static_cast<std::size_t>(i) + den.size() - 1] / den.back();
        q[static_cast<std::size_t>(i)] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[static_cast<std::size_t>(i) + j] -= f * den[j];
    }
    return q;
}

std::map<int, std::vector<Int>> phi_cache;
std::mutex phi_mutex;

std::vector<Int> phi_unlocked(int n) {
    auto it = phi_cache.find(n);
    if (it != phi_cache.end()) return it->second;
    std::vector<Int> f(static_cast<std::size_t>(n) + 1);
    f[0] = -1;
    f[static_cast<std::size_t>(n)] = 1;  // x^n - 1
    for (int d = 1; d < n; ++d)
        if (n % d == 0) f = poly_divide_exact(std::move(f), phi_unlocked(d));
    phi_cache.emplace(n, f);
    return f;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    std::lock_guard<std::mutex> lock(phi_mutex);
    return phi_unlocked(n);
}

void Cyclotomic::rotate(long long k) {
    long long m = k % n_;
    if (m < 0) m += n_;
    if (m == 0) return;
    std::vector<Rat> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        out[static_cast<std::size_t>((i + m) % n_)] = std::move(c_[static_cast<std::size_t>(i)]);
    c_ = std::move(out);
}

bool Cyclotomic::rational_value(Rat& out) const {
    std::vector<Int> phi = cyclotomic_polynomial(n_);
    std::vector<Rat> rem = c_;
    std::size_t deg = phi.size() - 1;  // = euler phi(n_)
    for (std::size_t i = rem.size(); i-- > deg;) {
        if (rem[i] == 0) continue;
        Rat f = rem[i] / Rat(phi[deg]);
        for (std::size_t j = 0; j <= deg; ++j) rem[i - deg + j] -= f * Rat(phi[j]);
    }
    for (std::size_t i = 1; i < std::min(rem.size(), deg); ++i)
        if (rem[i] != 0) return false;
    out = rem.empty() ? Rat(0) : rem[0];
    return true;
}

}  // namespace zq

#include "rzl/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <new>
#include <string>

namespace rzl {

MobiusTable::MobiusTable(long limit) : limit_(limit) {
    if (limit < 1) throw domain_error("build_mobius: limit must be >= 1");
    if (limit > 1000000000L) throw domain_error("build_mobius: limit capped at 10^9");
    try {
        mu_.assign((size_t)limit + 1, 0);
        std::vector<uint32_t> primes;
        primes.reserve(limit > 100 ? (size_t)(1.3 * limit / (std::max(1.0, std::log((double)limit)))) : 32);
        mu_[1] = 1;
        // linear sieve: every composite is struck exactly once, by its
        // smallest prime factor
        std::vector<bool> comp((size_t)limit + 1, false);
        for (long i = 2; i <= limit; ++i) {
            if (!comp[(size_t)i]) {
                primes.push_back((uint32_t)i);
                mu_[(size_t)i] = -1;
            }
            for (uint32_t p : primes) {
                long ip = (long)p * i;
                if (ip > limit) break;
                comp[(size_t)ip] = true;
                if (i % p == 0) {
                    mu_[(size_t)ip] = 0; // p^2 divides ip
                    break;
                }
                mu_[(size_t)ip] = (int8_t)(-mu_[(size_t)i]);
            }
        }
    } catch (const std::bad_alloc&) {
        throw resource_error("build_mobius: allocation failed for limit " + std::to_string(limit));
    }
}

long MobiusTable::mertens_prefix(long n) const {
    if (n < 1 || n > limit_) throw domain_error("mertens_prefix: n out of range");
    long s = 0;
    for (long m = 1; m <= n; ++m) s += mu_[(size_t)m];
    return s;
}

std::shared_ptr<const MobiusTable::Packed> MobiusTable::packed_upto(long N) const {
    if (N < 1 || N > limit_) throw domain_error("MobiusTable::packed_upto: N out of range");
    std::lock_guard<std::mutex> lk(packed_mutex_);
    if (!packed_cache_ || packed_n_ < N) {
        // grow geometrically so a sweep over increasing N rebuilds O(log) times
        long target = std::min(limit_, std::max(N, packed_n_ * 2));
        auto fresh = std::make_shared<Packed>();
        fresh->n.reserve((size_t)(0.62 * target) + 8);
        fresh->sign.reserve(fresh->n.capacity());
        for (long i = 1; i <= target; ++i) {
            int8_t m = mu_[(size_t)i];
            if (m != 0) {
                fresh->n.push_back((uint32_t)i);
                fresh->sign.push_back(m);
            }
        }
        packed_cache_ = std::move(fresh);
        packed_n_ = target;
    }
    return packed_cache_;
}

size_t packed_count_upto(const MobiusTable::Packed& p, long N) {
    if (N < 1) return 0;
    auto it = std::upper_bound(p.n.begin(), p.n.end(), (uint32_t)std::min<long>(N, UINT32_MAX));
    return (size_t)(it - p.n.begin());
}

MobiusTable build_mobius(long limit) { return MobiusTable(limit); }

const MobiusTable& shared_mobius(long min_limit) {
    static std::mutex mu;
    static std::unique_ptr<MobiusTable> table;
    std::lock_guard<std::mutex> lk(mu);
    if (!table || table->limit() < min_limit) {
        long lim = std::max(min_limit, table ? table->limit() * 2 : 0L);
        table = std::make_unique<MobiusTable>(lim);
    }
    return *table;
}

} // namespace rzl

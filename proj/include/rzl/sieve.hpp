#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "rzl/errors.hpp"

namespace rzl {

// Mobius function mu(n) for 1 <= n <= limit, from a linear sieve.
// Immutable after construction; concurrent reads are safe.
class MobiusTable {
  public:
    explicit MobiusTable(long limit);

    long limit() const { return limit_; }
    int mu(long n) const {
        if (n < 1 || n > limit_) throw domain_error("MobiusTable::mu: n out of range");
        return mu_[(size_t)n];
    }

    // sum_{m<=n} mu(m)
    long mertens_prefix(long n) const;

    // Packed view of the squarefree n <= N (the only ones that matter in the
    // Mobius-weighted sums); `sign` holds mu(n) in {-1,+1} and `n` ascends.
    // Snapshots are immutable and cached: sweeps ask for thousands of nearby
    // prefixes and must not re-scan the sieve each time.  Use
    // packed_count_upto() to cut a snapshot down to a smaller N.
    struct Packed {
        std::vector<uint32_t> n;
        std::vector<int8_t> sign;
    };
    std::shared_ptr<const Packed> packed_upto(long N) const;

  private:
    long limit_;
    std::vector<int8_t> mu_;
    mutable std::mutex packed_mutex_;
    mutable std::shared_ptr<const Packed> packed_cache_; // covers n <= packed_n_
    mutable long packed_n_ = 0;
};

// Number of leading entries of p.n that are <= N.
size_t packed_count_upto(const MobiusTable::Packed& p, long N);

MobiusTable build_mobius(long limit);

// Process-wide table that only ever grows; most callers just need "a table at
// least this big" and shouldn't pay for rebuilding one per call site.
const MobiusTable& shared_mobius(long min_limit);

} // namespace rzl

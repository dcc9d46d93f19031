#include "beq/rng.hpp"

#include "beq/normal.hpp"

namespace beq::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline Philox4x32::Counter round_once(const Philox4x32::Counter& c,
                                      const Philox4x32::Key& k) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    return {std::uint32_t(p1 >> 32) ^ c[1] ^ k[0], std::uint32_t(p1),
            std::uint32_t(p0 >> 32) ^ c[3] ^ k[1], std::uint32_t(p0)};
}

}  // namespace

Philox4x32::Counter Philox4x32::encrypt(Counter counter, Key key) {
    counter = round_once(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        counter = round_once(counter, key);
    }
    return counter;
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t cell_index,
                           std::uint64_t replication_index)
    : key_{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32)},
      base_{0, std::uint32_t(replication_index),
            std::uint32_t(replication_index >> 32), std::uint32_t(cell_index)} {}

void RandomStream::refill() {
    Philox4x32::Counter c = base_;
    c[0] = block_++;
    const auto out = Philox4x32::encrypt(c, key_);
    buffer_[0] = (std::uint64_t(out[0]) << 32) | out[1];
    buffer_[1] = (std::uint64_t(out[2]) << 32) | out[3];
    available_ = 2;
}

std::uint64_t RandomStream::next_u64() {
    if (available_ == 0) refill();
    return buffer_[--available_];
}

double RandomStream::next_uniform() {
    // 53 high bits shifted to the middle of each 2^-53 cell: values lie
    // in [2^-54, 1 - 2^-54], never exactly 0 or 1.
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_gaussian() { return normal::quantile(next_uniform()); }

}  // namespace beq::rng

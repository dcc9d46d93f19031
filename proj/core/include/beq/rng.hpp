#ifndef BEQ_RNG_HPP
#define BEQ_RNG_HPP

#include <array>
#include <cstdint>

namespace beq::rng {

// Philox 4x32 counter-based generator, 10 rounds.  Stateless: each
// 128-bit counter/64-bit key pair maps to 128 output bits, so streams
// can be placed anywhere in the counter space without coordination.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter encrypt(Counter counter, Key key);
};

// One replication-scoped random stream.  The key carries the master
// seed; the counter carries (block, replication, cell), so any number
// of streams can be drawn in parallel and still reproduce exactly.
// cell_index must fit in 32 bits.
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t cell_index,
                 std::uint64_t replication_index);

    /// Next 64 random bits.
    std::uint64_t next_u64();

    /// Uniform draw strictly inside (0, 1).
    double next_uniform();

    /// Standard normal draw via the inverse-CDF transform of next_uniform().
    double next_gaussian();

  private:
    void refill();

    Philox4x32::Key key_;
    Philox4x32::Counter base_;
    std::uint32_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

}  // namespace beq::rng

#endif

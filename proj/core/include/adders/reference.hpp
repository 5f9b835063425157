/*!
  \file reference.hpp
  \brief Ground-truth carry semantics and simulation-based adder verification

  Bit vectors are indexed from the least significant bit: element 0 holds
  bit 1 of the addend.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <adders/circuit.hpp>

namespace adders
{

/*! \brief Propagate/generate pair `(x, y)`. */
struct GPPair
{
  bool x{ false };
  bool y{ false };

  bool operator==( GPPair const& ) const = default;
};

using BitVector = std::vector<bool>;

/*! \brief `BitVector` of the given width holding the low bits of `value`. */
BitVector to_bits( std::uint64_t value, std::size_t width );
std::uint64_t to_integer( BitVector const& bits );

/*! \brief `x_i = a_i xor b_i`, `y_i = a_i and b_i`. */
std::vector<GPPair> gp_prepare( BitVector const& a, BitVector const& b );

/*! \brief Carries `c_2 .. c_{n+1}` from `c_{i+1} = y_i or (x_i and c_i)`. */
std::vector<bool> ripple_carries( std::span<GPPair const> pairs, bool carry_in = false );

/*! \brief Sum bits `s_1 .. s_{n+1}` given `c_2 .. c_{n+1}` and the carry-in `c_1`. */
BitVector sum_bits( std::span<GPPair const> pairs, BitVector const& carries, bool carry_in = false );

/*! \brief `upper o lower = (x_u and x_l, y_u or (x_u and y_l))`. */
constexpr GPPair prefix_op( GPPair upper, GPPair lower )
{
  return { upper.x && lower.x, upper.y || ( upper.x && lower.y ) };
}

/*! \brief Block propagate and generate over positions `s..t` (1-based, inclusive). */
GPPair block_signals( std::span<GPPair const> pairs, std::size_t s, std::size_t t );

/*! \brief Evaluates `c` on one assignment given in input-list order. Returns output values
  in output order. */
std::vector<bool> simulate( Circuit const& c, BitVector const& inputs );

/*! \brief Bit-parallel evaluation: word `k` of input `i` carries 64 independent samples.
  Returns one word per node. */
std::vector<std::uint64_t> simulate_words( Circuit const& c, std::span<std::uint64_t const> input_words );

enum class VerifyMode
{
  Exhaustive,
  Random
};

struct Counterexample
{
  std::vector<GPPair> pairs;          ///< assignment, position 1 first
  std::vector<bool> expected;         ///< oracle carries c_2..c_{n+1}
  std::vector<bool> actual;
};

struct VerifyReport
{
  VerifyMode mode{ VerifyMode::Random };
  std::size_t n{ 0 };
  std::uint64_t seed{ 0 };
  std::uint64_t restricted_checked{ 0 };    ///< assignments with no (1,1) pair
  std::uint64_t restricted_mismatches{ 0 };
  std::uint64_t unrestricted_checked{ 0 };
  std::uint64_t unrestricted_mismatches{ 0 };
  std::vector<Counterexample> counterexamples;  ///< first ones found, in enumeration order

  std::uint64_t mismatches() const { return restricted_mismatches + unrestricted_mismatches; }
  bool passed() const { return mismatches() == 0; }
};

struct VerifyOptions
{
  VerifyMode mode{ VerifyMode::Random };
  std::uint64_t samples{ 100'000 };
  std::uint64_t seed{ 0xC0FFEE };
  bool unrestricted{ true };          ///< exhaustive mode: also enumerate all 4^n assignments
  std::size_t max_counterexamples{ 10 };
};

/*! \brief Compares a carry circuit against `ripple_carries`.

  `c` must have inputs `x_1, y_1, ..., x_n, y_n` and outputs `c_2 .. c_{n+1}`.
  Exhaustive mode enumerates the 3^n assignments reachable from addend bits and,
  unless disabled, all 4^n assignments. Random mode draws pairs uniformly from
  all four values with a seeded generator.
*/
VerifyReport verify_adder( Circuit const& c, std::size_t n, VerifyOptions const& options = {} );

/*! \brief Compares a full adder (inputs `a_1, b_1, ..., a_n, b_n`, outputs `s_1 .. s_{n+1}`)
  against integer addition. Returns the number of mismatching samples. Exhaustive for
  `n <= 10` when `mode` is exhaustive. */
std::uint64_t verify_full_adder( Circuit const& c, std::size_t n, VerifyOptions const& options = {} );

std::string to_string( VerifyMode mode );

} // namespace adders

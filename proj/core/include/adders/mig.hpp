/*!
  \file mig.hpp
  \brief Multi-input generate gates, the augmented AND-prefix graph and the
         multi-input generate adder of depth ld n + O(sqrt(ld n)) and fan-out two
*/

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <adders/circuit.hpp>

namespace adders
{

/*! \brief Gate fan-in is `2^r`, the adder has `k` rows and width `2^(r*k)`. */
struct MigParams
{
  std::uint32_t r{ 1 };
  std::uint32_t k{ 1 };

  std::uint64_t width() const { return std::uint64_t{ 1 } << ( r * k ); }
  bool operator==( MigParams const& ) const = default;
};

/*! \brief `r = k = ceil(sqrt(ld n))`; the instance covers at least `n` positions. */
MigParams choose_params( std::uint64_t n );

/*! \brief `r = ceil(sqrt(ld n))`, `k = ceil(ceil(ld n) / r)`: the narrowest instance
  with `r = ceil(sqrt(ld n))` that still covers `n` positions. */
MigParams choose_compact_params( std::uint64_t n );

/*! \brief Output nodes of a multi-input generate gate (`2^(r-1)` copies, or one in the
  final row). All outputs carry the same value and have no consumers yet. */
struct GenGateHandle
{
  std::vector<NodeId> outputs;
};

/*! \brief Builds a `2^r`-input generate gate.

  Ports are indexed from the least significant pair: `gen_ports[0]` is `y~_1`.
  A run of lowest-order ports may be `no_node`, meaning an empty block
  (propagate 1, generate 0); at least the two highest ports must be present.

  Structure: a Kogge-Stone AND-suffix graph over the propagate ports (its last
  row repeats only when it is also the first, i.e. `r = 1`), one row
  of minterm gates (`And` per port plus a `Buf` for the top generate), then
  `r` rows of `2^(r-1)` `Or` gates that duplicate the result while combining.
  With `final_level`, a balanced `Or` tree with a single output replaces the
  duplicating rows.
*/
GenGateHandle build_generate_gate( CircuitBuilder& builder, std::uint32_t r, std::span<NodeId const> gen_ports,
                                   std::span<NodeId const> prop_ports, bool final_level );

/*! \brief `2^r` fresh copies of `X_{1+(t-2^(rl))^+, t}` for every position `t` and block `l`. */
class TapMap
{
public:
  TapMap() = default;
  TapMap( std::uint32_t r, std::uint32_t k, std::uint64_t n );

  std::span<NodeId const> at( std::uint64_t t, std::uint32_t l ) const; ///< `t` is 1-based
  std::span<NodeId> at( std::uint64_t t, std::uint32_t l );
  std::uint32_t copies() const { return 1u << r_; }

private:
  std::uint32_t r_{ 0 };
  std::uint32_t k_{ 0 };
  std::uint64_t n_{ 0 };
  std::vector<NodeId> ids_;
};

struct AugmentedAndPrefix
{
  TapMap taps;
  std::vector<NodeId> prefix; ///< `X_{1,t}`; only when the last block is built
};

/*! \brief Kogge-Stone AND-prefix graph over `xs` with a row of `Buf` before every block of
  `r` AND rows and a balanced `Buf` tree of `2^(r+1)-1` gates at each of the `n*k` taps.

  With `omit_last_block`, the final `r` AND rows are not built; the repeater row
  feeding them still is, so the gate count is `n*r*(k-1) + n*k*2^(r+1)`.
*/
AugmentedAndPrefix build_augmented_and_prefix( CircuitBuilder& builder, std::span<NodeId const> xs, std::uint32_t r,
                                               std::uint32_t k, bool omit_last_block );

/*! \brief Builds the adder into `builder`; `pairs[t-1] = (x_t, y_t)`, width `2^(r*k)`.
  Returns `c_2 .. c_{n+1}`. Unused taps and copies are left in place. */
std::vector<NodeId> build_mig_into( CircuitBuilder& builder, std::span<std::pair<NodeId, NodeId> const> pairs, MigParams params );

struct MigOptions
{
  bool prune{ true };
};

/*! \brief Stand-alone adder of width `2^(r*k)` with inputs `x_1, y_1, ..., x_n, y_n`. */
Circuit build_mig_adder( MigParams params, MigOptions const& options = {} );

/*! \brief Adder of width `n` obtained from a wider instance by dropping unused columns. */
Circuit build_mig_adder( std::uint64_t n, MigParams params );

/*! \brief Closed-form bounds for the multi-input generate adder. */
std::uint64_t mig_depth_bound( MigParams params );                ///< k r + 2 r + k + 1
std::uint64_t mig_size_bound( MigParams params );                 ///< 3 n k (r+2) 2^(r-1) + n 2^r + n r k (strict)
std::uint64_t generate_gate_size( std::uint32_t r );              ///< r 2^r + (r+1) 2^(r-1)
std::uint64_t augmented_and_prefix_size( MigParams params );      ///< n r (k-1) + n k 2^(r+1)

} // namespace adders

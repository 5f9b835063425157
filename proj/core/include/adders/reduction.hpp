/*!
  \file reduction.hpp
  \brief Brent-Kung steps around an arbitrary inner carry circuit and the
         linear-size adder with fan-out two built from them
*/

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <adders/circuit.hpp>
#include <adders/mig.hpp>
#include <adders/prefix_graph.hpp>

namespace adders
{

using NodePair = std::pair<NodeId, NodeId>; ///< (propagate, generate)

/*! \brief Emits carries `c_2 .. c_{m+1}` for `m` (propagate, generate) pairs into `builder`. */
using InnerAdder = std::function<std::vector<NodeId>( CircuitBuilder&, std::span<NodePair const> )>;

enum class GateStyle : std::uint8_t
{
  AndOr,  ///< And/Or/Buf gates
  NandNot ///< Nand/Not gates, same depth per step
};

struct StepOptions
{
  /*! Insert a repeater where a carry would otherwise feed three consumers. Without it the
    step saves up to `n/2` gates but fan-out may reach three. */
  bool distribute{ true };
  GateStyle style{ GateStyle::AndOr };
};

/*! \brief One input-halving and output-correction stage.

  The constructor emits the `n/2` reduction prefix gates `z_{2i} o z_{2i-1}`;
  `correct` consumes the inner carries `c_3, c_5, ..., c_{n+1}` and emits the
  reduced output gates for the odd positions.
*/
class BrentKungStep
{
public:
  BrentKungStep( CircuitBuilder& builder, std::span<NodePair const> pairs, StepOptions const& options = {} );

  std::span<NodePair const> half_pairs() const { return half_; }

  /*! \brief Returns `c_2 .. c_{n+1}` given `inner_carries[i] = Y_{1,2i+2}`. */
  std::vector<NodeId> correct( std::span<NodeId const> inner_carries );

private:
  CircuitBuilder* builder_;
  StepOptions options_;
  std::vector<NodePair> pairs_;
  std::vector<NodePair> half_;
};

/*! \brief Inner adder expanding a prefix graph built for the requested width. */
InnerAdder prefix_inner( std::function<PrefixGraph( std::uint32_t )> family );

/*! \brief Inner adder using the multi-input generate adder with `choose_params(m)`,
  restricted to the `m` columns actually needed. */
InnerAdder mig_inner();

/*! \brief Inner adder with parameters fixed by the caller; the instance must cover `m`. */
InnerAdder mig_inner( MigParams params );

/*! \brief Emits `tau` steps around `inner` into `builder`; `pairs.size()` must be divisible by `2^tau`. */
std::vector<NodeId> apply_reduction_into( CircuitBuilder& builder, std::span<NodePair const> pairs, std::uint32_t tau,
                                          InnerAdder const& inner, StepOptions const& options = {} );

/*! \brief Stand-alone adder for `n` positions (a power of two, `tau <= ld n - 1`). */
Circuit apply_reduction( std::uint32_t n, std::uint32_t tau, InnerAdder const& inner, StepOptions const& options = {} );

/*! \brief `ceil(sqrt(ld n) + 2 ld ceil(sqrt(ld n)))`, clamped to `ld n - 1`. */
std::uint32_t linear_step_count( std::uint32_t n );

/*! \brief Step count before clamping; compare with `linear_step_count` to detect clamping. */
std::uint32_t linear_step_count_unclamped( std::uint32_t n );

/*! \brief Adder of linear size and fan-out two: `linear_step_count(n)` steps around a
  multi-input generate adder. */
Circuit build_linear_adder( std::uint32_t n );

/*! \brief Closed-form bounds for the linear adder. */
double linear_size_bound( std::uint32_t n );      ///< 13.5 n, or 9.5 n when n >= 4096
std::uint32_t linear_depth_bound( std::uint32_t n ); ///< ld n + 8 ceil(sqrt(ld n)) + 6 ceil(ld ceil(sqrt(ld n))) + 2

} // namespace adders

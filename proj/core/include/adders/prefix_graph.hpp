/*!
  \file prefix_graph.hpp
  \brief Prefix graphs over the carry operator and their expansion to logic

  A prefix graph node covers a contiguous range `[s, t]` of input positions
  and represents `z_t o ... o z_s`. Output `i` must cover `[1, i]`; its
  generate component is the carry `c_{i+1}`.
*/

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <adders/circuit.hpp>
#include <adders/reference.hpp>

namespace adders
{

enum class PrefixKind : std::uint8_t
{
  Input,
  Repeater,
  Op,
  ReducedOutputOp ///< computes only the generate component
};

struct PrefixNode
{
  PrefixKind kind{ PrefixKind::Input };
  std::uint32_t upper{ 0 }; ///< higher-order operand (or repeated node)
  std::uint32_t lower{ 0 };
  std::uint32_t s{ 0 };
  std::uint32_t t{ 0 };
};

class PrefixGraph
{
public:
  /*! \brief Creates the `n` input nodes `z_1 .. z_n` (ids `0 .. n-1`). */
  explicit PrefixGraph( std::uint32_t n );

  std::uint32_t width() const { return n_; }
  std::vector<PrefixNode> const& nodes() const { return nodes_; }
  PrefixNode const& node( std::uint32_t id ) const { return nodes_.at( id ); }
  std::uint32_t input( std::uint32_t position ) const; ///< 1-based
  std::vector<std::uint32_t> const& outputs() const { return outputs_; }

  std::uint32_t add_repeater( std::uint32_t v );
  std::uint32_t add_op( std::uint32_t upper, std::uint32_t lower );
  std::uint32_t add_reduced_output_op( std::uint32_t upper, std::uint32_t lower );

  /*! \brief Declares the node computing `Z_{1,i}`; `ids` lists outputs `1..n` in order. */
  void set_outputs( std::vector<std::uint32_t> ids );

  /*! \brief Consumers of `v` so far, counting output taps. */
  std::uint32_t consumers( std::uint32_t v ) const { return consumers_.at( v ); }

private:
  std::uint32_t push( PrefixNode node );

  std::uint32_t n_;
  std::vector<PrefixNode> nodes_;
  std::vector<std::uint32_t> outputs_;
  std::vector<std::uint32_t> consumers_;
};

struct PrefixMetrics
{
  std::uint32_t size{ 0 };       ///< ops, reduced ops and repeaters
  std::uint32_t ops{ 0 };        ///< ops and reduced ops
  std::uint32_t repeaters{ 0 };
  std::uint32_t depth{ 0 };      ///< operator nodes on the longest path; repeaters are free
  std::uint32_t levels{ 0 };     ///< nodes on the longest path, repeaters included
  std::uint32_t max_fanout{ 0 }; ///< consumers including output taps

  bool operator==( PrefixMetrics const& ) const = default;
};

PrefixMetrics prefix_metrics( PrefixGraph const& g );

/*! \brief Value of every node on the given input pairs. Reduced nodes carry `x = false`. */
std::vector<GPPair> evaluate( PrefixGraph const& g, std::span<GPPair const> pairs );

/*! \brief Builds a sub-graph on `inputs` (nodes covering consecutive positions starting at
  `[1, ...]`) and returns nodes covering `[1, i]` for every prefix. */
using PrefixBuilder = std::function<std::vector<std::uint32_t>( PrefixGraph&, std::span<std::uint32_t const> )>;

PrefixGraph serial_prefix( std::uint32_t n );
PrefixGraph sklansky( std::uint32_t n );
PrefixGraph kogge_stone( std::uint32_t n );
PrefixGraph brent_kung( std::uint32_t n );

std::vector<std::uint32_t> serial_prefix_into( PrefixGraph& g, std::span<std::uint32_t const> inputs );
std::vector<std::uint32_t> kogge_stone_into( PrefixGraph& g, std::span<std::uint32_t const> inputs );

/*! \brief `steps` Brent-Kung steps around `inner`; `n` must be divisible by `2^steps`.

  With `steps = ld n` and a trivial inner graph this is the Brent-Kung graph. Where a
  carry would need a third consumer a repeater is inserted.
*/
PrefixGraph brent_kung_steps( std::uint32_t n, std::uint32_t steps, PrefixBuilder const& inner );

struct ExpandOptions
{
  bool extract_carries{ true }; ///< outputs `c_2..c_{n+1}`; otherwise `X_{1,i}, Y_{1,i}` per `i`
};

/*! \brief Carry (and, if requested, propagate) nodes produced by expanding into a builder. */
struct ExpandedOutputs
{
  std::vector<NodeId> carries;
  std::vector<NodeId> propagates; ///< empty unless full prefix outputs were requested
};

/*! \brief Expands `g` into `builder` with inputs `pairs[i] = (x_{i+1}, y_{i+1})`.

  Op: `And` for the propagate, `And` + `Or` for the generate. Reduced ops
  emit only the generate half. Repeaters become `Buf` per needed component.
  Propagate gates whose value no output needs are not emitted.
*/
ExpandedOutputs expand_into( CircuitBuilder& builder, PrefixGraph const& g, std::span<std::pair<NodeId, NodeId> const> pairs,
                             ExpandOptions const& options = {} );

/*! \brief Stand-alone circuit with inputs `x_1, y_1, ..., x_n, y_n`. */
Circuit expand_to_logic( PrefixGraph const& g, ExpandOptions const& options = {} );

bool is_power_of_two( std::uint64_t n );
std::uint32_t ilog2( std::uint64_t n ); ///< floor

} // namespace adders

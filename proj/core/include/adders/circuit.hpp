/*!
  \file circuit.hpp
  \brief Gate-level DAG representation shared by every adder generator

  Nodes are numbered densely in construction order, so the node sequence
  is always a topological order. Inputs are nodes without fan-ins; outputs
  are markers naming a node and are not nodes themselves.
*/

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adders
{

using NodeId = std::uint32_t;

inline constexpr NodeId no_node = ~NodeId{0};

enum class GateKind : std::uint8_t
{
  And,
  Or,
  Xor,
  Not,
  Buf,
  Nand,
  Nor
};

inline constexpr std::size_t num_gate_kinds = 7;

/*! \brief Number of fan-ins a gate of this kind must have (1 or 2). */
constexpr std::size_t arity( GateKind kind )
{
  return ( kind == GateKind::Not || kind == GateKind::Buf ) ? 1u : 2u;
}

std::string_view to_string( GateKind kind );

/*! \brief Parses the lowercase kind names produced by `to_string`; throws on unknown names. */
GateKind gate_kind_from_string( std::string_view name );

struct Node
{
  bool is_input{ false };
  GateKind kind{ GateKind::Buf };
  std::vector<NodeId> fanins;

  bool operator==( Node const& ) const = default;
};

/*! \brief Immutable combinational circuit.

  Constructed either through `CircuitBuilder` or, for tests and file
  parsing, directly from raw parts. The raw constructor performs no checks;
  call `validate` to inspect the result.
*/
class Circuit
{
public:
  Circuit() = default;
  Circuit( std::string name, std::vector<Node> nodes, std::vector<NodeId> inputs, std::vector<NodeId> outputs );

  std::string const& name() const { return name_; }
  std::vector<Node> const& nodes() const { return nodes_; }
  std::vector<NodeId> const& inputs() const { return inputs_; }
  std::vector<NodeId> const& outputs() const { return outputs_; }

  Node const& node( NodeId id ) const { return nodes_.at( id ); }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_gates() const { return nodes_.size() - num_input_nodes_; }

  bool operator==( Circuit const& ) const = default;

private:
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<NodeId> inputs_;
  std::vector<NodeId> outputs_;
  std::size_t num_input_nodes_{ 0 };
};

/*! \brief Append-only construction of a `Circuit`.

  Tracks consumer counts while building so that generators can enforce
  fan-out limits as they go. Output markers count as consumers.
*/
class CircuitBuilder
{
public:
  explicit CircuitBuilder( std::string name = {} );

  NodeId add_input();
  NodeId add_gate( GateKind kind, NodeId a );
  NodeId add_gate( GateKind kind, NodeId a, NodeId b );
  void add_output( NodeId id );

  NodeId buf( NodeId a ) { return add_gate( GateKind::Buf, a ); }
  NodeId not_( NodeId a ) { return add_gate( GateKind::Not, a ); }
  NodeId and_( NodeId a, NodeId b ) { return add_gate( GateKind::And, a, b ); }
  NodeId or_( NodeId a, NodeId b ) { return add_gate( GateKind::Or, a, b ); }
  NodeId xor_( NodeId a, NodeId b ) { return add_gate( GateKind::Xor, a, b ); }
  NodeId nand_( NodeId a, NodeId b ) { return add_gate( GateKind::Nand, a, b ); }
  NodeId nor_( NodeId a, NodeId b ) { return add_gate( GateKind::Nor, a, b ); }

  std::uint32_t fanout( NodeId id ) const { return fanout_.at( id ); }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_gates() const { return nodes_.size() - inputs_.size(); }
  std::vector<NodeId> const& inputs() const { return inputs_; }
  std::vector<NodeId> const& outputs() const { return outputs_; }
  Node const& node( NodeId id ) const { return nodes_.at( id ); }

  Circuit build() &&;

private:
  void check_fanin( NodeId id ) const;

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<NodeId> inputs_;
  std::vector<NodeId> outputs_;
  std::vector<std::uint32_t> fanout_;
};

enum class Rule : std::uint8_t
{
  Ordering,      ///< fan-in id does not precede the gate
  Arity,         ///< fan-in count does not match the gate kind
  DanglingRef,   ///< fan-in or output names a nonexistent node
  InputList,     ///< input list disagrees with the input nodes
  UnusedInput,   ///< input with no consumer
  DeadGate,      ///< gate with no consumer that is not an output
  Empty          ///< circuit has no nodes
};

std::string_view to_string( Rule rule );

/*! \brief Unused inputs and dead gates do not prevent simulation or measurement. */
constexpr bool is_structural( Rule rule )
{
  return rule != Rule::UnusedInput && rule != Rule::DeadGate;
}

struct Violation
{
  NodeId node;
  Rule rule;
  std::string message;
};

std::vector<Violation> validate( Circuit const& c );

/*! \brief Throws `std::invalid_argument` listing the first structural violations, if any. */
void require_structurally_valid( Circuit const& c );

struct Metrics
{
  std::uint32_t depth{ 0 };
  std::uint32_t size{ 0 };
  std::uint32_t max_fanout{ 0 };
  std::map<GateKind, std::uint32_t> histogram;

  bool operator==( Metrics const& ) const = default;
};

/*! \brief Depth (gates on the longest input-to-output path), size, maximum fan-out and
  per-kind gate counts. Refuses circuits with structural violations. */
Metrics metrics( Circuit const& c );

/*! \brief Consumer count per node; each output marker adds one. */
std::vector<std::uint32_t> fanout_table( Circuit const& c );

/*! \brief Gate depth of every node (inputs are at depth 0). */
std::vector<std::uint32_t> node_depths( Circuit const& c );

/*! \brief Removes gates that do not reach an output; keeps all inputs. Ids are renumbered
  preserving relative order. */
Circuit prune( Circuit const& c );

/*! \brief Keeps the first `num_input_pairs` input pairs and first `num_outputs` outputs,
  dropping everything else that becomes unreachable.

  Valid for adders because carry `c_{i+1}` depends only on pairs `1..i`.
*/
Circuit truncate( Circuit const& c, std::size_t num_input_pairs, std::size_t num_outputs );

/*! \brief Copies `sub` into `builder`, binding its inputs to `input_map`. Returns the node
  ids corresponding to the outputs of `sub`. */
std::vector<NodeId> inline_circuit( CircuitBuilder& builder, Circuit const& sub, std::span<NodeId const> input_map );

} // namespace adders

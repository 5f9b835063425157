#include <adders/circuit.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>

#include <fmt/format.h>

namespace adders
{

namespace
{

constexpr std::array<std::string_view, num_gate_kinds> kind_names = { "and", "or", "xor", "not", "buf", "nand", "nor" };

} // namespace

std::string_view to_string( GateKind kind )
{
  return kind_names[static_cast<std::size_t>( kind )];
}

GateKind gate_kind_from_string( std::string_view name )
{
  for ( std::size_t i = 0; i < kind_names.size(); ++i )
  {
    if ( kind_names[i] == name )
    {
      return static_cast<GateKind>( i );
    }
  }
  throw std::invalid_argument( fmt::format( "unknown gate kind '{}'", name ) );
}

std::string_view to_string( Rule rule )
{
  switch ( rule )
  {
  case Rule::Ordering:
    return "ordering";
  case Rule::Arity:
    return "arity";
  case Rule::DanglingRef:
    return "dangling-reference";
  case Rule::InputList:
    return "input-list";
  case Rule::UnusedInput:
    return "unused-input";
  case Rule::DeadGate:
    return "dead-gate";
  case Rule::Empty:
    return "empty";
  }
  return "unknown";
}

Circuit::Circuit( std::string name, std::vector<Node> nodes, std::vector<NodeId> inputs, std::vector<NodeId> outputs )
    : name_( std::move( name ) ), nodes_( std::move( nodes ) ), inputs_( std::move( inputs ) ), outputs_( std::move( outputs ) )
{
  num_input_nodes_ = static_cast<std::size_t>( std::count_if( nodes_.begin(), nodes_.end(), []( Node const& n ) { return n.is_input; } ) );
}

CircuitBuilder::CircuitBuilder( std::string name ) : name_( std::move( name ) ) {}

NodeId CircuitBuilder::add_input()
{
  auto const id = static_cast<NodeId>( nodes_.size() );
  nodes_.push_back( Node{ true, GateKind::Buf, {} } );
  fanout_.push_back( 0 );
  inputs_.push_back( id );
  return id;
}

void CircuitBuilder::check_fanin( NodeId id ) const
{
  if ( id >= nodes_.size() )
  {
    throw std::invalid_argument( fmt::format( "fan-in {} does not exist (circuit has {} nodes)", id, nodes_.size() ) );
  }
}

NodeId CircuitBuilder::add_gate( GateKind kind, NodeId a )
{
  if ( arity( kind ) != 1 )
  {
    throw std::invalid_argument( fmt::format( "{} gate needs two fan-ins", to_string( kind ) ) );
  }
  check_fanin( a );
  auto const id = static_cast<NodeId>( nodes_.size() );
  nodes_.push_back( Node{ false, kind, { a } } );
  fanout_.push_back( 0 );
  ++fanout_[a];
  return id;
}

NodeId CircuitBuilder::add_gate( GateKind kind, NodeId a, NodeId b )
{
  if ( arity( kind ) != 2 )
  {
    throw std::invalid_argument( fmt::format( "{} gate needs one fan-in", to_string( kind ) ) );
  }
  check_fanin( a );
  check_fanin( b );
  auto const id = static_cast<NodeId>( nodes_.size() );
  nodes_.push_back( Node{ false, kind, { a, b } } );
  fanout_.push_back( 0 );
  ++fanout_[a];
  ++fanout_[b];
  return id;
}

void CircuitBuilder::add_output( NodeId id )
{
  check_fanin( id );
  outputs_.push_back( id );
  ++fanout_[id];
}

Circuit CircuitBuilder::build() &&
{
  return Circuit( std::move( name_ ), std::move( nodes_ ), std::move( inputs_ ), std::move( outputs_ ) );
}

std::vector<Violation> validate( Circuit const& c )
{
  std::vector<Violation> out;
  auto const& nodes = c.nodes();
  if ( nodes.empty() )
  {
    out.push_back( { no_node, Rule::Empty, "circuit has no nodes" } );
    return out;
  }

  std::vector<std::uint32_t> consumers( nodes.size(), 0 );
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    auto const& n = nodes[id];
    std::size_t const expected = n.is_input ? 0u : arity( n.kind );
    if ( n.fanins.size() != expected )
    {
      out.push_back( { id, Rule::Arity,
                       fmt::format( "node {} ({}) has {} fan-ins, expected {}", id, n.is_input ? "input" : to_string( n.kind ), n.fanins.size(), expected ) } );
    }
    for ( auto f : n.fanins )
    {
      if ( f >= nodes.size() )
      {
        out.push_back( { id, Rule::DanglingRef, fmt::format( "node {} references missing node {}", id, f ) } );
        continue;
      }
      if ( f >= id )
      {
        out.push_back( { id, Rule::Ordering, fmt::format( "node {} has fan-in {} that does not precede it", id, f ) } );
      }
      ++consumers[f];
    }
  }

  std::vector<bool> listed( nodes.size(), false );
  for ( auto i : c.inputs() )
  {
    if ( i >= nodes.size() || !nodes[i].is_input || listed[i] )
    {
      out.push_back( { i, Rule::InputList, fmt::format( "input list entry {} is not a distinct input node", i ) } );
      continue;
    }
    listed[i] = true;
  }
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    if ( nodes[id].is_input && !listed[id] )
    {
      out.push_back( { id, Rule::InputList, fmt::format( "input node {} is missing from the input list", id ) } );
    }
  }

  for ( auto o : c.outputs() )
  {
    if ( o >= nodes.size() )
    {
      out.push_back( { o, Rule::DanglingRef, fmt::format( "output references missing node {}", o ) } );
      continue;
    }
    ++consumers[o];
  }

  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    if ( consumers[id] != 0 )
    {
      continue;
    }
    if ( nodes[id].is_input )
    {
      out.push_back( { id, Rule::UnusedInput, fmt::format( "input {} has no consumer", id ) } );
    }
    else
    {
      out.push_back( { id, Rule::DeadGate, fmt::format( "gate {} has no consumer and is not an output", id ) } );
    }
  }
  return out;
}

void require_structurally_valid( Circuit const& c )
{
  std::string report;
  std::size_t count = 0;
  for ( auto const& v : validate( c ) )
  {
    if ( !is_structural( v.rule ) )
    {
      continue;
    }
    if ( count++ < 5 )
    {
      report += fmt::format( "\n  [{}] {}", to_string( v.rule ), v.message );
    }
  }
  if ( count != 0 )
  {
    throw std::invalid_argument( fmt::format( "circuit '{}' has {} structural violation(s):{}", c.name(), count, report ) );
  }
}

std::vector<std::uint32_t> fanout_table( Circuit const& c )
{
  std::vector<std::uint32_t> fo( c.num_nodes(), 0 );
  for ( auto const& n : c.nodes() )
  {
    for ( auto f : n.fanins )
    {
      ++fo[f];
    }
  }
  for ( auto o : c.outputs() )
  {
    ++fo[o];
  }
  return fo;
}

std::vector<std::uint32_t> node_depths( Circuit const& c )
{
  std::vector<std::uint32_t> depth( c.num_nodes(), 0 );
  for ( NodeId id = 0; id < c.num_nodes(); ++id )
  {
    auto const& n = c.node( id );
    if ( n.is_input )
    {
      continue;
    }
    std::uint32_t d = 0;
    for ( auto f : n.fanins )
    {
      d = std::max( d, depth[f] );
    }
    depth[id] = d + 1;
  }
  return depth;
}

Metrics metrics( Circuit const& c )
{
  require_structurally_valid( c );
  Metrics m;
  auto const depth = node_depths( c );
  for ( auto o : c.outputs() )
  {
    m.depth = std::max( m.depth, depth[o] );
  }
  for ( auto const& n : c.nodes() )
  {
    if ( !n.is_input )
    {
      ++m.size;
      ++m.histogram[n.kind];
    }
  }
  auto const fo = fanout_table( c );
  m.max_fanout = fo.empty() ? 0 : *std::max_element( fo.begin(), fo.end() );
  return m;
}

namespace
{

Circuit compact( Circuit const& c, std::vector<bool> const& keep, std::vector<NodeId> const& inputs, std::vector<NodeId> const& outputs )
{
  std::vector<NodeId> remap( c.num_nodes(), no_node );
  std::vector<Node> nodes;
  for ( NodeId id = 0; id < c.num_nodes(); ++id )
  {
    if ( !keep[id] )
    {
      continue;
    }
    remap[id] = static_cast<NodeId>( nodes.size() );
    Node n = c.node( id );
    for ( auto& f : n.fanins )
    {
      f = remap[f];
    }
    nodes.push_back( std::move( n ) );
  }
  std::vector<NodeId> new_inputs;
  for ( auto i : inputs )
  {
    new_inputs.push_back( remap[i] );
  }
  std::vector<NodeId> new_outputs;
  for ( auto o : outputs )
  {
    new_outputs.push_back( remap[o] );
  }
  return Circuit( c.name(), std::move( nodes ), std::move( new_inputs ), std::move( new_outputs ) );
}

std::vector<bool> reachable_from( Circuit const& c, std::vector<NodeId> const& outputs )
{
  std::vector<bool> live( c.num_nodes(), false );
  for ( auto o : outputs )
  {
    live[o] = true;
  }
  for ( auto id = static_cast<std::int64_t>( c.num_nodes() ) - 1; id >= 0; --id )
  {
    if ( !live[id] )
    {
      continue;
    }
    for ( auto f : c.node( static_cast<NodeId>( id ) ).fanins )
    {
      live[f] = true;
    }
  }
  return live;
}

} // namespace

Circuit prune( Circuit const& c )
{
  require_structurally_valid( c );
  auto keep = reachable_from( c, c.outputs() );
  for ( auto i : c.inputs() )
  {
    keep[i] = true;
  }
  return compact( c, keep, c.inputs(), c.outputs() );
}

Circuit truncate( Circuit const& c, std::size_t num_input_pairs, std::size_t num_outputs )
{
  require_structurally_valid( c );
  if ( 2 * num_input_pairs > c.inputs().size() || num_outputs > c.outputs().size() )
  {
    throw std::invalid_argument( "truncate: circuit is narrower than the requested width" );
  }
  std::vector<NodeId> inputs( c.inputs().begin(), c.inputs().begin() + static_cast<std::ptrdiff_t>( 2 * num_input_pairs ) );
  std::vector<NodeId> outputs( c.outputs().begin(), c.outputs().begin() + static_cast<std::ptrdiff_t>( num_outputs ) );
  auto keep = reachable_from( c, outputs );
  for ( std::size_t k = 2 * num_input_pairs; k < c.inputs().size(); ++k )
  {
    if ( keep[c.inputs()[k]] )
    {
      throw std::invalid_argument( "truncate: kept outputs depend on dropped inputs" );
    }
  }
  for ( auto i : inputs )
  {
    keep[i] = true;
  }
  return compact( c, keep, inputs, outputs );
}

std::vector<NodeId> inline_circuit( CircuitBuilder& builder, Circuit const& sub, std::span<NodeId const> input_map )
{
  require_structurally_valid( sub );
  if ( input_map.size() != sub.inputs().size() )
  {
    throw std::invalid_argument( fmt::format( "inline_circuit: {} bindings for {} inputs", input_map.size(), sub.inputs().size() ) );
  }
  std::vector<NodeId> map( sub.num_nodes(), no_node );
  for ( std::size_t k = 0; k < input_map.size(); ++k )
  {
    map[sub.inputs()[k]] = input_map[k];
  }
  for ( NodeId id = 0; id < sub.num_nodes(); ++id )
  {
    auto const& n = sub.node( id );
    if ( n.is_input )
    {
      continue;
    }
    map[id] = n.fanins.size() == 1 ? builder.add_gate( n.kind, map[n.fanins[0]] )
                                   : builder.add_gate( n.kind, map[n.fanins[0]], map[n.fanins[1]] );
  }
  std::vector<NodeId> outs;
  outs.reserve( sub.outputs().size() );
  for ( auto o : sub.outputs() )
  {
    outs.push_back( map[o] );
  }
  return outs;
}

} // namespace adders

#include <adders/techmap.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace adders
{

namespace
{

bool mappable( GateKind kind )
{
  return kind == GateKind::And || kind == GateKind::Or || kind == GateKind::Buf;
}

} // namespace

LevelizedCircuit levelize( Circuit const& c )
{
  require_structurally_valid( c );
  auto const& nodes = c.nodes();
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    if ( !nodes[id].is_input && !mappable( nodes[id].kind ) )
    {
      throw std::invalid_argument( fmt::format( "levelize: gate {} has kind {}, expected And, Or or Buf", id, to_string( nodes[id].kind ) ) );
    }
  }
  auto const depth = node_depths( c );

  // earliest even-span consumer row per source
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> repeater_row( nodes.size(), none );
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    for ( auto f : nodes[id].fanins )
    {
      if ( ( depth[id] - depth[f] ) % 2 == 0 )
      {
        repeater_row[f] = std::min( repeater_row[f], depth[id] - 1 );
      }
    }
  }

  CircuitBuilder builder( c.name() );
  std::vector<NodeId> direct( nodes.size(), no_node ), delayed( nodes.size(), no_node );
  std::vector<std::uint32_t> rows;
  LevelizedCircuit out;

  auto add_repeater = [&]( NodeId id ) {
    if ( repeater_row[id] != none )
    {
      delayed[id] = builder.buf( direct[id] );
      rows.push_back( repeater_row[id] );
      ++out.inserted;
    }
  };
  for ( auto in : c.inputs() )
  {
    direct[in] = builder.add_input();
    rows.push_back( 0 );
  }
  for ( auto in : c.inputs() )
  {
    add_repeater( in );
  }
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    auto const& nd = nodes[id];
    if ( nd.is_input )
    {
      continue;
    }
    auto source = [&]( NodeId f ) { return ( depth[id] - depth[f] ) % 2 == 0 ? delayed[f] : direct[f]; };
    direct[id] = nd.fanins.size() == 1 ? builder.add_gate( nd.kind, source( nd.fanins[0] ) )
                                       : builder.add_gate( nd.kind, source( nd.fanins[0] ), source( nd.fanins[1] ) );
    rows.push_back( depth[id] );
    add_repeater( id );
  }
  for ( auto o : c.outputs() )
  {
    builder.add_output( direct[o] );
  }
  out.circuit = std::move( builder ).build();
  out.rows = std::move( rows );
  return out;
}

std::string levelization_error( LevelizedCircuit const& lc )
{
  auto const& nodes = lc.circuit.nodes();
  if ( lc.rows.size() != nodes.size() )
  {
    return fmt::format( "{} rows for {} nodes", lc.rows.size(), nodes.size() );
  }
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    auto const& nd = nodes[id];
    if ( nd.is_input )
    {
      if ( lc.rows[id] != 0 )
      {
        return fmt::format( "input {} is in row {}", id, lc.rows[id] );
      }
      continue;
    }
    if ( !mappable( nd.kind ) )
    {
      return fmt::format( "gate {} has kind {}", id, to_string( nd.kind ) );
    }
    for ( auto f : nd.fanins )
    {
      if ( lc.rows[id] <= lc.rows[f] || ( lc.rows[id] - lc.rows[f] ) % 2 == 0 )
      {
        return fmt::format( "edge {} -> {} goes from row {} to row {}", f, id, lc.rows[f], lc.rows[id] );
      }
    }
  }
  return {};
}

Circuit demorgan_map( LevelizedCircuit const& lc )
{
  require_structurally_valid( lc.circuit );
  if ( auto const err = levelization_error( lc ); !err.empty() )
  {
    throw std::invalid_argument( "demorgan_map: circuit is not levelized: " + err );
  }
  auto const& c = lc.circuit;
  auto const& nodes = c.nodes();

  // a node in an odd row carries the complement of its original value
  auto negated = [&]( NodeId id ) { return lc.rows[id] % 2 == 1; };

  CircuitBuilder builder( c.name() );
  std::vector<NodeId> map( nodes.size(), no_node );
  for ( auto in : c.inputs() )
  {
    map[in] = builder.add_input();
  }
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    auto const& nd = nodes[id];
    if ( nd.is_input )
    {
      continue;
    }
    auto const odd = negated( id );
    for ( auto f : nd.fanins )
    {
      if ( negated( f ) == odd )
      {
        throw std::logic_error( "demorgan_map: phase mismatch on a levelized edge" );
      }
    }
    switch ( nd.kind )
    {
    case GateKind::Buf:
      map[id] = builder.not_( map[nd.fanins[0]] );
      break;
    case GateKind::And:
      map[id] = odd ? builder.nand_( map[nd.fanins[0]], map[nd.fanins[1]] ) : builder.nor_( map[nd.fanins[0]], map[nd.fanins[1]] );
      break;
    case GateKind::Or:
      map[id] = odd ? builder.nor_( map[nd.fanins[0]], map[nd.fanins[1]] ) : builder.nand_( map[nd.fanins[0]], map[nd.fanins[1]] );
      break;
    default:
      throw std::logic_error( "demorgan_map: unexpected gate kind" );
    }
  }
  std::vector<NodeId> corrected( nodes.size(), no_node );
  for ( auto o : c.outputs() )
  {
    if ( !negated( o ) )
    {
      builder.add_output( map[o] );
      continue;
    }
    if ( corrected[o] == no_node )
    {
      corrected[o] = builder.not_( map[o] );
    }
    builder.add_output( corrected[o] );
  }
  return std::move( builder ).build();
}

Circuit map_brent_kung_gates( std::uint32_t n, std::uint32_t tau, InnerAdder const& inner )
{
  StepOptions options;
  options.style = GateStyle::NandNot;
  return apply_reduction( n, tau, inner, options );
}

Circuit build_nandnor_adder( std::uint32_t n )
{
  auto mapped = demorgan_map( levelize( build_linear_adder( n ) ) );
  return Circuit( fmt::format( "nandnor_{}", n ), mapped.nodes(), mapped.inputs(), mapped.outputs() );
}

double nandnor_size_bound( std::uint32_t n )
{
  return ( n >= 4096 ? 15.0 + 5.0 / 6.0 : 18.0 + 1.0 / 3.0 ) * n;
}

std::uint32_t nandnor_depth_bound( std::uint32_t n )
{
  return linear_depth_bound( n ) + 1;
}

} // namespace adders

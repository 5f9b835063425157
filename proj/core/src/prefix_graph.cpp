#include <adders/prefix_graph.hpp>

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace adders
{

bool is_power_of_two( std::uint64_t n )
{
  return n != 0 && ( n & ( n - 1 ) ) == 0;
}

std::uint32_t ilog2( std::uint64_t n )
{
  if ( n == 0 )
  {
    throw std::invalid_argument( "ilog2(0)" );
  }
  return 63u - static_cast<std::uint32_t>( __builtin_clzll( n ) );
}

PrefixGraph::PrefixGraph( std::uint32_t n ) : n_( n )
{
  if ( n == 0 )
  {
    throw std::invalid_argument( "prefix graph needs at least one input" );
  }
  for ( std::uint32_t i = 1; i <= n; ++i )
  {
    nodes_.push_back( { PrefixKind::Input, 0, 0, i, i } );
    consumers_.push_back( 0 );
  }
}

std::uint32_t PrefixGraph::input( std::uint32_t position ) const
{
  if ( position < 1 || position > n_ )
  {
    throw std::out_of_range( fmt::format( "prefix input {} out of range 1..{}", position, n_ ) );
  }
  return position - 1;
}

std::uint32_t PrefixGraph::push( PrefixNode node )
{
  nodes_.push_back( node );
  consumers_.push_back( 0 );
  return static_cast<std::uint32_t>( nodes_.size() - 1 );
}

std::uint32_t PrefixGraph::add_repeater( std::uint32_t v )
{
  auto const& src = node( v );
  ++consumers_[v];
  return push( { PrefixKind::Repeater, v, v, src.s, src.t } );
}

std::uint32_t PrefixGraph::add_op( std::uint32_t upper, std::uint32_t lower )
{
  auto const& u = node( upper );
  auto const& l = node( lower );
  if ( u.s != l.t + 1 )
  {
    throw std::invalid_argument( fmt::format( "prefix op operands [{},{}] and [{},{}] are not adjacent", u.s, u.t, l.s, l.t ) );
  }
  if ( u.kind == PrefixKind::ReducedOutputOp )
  {
    throw std::invalid_argument( "reduced output node cannot be an upper operand" );
  }
  ++consumers_[upper];
  ++consumers_[lower];
  return push( { PrefixKind::Op, upper, lower, l.s, u.t } );
}

std::uint32_t PrefixGraph::add_reduced_output_op( std::uint32_t upper, std::uint32_t lower )
{
  auto id = add_op( upper, lower );
  nodes_[id].kind = PrefixKind::ReducedOutputOp;
  return id;
}

void PrefixGraph::set_outputs( std::vector<std::uint32_t> ids )
{
  if ( ids.size() != n_ )
  {
    throw std::invalid_argument( fmt::format( "prefix graph needs {} outputs, got {}", n_, ids.size() ) );
  }
  for ( std::uint32_t i = 0; i < n_; ++i )
  {
    auto const& nd = node( ids[i] );
    if ( nd.s != 1 || nd.t != i + 1 )
    {
      throw std::invalid_argument( fmt::format( "output {} covers [{},{}] instead of [1,{}]", i + 1, nd.s, nd.t, i + 1 ) );
    }
  }
  for ( auto id : outputs_ )
  {
    --consumers_[id];
  }
  outputs_ = std::move( ids );
  for ( auto id : outputs_ )
  {
    ++consumers_[id];
  }
}

PrefixMetrics prefix_metrics( PrefixGraph const& g )
{
  PrefixMetrics m;
  std::vector<std::uint32_t> depth( g.nodes().size(), 0 ), levels( g.nodes().size(), 0 );
  for ( std::uint32_t id = 0; id < g.nodes().size(); ++id )
  {
    auto const& nd = g.node( id );
    switch ( nd.kind )
    {
    case PrefixKind::Input:
      break;
    case PrefixKind::Repeater:
      ++m.size;
      ++m.repeaters;
      depth[id] = depth[nd.upper];
      levels[id] = levels[nd.upper] + 1;
      break;
    case PrefixKind::Op:
    case PrefixKind::ReducedOutputOp:
      ++m.size;
      ++m.ops;
      depth[id] = 1 + std::max( depth[nd.upper], depth[nd.lower] );
      levels[id] = 1 + std::max( levels[nd.upper], levels[nd.lower] );
      break;
    }
    m.max_fanout = std::max( m.max_fanout, g.consumers( id ) );
  }
  for ( auto o : g.outputs() )
  {
    m.depth = std::max( m.depth, depth[o] );
    m.levels = std::max( m.levels, levels[o] );
  }
  return m;
}

std::vector<GPPair> evaluate( PrefixGraph const& g, std::span<GPPair const> pairs )
{
  if ( pairs.size() != g.width() )
  {
    throw std::invalid_argument( "evaluate: wrong number of pairs" );
  }
  std::vector<GPPair> val( g.nodes().size() );
  for ( std::uint32_t id = 0; id < g.nodes().size(); ++id )
  {
    auto const& nd = g.node( id );
    switch ( nd.kind )
    {
    case PrefixKind::Input:
      val[id] = pairs[nd.s - 1];
      break;
    case PrefixKind::Repeater:
      val[id] = val[nd.upper];
      break;
    case PrefixKind::Op:
      val[id] = prefix_op( val[nd.upper], val[nd.lower] );
      break;
    case PrefixKind::ReducedOutputOp:
      val[id] = { false, prefix_op( val[nd.upper], val[nd.lower] ).y };
      break;
    }
  }
  return val;
}

namespace
{

void require_power_of_two( std::uint32_t n, char const* family )
{
  if ( !is_power_of_two( n ) )
  {
    throw std::invalid_argument( fmt::format( "{} needs a power-of-two width, got {}", family, n ) );
  }
}

std::vector<std::uint32_t> all_inputs( PrefixGraph const& g )
{
  std::vector<std::uint32_t> ids( g.width() );
  for ( std::uint32_t i = 0; i < g.width(); ++i )
  {
    ids[i] = i;
  }
  return ids;
}

} // namespace

std::vector<std::uint32_t> serial_prefix_into( PrefixGraph& g, std::span<std::uint32_t const> inputs )
{
  std::vector<std::uint32_t> out( inputs.begin(), inputs.end() );
  for ( std::size_t i = 1; i < out.size(); ++i )
  {
    out[i] = g.add_op( inputs[i], out[i - 1] );
  }
  return out;
}

PrefixGraph serial_prefix( std::uint32_t n )
{
  PrefixGraph g( n );
  auto const in = all_inputs( g );
  g.set_outputs( serial_prefix_into( g, in ) );
  return g;
}

PrefixGraph sklansky( std::uint32_t n )
{
  require_power_of_two( n, "sklansky" );
  PrefixGraph g( n );
  auto cur = all_inputs( g );
  for ( std::uint32_t block = 2; block <= n; block *= 2 )
  {
    std::uint32_t const half = block / 2;
    for ( std::uint32_t j = 0; j < n; ++j )
    {
      if ( j % block >= half )
      {
        cur[j] = g.add_op( cur[j], cur[j - j % block + half - 1] );
      }
    }
  }
  g.set_outputs( cur );
  return g;
}

std::vector<std::uint32_t> kogge_stone_into( PrefixGraph& g, std::span<std::uint32_t const> inputs )
{
  std::uint32_t const n = static_cast<std::uint32_t>( inputs.size() );
  require_power_of_two( n, "kogge_stone" );
  std::vector<std::uint32_t> cur( inputs.begin(), inputs.end() );
  for ( std::uint32_t dist = 1; dist < n; dist *= 2 )
  {
    bool const final_level = 2 * dist == n;
    std::vector<std::uint32_t> next( n );
    for ( std::uint32_t j = 0; j < n; ++j )
    {
      if ( j >= dist )
      {
        next[j] = g.add_op( cur[j], cur[j - dist] );
      }
      else
      {
        // empty lower operand: repeat, except at the last level where nothing follows
        next[j] = final_level ? cur[j] : g.add_repeater( cur[j] );
      }
    }
    cur = std::move( next );
  }
  return cur;
}

PrefixGraph kogge_stone( std::uint32_t n )
{
  PrefixGraph g( n );
  auto const in = all_inputs( g );
  g.set_outputs( kogge_stone_into( g, in ) );
  return g;
}

namespace
{

std::vector<std::uint32_t> steps_into( PrefixGraph& g, std::span<std::uint32_t const> z, std::uint32_t steps, PrefixBuilder const& inner )
{
  if ( steps == 0 )
  {
    return inner( g, z );
  }
  std::size_t const m = z.size();
  if ( m % 2 != 0 )
  {
    throw std::invalid_argument( "Brent-Kung step needs an even width" );
  }
  std::vector<std::uint32_t> halved( m / 2 );
  for ( std::size_t j = 0; j < m / 2; ++j )
  {
    halved[j] = g.add_op( z[2 * j + 1], z[2 * j] );
  }
  auto const inner_out = steps_into( g, halved, steps - 1, inner );

  std::vector<std::uint32_t> out( m );
  out[0] = z[0];
  for ( std::size_t j = 0; j < m / 2; ++j )
  {
    auto carry = inner_out[j]; // covers [1, 2j+2]
    if ( j + 1 == m / 2 )
    {
      out[m - 1] = carry;
      break;
    }
    if ( g.consumers( carry ) > 0 )
    {
      carry = g.add_repeater( carry );
    }
    out[2 * j + 1] = carry;
    out[2 * j + 2] = g.add_reduced_output_op( z[2 * j + 2], carry );
  }
  return out;
}

} // namespace

PrefixGraph brent_kung_steps( std::uint32_t n, std::uint32_t steps, PrefixBuilder const& inner )
{
  if ( steps >= 32 || n % ( std::uint32_t{ 1 } << steps ) != 0 )
  {
    throw std::invalid_argument( fmt::format( "{} Brent-Kung steps need a width divisible by 2^{}", steps, steps ) );
  }
  PrefixGraph g( n );
  auto const in = all_inputs( g );
  g.set_outputs( steps_into( g, in, steps, inner ) );
  return g;
}

PrefixGraph brent_kung( std::uint32_t n )
{
  require_power_of_two( n, "brent_kung" );
  return brent_kung_steps( n, ilog2( n ), []( PrefixGraph&, std::span<std::uint32_t const> z ) {
    return std::vector<std::uint32_t>( z.begin(), z.end() );
  } );
}

ExpandedOutputs expand_into( CircuitBuilder& builder, PrefixGraph const& g, std::span<std::pair<NodeId, NodeId> const> pairs,
                             ExpandOptions const& options )
{
  if ( pairs.size() != g.width() )
  {
    throw std::invalid_argument( "expand: wrong number of input pairs" );
  }
  if ( g.outputs().size() != g.width() )
  {
    throw std::invalid_argument( "expand: prefix graph has no outputs" );
  }
  auto const& nodes = g.nodes();

  std::vector<bool> need_x( nodes.size(), false );
  if ( !options.extract_carries )
  {
    for ( auto o : g.outputs() )
    {
      need_x[o] = true;
    }
  }
  for ( auto id = nodes.size(); id-- > 0; )
  {
    auto const& nd = nodes[id];
    switch ( nd.kind )
    {
    case PrefixKind::Input:
      break;
    case PrefixKind::Repeater:
      need_x[nd.upper] = need_x[nd.upper] || need_x[id];
      break;
    case PrefixKind::ReducedOutputOp:
      if ( need_x[id] )
      {
        throw std::invalid_argument( fmt::format( "propagate of reduced output node covering [{},{}] is required", nd.s, nd.t ) );
      }
      need_x[nd.upper] = true;
      break;
    case PrefixKind::Op:
      need_x[nd.upper] = true;
      need_x[nd.lower] = need_x[nd.lower] || need_x[id];
      break;
    }
  }

  std::vector<NodeId> x( nodes.size(), no_node ), y( nodes.size(), no_node );
  for ( std::uint32_t id = 0; id < nodes.size(); ++id )
  {
    auto const& nd = nodes[id];
    switch ( nd.kind )
    {
    case PrefixKind::Input:
      x[id] = pairs[nd.s - 1].first;
      y[id] = pairs[nd.s - 1].second;
      break;
    case PrefixKind::Repeater:
      y[id] = builder.buf( y[nd.upper] );
      if ( need_x[id] )
      {
        x[id] = builder.buf( x[nd.upper] );
      }
      break;
    case PrefixKind::Op:
    case PrefixKind::ReducedOutputOp:
      if ( need_x[id] )
      {
        x[id] = builder.and_( x[nd.upper], x[nd.lower] );
      }
      y[id] = builder.or_( y[nd.upper], builder.and_( x[nd.upper], y[nd.lower] ) );
      break;
    }
  }

  ExpandedOutputs out;
  for ( auto o : g.outputs() )
  {
    out.carries.push_back( y[o] );
    if ( !options.extract_carries )
    {
      out.propagates.push_back( x[o] );
    }
  }
  return out;
}

Circuit expand_to_logic( PrefixGraph const& g, ExpandOptions const& options )
{
  CircuitBuilder builder( "prefix" );
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for ( std::uint32_t i = 0; i < g.width(); ++i )
  {
    auto const xi = builder.add_input();
    auto const yi = builder.add_input();
    pairs.emplace_back( xi, yi );
  }
  auto const out = expand_into( builder, g, pairs, options );
  for ( std::size_t i = 0; i < out.carries.size(); ++i )
  {
    if ( !options.extract_carries )
    {
      builder.add_output( out.propagates[i] );
    }
    builder.add_output( out.carries[i] );
  }
  return std::move( builder ).build();
}

} // namespace adders

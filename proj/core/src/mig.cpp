#include <adders/mig.hpp>

#include <stdexcept>

#include <fmt/format.h>

namespace adders
{

namespace
{

std::uint32_t ceil_log2( std::uint64_t n )
{
  std::uint32_t l = 0;
  while ( ( std::uint64_t{ 1 } << l ) < n )
  {
    ++l;
  }
  return l;
}

/*! Smallest r >= 1 with r^2 >= ld n, i.e. ceil(sqrt(ld n)). */
std::uint32_t ceil_sqrt_ld( std::uint64_t n )
{
  auto const l = ceil_log2( n );
  std::uint32_t r = 1;
  while ( r * r < l )
  {
    ++r;
  }
  return r;
}

/*! `count` fresh copies of `src` from a complete Buf tree whose root consumes one slot of `src`. */
std::vector<NodeId> copies_from_slot( CircuitBuilder& b, NodeId src, std::uint32_t count )
{
  std::vector<NodeId> level{ b.buf( src ) };
  while ( level.size() < count )
  {
    std::vector<NodeId> next;
    for ( auto v : level )
    {
      next.push_back( b.buf( v ) );
      next.push_back( b.buf( v ) );
    }
    level = std::move( next );
  }
  return level;
}

/*! `count` copies of an unused `src` with `src` as tree root; `count / 2` leaves per side. */
std::vector<NodeId> copies_from_root( CircuitBuilder& b, NodeId src, std::uint32_t count )
{
  std::vector<NodeId> level{ src };
  while ( level.size() < count )
  {
    std::vector<NodeId> next;
    for ( auto v : level )
    {
      next.push_back( b.buf( v ) );
      next.push_back( b.buf( v ) );
    }
    level = std::move( next );
  }
  return level;
}

NodeId and_or_pass( CircuitBuilder& b, NodeId u, NodeId v )
{
  if ( u == no_node )
  {
    return v == no_node ? no_node : b.buf( v );
  }
  if ( v == no_node )
  {
    return b.buf( u );
  }
  return b.and_( u, v );
}

NodeId or_or_pass( CircuitBuilder& b, NodeId u, NodeId v )
{
  if ( u == no_node )
  {
    return v == no_node ? no_node : b.buf( v );
  }
  if ( v == no_node )
  {
    return b.buf( u );
  }
  return b.or_( u, v );
}

} // namespace

MigParams choose_params( std::uint64_t n )
{
  if ( n < 2 )
  {
    throw std::invalid_argument( "choose_params needs n >= 2" );
  }
  auto const r = ceil_sqrt_ld( n );
  return { r, r };
}

MigParams choose_compact_params( std::uint64_t n )
{
  if ( n < 2 )
  {
    throw std::invalid_argument( "choose_compact_params needs n >= 2" );
  }
  auto const r = ceil_sqrt_ld( n );
  auto const l = ceil_log2( n );
  return { r, ( l + r - 1 ) / r };
}

GenGateHandle build_generate_gate( CircuitBuilder& builder, std::uint32_t r, std::span<NodeId const> gen_ports,
                                   std::span<NodeId const> prop_ports, bool final_level )
{
  if ( r < 1 || r > 16 )
  {
    throw std::invalid_argument( fmt::format( "generate gate radix exponent {} out of range", r ) );
  }
  std::size_t const width = std::size_t{ 1 } << r;
  if ( gen_ports.size() != width || prop_ports.size() != width )
  {
    throw std::invalid_argument( fmt::format( "{}-input generate gate got {} generate and {} propagate ports", width, gen_ports.size(),
                                              prop_ports.size() ) );
  }
  for ( std::size_t p = 0; p < width; ++p )
  {
    if ( ( gen_ports[p] == no_node ) != ( prop_ports[p] == no_node ) )
    {
      throw std::invalid_argument( fmt::format( "generate gate port {} is half connected", p + 1 ) );
    }
    if ( p > 0 && gen_ports[p - 1] != no_node && gen_ports[p] == no_node )
    {
      throw std::invalid_argument( "generate gate empty ports must be the lowest-order ones" );
    }
  }
  if ( gen_ports[width - 2] == no_node )
  {
    throw std::invalid_argument( "generate gate needs at least its two highest ports" );
  }

  // AND-suffix graph: suffix[q] = x~_{width} & ... & x~_{width-q}, built as Kogge-Stone on the reversed ports.
  std::vector<NodeId> suffix( width );
  for ( std::size_t q = 0; q < width; ++q )
  {
    suffix[q] = prop_ports[width - 1 - q];
  }
  for ( std::size_t dist = 1; dist < width; dist *= 2 )
  {
    bool const last = 2 * dist == width;
    std::vector<NodeId> next( width );
    for ( std::size_t q = 0; q < width; ++q )
    {
      if ( q >= dist )
      {
        next[q] = and_or_pass( builder, suffix[q], suffix[q - dist] );
      }
      else if ( last && r > 1 )
      {
        next[q] = suffix[q];
      }
      else
      {
        // with r = 1 the single row repeats too, so every propagate path has depth 2r + 1
        next[q] = suffix[q] == no_node ? no_node : builder.buf( suffix[q] );
      }
    }
    suffix = std::move( next );
  }

  // minterms m_p = y~_p & x~_{p+1} & ... & x~_width, p = 1..width
  std::vector<NodeId> minterms( width, no_node );
  for ( std::size_t p = 1; p <= width; ++p )
  {
    auto const y = gen_ports[p - 1];
    if ( y == no_node )
    {
      continue;
    }
    minterms[p - 1] = p == width ? builder.buf( y ) : builder.and_( y, suffix[width - p - 1] );
  }

  GenGateHandle handle;
  if ( final_level )
  {
    std::vector<NodeId> level = minterms;
    while ( level.size() > 1 )
    {
      std::vector<NodeId> next( level.size() / 2 );
      for ( std::size_t i = 0; i < next.size(); ++i )
      {
        auto const u = level[2 * i];
        auto const v = level[2 * i + 1];
        next[i] = u == no_node ? v : ( v == no_node ? u : builder.or_( u, v ) );
      }
      level = std::move( next );
    }
    handle.outputs = level;
    return handle;
  }

  // copies[i][c]: copy c of M over minterm block i; block size doubles per row
  std::vector<std::vector<NodeId>> copies( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    copies[i] = { minterms[i] };
  }
  for ( std::uint32_t l = 1; l <= r; ++l )
  {
    std::size_t const ncopies = std::size_t{ 1 } << ( l - 1 );
    std::vector<std::vector<NodeId>> next( copies.size() / 2 );
    for ( std::size_t i = 0; i < next.size(); ++i )
    {
      auto const& lo = copies[2 * i];
      auto const& hi = copies[2 * i + 1];
      for ( std::size_t c = 0; c < ncopies; ++c )
      {
        next[i].push_back( or_or_pass( builder, lo[c / 2], hi[c / 2] ) );
      }
    }
    copies = std::move( next );
  }
  handle.outputs = copies[0];
  return handle;
}

TapMap::TapMap( std::uint32_t r, std::uint32_t k, std::uint64_t n )
    : r_( r ), k_( k ), n_( n ), ids_( n * k * ( std::uint64_t{ 1 } << r ), no_node )
{
}

std::span<NodeId const> TapMap::at( std::uint64_t t, std::uint32_t l ) const
{
  if ( t < 1 || t > n_ || l >= k_ )
  {
    throw std::out_of_range( fmt::format( "tap ({}, {}) out of range", t, l ) );
  }
  return std::span<NodeId const>( ids_ ).subspan( ( ( t - 1 ) * k_ + l ) * copies(), copies() );
}

std::span<NodeId> TapMap::at( std::uint64_t t, std::uint32_t l )
{
  if ( t < 1 || t > n_ || l >= k_ )
  {
    throw std::out_of_range( fmt::format( "tap ({}, {}) out of range", t, l ) );
  }
  return std::span<NodeId>( ids_ ).subspan( ( ( t - 1 ) * k_ + l ) * copies(), copies() );
}

AugmentedAndPrefix build_augmented_and_prefix( CircuitBuilder& builder, std::span<NodeId const> xs, std::uint32_t r,
                                               std::uint32_t k, bool omit_last_block )
{
  MigParams const params{ r, k };
  if ( r < 1 || k < 1 || r * k >= 32 || xs.size() != params.width() )
  {
    throw std::invalid_argument( fmt::format( "augmented AND-prefix graph with r={}, k={} needs 2^(rk) inputs, got {}", r, k, xs.size() ) );
  }
  std::uint64_t const n = xs.size();
  AugmentedAndPrefix out{ TapMap( r, k, n ), {} };

  std::vector<NodeId> cur( xs.begin(), xs.end() );
  std::uint64_t dist = 1;
  for ( std::uint32_t l = 0; l < k; ++l )
  {
    for ( std::uint64_t t = 1; t <= n; ++t )
    {
      auto leaves = copies_from_slot( builder, cur[t - 1], 1u << r );
      std::copy( leaves.begin(), leaves.end(), out.taps.at( t, l ).begin() );
    }
    for ( auto& v : cur )
    {
      v = builder.buf( v );
    }
    if ( l + 1 == k && omit_last_block )
    {
      break;
    }
    for ( std::uint32_t row = 0; row < r; ++row, dist *= 2 )
    {
      std::vector<NodeId> next( n );
      for ( std::uint64_t j = 0; j < n; ++j )
      {
        next[j] = j >= dist ? builder.and_( cur[j], cur[j - dist] ) : builder.buf( cur[j] );
      }
      cur = std::move( next );
    }
  }
  if ( !omit_last_block )
  {
    out.prefix = cur;
  }
  return out;
}

std::vector<NodeId> build_mig_into( CircuitBuilder& builder, std::span<std::pair<NodeId, NodeId> const> pairs, MigParams params )
{
  auto const [r, k] = params;
  if ( r < 1 || k < 1 || r * k >= 32 || pairs.size() != params.width() )
  {
    throw std::invalid_argument( fmt::format( "MIG adder with r={}, k={} needs 2^(rk) pairs, got {}", r, k, pairs.size() ) );
  }
  std::uint64_t const n = pairs.size();
  std::uint32_t const gate_width = 1u << r;
  std::uint32_t const ncopies = gate_width / 2;

  std::vector<NodeId> xs( n );
  for ( std::uint64_t t = 0; t < n; ++t )
  {
    xs[t] = pairs[t].first;
  }
  auto const aug = build_augmented_and_prefix( builder, xs, r, k, true );

  // gen[t-1]: copies of the generate signal of column t from the previous row
  std::vector<std::vector<NodeId>> gen( n );
  for ( std::uint64_t t = 0; t < n; ++t )
  {
    gen[t] = copies_from_root( builder, pairs[t].second, ncopies );
  }

  std::vector<NodeId> carries( n );
  std::uint64_t block = 1; // 2^(r(l-1))
  std::vector<NodeId> gports( gate_width ), pports( gate_width );
  for ( std::uint32_t l = 1; l <= k; ++l, block <<= r )
  {
    bool const final_row = l == k;
    std::vector<std::vector<NodeId>> next( n );
    for ( std::uint64_t t = 1; t <= n; ++t )
    {
      if ( t <= block )
      {
        // Y_{1,t} is complete already; only duplicate it
        auto const src = gen[t - 1][0];
        if ( final_row )
        {
          carries[t - 1] = src;
        }
        else
        {
          next[t - 1] = copies_from_slot( builder, src, ncopies );
        }
        continue;
      }
      for ( std::uint32_t j = 1; j <= gate_width; ++j )
      {
        auto const port = gate_width - j; // sub-block j = 1 is the most significant
        if ( t > ( j - 1 ) * block )
        {
          auto const tp = t - ( j - 1 ) * block;
          gports[port] = gen[tp - 1][( j - 1 ) / 2];
          pports[port] = aug.taps.at( tp, l - 1 )[j - 1];
        }
        else
        {
          gports[port] = no_node;
          pports[port] = no_node;
        }
      }
      auto handle = build_generate_gate( builder, r, gports, pports, final_row );
      if ( final_row )
      {
        carries[t - 1] = handle.outputs[0];
      }
      else
      {
        next[t - 1] = std::move( handle.outputs );
      }
    }
    if ( !final_row )
    {
      gen = std::move( next );
    }
  }
  return carries;
}

Circuit build_mig_adder( MigParams params, MigOptions const& options )
{
  if ( params.r < 1 || params.k < 1 || params.r * params.k > 24 )
  {
    throw std::invalid_argument( fmt::format( "MIG parameters r={}, k={} out of range", params.r, params.k ) );
  }
  CircuitBuilder builder( fmt::format( "mig_r{}_k{}", params.r, params.k ) );
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for ( std::uint64_t t = 0; t < params.width(); ++t )
  {
    auto const x = builder.add_input();
    auto const y = builder.add_input();
    pairs.emplace_back( x, y );
  }
  for ( auto c : build_mig_into( builder, pairs, params ) )
  {
    builder.add_output( c );
  }
  auto circuit = std::move( builder ).build();
  return options.prune ? prune( circuit ) : circuit;
}

Circuit build_mig_adder( std::uint64_t n, MigParams params )
{
  if ( n < 1 || n > params.width() )
  {
    throw std::invalid_argument( fmt::format( "MIG instance of width {} cannot provide {} carries", params.width(), n ) );
  }
  return truncate( build_mig_adder( params, { false } ), n, n );
}

std::uint64_t mig_depth_bound( MigParams p )
{
  return std::uint64_t{ p.k } * p.r + 2 * p.r + p.k + 1;
}

std::uint64_t mig_size_bound( MigParams p )
{
  auto const n = p.width();
  return 3 * n * p.k * ( p.r + 2 ) * ( std::uint64_t{ 1 } << ( p.r - 1 ) ) + n * ( std::uint64_t{ 1 } << p.r ) + n * p.r * p.k;
}

std::uint64_t generate_gate_size( std::uint32_t r )
{
  return std::uint64_t{ r } * ( std::uint64_t{ 1 } << r ) + std::uint64_t{ r + 1 } * ( std::uint64_t{ 1 } << ( r - 1 ) );
}

std::uint64_t augmented_and_prefix_size( MigParams p )
{
  auto const n = p.width();
  return n * p.r * ( p.k - 1 ) + n * p.k * ( std::uint64_t{ 1 } << ( p.r + 1 ) );
}

} // namespace adders

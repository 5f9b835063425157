#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <adders/circuit.hpp>
#include <adders/prefix_graph.hpp>
#include <adders/reduction.hpp>
#include <adders/reference.hpp>

using namespace adders;

namespace
{

VerifyOptions options_for( std::uint32_t n )
{
  VerifyOptions o;
  o.mode = n <= 8 ? VerifyMode::Exhaustive : VerifyMode::Random;
  o.samples = 20000;
  return o;
}

bool has_dead_gate( Circuit const& c )
{
  auto const vs = validate( c );
  return std::any_of( vs.begin(), vs.end(), []( auto const& v ) { return v.rule == Rule::DeadGate; } );
}

} // namespace

TEST_CASE( "one step around a ripple adder, all assignments" )
{
  auto const c = apply_reduction( 8, 2, prefix_inner( serial_prefix ) );
  CHECK( verify_adder( c, 8, { VerifyMode::Exhaustive } ).passed() );
  CHECK( metrics( c ).max_fanout <= 2 );
  CHECK_FALSE( has_dead_gate( c ) );
}

TEST_CASE( "zero steps reproduce the inner adder" )
{
  for ( std::uint32_t n : { 4u, 16u, 64u } )
  {
    CAPTURE( n );
    auto const c = apply_reduction( n, 0, prefix_inner( kogge_stone ) );
    CHECK( metrics( c ) == metrics( expand_to_logic( kogge_stone( n ) ) ) );
  }
}

TEST_CASE( "steps down to two positions rebuild the Brent-Kung adder" )
{
  for ( std::uint32_t n : { 4u, 8u, 32u, 256u } )
  {
    CAPTURE( n );
    auto const reduced = metrics( apply_reduction( n, ilog2( n ) - 1, prefix_inner( kogge_stone ) ) );
    auto const expanded = metrics( expand_to_logic( brent_kung( n ) ) );
    CHECK( reduced.size == expanded.size );
    CHECK( reduced.depth == expanded.depth );
    CHECK( reduced.max_fanout == expanded.max_fanout );
  }
}

TEST_CASE( "per-step cost in size and depth" )
{
  for ( std::uint32_t n : { 16u, 64u, 256u, 1024u } )
  {
    for ( std::uint32_t tau = 1; tau < ilog2( n ); ++tau )
    {
      CAPTURE( n );
      CAPTURE( tau );
      auto const inner = metrics( expand_to_logic( kogge_stone( n >> tau ) ) );
      for ( bool distribute : { true, false } )
      {
        CAPTURE( distribute );
        StepOptions opts;
        opts.distribute = distribute;
        auto const c = apply_reduction( n, tau, prefix_inner( kogge_stone ), opts );
        auto const m = metrics( c );
        // each step costs at most 5 gates per pair of positions, plus one repeater per pair when distributing
        double const per_position = distribute ? 5.5 : 5.0;
        CHECK( m.size - inner.size <= per_position * n );
        CHECK( m.depth <= inner.depth + 4 * tau );
        if ( distribute )
        {
          CHECK( m.max_fanout <= std::max( 2u, inner.max_fanout ) );
        }
        CHECK_FALSE( has_dead_gate( c ) );
        if ( n <= 256 )
        {
          CHECK( verify_adder( c, n, options_for( n ) ).passed() );
        }
      }
    }
  }
}

TEST_CASE( "inner adders of every kind" )
{
  for ( std::uint32_t tau : { 1u, 2u, 3u } )
  {
    CAPTURE( tau );
    CHECK( verify_adder( apply_reduction( 64, tau, prefix_inner( sklansky ) ), 64, options_for( 64 ) ).passed() );
    CHECK( verify_adder( apply_reduction( 64, tau, prefix_inner( brent_kung ) ), 64, options_for( 64 ) ).passed() );
    CHECK( verify_adder( apply_reduction( 64, tau, mig_inner() ), 64, options_for( 64 ) ).passed() );
    if ( tau >= 2 )
    {
      CHECK( verify_adder( apply_reduction( 64, tau, mig_inner( MigParams{ 2, 2 } ) ), 64, options_for( 64 ) ).passed() );
    }
  }
  CHECK_THROWS( apply_reduction( 64, 1, mig_inner( MigParams{ 1, 2 } ) ) );
}

TEST_CASE( "Nand/Not step gates" )
{
  StepOptions opts;
  opts.style = GateStyle::NandNot;
  for ( std::uint32_t n : { 2u, 4u, 8u, 64u } )
  {
    CAPTURE( n );
    auto const tau = ilog2( n ) - 1;
    auto const c = apply_reduction( n, tau, prefix_inner( serial_prefix ), opts );
    CHECK( verify_adder( c, n, options_for( n ) ).passed() );
    CHECK( metrics( c ).max_fanout <= 2 );
    // two positions leave a single-gate-free inner adder, so only step gates remain
    std::set<GateKind> kinds;
    for ( auto const& [kind, count] : metrics( c ).histogram )
    {
      if ( count > 0 )
      {
        kinds.insert( kind );
      }
    }
    for ( auto kind : kinds )
    {
      CHECK( ( kind == GateKind::Nand || kind == GateKind::Not || kind == GateKind::And || kind == GateKind::Or ) );
    }
  }
}

TEST_CASE( "linear step count" )
{
  CHECK( linear_step_count( 4096 ) == 8 );
  CHECK( linear_step_count_unclamped( 4096 ) == 8 );
  for ( std::uint32_t n = 2; n <= ( 1u << 20 ); n *= 2 )
  {
    CAPTURE( n );
    auto const l = ilog2( n );
    auto const root = static_cast<std::uint32_t>( std::ceil( std::sqrt( double( l ) ) ) );
    auto const expected = static_cast<std::uint32_t>( std::ceil( std::sqrt( double( l ) ) + 2 * std::log2( double( root ) ) ) );
    CHECK( linear_step_count_unclamped( n ) == expected );
    CHECK( linear_step_count( n ) == std::min( expected, l - 1 ) );
  }
}

TEST_CASE( "linear adder bounds" )
{
  for ( std::uint32_t n = 2; n <= 4096; n *= 2 )
  {
    CAPTURE( n );
    auto const c = build_linear_adder( n );
    auto const m = metrics( c );
    CHECK( m.size <= linear_size_bound( n ) );
    CHECK( m.depth <= linear_depth_bound( n ) );
    CHECK( m.max_fanout <= 2 );
    CHECK( verify_adder( c, n, options_for( n ) ).passed() );
  }
  auto const big = metrics( build_linear_adder( 4096 ) );
  CHECK( big.size <= 9.5 * 4096 );
  CHECK( linear_depth_bound( 4096 ) == 12 + 8 * 4 + 6 * 2 + 2 );
}

TEST_CASE( "reduction argument checks" )
{
  CHECK_THROWS( apply_reduction( 12, 1, prefix_inner( kogge_stone ) ) );
  CHECK_THROWS( apply_reduction( 16, 4, prefix_inner( kogge_stone ) ) );
  CircuitBuilder b;
  std::vector<NodePair> pairs;
  for ( int i = 0; i < 3; ++i )
  {
    auto x = b.add_input();
    pairs.emplace_back( x, b.add_input() );
  }
  CHECK_THROWS( BrentKungStep( b, pairs ) );
}

#include <doctest.h>

#include <algorithm>
#include <random>

#include <adders/circuit.hpp>
#include <adders/mig.hpp>
#include <adders/prefix_graph.hpp>
#include <adders/reduction.hpp>
#include <adders/reference.hpp>
#include <adders/techmap.hpp>

using namespace adders;

namespace
{

// Simulates both circuits on the same random inputs and counts differing output vectors.
std::uint64_t paired_differences( Circuit const& a, Circuit const& b, int samples, std::uint64_t seed )
{
  REQUIRE( a.inputs().size() == b.inputs().size() );
  std::mt19937_64 rng( seed );
  std::uint64_t diffs = 0;
  for ( int s = 0; s < samples; ++s )
  {
    std::vector<bool> in( a.inputs().size() );
    for ( std::size_t i = 0; i < in.size(); ++i )
    {
      in[i] = ( rng() & 1 ) != 0;
    }
    diffs += simulate( a, in ) == simulate( b, in ) ? 0 : 1;
  }
  return diffs;
}

bool only_kinds( Circuit const& c, std::initializer_list<GateKind> allowed )
{
  for ( auto const& [kind, count] : metrics( c ).histogram )
  {
    if ( count > 0 && std::find( allowed.begin(), allowed.end(), kind ) == allowed.end() )
    {
      return false;
    }
  }
  return true;
}

} // namespace

TEST_CASE( "levelize leaves odd-span chains alone" )
{
  CircuitBuilder b;
  auto x = b.add_input();
  auto y = b.add_input();
  auto g = b.and_( x, y );
  b.add_output( b.or_( g, y ) ); // y spans two rows
  auto const lc = levelize( std::move( b ).build() );
  CHECK( lc.inserted == 1 );
  CHECK( lc.circuit.num_gates() == 3 );
  CHECK( levelization_error( lc ).empty() );

  CircuitBuilder chain;
  auto a = chain.add_input();
  auto c = chain.add_input();
  chain.add_output( chain.or_( chain.and_( a, c ), chain.buf( c ) ) );
  auto const lc2 = levelize( std::move( chain ).build() );
  CHECK( lc2.inserted == 0 );
}

TEST_CASE( "single And maps to Nand plus an output inverter" )
{
  CircuitBuilder b;
  auto x = b.add_input();
  auto y = b.add_input();
  b.add_output( b.and_( x, y ) );
  auto const mapped = demorgan_map( levelize( std::move( b ).build() ) );
  CHECK( mapped.num_gates() == 2 );
  CHECK( metrics( mapped ).histogram.at( GateKind::Nand ) == 1 );
  CHECK( metrics( mapped ).histogram.at( GateKind::Not ) == 1 );
  for ( int code = 0; code < 4; ++code )
  {
    bool const p = code & 1, q = code & 2;
    CHECK( simulate( mapped, std::vector<bool>{ p, q } )[0] == ( p && q ) );
  }
}

TEST_CASE( "two-row And of Ands keeps its truth table" )
{
  CircuitBuilder b;
  std::vector<NodeId> in;
  for ( int i = 0; i < 4; ++i )
  {
    in.push_back( b.add_input() );
  }
  b.add_output( b.and_( b.and_( in[0], in[1] ), b.and_( in[2], in[3] ) ) );
  auto const mapped = demorgan_map( levelize( std::move( b ).build() ) );
  CHECK( only_kinds( mapped, { GateKind::Nand, GateKind::Nor } ) );
  CHECK( mapped.num_gates() == 3 );
  for ( int code = 0; code < 16; ++code )
  {
    std::vector<bool> v;
    for ( int i = 0; i < 4; ++i )
    {
      v.push_back( ( code >> i ) & 1 );
    }
    CHECK( simulate( mapped, v )[0] == ( code == 15 ) );
  }
}

TEST_CASE( "levelized MIG adder is equivalent and row-consistent" )
{
  auto const c = build_mig_adder( 16, choose_params( 16 ) );
  auto const lc = levelize( c );
  CHECK( levelization_error( lc ).empty() );
  CHECK( metrics( lc.circuit ).depth == metrics( c ).depth );
  CHECK( metrics( lc.circuit ).max_fanout <= 2 );
  CHECK( paired_differences( c, lc.circuit, 10000, 1 ) == 0 );
}

TEST_CASE( "mapping preserves function, fan-out and size budget" )
{
  std::vector<Circuit> sources = { expand_to_logic( kogge_stone( 32 ) ), expand_to_logic( brent_kung( 64 ) ),
                                   build_mig_adder( MigParams{ 2, 2 } ), build_linear_adder( 256 ), expand_to_logic( sklansky( 16 ) ) };
  for ( auto const& c : sources )
  {
    CAPTURE( c.name() );
    auto const lc = levelize( c );
    REQUIRE( levelization_error( lc ).empty() );
    auto const mapped = demorgan_map( lc );
    auto const pre = metrics( c );
    auto const post = metrics( mapped );
    CHECK( only_kinds( mapped, { GateKind::Nand, GateKind::Nor, GateKind::Not } ) );
    CHECK( paired_differences( lc.circuit, mapped, 2000, 2 ) == 0 );
    CHECK( paired_differences( c, mapped, 2000, 3 ) == 0 );
    CHECK( post.max_fanout == pre.max_fanout );
    CHECK( post.depth <= pre.depth + 1 );
    CHECK( post.size <= 5.0 / 3.0 * pre.size + 2.0 * c.outputs().size() );
  }
}

TEST_CASE( "levelize rejects gates outside And/Or/Buf" )
{
  CircuitBuilder b;
  auto x = b.add_input();
  auto y = b.add_input();
  b.add_output( b.nand_( x, y ) );
  CHECK_THROWS( levelize( std::move( b ).build() ) );

  auto lc = levelize( expand_to_logic( kogge_stone( 8 ) ) );
  lc.rows.back() += 1;
  CHECK_FALSE( levelization_error( lc ).empty() );
}

TEST_CASE( "Nand/Not step gates around an unchanged inner adder" )
{
  for ( std::uint32_t n : { 8u, 64u, 512u } )
  {
    CAPTURE( n );
    auto const tau = ilog2( n ) - 1;
    auto const c = map_brent_kung_gates( n, tau, prefix_inner( kogge_stone ) );
    auto const bk = metrics( expand_to_logic( brent_kung( n ) ) );
    auto const m = metrics( c );
    CHECK( only_kinds( c, { GateKind::Nand, GateKind::Not, GateKind::And, GateKind::Or } ) );
    CHECK( m.max_fanout <= 2 );
    CHECK( m.depth <= bk.depth + 1 );
    VerifyOptions o;
    o.mode = n <= 8 ? VerifyMode::Exhaustive : VerifyMode::Random;
    o.samples = 20000;
    CHECK( verify_adder( c, n, o ).passed() );
  }
}

TEST_CASE( "Nand/Nor adder bounds" )
{
  for ( std::uint32_t n = 2; n <= 4096; n *= 2 )
  {
    CAPTURE( n );
    auto const c = build_nandnor_adder( n );
    auto const m = metrics( c );
    CHECK( only_kinds( c, { GateKind::Nand, GateKind::Nor, GateKind::Not } ) );
    CHECK( m.size <= nandnor_size_bound( n ) );
    CHECK( m.depth <= nandnor_depth_bound( n ) );
    CHECK( m.depth <= metrics( build_linear_adder( n ) ).depth + 1 );
    CHECK( m.max_fanout <= 2 );
    VerifyOptions o;
    o.mode = n <= 8 ? VerifyMode::Exhaustive : VerifyMode::Random;
    o.samples = n <= 1024 ? 20000 : 2000;
    CHECK( verify_adder( c, n, o ).passed() );
  }
  CHECK( nandnor_depth_bound( 4096 ) == linear_depth_bound( 4096 ) + 1 );
}

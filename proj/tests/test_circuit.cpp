#include <doctest.h>

#include <algorithm>
#include <functional>

#include <adders/circuit.hpp>
#include <adders/mig.hpp>
#include <adders/prefix_graph.hpp>
#include <adders/reference.hpp>

using namespace adders;

namespace
{

bool has_rule( std::vector<Violation> const& vs, Rule rule )
{
  return std::any_of( vs.begin(), vs.end(), [rule]( auto const& v ) { return v.rule == rule; } );
}

// Longest path by memoized recursion from the outputs, independent of node order.
std::uint32_t longest_path( Circuit const& c )
{
  std::vector<int> memo( c.num_nodes(), -1 );
  std::function<int( NodeId )> visit = [&]( NodeId id ) -> int {
    if ( memo[id] >= 0 )
    {
      return memo[id];
    }
    int best = 0;
    for ( auto f : c.node( id ).fanins )
    {
      best = std::max( best, visit( f ) + 1 );
    }
    return memo[id] = best;
  };
  int depth = 0;
  for ( auto o : c.outputs() )
  {
    depth = std::max( depth, visit( o ) );
  }
  return static_cast<std::uint32_t>( depth );
}

} // namespace

TEST_CASE( "minimal legal circuit validates cleanly" )
{
  CircuitBuilder b( "buf" );
  auto in = b.add_input();
  b.add_output( b.buf( in ) );
  auto const c = std::move( b ).build();
  CHECK( validate( c ).empty() );
  auto const m = metrics( c );
  CHECK( m.depth == 1 );
  CHECK( m.size == 1 );
  CHECK( m.max_fanout == 1 );
  CHECK( m.histogram.at( GateKind::Buf ) == 1 );
}

TEST_CASE( "validate reports ordering, arity and dangling references" )
{
  SUBCASE( "fan-in at or after the gate" )
  {
    Circuit c( "bad", { Node{ true, GateKind::Buf, {} }, Node{ false, GateKind::Buf, { 1 } } }, { 0 }, { 1 } );
    CHECK( has_rule( validate( c ), Rule::Ordering ) );
    CHECK_THROWS_AS( metrics( c ), std::invalid_argument );
  }
  SUBCASE( "And with one fan-in" )
  {
    Circuit c( "bad", { Node{ true, GateKind::Buf, {} }, Node{ false, GateKind::And, { 0 } } }, { 0 }, { 1 } );
    CHECK( has_rule( validate( c ), Rule::Arity ) );
  }
  SUBCASE( "output names a missing node" )
  {
    Circuit c( "bad", { Node{ true, GateKind::Buf, {} } }, { 0 }, { 5 } );
    CHECK( has_rule( validate( c ), Rule::DanglingRef ) );
  }
  SUBCASE( "input list out of sync" )
  {
    Circuit c( "bad", { Node{ true, GateKind::Buf, {} }, Node{ true, GateKind::Buf, {} }, Node{ false, GateKind::Or, { 0, 1 } } }, { 0 },
               { 2 } );
    CHECK( has_rule( validate( c ), Rule::InputList ) );
  }
  SUBCASE( "empty" )
  {
    CHECK( has_rule( validate( Circuit{} ), Rule::Empty ) );
  }
}

TEST_CASE( "unused inputs and dead gates are reported but tolerated by metrics" )
{
  CircuitBuilder b;
  auto x = b.add_input();
  auto y = b.add_input();
  b.add_gate( GateKind::Not, y );
  b.add_output( y );
  auto const c = std::move( b ).build();
  auto const vs = validate( c );
  CHECK( has_rule( vs, Rule::UnusedInput ) );
  CHECK( has_rule( vs, Rule::DeadGate ) );
  CHECK_FALSE( is_structural( Rule::UnusedInput ) );
  CHECK_FALSE( is_structural( Rule::DeadGate ) );
  CHECK_NOTHROW( metrics( c ) );
  CHECK( x == 0 );
}

TEST_CASE( "builder rejects wrong arity and forward references" )
{
  CircuitBuilder b;
  auto in = b.add_input();
  CHECK_THROWS( b.add_gate( GateKind::And, in ) );
  CHECK_THROWS( b.add_gate( GateKind::Buf, in, in ) );
  CHECK_THROWS( b.add_gate( GateKind::Buf, 7 ) );
  CHECK_THROWS( b.add_output( 9 ) );
}

TEST_CASE( "fan-out counts consumers and output taps" )
{
  CircuitBuilder b;
  auto in = b.add_input();
  auto g1 = b.buf( in );
  auto g2 = b.buf( g1 );
  b.add_output( g2 );
  b.add_output( g1 );
  auto const c = std::move( b ).build();
  auto const fo = fanout_table( c );
  CHECK( fo[in] == 1 );
  CHECK( fo[g1] == 2 );
  CHECK( fo[g2] == 1 );
}

TEST_CASE( "metrics on reference adders" )
{
  auto const ks4 = metrics( expand_to_logic( kogge_stone( 4 ) ) );
  CHECK( ks4.depth == 4 );
  auto const ripple8 = metrics( expand_to_logic( serial_prefix( 8 ) ) );
  CHECK( ripple8.depth == 14 );
  CHECK( metrics( expand_to_logic( kogge_stone( 8 ) ) ).max_fanout == 3 );
  CHECK( metrics( build_mig_adder( MigParams{ 2, 2 } ) ).max_fanout == 2 );
}

TEST_CASE( "metrics agree with an independent longest-path search and histogram sum" )
{
  for ( auto const& c : { expand_to_logic( kogge_stone( 16 ) ), expand_to_logic( brent_kung( 32 ) ), build_mig_adder( MigParams{ 2, 2 } ),
                          expand_to_logic( sklansky( 16 ) ) } )
  {
    auto const m = metrics( c );
    CHECK( m.depth == longest_path( c ) );
    std::uint32_t total = 0;
    for ( auto const& [kind, count] : m.histogram )
    {
      total += count;
    }
    CHECK( total == m.size );
    CHECK( m.size == c.num_gates() );
    auto const fo = fanout_table( c );
    CHECK( m.max_fanout == *std::max_element( fo.begin(), fo.end() ) );
  }
}

TEST_CASE( "construction is deterministic" )
{
  CHECK( build_mig_adder( MigParams{ 2, 2 } ) == build_mig_adder( MigParams{ 2, 2 } ) );
  CHECK( expand_to_logic( brent_kung( 64 ) ) == expand_to_logic( brent_kung( 64 ) ) );
}

TEST_CASE( "prune removes gates that reach no output" )
{
  CircuitBuilder b;
  auto x = b.add_input();
  auto y = b.add_input();
  b.and_( x, y );
  auto keep = b.or_( x, y );
  b.add_output( keep );
  auto const pruned = prune( std::move( b ).build() );
  CHECK( pruned.num_gates() == 1 );
  CHECK( pruned.inputs().size() == 2 );
  CHECK( validate( pruned ).empty() );
}

TEST_CASE( "truncate keeps low-order carries and rejects dependence on dropped inputs" )
{
  auto const full = expand_to_logic( kogge_stone( 8 ) );
  auto const low = truncate( full, 5, 5 );
  CHECK( low.inputs().size() == 10 );
  CHECK( low.outputs().size() == 5 );
  CHECK( verify_adder( low, 5, { VerifyMode::Exhaustive } ).passed() );

  CircuitBuilder b;
  auto x1 = b.add_input();
  auto y1 = b.add_input();
  auto x2 = b.add_input();
  b.add_input();
  b.add_output( b.and_( y1, x2 ) );
  CHECK( x1 == 0 );
  CHECK_THROWS_AS( truncate( std::move( b ).build(), 1, 1 ), std::invalid_argument );
}

TEST_CASE( "inline_circuit reproduces the sub-circuit" )
{
  auto const sub = expand_to_logic( kogge_stone( 4 ) );
  CircuitBuilder b;
  std::vector<NodeId> map;
  for ( int i = 0; i < 8; ++i )
  {
    map.push_back( b.add_input() );
  }
  for ( auto o : inline_circuit( b, sub, map ) )
  {
    b.add_output( o );
  }
  auto const copy = std::move( b ).build();
  CHECK( metrics( copy ) == metrics( sub ) );
  CHECK( verify_adder( copy, 4, { VerifyMode::Exhaustive } ).passed() );
}

TEST_CASE( "gate kind names round-trip" )
{
  for ( auto kind : { GateKind::And, GateKind::Or, GateKind::Xor, GateKind::Not, GateKind::Buf, GateKind::Nand, GateKind::Nor } )
  {
    CHECK( gate_kind_from_string( to_string( kind ) ) == kind );
  }
  CHECK_THROWS( gate_kind_from_string( "mux" ) );
}

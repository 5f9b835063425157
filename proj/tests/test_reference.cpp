#include <doctest.h>

#include <random>

#include <adders/circuit.hpp>
#include <adders/prefix_graph.hpp>
#include <adders/reference.hpp>

using namespace adders;

namespace
{

std::vector<GPPair> pairs_from_code( std::uint64_t code, std::size_t n )
{
  std::vector<GPPair> pairs( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    pairs[i] = { ( ( code >> ( 2 * i ) ) & 1 ) != 0, ( ( code >> ( 2 * i + 1 ) ) & 1 ) != 0 };
  }
  return pairs;
}

// Carry c_{i+1} as the disjunction over j <= i of y_j and x_{j+1} ... x_i.
bool carry_dnf( std::vector<GPPair> const& pairs, std::size_t i )
{
  for ( std::size_t j = 1; j <= i; ++j )
  {
    bool term = pairs[j - 1].y;
    for ( std::size_t l = j + 1; l <= i; ++l )
    {
      term = term && pairs[l - 1].x;
    }
    if ( term )
    {
      return true;
    }
  }
  return false;
}

std::vector<bool> ripple_inputs( std::vector<GPPair> const& pairs )
{
  std::vector<bool> in;
  for ( auto const& p : pairs )
  {
    in.push_back( p.x );
    in.push_back( p.y );
  }
  return in;
}

} // namespace

TEST_CASE( "gp_prepare" )
{
  CHECK( gp_prepare( to_bits( 1, 1 ), to_bits( 1, 1 ) ) == std::vector<GPPair>{ { false, true } } );
  CHECK( gp_prepare( to_bits( 0, 1 ), to_bits( 0, 1 ) ) == std::vector<GPPair>{ { false, false } } );
  CHECK( gp_prepare( to_bits( 0b1010, 4 ), to_bits( 0b0110, 4 ) ) ==
         std::vector<GPPair>{ { false, false }, { false, true }, { true, false }, { true, false } } );
  CHECK_THROWS( gp_prepare( to_bits( 0, 2 ), to_bits( 0, 3 ) ) );
}

TEST_CASE( "ripple_carries" )
{
  std::vector<GPPair> one{ { false, true } };
  CHECK( ripple_carries( one ) == std::vector<bool>{ true } );
  std::vector<GPPair> chain{ { true, false }, { true, false } };
  CHECK( ripple_carries( chain, true ) == std::vector<bool>{ true, true } );
  auto const pairs = gp_prepare( to_bits( 0b1010, 4 ), to_bits( 0b0110, 4 ) );
  CHECK( ripple_carries( pairs ) == std::vector<bool>{ false, true, true, true } );
}

TEST_CASE( "ripple_carries agrees with the carry disjunction on all pairs, n <= 6" )
{
  for ( std::size_t n = 1; n <= 6; ++n )
  {
    for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << ( 2 * n ) ); ++code )
    {
      auto const pairs = pairs_from_code( code, n );
      auto const carries = ripple_carries( pairs );
      for ( std::size_t i = 1; i <= n; ++i )
      {
        REQUIRE( carries[i - 1] == carry_dnf( pairs, i ) );
      }
    }
  }
}

TEST_CASE( "sum_bits" )
{
  auto sum = []( std::uint64_t a, std::uint64_t b, std::size_t n ) {
    auto const pairs = gp_prepare( to_bits( a, n ), to_bits( b, n ) );
    return to_integer( sum_bits( pairs, ripple_carries( pairs ) ) );
  };
  CHECK( sum( 1, 1, 1 ) == 2 );
  CHECK( sum( 0b1010, 0b0110, 4 ) == 16 );
  CHECK( sum( 0, 0, 1 ) == 0 );
  for ( std::size_t n = 1; n <= 10; ++n )
  {
    std::uint64_t const limit = std::uint64_t{ 1 } << n;
    std::uint64_t const step = n <= 6 ? 1 : 7;
    for ( std::uint64_t a = 0; a < limit; a += step )
    {
      for ( std::uint64_t b = 0; b < limit; b += step )
      {
        REQUIRE( sum( a, b, n ) == a + b );
      }
    }
  }
  std::mt19937_64 rng( 11 );
  for ( int trial = 0; trial < 1000; ++trial )
  {
    std::uint64_t const a = rng() >> 2, b = rng() >> 2;
    REQUIRE( sum( a, b, 62 ) == a + b );
  }
}

TEST_CASE( "prefix operator" )
{
  CHECK( prefix_op( { true, false }, { true, false } ) == GPPair{ true, false } );
  for ( int code = 0; code < 4; ++code )
  {
    GPPair const q{ ( code & 1 ) != 0, ( code & 2 ) != 0 };
    CHECK( prefix_op( { false, true }, q ) == GPPair{ false, true } );
  }
  CHECK( prefix_op( { true, false }, { false, true } ) == GPPair{ false, true } );
}

TEST_CASE( "prefix operator is associative on all 64 triples" )
{
  int checked = 0;
  for ( int code = 0; code < 64; ++code )
  {
    auto const t = pairs_from_code( static_cast<std::uint64_t>( code ), 3 );
    CHECK( prefix_op( prefix_op( t[0], t[1] ), t[2] ) == prefix_op( t[0], prefix_op( t[1], t[2] ) ) );
    ++checked;
  }
  CHECK( checked == 64 );
}

TEST_CASE( "block_signals equals left and right folds" )
{
  std::mt19937_64 rng( 5 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    auto const pairs = pairs_from_code( rng(), 8 );
    for ( std::size_t s = 1; s <= 8; ++s )
    {
      CHECK( block_signals( pairs, s, s ) == pairs[s - 1] );
      for ( std::size_t t = s; t <= 8; ++t )
      {
        GPPair left = pairs[t - 1];
        for ( std::size_t i = t - 1; i >= s; --i )
        {
          left = prefix_op( left, pairs[i - 1] );
        }
        GPPair right = pairs[s - 1];
        for ( std::size_t i = s + 1; i <= t; ++i )
        {
          right = prefix_op( pairs[i - 1], right );
        }
        REQUIRE( block_signals( pairs, s, t ) == left );
        REQUIRE( block_signals( pairs, s, t ) == right );
      }
    }
  }
  std::vector<GPPair> const all_prop( 6, GPPair{ true, false } );
  CHECK( block_signals( all_prop, 1, 6 ) == GPPair{ true, false } );
  CHECK_THROWS( block_signals( all_prop, 3, 2 ) );
  CHECK_THROWS( block_signals( all_prop, 0, 2 ) );
  CHECK_THROWS( block_signals( all_prop, 2, 7 ) );
}

TEST_CASE( "simulate single gates" )
{
  auto gate = []( GateKind kind, std::vector<bool> in ) -> bool {
    CircuitBuilder b;
    auto a = b.add_input();
    auto c = b.add_input();
    b.add_output( arity( kind ) == 1 ? b.add_gate( kind, a ) : b.add_gate( kind, a, c ) );
    return simulate( std::move( b ).build(), in )[0];
  };
  CHECK( gate( GateKind::And, { true, true } ) );
  CHECK_FALSE( gate( GateKind::Nand, { true, true } ) );
  CHECK( gate( GateKind::Nor, { false, false } ) );
  CHECK_FALSE( gate( GateKind::Not, { true, false } ) );

  for ( bool x : { false, true } )
  {
    CircuitBuilder b;
    auto a = b.add_input();
    b.add_output( b.xor_( a, a ) );
    CHECK_FALSE( simulate( std::move( b ).build(), std::vector<bool>{ x } )[0] );
  }
}

TEST_CASE( "simulate the ripple circuit" )
{
  auto const ripple = expand_to_logic( serial_prefix( 4 ) );
  auto const pairs = gp_prepare( to_bits( 0b1010, 4 ), to_bits( 0b0110, 4 ) );
  CHECK( simulate( ripple, ripple_inputs( pairs ) ) == std::vector<bool>{ false, true, true, true } );
}

TEST_CASE( "verify_adder accepts correct circuits" )
{
  auto const report = verify_adder( expand_to_logic( serial_prefix( 8 ) ), 8, { VerifyMode::Exhaustive } );
  CHECK( report.passed() );
  CHECK( report.restricted_checked == 6561 );
  CHECK( report.unrestricted_checked == 65536 );

  VerifyOptions random;
  random.samples = 100000;
  random.seed = 42;
  auto const ks = verify_adder( expand_to_logic( kogge_stone( 16 ) ), 16, random );
  CHECK( ks.passed() );
  CHECK( ks.seed == 42 );
  CHECK( ks.unrestricted_checked + ks.restricted_checked >= 100000 );
}

TEST_CASE( "verify_adder catches an Or replaced by And" )
{
  auto const good = expand_to_logic( serial_prefix( 4 ) );
  auto nodes = good.nodes();
  for ( auto& nd : nodes )
  {
    if ( !nd.is_input && nd.kind == GateKind::Or )
    {
      nd.kind = GateKind::And;
      break;
    }
  }
  Circuit const bad( "mutant", nodes, good.inputs(), good.outputs() );
  auto const report = verify_adder( bad, 4, { VerifyMode::Exhaustive } );
  CHECK_FALSE( report.passed() );
  REQUIRE_FALSE( report.counterexamples.empty() );
  auto const& cx = report.counterexamples.front();
  CHECK( cx.expected == ripple_carries( cx.pairs ) );
  CHECK( cx.actual == simulate( bad, ripple_inputs( cx.pairs ) ) );
  CHECK( report.counterexamples.size() <= 10 );
}

TEST_CASE( "verify_adder rejects interface mismatches" )
{
  auto const c = expand_to_logic( serial_prefix( 4 ) );
  CHECK_THROWS( verify_adder( c, 5 ) );
}

TEST_CASE( "random verification is reproducible" )
{
  auto const c = expand_to_logic( brent_kung( 32 ) );
  VerifyOptions o;
  o.samples = 5000;
  o.seed = 99;
  auto const a = verify_adder( c, 32, o );
  auto const b = verify_adder( c, 32, o );
  CHECK( a.restricted_checked == b.restricted_checked );
  CHECK( a.unrestricted_checked == b.unrestricted_checked );
}

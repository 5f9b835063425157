#include <adders/reduction.hpp>

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace adders
{

BrentKungStep::BrentKungStep( CircuitBuilder& builder, std::span<NodePair const> pairs, StepOptions const& options )
    : builder_( &builder ), options_( options ), pairs_( pairs.begin(), pairs.end() )
{
  if ( pairs.empty() || pairs.size() % 2 != 0 )
  {
    throw std::invalid_argument( fmt::format( "Brent-Kung step needs a positive even number of pairs, got {}", pairs.size() ) );
  }
  auto& b = builder;
  for ( std::size_t j = 0; j < pairs.size() / 2; ++j )
  {
    auto const [xl, yl] = pairs[2 * j];
    auto const [xu, yu] = pairs[2 * j + 1];
    if ( options_.style == GateStyle::AndOr )
    {
      half_.emplace_back( b.and_( xu, xl ), b.or_( yu, b.and_( xu, yl ) ) );
    }
    else
    {
      half_.emplace_back( b.not_( b.nand_( xu, xl ) ), b.nand_( b.not_( yu ), b.nand_( xu, yl ) ) );
    }
  }
}

std::vector<NodeId> BrentKungStep::correct( std::span<NodeId const> inner_carries )
{
  auto const m = pairs_.size();
  if ( inner_carries.size() != m / 2 )
  {
    throw std::invalid_argument( fmt::format( "Brent-Kung step expects {} inner carries, got {}", m / 2, inner_carries.size() ) );
  }
  auto& b = *builder_;
  std::vector<NodeId> out( m );
  out[0] = pairs_[0].second;
  for ( std::size_t j = 0; j < m / 2; ++j )
  {
    auto carry = inner_carries[j];
    if ( j + 1 == m / 2 )
    {
      out[m - 1] = carry;
      break;
    }
    if ( options_.distribute && b.fanout( carry ) > 0 )
    {
      carry = options_.style == GateStyle::AndOr ? b.buf( carry ) : b.not_( b.not_( carry ) );
    }
    out[2 * j + 1] = carry;
    auto const [x, y] = pairs_[2 * j + 2];
    out[2 * j + 2] = options_.style == GateStyle::AndOr ? b.or_( y, b.and_( x, carry ) ) : b.nand_( b.not_( y ), b.nand_( x, carry ) );
  }
  return out;
}

InnerAdder prefix_inner( std::function<PrefixGraph( std::uint32_t )> family )
{
  return [family = std::move( family )]( CircuitBuilder& builder, std::span<NodePair const> pairs ) {
    auto const g = family( static_cast<std::uint32_t>( pairs.size() ) );
    return expand_into( builder, g, pairs ).carries;
  };
}

namespace
{

std::vector<NodeId> inline_adder( CircuitBuilder& builder, Circuit const& sub, std::span<NodePair const> pairs )
{
  std::vector<NodeId> map;
  for ( auto const& [x, y] : pairs )
  {
    map.push_back( x );
    map.push_back( y );
  }
  return inline_circuit( builder, sub, map );
}

} // namespace

InnerAdder mig_inner()
{
  return []( CircuitBuilder& builder, std::span<NodePair const> pairs ) {
    auto const m = pairs.size();
    auto const sub = m == 1 ? build_mig_adder( 1, MigParams{ 1, 1 } ) : build_mig_adder( m, choose_params( m ) );
    return inline_adder( builder, sub, pairs );
  };
}

InnerAdder mig_inner( MigParams params )
{
  return [params]( CircuitBuilder& builder, std::span<NodePair const> pairs ) {
    return inline_adder( builder, build_mig_adder( pairs.size(), params ), pairs );
  };
}

namespace
{

std::vector<NodeId> reduce_rec( CircuitBuilder& builder, std::span<NodePair const> pairs, std::uint32_t tau, InnerAdder const& inner,
                                StepOptions const& options )
{
  if ( tau == 0 )
  {
    auto carries = inner( builder, pairs );
    if ( carries.size() != pairs.size() )
    {
      throw std::logic_error( fmt::format( "inner adder returned {} carries for {} pairs", carries.size(), pairs.size() ) );
    }
    return carries;
  }
  BrentKungStep step( builder, pairs, options );
  auto const inner_carries = reduce_rec( builder, step.half_pairs(), tau - 1, inner, options );
  return step.correct( inner_carries );
}

} // namespace

std::vector<NodeId> apply_reduction_into( CircuitBuilder& builder, std::span<NodePair const> pairs, std::uint32_t tau,
                                          InnerAdder const& inner, StepOptions const& options )
{
  if ( tau >= 32 || pairs.size() % ( std::size_t{ 1 } << tau ) != 0 || pairs.empty() )
  {
    throw std::invalid_argument( fmt::format( "{} Brent-Kung steps need a width divisible by 2^{}, got {}", tau, tau, pairs.size() ) );
  }
  return reduce_rec( builder, pairs, tau, inner, options );
}

Circuit apply_reduction( std::uint32_t n, std::uint32_t tau, InnerAdder const& inner, StepOptions const& options )
{
  if ( n < 2 || !is_power_of_two( n ) )
  {
    throw std::invalid_argument( fmt::format( "reduction needs a power-of-two width of at least 2, got {}", n ) );
  }
  if ( tau > ilog2( n ) - 1 )
  {
    throw std::invalid_argument( fmt::format( "at most {} Brent-Kung steps fit width {}, got {}", ilog2( n ) - 1, n, tau ) );
  }
  CircuitBuilder builder( fmt::format( "reduced_{}_tau{}", n, tau ) );
  std::vector<NodePair> pairs;
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    auto const x = builder.add_input();
    auto const y = builder.add_input();
    pairs.emplace_back( x, y );
  }
  for ( auto c : apply_reduction_into( builder, pairs, tau, inner, options ) )
  {
    builder.add_output( c );
  }
  return prune( std::move( builder ).build() );
}

std::uint32_t linear_step_count_unclamped( std::uint32_t n )
{
  if ( n < 2 || !is_power_of_two( n ) )
  {
    throw std::invalid_argument( fmt::format( "linear adder needs a power-of-two width of at least 2, got {}", n ) );
  }
  double const root = std::sqrt( static_cast<double>( ilog2( n ) ) );
  double const root_ceil = std::ceil( root );
  return static_cast<std::uint32_t>( std::ceil( root + 2.0 * std::log2( root_ceil ) ) );
}

std::uint32_t linear_step_count( std::uint32_t n )
{
  return std::min( linear_step_count_unclamped( n ), ilog2( n ) - 1 );
}

Circuit build_linear_adder( std::uint32_t n )
{
  auto c = apply_reduction( n, linear_step_count( n ), mig_inner() );
  return Circuit( fmt::format( "linear_{}", n ), c.nodes(), c.inputs(), c.outputs() );
}

double linear_size_bound( std::uint32_t n )
{
  return ( n >= 4096 ? 9.5 : 13.5 ) * n;
}

std::uint32_t linear_depth_bound( std::uint32_t n )
{
  auto const l = ilog2( n );
  std::uint32_t root = 1;
  while ( root * root < l )
  {
    ++root;
  }
  std::uint32_t log_root = 0;
  while ( ( 1u << log_root ) < root )
  {
    ++log_root;
  }
  return l + 8 * root + 6 * log_root + 2;
}

} // namespace adders

#include <adders/families.hpp>

#include <array>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include <adders/mig.hpp>
#include <adders/prefix_graph.hpp>
#include <adders/reduction.hpp>
#include <adders/techmap.hpp>

namespace adders
{

namespace
{

constexpr std::uint32_t max_width = 1u << 20;

constexpr std::array<std::pair<Family, std::string_view>, 8> family_names{ {
    { Family::Ripple, "ripple" },
    { Family::Sklansky, "sklansky" },
    { Family::KoggeStone, "kogge-stone" },
    { Family::BrentKung, "brent-kung" },
    { Family::Mig, "mig" },
    { Family::Linear, "linear" },
    { Family::NandNor, "nandnor" },
    { Family::KsReduced, "ks-reduced" },
} };

std::uint32_t next_power_of_two( std::uint32_t n )
{
  std::uint32_t p = 2;
  while ( p < n )
  {
    p *= 2;
  }
  return p;
}

MigParams mig_params( AdderSpec const& spec )
{
  if ( spec.r && spec.k )
  {
    return { *spec.r, *spec.k };
  }
  return choose_compact_params( std::max<std::uint32_t>( spec.n, 2 ) );
}

std::uint32_t ks_reduced_steps( std::uint32_t width )
{
  auto const l = ilog2( width );
  std::uint32_t steps = 0;
  while ( ( 1u << steps ) < l )
  {
    ++steps;
  }
  return std::min( steps, l - 1 );
}

Circuit build_padded( AdderSpec const& spec, std::uint32_t width )
{
  switch ( spec.family )
  {
  case Family::Ripple:
    return expand_to_logic( serial_prefix( width ) );
  case Family::Sklansky:
    return expand_to_logic( sklansky( width ) );
  case Family::KoggeStone:
    return expand_to_logic( kogge_stone( width ) );
  case Family::BrentKung:
    return expand_to_logic( brent_kung( width ) );
  case Family::Mig:
    return build_mig_adder( mig_params( spec ), { false } );
  case Family::Linear:
    return spec.tau ? apply_reduction( width, *spec.tau, mig_inner() ) : build_linear_adder( width );
  case Family::NandNor:
    return build_nandnor_adder( width );
  case Family::KsReduced:
    return apply_reduction( width, spec.tau.value_or( ks_reduced_steps( width ) ), prefix_inner( kogge_stone ) );
  }
  throw std::logic_error( "unknown family" );
}

} // namespace

std::string_view to_string( Family family )
{
  for ( auto const& [f, name] : family_names )
  {
    if ( f == family )
    {
      return name;
    }
  }
  return "unknown";
}

Family family_from_string( std::string_view name )
{
  for ( auto const& [f, n] : family_names )
  {
    if ( n == name )
    {
      return f;
    }
  }
  throw std::invalid_argument( fmt::format( "unknown adder family '{}'", name ) );
}

std::vector<Family> all_families()
{
  std::vector<Family> out;
  for ( auto const& entry : family_names )
  {
    out.push_back( entry.first );
  }
  return out;
}

void check_spec( AdderSpec const& spec )
{
  if ( spec.n < 1 || spec.n > max_width )
  {
    throw std::invalid_argument( fmt::format( "width must be in 1..{}, got {}", max_width, spec.n ) );
  }
  if ( ( spec.r || spec.k ) && spec.family != Family::Mig )
  {
    throw std::invalid_argument( fmt::format( "--r/--k apply only to the mig family, not {}", to_string( spec.family ) ) );
  }
  if ( spec.r.has_value() != spec.k.has_value() )
  {
    throw std::invalid_argument( "mig needs both r and k, or neither" );
  }
  if ( spec.r )
  {
    if ( *spec.r < 1 || *spec.k < 1 || *spec.r * *spec.k > 24 )
    {
      throw std::invalid_argument( fmt::format( "mig parameters r={}, k={} out of range (r, k >= 1, r*k <= 24)", *spec.r, *spec.k ) );
    }
    if ( MigParams{ *spec.r, *spec.k }.width() < spec.n )
    {
      throw std::invalid_argument( fmt::format( "mig with r={}, k={} covers only {} positions, need {}", *spec.r, *spec.k,
                                                MigParams{ *spec.r, *spec.k }.width(), spec.n ) );
    }
  }
  if ( spec.tau )
  {
    if ( spec.family != Family::Linear && spec.family != Family::KsReduced )
    {
      throw std::invalid_argument( fmt::format( "--tau applies only to linear and ks-reduced, not {}", to_string( spec.family ) ) );
    }
    auto const width = padded_width( spec );
    if ( *spec.tau > ilog2( width ) - 1 )
    {
      throw std::invalid_argument( fmt::format( "tau={} exceeds ld n - 1 = {} at width {}", *spec.tau, ilog2( width ) - 1, width ) );
    }
  }
}

std::uint32_t padded_width( AdderSpec const& spec )
{
  switch ( spec.family )
  {
  case Family::Ripple:
    return spec.n;
  case Family::Mig:
    return static_cast<std::uint32_t>( mig_params( spec ).width() );
  default:
    return next_power_of_two( spec.n );
  }
}

Circuit trivial_adder()
{
  CircuitBuilder builder( "trivial_1" );
  builder.add_input();
  builder.add_output( builder.add_input() );
  return std::move( builder ).build();
}

Circuit generate( AdderSpec const& spec )
{
  check_spec( spec );
  Circuit carries;
  if ( spec.n == 1 )
  {
    carries = trivial_adder();
  }
  else
  {
    auto const width = padded_width( spec );
    auto built = build_padded( spec, width );
    carries = width == spec.n ? prune( built ) : truncate( built, spec.n, spec.n );
  }
  auto const name = fmt::format( "{}_{}", to_string( spec.family ), spec.n );
  if ( spec.full_adder )
  {
    auto full = wrap_full_adder( carries, spec.n );
    return Circuit( name + "_full", full.nodes(), full.inputs(), full.outputs() );
  }
  return Circuit( name, carries.nodes(), carries.inputs(), carries.outputs() );
}

Circuit wrap_full_adder( Circuit const& carries, std::uint32_t n )
{
  if ( carries.inputs().size() != 2 * std::size_t{ n } || carries.outputs().size() != n )
  {
    throw std::invalid_argument( fmt::format( "full adder wrapper needs a carry circuit with {} inputs and {} outputs", 2 * n, n ) );
  }
  CircuitBuilder builder( carries.name() + "_full" );
  std::vector<NodeId> a( n ), b( n );
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    a[i] = builder.add_input();
    b[i] = builder.add_input();
  }
  std::vector<NodeId> xs( n ), map;
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    xs[i] = builder.xor_( a[i], b[i] );
    map.push_back( xs[i] );
    map.push_back( builder.and_( a[i], b[i] ) );
  }
  auto const c = inline_circuit( builder, carries, map ); // c[i] = c_{i+2}
  builder.add_output( xs[0] );
  for ( std::uint32_t i = 1; i < n; ++i )
  {
    builder.add_output( builder.xor_( c[i - 1], xs[i] ) );
  }
  builder.add_output( c[n - 1] );
  return std::move( builder ).build();
}

std::vector<std::string> input_names( std::uint32_t n, bool full_adder )
{
  std::vector<std::string> out;
  for ( std::uint32_t i = 1; i <= n; ++i )
  {
    out.push_back( fmt::format( "{}{}", full_adder ? 'a' : 'x', i ) );
    out.push_back( fmt::format( "{}{}", full_adder ? 'b' : 'y', i ) );
  }
  return out;
}

std::vector<std::string> output_names( std::uint32_t n, bool full_adder )
{
  std::vector<std::string> out;
  if ( full_adder )
  {
    for ( std::uint32_t i = 1; i <= n + 1; ++i )
    {
      out.push_back( fmt::format( "s{}", i ) );
    }
  }
  else
  {
    for ( std::uint32_t i = 2; i <= n + 1; ++i )
    {
      out.push_back( fmt::format( "c{}", i ) );
    }
  }
  return out;
}

VerifyOptions default_verify_options( std::uint32_t n )
{
  VerifyOptions options;
  options.mode = n <= 10 ? VerifyMode::Exhaustive : VerifyMode::Random;
  return options;
}

std::uint64_t count_mismatches( Circuit const& c, std::uint32_t n, bool full_adder, VerifyOptions const& options )
{
  return full_adder ? verify_full_adder( c, n, options ) : verify_adder( c, n, options ).mismatches();
}

ComparisonRow compare_row( AdderSpec const& spec, VerifyOptions const& options )
{
  auto const c = generate( spec );
  auto const m = metrics( c );
  return { std::string( to_string( spec.family ) ), spec.n, m.depth, m.size, m.max_fanout,
           count_mismatches( c, spec.n, spec.full_adder, options ) == 0 };
}

std::string to_csv( std::vector<ComparisonRow> const& rows )
{
  std::string out = fmt::format( "{}\n", csv_header );
  for ( auto const& row : rows )
  {
    out += fmt::format( "{},{},{},{},{},{}\n", row.family, row.n, row.depth, row.size, row.max_fanout, row.verified ? "true" : "false" );
  }
  return out;
}

} // namespace adders

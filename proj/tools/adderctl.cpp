// adderctl: generate, verify, compare and export adder netlists.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, parse or I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <adders/families.hpp>
#include <adders/netlist.hpp>
#include <adders/reference.hpp>

namespace
{

using namespace adders;

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

std::string family_list()
{
  std::vector<std::string> names;
  for ( auto f : all_families() )
  {
    names.emplace_back( to_string( f ) );
  }
  return fmt::format( "{}", fmt::join( names, ", " ) );
}

std::string format_pairs( std::vector<GPPair> const& pairs )
{
  std::string out;
  for ( auto it = pairs.rbegin(); it != pairs.rend(); ++it )
  {
    out += fmt::format( "({:d},{:d})", it->x, it->y );
  }
  return out;
}

std::string format_bits( std::vector<bool> const& bits )
{
  std::string out;
  for ( auto it = bits.rbegin(); it != bits.rend(); ++it )
  {
    out += *it ? '1' : '0';
  }
  return out;
}

struct GenArgs
{
  std::string family;
  std::uint32_t n{ 0 };
  std::optional<std::uint32_t> r, k, tau;
  std::uint64_t seed{ 0xC0FFEE };
  bool full_adder{ false };
  std::string out;
};

int run_gen( GenArgs const& args )
{
  AdderSpec spec;
  spec.family = family_from_string( args.family );
  spec.n = args.n;
  spec.r = args.r;
  spec.k = args.k;
  spec.tau = args.tau;
  spec.seed = args.seed;
  spec.full_adder = args.full_adder;
  auto const file = make_netlist( spec, generate( spec ) );
  write_text_file( args.out, serialize( file ) );
  auto const m = metrics( file.circuit );
  fmt::print( "{}: n={} depth={} size={} max_fanout={} -> {}\n", file.circuit.name(), spec.n, m.depth, m.size, m.max_fanout, args.out );
  return exit_ok;
}

struct VerifyArgs
{
  std::string in;
  bool exhaustive{ false };
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
};

int run_verify( VerifyArgs const& args )
{
  auto const file = read_netlist( args.in );
  auto const n = file.spec.n;
  auto options = default_verify_options( n );
  if ( args.exhaustive )
  {
    options.mode = VerifyMode::Exhaustive;
  }
  else if ( args.samples || args.seed )
  {
    options.mode = VerifyMode::Random;
  }
  if ( args.samples )
  {
    options.samples = *args.samples;
  }
  options.seed = args.seed.value_or( file.spec.seed );

  if ( file.spec.full_adder )
  {
    auto const mismatches = verify_full_adder( file.circuit, n, options );
    fmt::print( "mode={} n={} seed={:#x} mismatches={}\n", to_string( options.mode ), n, options.seed, mismatches );
    return mismatches == 0 ? exit_ok : exit_mismatch;
  }
  auto const report = verify_adder( file.circuit, n, options );
  fmt::print( "mode={} n={} seed={:#x} checked={} (restricted {}) mismatches={}\n", to_string( report.mode ), n, report.seed,
              report.restricted_checked + report.unrestricted_checked, report.restricted_checked, report.mismatches() );
  for ( auto const& cx : report.counterexamples )
  {
    fmt::print( "  pairs(n..1)={} expected(c_n+1..c_2)={} actual={}\n", format_pairs( cx.pairs ), format_bits( cx.expected ),
                format_bits( cx.actual ) );
  }
  return report.passed() ? exit_ok : exit_mismatch;
}

struct CompareArgs
{
  std::vector<std::string> families;
  std::vector<std::uint32_t> widths;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_compare( CompareArgs const& args )
{
  std::vector<ComparisonRow> rows;
  for ( auto const& name : args.families )
  {
    auto const family = family_from_string( name );
    for ( auto n : args.widths )
    {
      AdderSpec spec;
      spec.family = family;
      spec.n = n;
      auto options = default_verify_options( n );
      if ( args.samples )
      {
        options.mode = VerifyMode::Random;
        options.samples = *args.samples;
      }
      if ( args.seed )
      {
        options.seed = *args.seed;
      }
      rows.push_back( compare_row( spec, options ) );
    }
  }
  auto const csv = to_csv( rows );
  if ( args.out.empty() )
  {
    fmt::print( "{}", csv );
  }
  else
  {
    write_text_file( args.out, csv );
  }
  for ( auto const& row : rows )
  {
    if ( !row.verified )
    {
      return exit_mismatch;
    }
  }
  return exit_ok;
}

struct ExportArgs
{
  std::string in;
  std::string dot;
};

int run_export( ExportArgs const& args )
{
  auto const file = read_netlist( args.in );
  write_text_file( args.dot, to_dot( file.circuit ) );
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Generate, verify and measure gate-level adder circuits" };
  app.require_subcommand( 1 );

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand( "gen", "Generate an adder netlist" );
  gen_cmd->add_option( "--family", gen.family, "One of: " + family_list() )->required();
  gen_cmd->add_option( "--n", gen.n, "Number of bit positions" )->required()->check( CLI::Range( 1u, 1u << 20 ) );
  gen_cmd->add_option( "--r", gen.r, "mig: generate gate fan-in exponent" );
  gen_cmd->add_option( "--k", gen.k, "mig: number of generate gate rows" );
  gen_cmd->add_option( "--tau", gen.tau, "linear, ks-reduced: number of Brent-Kung steps" );
  gen_cmd->add_option( "--seed", gen.seed, "Seed recorded in the header and used by verify" );
  gen_cmd->add_flag( "--full-adder", gen.full_adder, "Wrap into a full adder with sum outputs" );
  gen_cmd->add_option( "--out", gen.out, "Output netlist path" )->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand( "verify", "Check a netlist against the ripple-carry oracle" );
  verify_cmd->add_option( "--in", verify.in, "Netlist path" )->required();
  auto* exhaustive = verify_cmd->add_flag( "--exhaustive", verify.exhaustive, "Enumerate all assignments" );
  auto* samples = verify_cmd->add_option( "--samples", verify.samples, "Random samples" );
  verify_cmd->add_option( "--seed", verify.seed, "Random seed (default: header seed)" );
  exhaustive->excludes( samples );

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand( "compare", "Tabulate depth, size and fan-out as CSV" );
  compare_cmd->add_option( "--families", compare.families, "Comma-separated family names" )->required()->delimiter( ',' );
  compare_cmd->add_option( "--n", compare.widths, "Comma-separated widths" )->required()->delimiter( ',' );
  compare_cmd->add_option( "--samples", compare.samples, "Random samples per entry" );
  compare_cmd->add_option( "--seed", compare.seed, "Random seed" );
  compare_cmd->add_option( "--out", compare.out, "CSV path (default: stdout)" );

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand( "export", "Write a netlist as a DOT graph" );
  export_cmd->add_option( "--in", exp.in, "Netlist path" )->required();
  export_cmd->add_option( "--dot", exp.dot, "DOT output path" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( *gen_cmd )
    {
      return run_gen( gen );
    }
    if ( *verify_cmd )
    {
      return run_verify( verify );
    }
    if ( *compare_cmd )
    {
      return run_compare( compare );
    }
    return run_export( exp );
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

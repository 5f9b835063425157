#include <adders/reference.hpp>

#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace adders
{

BitVector to_bits( std::uint64_t value, std::size_t width )
{
  BitVector bits( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    bits[i] = i < 64 && ( ( value >> i ) & 1u );
  }
  return bits;
}

std::uint64_t to_integer( BitVector const& bits )
{
  if ( bits.size() > 64 )
  {
    throw std::invalid_argument( "to_integer: more than 64 bits" );
  }
  std::uint64_t v = 0;
  for ( std::size_t i = 0; i < bits.size(); ++i )
  {
    v |= std::uint64_t{ bits[i] } << i;
  }
  return v;
}

std::vector<GPPair> gp_prepare( BitVector const& a, BitVector const& b )
{
  if ( a.size() != b.size() )
  {
    throw std::invalid_argument( fmt::format( "gp_prepare: widths differ ({} vs {})", a.size(), b.size() ) );
  }
  std::vector<GPPair> pairs( a.size() );
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    pairs[i] = { a[i] != b[i], a[i] && b[i] };
  }
  return pairs;
}

std::vector<bool> ripple_carries( std::span<GPPair const> pairs, bool carry_in )
{
  std::vector<bool> carries( pairs.size() );
  bool c = carry_in;
  for ( std::size_t i = 0; i < pairs.size(); ++i )
  {
    c = pairs[i].y || ( pairs[i].x && c );
    carries[i] = c;
  }
  return carries;
}

BitVector sum_bits( std::span<GPPair const> pairs, BitVector const& carries, bool carry_in )
{
  if ( carries.size() != pairs.size() )
  {
    throw std::invalid_argument( fmt::format( "sum_bits: {} carries for {} pairs", carries.size(), pairs.size() ) );
  }
  BitVector s( pairs.size() + 1 );
  for ( std::size_t i = 0; i < pairs.size(); ++i )
  {
    bool const c_i = i == 0 ? carry_in : carries[i - 1];
    s[i] = c_i != pairs[i].x;
  }
  s[pairs.size()] = pairs.empty() ? carry_in : carries.back();
  return s;
}

GPPair block_signals( std::span<GPPair const> pairs, std::size_t s, std::size_t t )
{
  if ( s < 1 || s > t || t > pairs.size() )
  {
    throw std::invalid_argument( fmt::format( "block_signals: bad range [{}, {}] for width {}", s, t, pairs.size() ) );
  }
  bool x = true;
  for ( std::size_t i = s; i <= t; ++i )
  {
    x = x && pairs[i - 1].x;
  }
  // Y_{s,t} = y_t or (x_t and (y_{t-1} or (... (y_{s+1} or (x_{s+1} and y_s)))))
  bool y = pairs[s - 1].y;
  for ( std::size_t i = s + 1; i <= t; ++i )
  {
    y = pairs[i - 1].y || ( pairs[i - 1].x && y );
  }
  return { x, y };
}

namespace
{

std::uint64_t eval_gate( GateKind kind, std::uint64_t a, std::uint64_t b )
{
  switch ( kind )
  {
  case GateKind::And:
    return a & b;
  case GateKind::Or:
    return a | b;
  case GateKind::Xor:
    return a ^ b;
  case GateKind::Not:
    return ~a;
  case GateKind::Buf:
    return a;
  case GateKind::Nand:
    return ~( a & b );
  case GateKind::Nor:
    return ~( a | b );
  }
  return 0;
}

void simulate_into( Circuit const& c, std::span<std::uint64_t const> input_words, std::vector<std::uint64_t>& values )
{
  values.resize( c.num_nodes() );
  for ( std::size_t k = 0; k < c.inputs().size(); ++k )
  {
    values[c.inputs()[k]] = input_words[k];
  }
  auto const& nodes = c.nodes();
  for ( std::size_t id = 0; id < nodes.size(); ++id )
  {
    auto const& n = nodes[id];
    if ( n.is_input )
    {
      continue;
    }
    std::uint64_t const a = values[n.fanins[0]];
    std::uint64_t const b = n.fanins.size() > 1 ? values[n.fanins[1]] : 0;
    values[id] = eval_gate( n.kind, a, b );
  }
}

/*! Lane-parallel ripple oracle; `xs`/`ys` hold one word per position. */
void ripple_words( std::span<std::uint64_t const> xs, std::span<std::uint64_t const> ys, std::vector<std::uint64_t>& carries )
{
  carries.resize( xs.size() );
  std::uint64_t c = 0;
  for ( std::size_t i = 0; i < xs.size(); ++i )
  {
    c = ys[i] | ( xs[i] & c );
    carries[i] = c;
  }
}

class CarryChecker
{
public:
  CarryChecker( Circuit const& c, std::size_t n, VerifyReport& report, std::size_t max_cex )
      : circuit_( c ), n_( n ), report_( report ), max_cex_( max_cex ), xs_( n ), ys_( n ), inputs_( 2 * n )
  {
    require_structurally_valid( c );
    if ( c.inputs().size() != 2 * n || c.outputs().size() != n )
    {
      throw std::invalid_argument( fmt::format( "verify_adder: expected {} inputs and {} outputs, circuit has {} and {}", 2 * n, n,
                                                c.inputs().size(), c.outputs().size() ) );
    }
  }

  std::vector<std::uint64_t>& xs() { return xs_; }
  std::vector<std::uint64_t>& ys() { return ys_; }

  /*! Checks the current batch; returns the mask of mismatching lanes among `lanes`. */
  std::uint64_t check( std::uint64_t lanes )
  {
    for ( std::size_t i = 0; i < n_; ++i )
    {
      inputs_[2 * i] = xs_[i];
      inputs_[2 * i + 1] = ys_[i];
    }
    simulate_into( circuit_, inputs_, values_ );
    ripple_words( xs_, ys_, expected_ );
    std::uint64_t bad = 0;
    for ( std::size_t i = 0; i < n_; ++i )
    {
      bad |= values_[circuit_.outputs()[i]] ^ expected_[i];
    }
    bad &= lanes;
    for ( std::uint64_t m = bad; m != 0 && report_.counterexamples.size() < max_cex_; m &= m - 1 )
    {
      record( static_cast<unsigned>( __builtin_ctzll( m ) ) );
    }
    return bad;
  }

private:
  void record( unsigned lane )
  {
    Counterexample cex;
    for ( std::size_t i = 0; i < n_; ++i )
    {
      cex.pairs.push_back( { bool( ( xs_[i] >> lane ) & 1u ), bool( ( ys_[i] >> lane ) & 1u ) } );
      cex.expected.push_back( ( expected_[i] >> lane ) & 1u );
      cex.actual.push_back( ( values_[circuit_.outputs()[i]] >> lane ) & 1u );
    }
    report_.counterexamples.push_back( std::move( cex ) );
  }

  Circuit const& circuit_;
  std::size_t n_;
  VerifyReport& report_;
  std::size_t max_cex_;
  std::vector<std::uint64_t> xs_, ys_, inputs_, values_, expected_;
};

/*! Enumerates all `base^n` assignments in lexicographic order (position 1 fastest). */
template<typename Fn>
void enumerate( std::size_t n, unsigned base, CarryChecker& checker, Fn&& on_batch )
{
  static constexpr GPPair values[4] = { { false, false }, { false, true }, { true, false }, { true, true } };
  std::uint64_t total = 1;
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( total > ( std::uint64_t{ 1 } << 40 ) / base )
    {
      throw std::invalid_argument( fmt::format( "exhaustive verification of width {} is too large", n ) );
    }
    total *= base;
  }
  std::vector<unsigned> digits( n, 0 );
  for ( std::uint64_t start = 0; start < total; start += 64 )
  {
    std::uint64_t const count = std::min<std::uint64_t>( 64, total - start );
    std::fill( checker.xs().begin(), checker.xs().end(), 0 );
    std::fill( checker.ys().begin(), checker.ys().end(), 0 );
    for ( std::uint64_t lane = 0; lane < count; ++lane )
    {
      for ( std::size_t i = 0; i < n; ++i )
      {
        auto const v = values[digits[i]];
        checker.xs()[i] |= std::uint64_t{ v.x } << lane;
        checker.ys()[i] |= std::uint64_t{ v.y } << lane;
      }
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( ++digits[i] < base )
        {
          break;
        }
        digits[i] = 0;
      }
    }
    std::uint64_t const lanes = count == 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << count ) - 1 );
    on_batch( count, checker.check( lanes ) );
  }
}

} // namespace

std::vector<bool> simulate( Circuit const& c, BitVector const& inputs )
{
  require_structurally_valid( c );
  if ( inputs.size() != c.inputs().size() )
  {
    throw std::invalid_argument( fmt::format( "simulate: {} input values for {} inputs", inputs.size(), c.inputs().size() ) );
  }
  std::vector<std::uint64_t> words( inputs.size() );
  for ( std::size_t k = 0; k < inputs.size(); ++k )
  {
    words[k] = inputs[k] ? 1u : 0u;
  }
  std::vector<std::uint64_t> values;
  simulate_into( c, words, values );
  std::vector<bool> out;
  out.reserve( c.outputs().size() );
  for ( auto o : c.outputs() )
  {
    out.push_back( values[o] & 1u );
  }
  return out;
}

std::vector<std::uint64_t> simulate_words( Circuit const& c, std::span<std::uint64_t const> input_words )
{
  require_structurally_valid( c );
  if ( input_words.size() != c.inputs().size() )
  {
    throw std::invalid_argument( fmt::format( "simulate_words: {} input words for {} inputs", input_words.size(), c.inputs().size() ) );
  }
  std::vector<std::uint64_t> values;
  simulate_into( c, input_words, values );
  return values;
}

VerifyReport verify_adder( Circuit const& c, std::size_t n, VerifyOptions const& options )
{
  VerifyReport report;
  report.mode = options.mode;
  report.n = n;
  report.seed = options.seed;
  CarryChecker checker( c, n, report, options.max_counterexamples );

  if ( options.mode == VerifyMode::Exhaustive )
  {
    enumerate( n, 3, checker, [&]( std::uint64_t count, std::uint64_t bad ) {
      report.restricted_checked += count;
      report.restricted_mismatches += static_cast<std::uint64_t>( __builtin_popcountll( bad ) );
    } );
    if ( options.unrestricted )
    {
      enumerate( n, 4, checker, [&]( std::uint64_t count, std::uint64_t bad ) {
        report.unrestricted_checked += count;
        report.unrestricted_mismatches += static_cast<std::uint64_t>( __builtin_popcountll( bad ) );
      } );
    }
    return report;
  }

  std::mt19937_64 rng( options.seed );
  for ( std::uint64_t done = 0; done < options.samples; done += 64 )
  {
    std::uint64_t const count = std::min<std::uint64_t>( 64, options.samples - done );
    for ( std::size_t i = 0; i < n; ++i )
    {
      checker.xs()[i] = rng();
      checker.ys()[i] = rng();
    }
    std::uint64_t const lanes = count == 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << count ) - 1 );
    auto const bad = checker.check( lanes );
    report.unrestricted_checked += count;
    report.unrestricted_mismatches += static_cast<std::uint64_t>( __builtin_popcountll( bad ) );
  }
  return report;
}

std::uint64_t verify_full_adder( Circuit const& c, std::size_t n, VerifyOptions const& options )
{
  require_structurally_valid( c );
  if ( c.inputs().size() != 2 * n || c.outputs().size() != n + 1 )
  {
    throw std::invalid_argument( fmt::format( "verify_full_adder: expected {} inputs and {} outputs", 2 * n, n + 1 ) );
  }
  std::vector<std::uint64_t> in( 2 * n ), values;
  std::uint64_t mismatches = 0;

  // The oracle adds the lanes as multi-word integers, independent of any carry formula.
  auto check_batch = [&]( std::uint64_t lanes ) {
    simulate_into( c, in, values );
    for ( unsigned lane = 0; lane < 64; ++lane )
    {
      if ( !( ( lanes >> lane ) & 1u ) )
      {
        continue;
      }
      unsigned carry = 0;
      bool ok = true;
      for ( std::size_t i = 0; i <= n && ok; ++i )
      {
        unsigned digit = carry;
        if ( i < n )
        {
          digit += unsigned( ( in[2 * i] >> lane ) & 1u ) + unsigned( ( in[2 * i + 1] >> lane ) & 1u );
        }
        bool const expected = digit & 1u;
        carry = digit >> 1;
        ok = expected == bool( ( values[c.outputs()[i]] >> lane ) & 1u );
      }
      mismatches += ok ? 0 : 1;
    }
  };

  if ( options.mode == VerifyMode::Exhaustive )
  {
    if ( n > 10 )
    {
      throw std::invalid_argument( "verify_full_adder: exhaustive mode supports n <= 10" );
    }
    std::uint64_t const total = std::uint64_t{ 1 } << ( 2 * n );
    for ( std::uint64_t start = 0; start < total; start += 64 )
    {
      std::fill( in.begin(), in.end(), 0 );
      std::uint64_t const count = std::min<std::uint64_t>( 64, total - start );
      for ( std::uint64_t lane = 0; lane < count; ++lane )
      {
        std::uint64_t const v = start + lane;
        for ( std::size_t k = 0; k < 2 * n; ++k )
        {
          in[k] |= ( ( v >> k ) & 1u ) << lane;
        }
      }
      check_batch( count == 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << count ) - 1 ) );
    }
    return mismatches;
  }

  std::mt19937_64 rng( options.seed );
  for ( std::uint64_t done = 0; done < options.samples; done += 64 )
  {
    std::uint64_t const count = std::min<std::uint64_t>( 64, options.samples - done );
    for ( auto& w : in )
    {
      w = rng();
    }
    check_batch( count == 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << count ) - 1 ) );
  }
  return mismatches;
}

std::string to_string( VerifyMode mode )
{
  return mode == VerifyMode::Exhaustive ? "exhaustive" : "random";
}

} // namespace adders

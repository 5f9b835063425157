#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include <adders/families.hpp>
#include <adders/reference.hpp>

namespace
{

using namespace adders;

void generate_family( benchmark::State& state, Family family )
{
  AdderSpec spec;
  spec.family = family;
  spec.n = static_cast<std::uint32_t>( state.range( 0 ) );
  for ( auto _ : state )
  {
    auto c = generate( spec );
    benchmark::DoNotOptimize( c );
  }
}

void simulate_family( benchmark::State& state, Family family )
{
  AdderSpec spec;
  spec.family = family;
  spec.n = static_cast<std::uint32_t>( state.range( 0 ) );
  auto const c = generate( spec );
  std::mt19937_64 rng( 7 );
  std::vector<std::uint64_t> words( c.inputs().size() );
  for ( auto& w : words )
  {
    w = rng();
  }
  for ( auto _ : state )
  {
    auto values = simulate_words( c, words );
    benchmark::DoNotOptimize( values );
  }
  state.SetItemsProcessed( state.iterations() * 64 );
  state.counters["gates"] = static_cast<double>( c.num_gates() );
}

} // namespace

BENCHMARK_CAPTURE( generate_family, kogge_stone, Family::KoggeStone )->RangeMultiplier( 4 )->Range( 64, 4096 );
BENCHMARK_CAPTURE( generate_family, brent_kung, Family::BrentKung )->RangeMultiplier( 4 )->Range( 64, 4096 );
BENCHMARK_CAPTURE( generate_family, linear, Family::Linear )->RangeMultiplier( 4 )->Range( 64, 4096 );
BENCHMARK_CAPTURE( generate_family, nandnor, Family::NandNor )->RangeMultiplier( 4 )->Range( 64, 4096 );
BENCHMARK_CAPTURE( simulate_family, kogge_stone, Family::KoggeStone )->RangeMultiplier( 4 )->Range( 64, 4096 );
BENCHMARK_CAPTURE( simulate_family, linear, Family::Linear )->RangeMultiplier( 4 )->Range( 64, 4096 );

BENCHMARK_MAIN();

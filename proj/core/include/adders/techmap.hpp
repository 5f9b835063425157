/*!
  \file techmap.hpp
  \brief Mapping And/Or/Buf circuits to Nand/Nor/Not by row parity
*/

#pragma once

#include <cstdint>
#include <vector>

#include <adders/circuit.hpp>
#include <adders/reduction.hpp>

namespace adders
{

/*! \brief A circuit with a row per node such that every edge spans an odd number of rows.

  Inputs sit in row 0. Gates in odd rows see only values computed in even rows
  and vice versa, which is all the parity mapping needs.
*/
struct LevelizedCircuit
{
  Circuit circuit;
  std::vector<std::uint32_t> rows;
  std::uint32_t inserted{ 0 }; ///< repeaters added by `levelize`
};

/*! \brief Places every gate at its ASAP row and inserts repeaters on edges of even span.

  A source gets at most one extra repeater, shared by all its even-span consumers and
  placed one row below the earliest of them. Depth and fan-out are unchanged.
  Throws for gate kinds other than `And`, `Or` and `Buf`.
*/
LevelizedCircuit levelize( Circuit const& c );

/*! \brief Checks the row invariant of `lc`; returns an empty string when it holds. */
std::string levelization_error( LevelizedCircuit const& lc );

/*! \brief Rewrites a levelized circuit into Nand/Nor/Not.

  Odd rows: `And -> Nand`, `Or -> Nor`. Even rows: `And -> Nor`, `Or -> Nand`.
  `Buf -> Not` everywhere. Outputs produced in odd rows carry the complement and
  get one `Not` each; when all outputs sit in the last row and the depth is odd,
  this is exactly one extra row of inverters.
*/
Circuit demorgan_map( LevelizedCircuit const& lc );

/*! \brief Reduction adder whose reduction and output-correction gates are built from
  Nand/Not; distribution repeaters become inverter pairs. The inner adder is unchanged. */
Circuit map_brent_kung_gates( std::uint32_t n, std::uint32_t tau, InnerAdder const& inner );

/*! \brief Linear-size adder over Nand/Nor/Not with fan-out two. */
Circuit build_nandnor_adder( std::uint32_t n );

double nandnor_size_bound( std::uint32_t n );        ///< (18 + 1/3) n, or (15 + 5/6) n when n >= 4096
std::uint32_t nandnor_depth_bound( std::uint32_t n ); ///< linear depth bound + 1

} // namespace adders

/*!
  \file families.hpp
  \brief Named adder families, padding to arbitrary widths, full-adder wrapping and
         comparison tables
*/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <adders/circuit.hpp>
#include <adders/reference.hpp>

namespace adders
{

enum class Family : std::uint8_t
{
  Ripple,
  Sklansky,
  KoggeStone,
  BrentKung,
  Mig,
  Linear,
  NandNor,
  KsReduced ///< Kogge-Stone inner adder behind `ceil(ld ld n)` Brent-Kung steps
};

std::string_view to_string( Family family );

/*! \brief Parses names such as `kogge-stone`; throws `std::invalid_argument` otherwise. */
Family family_from_string( std::string_view name );

std::vector<Family> all_families();

/*! \brief Everything needed to regenerate a circuit. */
struct AdderSpec
{
  Family family{ Family::KoggeStone };
  std::uint32_t n{ 1 };
  std::optional<std::uint32_t> r;
  std::optional<std::uint32_t> k;
  std::optional<std::uint32_t> tau;
  std::uint64_t seed{ 0xC0FFEE };
  bool full_adder{ false };

  bool operator==( AdderSpec const& ) const = default;
};

/*! \brief Throws `std::invalid_argument` when the parameters do not fit the family. */
void check_spec( AdderSpec const& spec );

/*! \brief Width the family is built at before truncation to `spec.n`. */
std::uint32_t padded_width( AdderSpec const& spec );

/*! \brief Builds the carry circuit (or full adder) described by `spec`.

  Widths the family cannot build directly are padded with extra high-order
  positions and the surplus inputs and outputs are removed afterwards.
*/
Circuit generate( AdderSpec const& spec );

/*! \brief Carry circuit `c_2 = y_1` with no gates. */
Circuit trivial_adder();

/*! \brief Full adder around a carry circuit: inputs `a_1, b_1, ...`, outputs `s_1 .. s_{n+1}`. */
Circuit wrap_full_adder( Circuit const& carries, std::uint32_t n );

std::vector<std::string> input_names( std::uint32_t n, bool full_adder );
std::vector<std::string> output_names( std::uint32_t n, bool full_adder );

/*! \brief Exhaustive for `n <= 10`, otherwise `10^5` random samples with seed `0xC0FFEE`. */
VerifyOptions default_verify_options( std::uint32_t n );

/*! \brief Mismatch count of `c` under `options`, for carry circuits or full adders. */
std::uint64_t count_mismatches( Circuit const& c, std::uint32_t n, bool full_adder, VerifyOptions const& options );

struct ComparisonRow
{
  std::string family;
  std::uint32_t n{ 0 };
  std::uint32_t depth{ 0 };
  std::uint32_t size{ 0 };
  std::uint32_t max_fanout{ 0 };
  bool verified{ false };
};

ComparisonRow compare_row( AdderSpec const& spec, VerifyOptions const& options );

inline constexpr std::string_view csv_header = "family,n,depth,size,max_fanout,verified";

/*! \brief Header line plus one line per row, newline-terminated. */
std::string to_csv( std::vector<ComparisonRow> const& rows );

} // namespace adders

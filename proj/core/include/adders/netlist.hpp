/*!
  \file netlist.hpp
  \brief Line-oriented netlist files and DOT export

  Layout:

      adder-netlist 1
      {"family":"kogge-stone","n":4,...,"inputs":[...],"outputs":[...]}
      0 input
      1 input
      4 and 1 3
      out 4

  The header is one line of JSON. Node records follow in id order, then one
  `out` line per output in output order.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <adders/circuit.hpp>
#include <adders/families.hpp>

namespace adders
{

inline constexpr int netlist_format_version = 1;

struct NetlistFile
{
  int version{ netlist_format_version };
  AdderSpec spec;
  Circuit circuit;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;

  bool operator==( NetlistFile const& ) const = default;
};

class ParseError : public std::runtime_error
{
public:
  ParseError( std::size_t line, std::string const& message );
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/*! \brief Wraps a generated circuit with its spec and default port names. */
NetlistFile make_netlist( AdderSpec const& spec, Circuit circuit );

std::string serialize( NetlistFile const& file );

/*! \brief Parses and structurally validates a netlist; throws `ParseError`. */
NetlistFile parse_netlist( std::string const& text );

NetlistFile read_netlist( std::string const& path );
void write_text_file( std::string const& path, std::string const& text );

/*! \brief DOT graph with one node per circuit node labeled `kind:id` and one edge per fan-in.
  Output nodes are drawn doubled. Throws for circuits without gates. */
std::string to_dot( Circuit const& c );

} // namespace adders

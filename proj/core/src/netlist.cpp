#include <adders/netlist.hpp>

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

namespace adders
{

namespace
{

constexpr std::string_view magic = "adder-netlist";

using nlohmann::json;

json optional_to_json( std::optional<std::uint32_t> const& v )
{
  return v ? json( *v ) : json( nullptr );
}

std::optional<std::uint32_t> optional_from_json( json const& header, char const* key )
{
  if ( !header.contains( key ) || header.at( key ).is_null() )
  {
    return std::nullopt;
  }
  return header.at( key ).get<std::uint32_t>();
}

std::vector<std::string> split_words( std::string const& line )
{
  std::istringstream in( line );
  std::vector<std::string> words;
  for ( std::string w; in >> w; )
  {
    words.push_back( w );
  }
  return words;
}

NodeId parse_id( std::string const& word, std::size_t line )
{
  std::size_t pos = 0;
  unsigned long value = 0;
  try
  {
    value = std::stoul( word, &pos );
  }
  catch ( std::exception const& )
  {
    throw ParseError( line, fmt::format( "expected a node id, got '{}'", word ) );
  }
  if ( pos != word.size() || value >= no_node || word.front() == '-' || word.front() == '+' )
  {
    throw ParseError( line, fmt::format( "expected a node id, got '{}'", word ) );
  }
  return static_cast<NodeId>( value );
}

} // namespace

ParseError::ParseError( std::size_t line, std::string const& message )
    : std::runtime_error( fmt::format( "line {}: {}", line, message ) ), line_( line )
{
}

NetlistFile make_netlist( AdderSpec const& spec, Circuit circuit )
{
  NetlistFile file;
  file.spec = spec;
  file.input_names = input_names( spec.n, spec.full_adder );
  file.output_names = output_names( spec.n, spec.full_adder );
  if ( file.input_names.size() != circuit.inputs().size() || file.output_names.size() != circuit.outputs().size() )
  {
    throw std::invalid_argument( "circuit interface does not match the adder spec" );
  }
  file.circuit = std::move( circuit );
  return file;
}

std::string serialize( NetlistFile const& file )
{
  auto const& c = file.circuit;
  for ( std::size_t i = 1; i < c.inputs().size(); ++i )
  {
    if ( c.inputs()[i - 1] >= c.inputs()[i] )
    {
      throw std::invalid_argument( "serialize: inputs must be listed in ascending id order" );
    }
  }
  json header = {
      { "family", std::string( to_string( file.spec.family ) ) },
      { "n", file.spec.n },
      { "r", optional_to_json( file.spec.r ) },
      { "k", optional_to_json( file.spec.k ) },
      { "tau", optional_to_json( file.spec.tau ) },
      { "seed", file.spec.seed },
      { "full_adder", file.spec.full_adder },
      { "name", c.name() },
      { "inputs", file.input_names },
      { "outputs", file.output_names },
  };
  std::string out = fmt::format( "{} {}\n{}\n", magic, file.version, header.dump() );
  auto const& nodes = c.nodes();
  for ( NodeId id = 0; id < nodes.size(); ++id )
  {
    auto const& nd = nodes[id];
    if ( nd.is_input )
    {
      out += fmt::format( "{} input\n", id );
    }
    else
    {
      out += fmt::format( "{} {} {}\n", id, to_string( nd.kind ), fmt::join( nd.fanins, " " ) );
    }
  }
  for ( auto o : c.outputs() )
  {
    out += fmt::format( "out {}\n", o );
  }
  return out;
}

NetlistFile parse_netlist( std::string const& text )
{
  std::istringstream in( text );
  std::string line;
  std::size_t lineno = 0;

  if ( !std::getline( in, line ) )
  {
    throw ParseError( 1, "empty netlist" );
  }
  ++lineno;
  auto const first = split_words( line );
  if ( first.size() != 2 || first[0] != magic )
  {
    throw ParseError( lineno, fmt::format( "expected '{} <version>'", magic ) );
  }
  NetlistFile file;
  if ( first[1] != std::to_string( netlist_format_version ) )
  {
    throw ParseError( lineno, fmt::format( "unsupported format version '{}'", first[1] ) );
  }

  if ( !std::getline( in, line ) )
  {
    throw ParseError( 2, "missing header" );
  }
  ++lineno;
  std::string name;
  try
  {
    auto const header = json::parse( line );
    file.spec.family = family_from_string( header.at( "family" ).get<std::string>() );
    file.spec.n = header.at( "n" ).get<std::uint32_t>();
    file.spec.r = optional_from_json( header, "r" );
    file.spec.k = optional_from_json( header, "k" );
    file.spec.tau = optional_from_json( header, "tau" );
    file.spec.seed = header.at( "seed" ).get<std::uint64_t>();
    file.spec.full_adder = header.at( "full_adder" ).get<bool>();
    name = header.at( "name" ).get<std::string>();
    file.input_names = header.at( "inputs" ).get<std::vector<std::string>>();
    file.output_names = header.at( "outputs" ).get<std::vector<std::string>>();
  }
  catch ( std::exception const& e )
  {
    throw ParseError( lineno, fmt::format( "bad header: {}", e.what() ) );
  }

  std::vector<Node> nodes;
  std::vector<NodeId> inputs, outputs;
  while ( std::getline( in, line ) )
  {
    ++lineno;
    auto const words = split_words( line );
    if ( words.empty() )
    {
      continue;
    }
    if ( words[0] == "out" )
    {
      if ( words.size() != 2 )
      {
        throw ParseError( lineno, "expected 'out <id>'" );
      }
      outputs.push_back( parse_id( words[1], lineno ) );
      continue;
    }
    if ( !outputs.empty() )
    {
      throw ParseError( lineno, "node record after output list" );
    }
    auto const id = parse_id( words[0], lineno );
    if ( id != nodes.size() )
    {
      throw ParseError( lineno, fmt::format( "expected node {}, got {}", nodes.size(), id ) );
    }
    if ( words.size() < 2 )
    {
      throw ParseError( lineno, "missing node kind" );
    }
    if ( words[1] == "input" )
    {
      if ( words.size() != 2 )
      {
        throw ParseError( lineno, "input record takes no fan-ins" );
      }
      nodes.push_back( Node{ true, GateKind::Buf, {} } );
      inputs.push_back( id );
      continue;
    }
    Node nd;
    try
    {
      nd.kind = gate_kind_from_string( words[1] );
    }
    catch ( std::invalid_argument const& e )
    {
      throw ParseError( lineno, e.what() );
    }
    for ( std::size_t i = 2; i < words.size(); ++i )
    {
      nd.fanins.push_back( parse_id( words[i], lineno ) );
    }
    nodes.push_back( std::move( nd ) );
  }

  file.circuit = Circuit( std::move( name ), std::move( nodes ), std::move( inputs ), std::move( outputs ) );
  try
  {
    require_structurally_valid( file.circuit );
  }
  catch ( std::invalid_argument const& e )
  {
    throw ParseError( lineno, e.what() );
  }
  if ( file.input_names.size() != file.circuit.inputs().size() || file.output_names.size() != file.circuit.outputs().size() )
  {
    throw ParseError( 2, "port name lists do not match the circuit" );
  }
  return file;
}

NetlistFile read_netlist( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw std::runtime_error( fmt::format( "cannot open '{}'", path ) );
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_netlist( buffer.str() );
}

void write_text_file( std::string const& path, std::string const& text )
{
  std::ofstream out( path, std::ios::binary | std::ios::trunc );
  if ( !out || !( out << text ) || !out.flush() )
  {
    throw std::runtime_error( fmt::format( "cannot write '{}'", path ) );
  }
}

std::string to_dot( Circuit const& c )
{
  require_structurally_valid( c );
  if ( c.num_gates() == 0 )
  {
    throw std::invalid_argument( "DOT export needs at least one gate" );
  }
  std::vector<bool> is_output( c.num_nodes(), false );
  for ( auto o : c.outputs() )
  {
    is_output[o] = true;
  }
  std::string out = fmt::format( "digraph \"{}\" {{\n  rankdir=BT;\n", c.name() );
  for ( NodeId id = 0; id < c.num_nodes(); ++id )
  {
    auto const& nd = c.node( id );
    auto const kind = nd.is_input ? std::string_view( "input" ) : to_string( nd.kind );
    out += fmt::format( "  n{} [label=\"{}:{}\"{}];\n", id, kind, id, is_output[id] ? ", peripheries=2" : "" );
  }
  for ( NodeId id = 0; id < c.num_nodes(); ++id )
  {
    for ( auto f : c.node( id ).fanins )
    {
      out += fmt::format( "  n{} -> n{};\n", f, id );
    }
  }
  out += "}\n";
  return out;
}

} // namespace adders

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "abdkit/instance.hpp"

namespace abdkit {

class parse_error : public std::runtime_error {
  public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Parses the line-oriented .abd format:
///   rel NAME ARITY TUPLE [TUPLE...]
///   con NAME v1 ... vARITY
///   hyp v1 [v2 ...]          (repeatable, union)
///   man v1 [v2 ...]          (repeatable, union)
///   size N                   (optional)
/// '#' starts a comment. Identifiers match [A-Za-z_][A-Za-z0-9_]*.
AbductionInstance parse_instance(std::string_view text);

AbductionInstance parse_instance_file(const std::string& path);

/// Canonical form: rel lines sorted by name with sorted tuples, con lines in
/// order, sorted hyp/man lines, optional size. parse(serialize(x)) == x.
std::string serialize_instance(const AbductionInstance& inst);

bool is_identifier(std::string_view s);

}  // namespace abdkit

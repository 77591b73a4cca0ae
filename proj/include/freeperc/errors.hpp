#pragma once

#include <stdexcept>
#include <string>

namespace freeperc {

enum class errc {
  invalid_argument,
  pole_at_point,
  enumeration_cap_exceeded,
  disconnected_graph,
  not_degree_regular,
  supercritical_request,
  fixed_point_not_found,
  no_convergence,
  degenerate_product,
  parameter_out_of_range,
  parse_error,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

/// Parse failure for textual inputs; `position` is a 0-based offset into the input.
class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string& expected, const std::string& what)
      : Error(errc::parse_error, what), position_(position), expected_(expected) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace freeperc

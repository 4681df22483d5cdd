#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdens {

enum class errc {
  empty_edge,
  too_large,
  negative_x,
  overlapping_constraints,
  too_short,
  r_out_of_range,
  embedding_violation,
  n_too_small,
  out_of_range,
  bad_order,
  vertex_out_of_range,
  duplicate_vertex,
  disconnected_family,
  parse_error,
  cross_check_failure,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::empty_edge: return "EmptyEdge";
    case errc::too_large: return "TooLarge";
    case errc::negative_x: return "NegativeX";
    case errc::overlapping_constraints: return "OverlappingConstraints";
    case errc::too_short: return "TooShort";
    case errc::r_out_of_range: return "ROutOfRange";
    case errc::embedding_violation: return "EmbeddingViolation";
    case errc::n_too_small: return "NTooSmall";
    case errc::out_of_range: return "OutOfRange";
    case errc::bad_order: return "BadOrder";
    case errc::vertex_out_of_range: return "VertexOutOfRange";
    case errc::duplicate_vertex: return "DuplicateVertex";
    case errc::disconnected_family: return "DisconnectedFamily";
    case errc::parse_error: return "ParseError";
    case errc::cross_check_failure: return "CrossCheckFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hdens
